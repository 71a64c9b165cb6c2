#include <atomic>
#include <cmath>
#include <thread>

#include "doctest.h"
#include "oracles.hpp"
#include "seqspace/rng.hpp"
#include "seqspace/sampling.hpp"
#include "seqspace/triangles.hpp"

using namespace seqspace;

namespace {

double max_off_identity(const Triangle& t, Index N) {
  double worst = 0.0;
  for (Index n = 0; n < N; ++n)
    for (Index k = 0; k <= n; ++k)
      worst = std::max(worst, std::fabs(t.at(n, k) - (n == k ? 1.0 : 0.0)));
  return worst;
}

double max_entry_diff(const Triangle& a, const Triangle& b, Index N) {
  double worst = 0.0;
  for (Index n = 0; n < N; ++n)
    for (Index k = 0; k <= n; ++k) worst = std::max(worst, std::fabs(a.at(n, k) - b.at(n, k)));
  return worst;
}

}  // namespace

TEST_CASE("lambda mean entries and row sums") {
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  Triangle lm = lambda_mean(unit);
  // With lambda_k = k + 1 this is the arithmetic mean matrix.
  for (Index n = 0; n < 10; ++n)
    for (Index k = 0; k <= n; ++k)
      CHECK(lm.at(n, k) == doctest::Approx(1.0 / static_cast<double>(n + 1)));

  LambdaSeq sq([](Index k) { return std::pow(static_cast<double>(k + 1), 2.0); }, 1 << 20);
  Triangle lms = lambda_mean(sq);
  CHECK(lms.at(1, 0) == doctest::Approx(0.25));
  CHECK(lms.at(1, 1) == doctest::Approx(0.75));

  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    LambdaSeq lam = sample_lambda(rng);
    Triangle t = lambda_mean(lam);
    for (Index n : {0, 3, 17, 40}) {
      double row = 0.0;
      for (Index k = 0; k <= n; ++k) row += t.at(n, k);
      CHECK(row == doctest::Approx(1.0));  // telescoping
    }
  }
}

TEST_CASE("triple band shape") {
  Triangle b = triple_band(BandParams(2.0, -3.0, 0.5));
  CHECK(b.at(5, 5) == 2.0);
  CHECK(b.at(5, 4) == -3.0);
  CHECK(b.at(5, 3) == 0.5);
  CHECK(b.at(5, 2) == 0.0);
  CHECK(b.at(5, 6) == 0.0);
  CHECK(b.bandwidth() == 2);

  // The canonical specializations coincide with the catalog differences.
  CHECK(max_entry_diff(triple_band(BandParams(1, -2, 1)), difference_matrix(2), 20) == 0.0);
  CHECK(max_entry_diff(triple_band(BandParams(1, -1, 0)), difference_matrix(1), 20) == 0.0);
}

TEST_CASE("band inverse frozen diagonals") {
  BandInverseSeq d2(BandParams(1, -2, 1));
  for (Index m = 0; m < 30; ++m) CHECK(d2.at(m) == doctest::Approx(m + 1));

  BandInverseSeq dsum(BandParams(1, -1, 0));
  for (Index m = 0; m < 30; ++m) CHECK(dsum.at(m) == doctest::Approx(1.0));

  BandInverseSeq did(BandParams(1, 0, 0));
  CHECK(did.at(0) == 1.0);
  for (Index m = 1; m < 10; ++m) CHECK(did.at(m) == 0.0);

  CHECK(d2.prefix_sum(3) == doctest::Approx(1 + 2 + 3 + 4));
  CHECK(d2.at(-1) == 0.0);
}

TEST_CASE("band inverse matches the closed form on both discriminant signs") {
  Rng rng(21);
  std::vector<BandParams> ps = {BandParams(1, -2, 1), BandParams(2, -4, 2),
                                BandParams(1, -1, 0), BandParams(1, 1, 1),
                                BandParams(3, 1, -1)};
  for (int i = 0; i < 40; ++i) ps.push_back(sample_band_params(rng, identity_check_profile()));
  bool saw_neg = false, saw_pos = false;
  for (const auto& p : ps) {
    saw_neg = saw_neg || p.discriminant() < 0;
    saw_pos = saw_pos || p.discriminant() > 0;
    BandInverseSeq d(p);
    for (Index m = 0; m <= 64; ++m) {
      auto cf = oracle::closed_form_d(p, m);
      if (!std::isfinite(cf.value) || !std::isfinite(d.at(m))) continue;
      double scale = std::max({1.0, std::fabs(cf.value), std::fabs(d.at(m))});
      CHECK(std::fabs(cf.value - d.at(m)) / scale < 1e-6);
      CHECK(cf.imag_residue < 1e-10 * scale);
    }
  }
  CHECK(saw_neg);
  CHECK(saw_pos);
}

TEST_CASE("band times inverse is the identity") {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    BandParams p = sample_band_params(rng, identity_check_profile());
    CHECK(max_off_identity(compose(triple_band(p), band_inverse(p)), 64) < 1e-10);
  }
}

TEST_CASE("lambda mean inverse") {
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  Triangle P = lambda_mean_inverse(unit);
  for (Index j = 0; j < 10; ++j) {
    CHECK(P.at(j, j) == doctest::Approx(j + 1));
    if (j > 0) CHECK(P.at(j, j - 1) == doctest::Approx(-static_cast<double>(j)));
  }

  Rng rng(9);
  for (int i = 0; i < 8; ++i) {
    LambdaSeq lam = sample_lambda(rng);
    CHECK(max_off_identity(compose(lambda_mean(lam), lambda_mean_inverse(lam)), 20) < 1e-10);
    // P e = e by telescoping.
    RealSeq pe = apply(lambda_mean_inverse(lam), ones_seq(), 30);
    for (Index j = 0; j < 30; ++j) CHECK(pe.at(j) == doctest::Approx(1.0));
  }
}

TEST_CASE("what matrix rows and factorization") {
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  SUBCASE("uniform lambda collapses rows to three values") {
    BandParams p(2.0, 3.0, 1.0);
    Triangle w = what_matrix(p, unit);
    const Index n = 6;
    for (Index k = 0; k + 1 < n; ++k)
      CHECK(w.at(n, k) == doctest::Approx((2.0 + 3.0 + 1.0) / (n + 1)));
    CHECK(w.at(n, n - 1) == doctest::Approx((2.0 + 3.0) / (n + 1)));
    CHECK(w.at(n, n) == doctest::Approx(2.0 / (n + 1)));
  }
  SUBCASE("second-difference row") {
    Triangle w = what_matrix(BandParams(1, -2, 1), unit);
    CHECK(w.at(2, 0) == doctest::Approx(0.0));
    CHECK(w.at(2, 1) == doctest::Approx(-1.0 / 3.0));
    CHECK(w.at(2, 2) == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("equals the composition entrywise") {
    Rng rng(13);
    for (int i = 0; i < 6; ++i) {
      BandParams p = sample_band_params(rng, identity_check_profile());
      LambdaSeq lam = sample_lambda(rng);
      CHECK(max_entry_diff(what_matrix(p, lam),
                           compose(lambda_mean(lam), triple_band(p)), 64) < 1e-12);
    }
  }
}

TEST_CASE("apply basics") {
  RealSeq x = RealSeq::closed_form([](Index k) { return static_cast<double>(k); });
  RealSeq dd = apply(triple_band(BandParams(1, -2, 1)), x, 10);
  CHECK(dd.at(0) == 0.0);
  CHECK(dd.at(1) == 1.0);  // boundary term of the second difference
  for (Index n = 2; n < 10; ++n) CHECK(dd.at(n) == doctest::Approx(0.0));

  RealSeq same = apply(identity_triangle(), x, 10);
  for (Index n = 0; n < 10; ++n) CHECK(same.at(n) == x.at(n));

  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  RealSeq means = apply(lambda_mean(unit), ones_seq(), 10);
  for (Index n = 0; n < 10; ++n) CHECK(means.at(n) == doctest::Approx(1.0));
}

TEST_CASE("composition law on random triangles") {
  Rng rng(17);
  for (int trial = 0; trial < 4; ++trial) {
    RealSeq ea = sample_uniform_seq(rng), eb = sample_uniform_seq(rng);
    Triangle A("rand", "", [ea](Index n, Index k) { return ea.at(31 * n + k) + (n == k ? 2.0 : 0.0); });
    Triangle B("rand", "", [eb](Index n, Index k) { return eb.at(37 * n + k) + (n == k ? 2.0 : 0.0); });
    RealSeq x = sample_uniform_seq(rng);
    RealSeq lhs = apply(compose(A, B), x, 50);
    RealSeq rhs = apply(A, apply(B, x, 50), 50);
    for (Index n = 0; n < 50; ++n)
      CHECK(lhs.at(n) == doctest::Approx(rhs.at(n)).epsilon(1e-10));

    // Triangle law and diagonal of the composition.
    CHECK(compose(A, B).at(3, 7) == 0.0);
    CHECK(compose(A, B).at(5, 5) == doctest::Approx(A.at(5, 5) * B.at(5, 5)));
  }
}

TEST_CASE("compose against the dense product oracle") {
  Rng rng(29);
  BandParams p = sample_band_params(rng, identity_check_profile());
  LambdaSeq lam = sample_lambda(rng);
  Triangle a = lambda_mean(lam), b = triple_band(p);
  auto dense = oracle::naive_product(a, b, 40);
  Triangle c = compose(a, b);
  for (Index n = 0; n < 40; ++n)
    for (Index k = 0; k < 40; ++k)
      CHECK(c.at(n, k) == doctest::Approx(dense[static_cast<size_t>(n * 40 + k)]).epsilon(1e-12));
}

TEST_CASE("catalog matrices") {
  SUBCASE("second difference factors through the first") {
    Triangle d1 = difference_matrix(1);
    CHECK(max_entry_diff(difference_matrix(2), compose(d1, d1), 30) < 1e-12);
  }
  SUBCASE("euler mean rows sum to one") {
    Triangle e = euler_mean(0.3);
    for (Index n : {0, 5, 25}) {
      double row = 0.0;
      for (Index k = 0; k <= n; ++k) row += e.at(n, k);
      CHECK(row == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(euler_mean(1.5), std::invalid_argument);
  }
  SUBCASE("riesz mean with unit weights is the arithmetic mean") {
    CHECK(max_entry_diff(riesz_mean(ones_seq()), cesaro_mean(), 25) < 1e-12);
    CHECK_THROWS_AS(riesz_mean(RealSeq::closed_form([](Index) { return -1.0; })),
                    std::invalid_argument);
  }
  SUBCASE("factorable and weighted-average entries are literal") {
    RealSeq u = RealSeq::closed_form([](Index k) { return static_cast<double>(k + 2); });
    RealSeq v = RealSeq::closed_form([](Index k) { return 1.0 / static_cast<double>(k + 1); });
    Triangle g = factorable_matrix(u, v);
    CHECK(g.at(4, 2) == doctest::Approx(6.0 / 3.0));
    Triangle au = au_matrix(0.5, u);
    CHECK(au.at(3, 2) == doctest::Approx((1.0 + 0.25) / 4.0 * 4.0));
    CHECK_THROWS_AS(factorable_matrix(zero_seq(), v), std::invalid_argument);
  }
  SUBCASE("summation inverts the first difference") {
    CHECK(max_off_identity(compose(difference_matrix(1), summation_matrix()), 20) < 1e-12);
  }
  SUBCASE("catalog dispatch validates") {
    CatalogParams params;
    CHECK_THROWS_AS(catalog("nonsense", params), std::invalid_argument);
    CHECK_THROWS_AS(catalog("euler", params), std::invalid_argument);
    params.order = 0;
    CHECK_THROWS_AS(catalog("delta", params), std::invalid_argument);
    params.order = 3;
    CHECK(catalog("delta", params).at(3, 0) == doctest::Approx(-1.0));
  }
}

TEST_CASE("every constructed matrix vanishes above the diagonal") {
  Rng rng(37);
  LambdaSeq lam = sample_lambda(rng);
  BandParams p = sample_band_params(rng, identity_check_profile());
  std::vector<Triangle> all = {
      identity_triangle(),       lambda_mean(lam),          triple_band(p),
      band_inverse(p),           lambda_mean_inverse(lam),  what_matrix(p, lam),
      compose(lambda_mean(lam), triple_band(p)),            cesaro_mean(),
      riesz_mean(ones_seq()),    euler_mean(0.4),           summation_matrix(),
      difference_matrix(3),      factorable_matrix(ones_seq(), ones_seq())};
  for (const auto& t : all)
    for (int spot = 0; spot < 40; ++spot) {
      Index n = rng.uniform_index(0, 60);
      Index k = n + rng.uniform_index(1, 40);
      CHECK(t.at(n, k) == 0.0);
      CHECK(t.at(-1, 0) == 0.0);
    }
}

TEST_CASE("truncation serialization") {
  DenseTruncation t = truncate(triple_band(BandParams(1, -2, 1)), 3);
  CHECK(t.N == 3);
  CHECK(t.at(2, 0) == 1.0);
  CHECK(t.at(0, 2) == 0.0);  // zeros included above the diagonal
  std::string csv = to_csv(t);
  CHECK(csv == "1,0,0\n-2,1,0\n1,-2,1\n");
  std::string j = to_json(t);
  CHECK(j.find("\"kind\":\"band\"") != std::string::npos);
  CHECK(j.find("\"N\":3") != std::string::npos);
  CHECK(j.find("\"rows\":[[1.0,0.0,0.0],[-2.0,1.0,0.0],[1.0,-2.0,1.0]]") != std::string::npos);
}

TEST_CASE("entry cache is consistent under concurrent readers") {
  std::atomic<int> calls{0};
  Triangle t("probe", "", [&calls](Index n, Index k) {
    calls.fetch_add(1, std::memory_order_relaxed);
    return static_cast<double>(n * 1000 + k);
  });
  std::vector<std::thread> workers;
  std::atomic<bool> ok{true};
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&] {
      for (Index n = 0; n < 40; ++n)
        for (Index k = 0; k <= n; ++k)
          if (t.at(n, k) != static_cast<double>(n * 1000 + k)) ok = false;
    });
  for (auto& th : workers) th.join();
  CHECK(ok);
  // Each cached row was computed once: 40 rows of lengths 1..40.
  CHECK(calls.load() == 40 * 41 / 2);
}
