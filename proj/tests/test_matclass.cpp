#include <cmath>

#include "doctest.h"
#include "seqspace/duals.hpp"
#include "seqspace/matclass.hpp"
#include "seqspace/rng.hpp"
#include "seqspace/sampling.hpp"
#include "seqspace/transform.hpp"

using namespace seqspace;
using namespace seqspace::matclass;

namespace {

const std::vector<Index> kSchedule{64, 128, 256, 512};

InfiniteMatrix geometric_diagonal() {
  return InfiniteMatrix(
      [](Index n, Index k) { return n == k ? std::pow(2.0, -static_cast<double>(n)) : 0.0; },
      "diag 2^-n");
}

InfiniteMatrix harmonic_rows() {
  return InfiniteMatrix([](Index, Index k) { return 1.0 / (k + 1.0); }, "rows 1/(k+1)");
}

}  // namespace

TEST_CASE("ghat kernel at finite truncation") {
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  BandParams diag(1.0, 0.0, 0.0);

  SUBCASE("identity matrix collapses to coordinate differences") {
    InfiniteMatrix I = from_triangle(identity_triangle());
    for (Index n = 0; n < 8; ++n)
      for (Index k = 0; k < 8; ++k) {
        double expected = (k + 1.0) * ((n == k ? 1.0 : 0.0) - (n == k + 1 ? 1.0 : 0.0));
        CHECK(ghat_nk_m(I, diag, unit, n, k, 10) == doctest::Approx(expected));
      }
  }
  SUBCASE("zero matrix") {
    InfiniteMatrix Z;
    CHECK(ghat_nk_m(Z, BandParams(2, 1, 1), unit, 3, 2, 20) == 0.0);
  }
  SUBCASE("extending the truncation adds exactly the new terms") {
    Rng rng(3);
    BandParams p = sample_band_params(rng, basis_profile());
    LambdaSeq lam = sample_lambda(rng);
    RealSeq entries = sample_uniform_seq(rng);
    InfiniteMatrix A([entries](Index n, Index k) { return entries.at(97 * n + k); }, "rand");
    BandInverseSeq d(p);
    for (Index n : {0, 2}) {
      for (Index k : {1, 4}) {
        for (Index m : {6, 13, 27}) {
          double lo = ghat_nk_m(A, p, lam, n, k, m);
          double hi = ghat_nk_m(A, p, lam, n, k, m + 1);
          double increment = lam.at(k) * (d.at(m + 1 - k) * A.at(n, m + 1) / lam.diff(k) -
                                          d.at(m - k) * A.at(n, m + 1) / lam.diff(k + 1));
          CHECK(hi - lo == doctest::Approx(increment).epsilon(1e-10));
        }
      }
    }
  }
  SUBCASE("precondition") {
    InfiniteMatrix Z;
    CHECK_THROWS_AS(ghat_nk_m(Z, diag, unit, 0, 3, 3), std::invalid_argument);
  }
}

TEST_CASE("ghat series evaluation") {
  Tolerances tol;
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  BandParams diag(1.0, 0.0, 0.0);

  SUBCASE("finite rows converge exactly") {
    InfiniteMatrix A([](Index, Index k) { return k < 5 ? 1.0 : 0.0; }, "finite rows");
    GhatValue v = ghat_nk(A, diag, unit, 0, 2, tol, kSchedule);
    CHECK(v.converged);
    CHECK(v.value == doctest::Approx(3.0 * (1.0 - 1.0)));  // a_2 - a_3 = 0 scaled
  }
  SUBCASE("geometric rows reach the closed form") {
    InfiniteMatrix A([](Index, Index j) { return std::pow(2.0, -static_cast<double>(j)); },
                     "geometric rows");
    for (Index k = 0; k < 6; ++k) {
      GhatValue v = ghat_nk(A, diag, unit, 0, k, tol, kSchedule);
      CHECK(v.converged);
      CHECK(v.value == doctest::Approx((k + 1.0) * std::pow(2.0, -static_cast<double>(k) - 1)));
    }
  }
  SUBCASE("non-decaying rows under the summation inverse do not converge") {
    InfiniteMatrix A([](Index, Index) { return 1.0; }, "ones");
    GhatValue v = ghat_nk(A, BandParams(1, -1, 0), unit, 0, 1, tol, kSchedule);
    CHECK_FALSE(v.converged);
  }
}

TEST_CASE("conditions on canonical matrices") {
  Tolerances tol;
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  BandParams diag(1.0, 0.0, 0.0);

  SUBCASE("zero matrix satisfies every condition") {
    Evaluator ev(InfiniteMatrix{}, diag, unit, kSchedule, tol);
    for (const char* id :
         {"34", "35", "36", "37", "38", "39", "44", "45", "46", "47", "47z", "48", "48z",
          "49", "49z", "51", "L1", "L2i", "L2ii", "L3", "L4", "L5", "L6", "L7", "L8", "L10",
          "L11", "L12"}) {
      ConditionRecord rec = ev.condition(id, 2.0);
      CHECK_MESSAGE(rec.verdict == VerdictKind::Member, "condition ", id);
    }
  }
  SUBCASE("geometric diagonal: bounded weighted rows") {
    Evaluator ev(geometric_diagonal(), diag, unit, kSchedule, tol);
    ConditionRecord c46 = ev.condition("46");
    CHECK(c46.verdict == VerdictKind::Member);
    CHECK(c46.values.back() == doctest::Approx(1.0));  // sup_n (n+1) 2^{-n} = 1
    CHECK(ev.condition("44").verdict == VerdictKind::Member);
    CHECK(ev.condition("48").verdict == VerdictKind::Member);
    CHECK(ev.condition("35").verdict == VerdictKind::Member);
  }
  SUBCASE("log-divergent row sums fail the boundedness condition") {
    Evaluator ev(harmonic_rows(), diag, unit, kSchedule, tol);
    ConditionRecord c44 = ev.condition("44");
    CHECK(c44.verdict == VerdictKind::NonMember);
    // The functional is sum_{k<N} 1/(k+2), growing like log N.
    CHECK(c44.values.back() > c44.values.front() + 1.0);
  }
  SUBCASE("row-abs-sum limit on the lambda mean is pinned at one") {
    Evaluator ev(from_triangle(lambda_mean(unit)), diag, unit, kSchedule, tol);
    ConditionRecord l1 = ev.condition("L1");
    CHECK(l1.verdict == VerdictKind::NonMember);
    for (double v : l1.values) CHECK(std::fabs(v - 1.0) < 1e-12);
  }
  SUBCASE("unknown id is rejected") {
    Evaluator ev(InfiniteMatrix{}, diag, unit, kSchedule, tol);
    CHECK_THROWS_AS(ev.condition("L9"), std::invalid_argument);
    CHECK_THROWS_AS(ev.condition("52"), std::invalid_argument);
  }
}

TEST_CASE("theorem verdicts") {
  Tolerances tol;
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  BandParams diag(1.0, 0.0, 0.0);

  SUBCASE("zero matrix is a member for every theorem") {
    Evaluator ev(InfiniteMatrix{}, diag, unit, kSchedule, tol);
    for (int thm = 11; thm <= 20; ++thm) {
      ClassReport rep = ev.class_verdict(thm, 2.0);
      CHECK_MESSAGE(rep.overall == VerdictKind::Member, "theorem ", thm);
    }
    CHECK(ev.class_verdict(13, 2.0, 2).overall == VerdictKind::Member);
  }
  SUBCASE("geometric diagonal maps the null domain into null sequences") {
    Evaluator ev(geometric_diagonal(), diag, unit, kSchedule, tol);
    ClassReport rep = ev.class_verdict(17);
    CHECK(rep.source == "c0^lambda(B)");
    CHECK(rep.target == "c0");
    REQUIRE(rep.conditions.size() == 3);
    CHECK(rep.overall == VerdictKind::Member);
  }
  SUBCASE("log-divergent rows are rejected end to end") {
    Evaluator ev(harmonic_rows(), diag, unit, kSchedule, tol);
    CHECK(ev.class_verdict(17).overall == VerdictKind::NonMember);
    CHECK(ev.class_verdict(16).overall == VerdictKind::NonMember);
  }
  SUBCASE("the geometric diagonal also maps convergent input to convergent output") {
    Evaluator ev(geometric_diagonal(), diag, unit, kSchedule, tol);
    CHECK(ev.class_verdict(14).overall == VerdictKind::Member);
    CHECK(ev.class_verdict(15).overall == VerdictKind::Member);
    CHECK(ev.class_verdict(11, 2.0).overall == VerdictKind::Member);
    CHECK(ev.class_verdict(12).overall == VerdictKind::Member);
    CHECK(ev.class_verdict(18, 2.0).overall == VerdictKind::Member);
    CHECK(ev.class_verdict(19, 2.0).overall == VerdictKind::Member);
    CHECK(ev.class_verdict(20, 2.0).overall == VerdictKind::Member);
  }
  SUBCASE("the identity matrix does not annihilate the convergent domain") {
    // Row sums of the kernel stay pinned at one, so the zero-limit variant
    // of the row-sum condition rejects it.
    Evaluator ev(from_triangle(identity_triangle()), diag, unit, kSchedule, tol);
    ClassReport rep = ev.class_verdict(15);
    CHECK(rep.overall == VerdictKind::NonMember);
    bool via_49z = false;
    for (const auto& c : rep.conditions)
      if (c.id == "49z" && c.verdict == VerdictKind::NonMember) via_49z = true;
    CHECK(via_49z);
  }
  SUBCASE("exponent requirements") {
    Evaluator ev(InfiniteMatrix{}, diag, unit, kSchedule, tol);
    CHECK_THROWS_AS(ev.class_verdict(11), std::invalid_argument);
    CHECK_THROWS_AS(ev.class_verdict(18, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ev.class_verdict(21, 2.0), std::invalid_argument);
  }
}

TEST_CASE("row-level transform identity") {
  Tolerances tol;
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  BandParams diag(1.0, 0.0, 0.0);
  Rng rng(5);

  SUBCASE("zero matrix gives a zero gap") {
    RealSeq y = RealSeq::closed_form([](Index n) { return 1.0 + 1.0 / (n + 1.0); });
    RealSeq x = inverse(diag, unit, y, 4096);
    Evaluator ev(InfiniteMatrix{}, diag, unit, kSchedule, tol);
    CHECK(ev.transform_identity_check(x, 20) == 0.0);
  }
  SUBCASE("decaying matrix against a convergent transform") {
    InfiniteMatrix A(
        [](Index n, Index k) {
          return std::pow(2.0, -static_cast<double>(n) - static_cast<double>(k));
        },
        "2^-n-k", 0.5);
    RealSeq noise = sample_uniform_seq(rng);
    RealSeq y = RealSeq::closed_form(
        [noise](Index n) { return 0.7 + noise.at(n) / std::pow(1.0 + n, 2.0); });
    RealSeq x = inverse(diag, unit, y, 4096);
    Evaluator ev(A, diag, unit, kSchedule, tol);
    CHECK(ev.transform_identity_check(x, 40) < 1e-6);
  }
  SUBCASE("non-convergent prerequisites abort") {
    RealSeq bad = RealSeq::closed_form(
        [](Index n) { return (n % 2 ? -1.0 : 1.0) * static_cast<double>(n); });
    Evaluator ev(InfiniteMatrix{}, diag, unit, kSchedule, tol);
    CHECK_THROWS_AS(ev.transform_identity_check(bad, 20), std::runtime_error);
  }
}

TEST_CASE("matclass agrees with the gamma dual on single-row matrices") {
  Tolerances tol;
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  BandParams diag(1.0, 0.0, 0.0);
  Rng rng(9);

  for (int trial = 0; trial < 10; ++trial) {
    RealSeq noise = sample_uniform_seq(rng);
    const bool decaying = trial % 2 == 0;
    RealSeq a = RealSeq::closed_form([noise, decaying](Index k) {
      double base = 1.0 + 0.5 * noise.at(k);
      return decaying ? base * std::pow(2.0, -static_cast<double>(k))
                      : base * std::sqrt(static_cast<double>(k + 1));
    });
    InfiniteMatrix single([a](Index n, Index k) { return n == 0 ? a.at(k) : 0.0; },
                          "single row");
    ClassReport cls = class_verdict(13, single, diag, unit, kSchedule, tol, std::nullopt, 2);
    duals::DualReport dual =
        duals::dual_check(duals::DualType::gamma, SpaceTag::parse("c0"), diag, unit, a,
                          kSchedule, tol);
    CHECK(cls.overall == dual.overall);
    CHECK(cls.overall == (decaying ? VerdictKind::Member : VerdictKind::NonMember));
  }
}

TEST_CASE("verdicts are stable under schedule extension on the canonical examples") {
  Tolerances tol;
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  BandParams diag(1.0, 0.0, 0.0);
  const std::vector<Index> longer{64, 128, 256, 512, 1024};

  CHECK(class_verdict(17, geometric_diagonal(), diag, unit, kSchedule, tol).overall ==
        class_verdict(17, geometric_diagonal(), diag, unit, longer, tol).overall);
  CHECK(condition("44", harmonic_rows(), diag, unit, kSchedule, tol).verdict ==
        condition("44", harmonic_rows(), diag, unit, longer, tol).verdict);
}
