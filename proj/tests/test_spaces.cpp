#include <cmath>

#include "doctest.h"
#include "seqspace/rng.hpp"
#include "seqspace/sampling.hpp"
#include "seqspace/spaces.hpp"

using namespace seqspace;

namespace {

const SpaceTag kC0{SpaceTag::Base::c0, false, {}};
const SpaceTag kC{SpaceTag::Base::c, false, {}};
const SpaceTag kLinf{SpaceTag::Base::linf, false, {}};
SpaceTag lp(double p, bool wrapped = false) { return SpaceTag{SpaceTag::Base::lp, wrapped, p}; }
SpaceTag wrapped(SpaceTag t) {
  t.wrapped = true;
  return t;
}

}  // namespace

TEST_CASE("space tag parsing") {
  CHECK(SpaceTag::parse("c0").base == SpaceTag::Base::c0);
  CHECK(SpaceTag::parse("lp:2").p == 2.0);
  CHECK(SpaceTag::parse("lp:2", true).str() == "lp:2.000000^lambda(B)");
  CHECK_THROWS_AS(SpaceTag::parse("l7"), std::invalid_argument);
  CHECK_THROWS_AS(SpaceTag::parse("lp:0.5"), std::invalid_argument);
}

TEST_CASE("base classification examples") {
  Tolerances tol;
  RealSeq harmonic = RealSeq::closed_form([](Index n) { return 1.0 / (n + 1.0); });
  Diagnostic dh = classify_base(harmonic, kC0, 10000, tol);
  CHECK(dh.verdict.kind == VerdictKind::Member);
  CHECK(*dh.tail_sup < tol.eps_tail);

  Diagnostic de = classify_base(ones_seq(), lp(1.0), 10000, tol);
  CHECK(de.verdict.kind == VerdictKind::NonMember);

  RealSeq lnseq = RealSeq::closed_form([](Index n) { return std::log(n + 3.0); });
  Diagnostic dl = classify_base(lnseq, kC, 10000, tol);
  CHECK(dl.verdict.kind != VerdictKind::Member);

  // The slowly drifting log must not be certified convergent at any larger
  // truncation either (the windows scale with N).
  Diagnostic dl2 = classify_base(lnseq, kC, 100000, tol);
  CHECK(dl2.verdict.kind != VerdictKind::Member);

  CHECK_THROWS_AS(classify_base(harmonic, kC0, 10, tol), std::invalid_argument);
}

TEST_CASE("classification renders NonMember for clearly divergent data") {
  Tolerances tol;
  RealSeq ramp = RealSeq::closed_form([](Index n) { return static_cast<double>(n); });
  CHECK(classify_base(ramp, kLinf, 4096, tol).verdict.kind == VerdictKind::NonMember);
  CHECK(classify_base(ones_seq(), kC0, 4096, tol).verdict.kind == VerdictKind::NonMember);
  RealSeq alt = RealSeq::closed_form([](Index n) { return n % 2 ? 1.0 : -1.0; });
  CHECK(classify_base(alt, kC, 4096, tol).verdict.kind == VerdictKind::NonMember);
  CHECK(classify_base(alt, kLinf, 4096, tol).verdict.kind == VerdictKind::Member);
}

TEST_CASE("domain classification witnesses") {
  Tolerances tol;
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);

  SUBCASE("the De witness separates the convergent and null domains") {
    BandParams p(1.0, -2.0, 1.0);
    RealSeq de = witness("thm4", p);
    Diagnostic in_c = classify_domain(de, wrapped(kC), p, unit, 2000, tol);
    CHECK(in_c.verdict.kind == VerdictKind::Member);
    CHECK(*in_c.limit_estimate == doctest::Approx(1.0));
    Diagnostic in_c0 = classify_domain(de, wrapped(kC0), p, unit, 2000, tol);
    CHECK(in_c0.verdict.kind == VerdictKind::NonMember);
  }
  SUBCASE("the log witness joins the null domain when the band sums to zero") {
    BandParams p(1.0, -2.0, 1.0);
    RealSeq y = witness("thm5", p);
    Diagnostic d = classify_domain(y, wrapped(kC0), p, unit, 10000, tol);
    CHECK(d.verdict.kind == VerdictKind::Member);
  }
  SUBCASE("the all-ones witness is bounded but not p-summable in the domain") {
    BandParams p(0.5, 0.25, 0.25);
    Diagnostic bounded = classify_domain(ones_seq(), wrapped(kLinf), p, unit, 20000, tol);
    CHECK(bounded.verdict.kind == VerdictKind::Member);
    Diagnostic sq = classify_domain(ones_seq(), lp(2.0, true), p, unit, 20000, tol);
    CHECK(sq.verdict.kind == VerdictKind::NonMember);
  }
}

TEST_CASE("witness catalogue") {
  BandParams p(1.0, 0.0, 0.0);
  CHECK(witness("thm5", p).at(0) == doctest::Approx(std::log(3.0)));
  CHECK(witness("thm7", p).at(17) == 1.0);
  for (Index k = 0; k < 10; ++k) CHECK(witness("thm4", p).at(k) == doctest::Approx(1.0));
  RealSeq ek = witness("e_k(2)", p);
  CHECK(ek.at(2) == 1.0);
  CHECK(ek.at(3) == 0.0);
  CHECK_THROWS_AS(witness("nope", p), std::invalid_argument);
}

TEST_CASE("the linf-into-null-domain criterion sequence") {
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  SUBCASE("uniform differences make it constant") {
    RealSeq z = thm6_z(BandParams(2.0, 1.0, -0.5), unit);
    for (Index k = 0; k < 20; ++k) CHECK(z.at(k) == doctest::Approx(std::fabs(2.0 + 1.0 - 0.5)));
  }
  SUBCASE("vanishing for the second difference, 3e for the all-ones band") {
    RealSeq z0 = thm6_z(BandParams(1, -2, 1), unit);
    for (Index k = 0; k < 20; ++k) CHECK(z0.at(k) == doctest::Approx(0.0));
    RealSeq z3 = thm6_z(BandParams(1, 1, 1), unit);
    for (Index k = 0; k < 20; ++k) CHECK(z3.at(k) == doctest::Approx(3.0));
  }
}

TEST_CASE("inclusion checks reproduce the witness evidence") {
  Tolerances tol;
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);

  InclusionReport r4 = inclusion_check(4, BandParams(1, -2, 1), unit, 2000, tol);
  CHECK(r4.confirmed);

  InclusionReport r5 = inclusion_check(5, BandParams(1, -2, 1), unit, 10000, tol);
  CHECK(r5.hypothesis_ok);
  CHECK(r5.confirmed);
  InclusionReport r5bad = inclusion_check(5, BandParams(1, -2, 2), unit, 1000, tol);
  CHECK_FALSE(r5bad.hypothesis_ok);

  InclusionReport r6 = inclusion_check(6, BandParams(1, -2, 1), unit, 4096, tol);
  CHECK(r6.confirmed);
  CHECK(r6.parts.front().got == VerdictKind::Member);  // inclusion holds
  InclusionReport r6f = inclusion_check(6, BandParams(1, 1, 1), unit, 4096, tol);
  CHECK(r6f.parts.front().got == VerdictKind::NonMember);  // inclusion fails

  InclusionReport r7 = inclusion_check(7, BandParams(0.5, 0.25, 0.25), unit, 20000, tol, 2.0);
  CHECK(r7.confirmed);
  InclusionReport r7bad = inclusion_check(7, BandParams(1, 1, 1), unit, 1000, tol, 2.0);
  CHECK_FALSE(r7bad.hypothesis_ok);

  CHECK_THROWS_AS(inclusion_check(3, BandParams(1, -2, 1), unit, 100, tol),
                  std::invalid_argument);
}

TEST_CASE("verdict monotonicity across the base hierarchy") {
  Tolerances tol;
  Rng rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    double rate = rng.uniform(0.2, 3.0);
    double amp = rng.uniform(0.1, 5.0);
    RealSeq x = RealSeq::closed_form([rate, amp](Index n) {
      return amp * std::pow(1.0 + static_cast<double>(n), -rate);
    });
    Diagnostic c0 = classify_base(x, kC0, 4096, tol);
    if (c0.verdict.kind != VerdictKind::Member) continue;
    CHECK(classify_base(x, kC, 4096, tol).verdict.kind == VerdictKind::Member);
    CHECK(classify_base(x, kLinf, 4096, tol).verdict.kind == VerdictKind::Member);
  }
}

TEST_CASE("forward transform obeys the absolute-sum bound") {
  Tolerances tol;
  Rng rng(91);
  for (int trial = 0; trial < 10; ++trial) {
    BandParams p = sample_band_params(rng, identity_check_profile());
    LambdaSeq lam = sample_lambda(rng);
    RealSeq x = sample_uniform_seq(rng);  // |x|_inf <= 1
    const double bound = std::fabs(p.r()) + std::fabs(p.s()) + std::fabs(p.t());
    RealSeq y = forward(p, lam, x, 300);
    for (Index n = 0; n < 300; ++n) CHECK(std::fabs(y.at(n)) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("the De witness never lands in the null domain") {
  Tolerances tol;
  Rng rng(97);
  const SpaceTag c0_wrapped{SpaceTag::Base::c0, true, {}};
  for (int trial = 0; trial < 8; ++trial) {
    BandParams p = sample_band_params(rng, identity_check_profile());
    LambdaSeq lam = sample_lambda(rng);
    Diagnostic d = classify_domain(witness("thm4", p), c0_wrapped, p, lam, 2000, tol);
    CHECK(d.verdict.kind == VerdictKind::NonMember);
  }
}

TEST_CASE("the domain norm is not absolute") {
  // |x| and x can have different domain norms; witness (0, 1, -1, 0, ...).
  LambdaSeq unit = arithmetic_lambda(1.0, 1.0);
  BandParams p(1.0, -2.0, 1.0);
  RealSeq x = RealSeq::from_values({0.0, 1.0, -1.0});
  RealSeq ax = RealSeq::from_values({0.0, 1.0, 1.0});
  auto domain_sup = [&](const RealSeq& s) {
    RealSeq y = forward(p, unit, s, 50);
    double sup = 0.0;
    for (Index n = 0; n < 50; ++n) sup = std::max(sup, std::fabs(y.at(n)));
    return sup;
  };
  CHECK(domain_sup(x) == doctest::Approx(2.0 / 3.0));
  CHECK(domain_sup(ax) == doctest::Approx(0.5));
}
