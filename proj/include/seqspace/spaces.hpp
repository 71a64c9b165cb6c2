#ifndef SEQSPACE_SPACES_HPP
#define SEQSPACE_SPACES_HPP

#include <optional>
#include <string>
#include <vector>

#include "seqspace/core.hpp"
#include "seqspace/transform.hpp"

namespace seqspace {

/// Names one of the base spaces c0, c, linf, lp(p), optionally wrapped as
/// the corresponding matrix domain of the W transform.
struct SpaceTag {
  enum class Base { c0, c, linf, lp };
  Base base = Base::c0;
  bool wrapped = false;
  std::optional<double> p;  // present iff base == lp, 1 <= p

  static SpaceTag parse(const std::string& text, bool wrapped = false);
  std::string str() const;
};

/// Classification verdict with the numeric evidence behind it. Only the
/// fields relevant to the space tag are populated.
struct Diagnostic {
  Verdict verdict;
  std::optional<double> tail_sup;
  std::optional<double> cauchy_gap;
  std::optional<double> psum_tail_increment;
  std::optional<double> limit_estimate;
  Index N = 0;
};

/// Membership evidence in a base space from a finite prefix.
///
/// Finite data cannot decide limits: each rule documents its Member /
/// NonMember evidence and otherwise reports Inconclusive. Tail windows
/// scale with N (w = max(tol.window, N/4), capped at N/3) so that slowly
/// drifting sequences such as ln(n) are not certified convergent at large N.
Diagnostic classify_base(const RealSeq& x, const SpaceTag& tag, Index N, const Tolerances& tol);

/// Membership in the matrix domain: classify_base(forward(x), base tag).
Diagnostic classify_domain(const RealSeq& x, const SpaceTag& tag, const BandParams& p,
                           const LambdaSeq& lam, Index N, const Tolerances& tol);

/// Named witness sequences: "thm4" (De, the prefix sums of the band
/// inverse), "thm5" (ln(k+3)), "thm7"/"e" (all ones), "e_k(j)".
RealSeq witness(const std::string& name, const BandParams& p);

/// z_k = |r dlam_k + s dlam_{k+1} + t dlam_{k+2}| / dlam_k, the criterion
/// sequence deciding whether linf embeds into the null domain.
RealSeq thm6_z(const BandParams& p, const LambdaSeq& lam);

struct InclusionReport {
  int theorem = 0;
  bool hypothesis_ok = true;
  std::string hypothesis_note;
  struct Part {
    std::string name;
    VerdictKind got = VerdictKind::Inconclusive;
    bool ok = false;
    std::string note;
  };
  std::vector<Part> parts;
  bool confirmed = false;
};

/// Reruns the witness evidence for the inclusion theorems 4..7:
/// containment sampled on random members, strictness via the named witness.
/// Theorem 5 requires r+s+t = 0 and theorem 7's strictness part requires
/// r+s+t = 1; a violated hypothesis is reported, not ignored.
InclusionReport inclusion_check(int theorem, const BandParams& p, const LambdaSeq& lam, Index N,
                                const Tolerances& tol, std::optional<double> p_exp = std::nullopt,
                                std::uint64_t seed = 1);

}  // namespace seqspace

#endif  // SEQSPACE_SPACES_HPP
