#ifndef SEQSPACE_CORE_HPP
#define SEQSPACE_CORE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

/// Foundational value types shared by the whole toolkit: band parameters,
/// admissible lambda sequences, lazy real sequences, tolerance policy and
/// three-valued verdicts.
///
/// Conventions used everywhere: sequences are indexed from 0 and any term
/// with a negative subscript is 0. That rule is implemented once, in the
/// accessors, so formulas can be transcribed literally.
namespace seqspace {

using Index = std::int64_t;

/// Parameters (r, s, t) of the triple-band matrix B(r,s,t).
///
/// Admits the documented degenerations t = 0 (two-band B(r,s)) and
/// s = t = 0 (scaled identity). r = 0 never yields a triangle and is
/// rejected, as is s = 0 with t != 0.
class BandParams {
 public:
  enum class Degeneracy { TripleBand, TwoBand, Diagonal };

  BandParams(double r, double s, double t);

  double r() const { return r_; }
  double s() const { return s_; }
  double t() const { return t_; }
  double sum() const { return r_ + s_ + t_; }
  /// s^2 - 4tr; its sign selects the closed-form inverse branch.
  double discriminant() const { return disc_; }
  Degeneracy degeneracy() const { return degeneracy_; }

  bool operator==(const BandParams&) const = default;

 private:
  double r_, s_, t_;
  double disc_;
  Degeneracy degeneracy_;
};

/// A lazily evaluated real sequence. at(k) is pure and returns 0 for k < 0.
class RealSeq {
 public:
  enum class Provenance { ClosedForm, Recurrence, Prefix };
  using Fn = std::function<double(Index)>;

  RealSeq();  // the zero sequence
  static RealSeq closed_form(Fn fn, std::string label = "closed-form");
  static RealSeq recurrence(Fn fn, std::string label = "recurrence");
  static RealSeq from_values(std::vector<double> values, std::string label = "values");

  double at(Index k) const { return k < 0 ? 0.0 : fn_(k); }
  Provenance provenance() const { return provenance_; }
  const std::string& label() const { return label_; }

  std::vector<double> prefix(Index n) const;

 private:
  RealSeq(Fn fn, Provenance p, std::string label);
  Fn fn_;
  Provenance provenance_;
  std::string label_;
};

RealSeq zero_seq();
RealSeq ones_seq();              // e = (1, 1, 1, ...)
RealSeq unit_seq(Index j);       // e^(j)
RealSeq seq_shifted(const RealSeq& x, Index d);  // at(k) = x.at(k - d)
RealSeq seq_scaled(const RealSeq& x, double c);
RealSeq seq_sum(const RealSeq& x, const RealSeq& y);

/// A strictly increasing positive sequence lambda with lambda_k -> infinity.
///
/// Monotonicity and positivity are checked on construction up to
/// checked_prefix (divergence is not decidable; see validate_lambda).
/// at(-1) = 0 by the negative-subscript convention, so diff(0) = lambda_0.
class LambdaSeq {
 public:
  using Fn = std::function<double(Index)>;

  LambdaSeq(Fn gen, Index checked_prefix, std::string label = "lambda");

  double at(Index k) const { return k < 0 ? 0.0 : gen_(k); }
  /// lambda_k - lambda_{k-1}; strictly positive for 0 <= k <= checked prefix.
  double diff(Index k) const { return at(k) - at(k - 1); }
  Index checked_prefix() const { return checked_; }
  const std::string& label() const { return label_; }

 private:
  Fn gen_;
  Index checked_;
  std::string label_;
};

LambdaSeq arithmetic_lambda(double a, double b, Index checked = 1 << 20);

/// Numeric policy for identity checks and semi-decidable verdicts.
struct Tolerances {
  double eps_exact = 1e-10;   // relative tolerance for identity checks
  double eps_tail = 1e-3;     // tail sup bound for c0/c style verdicts
  Index window = 64;          // minimum tail window length
  Index n_default = 4096;     // default truncation
  double growth_ratio = 1.1;  // divergence heuristic threshold per doubling

  void validate() const;  // throws std::invalid_argument on nonsense
  bool operator==(const Tolerances&) const = default;
};

enum class VerdictKind { Member, NonMember, Inconclusive };

std::string_view to_string(VerdictKind k);

/// A classification verdict plus the numeric evidence that produced it,
/// always reported "at truncation N".
struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::map<std::string, double> evidence;
  Index truncation = 0;

  bool is_member() const { return kind == VerdictKind::Member; }
};

/// Certifies a lambda prefix: strict monotone positivity on 0..N plus the
/// growth heuristic lambda_N >= growth_ratio * lambda_{N/2}. Slow growth is
/// reported as Inconclusive, never NonMember; only a monotonicity or
/// positivity failure is NonMember.
Verdict validate_lambda(const LambdaSeq& lam, Index N, const Tolerances& tol = {});

}  // namespace seqspace

#endif  // SEQSPACE_CORE_HPP
