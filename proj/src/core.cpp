#include "seqspace/core.hpp"

#include <cmath>
#include <utility>

namespace seqspace {

BandParams::BandParams(double r, double s, double t) : r_(r), s_(s), t_(t) {
  if (r == 0.0) throw std::invalid_argument("BandParams: r must be nonzero");
  if (s == 0.0 && t != 0.0)
    throw std::invalid_argument("BandParams: s = 0 with t != 0 is not a supported band shape");
  if (!std::isfinite(r) || !std::isfinite(s) || !std::isfinite(t))
    throw std::invalid_argument("BandParams: parameters must be finite");
  disc_ = s * s - 4.0 * t * r;
  degeneracy_ = (t == 0.0) ? (s == 0.0 ? Degeneracy::Diagonal : Degeneracy::TwoBand)
                           : Degeneracy::TripleBand;
}

RealSeq::RealSeq() : RealSeq([](Index) { return 0.0; }, Provenance::ClosedForm, "zero") {}

RealSeq::RealSeq(Fn fn, Provenance p, std::string label)
    : fn_(std::move(fn)), provenance_(p), label_(std::move(label)) {}

RealSeq RealSeq::closed_form(Fn fn, std::string label) {
  return RealSeq(std::move(fn), Provenance::ClosedForm, std::move(label));
}

RealSeq RealSeq::recurrence(Fn fn, std::string label) {
  return RealSeq(std::move(fn), Provenance::Recurrence, std::move(label));
}

RealSeq RealSeq::from_values(std::vector<double> values, std::string label) {
  auto data = std::make_shared<std::vector<double>>(std::move(values));
  return RealSeq(
      [data](Index k) {
        return k < static_cast<Index>(data->size()) ? (*data)[static_cast<size_t>(k)] : 0.0;
      },
      Provenance::Prefix, std::move(label));
}

std::vector<double> RealSeq::prefix(Index n) const {
  std::vector<double> out(static_cast<size_t>(n > 0 ? n : 0));
  for (Index k = 0; k < n; ++k) out[static_cast<size_t>(k)] = at(k);
  return out;
}

RealSeq zero_seq() { return RealSeq(); }

RealSeq ones_seq() {
  return RealSeq::closed_form([](Index) { return 1.0; }, "e");
}

RealSeq unit_seq(Index j) {
  return RealSeq::closed_form([j](Index k) { return k == j ? 1.0 : 0.0; },
                              "e^(" + std::to_string(j) + ")");
}

RealSeq seq_shifted(const RealSeq& x, Index d) {
  return RealSeq::closed_form([x, d](Index k) { return x.at(k - d); },
                              x.label() + " shifted by " + std::to_string(d));
}

RealSeq seq_scaled(const RealSeq& x, double c) {
  return RealSeq::closed_form([x, c](Index k) { return c * x.at(k); }, x.label());
}

RealSeq seq_sum(const RealSeq& x, const RealSeq& y) {
  return RealSeq::closed_form([x, y](Index k) { return x.at(k) + y.at(k); },
                              x.label() + "+" + y.label());
}

LambdaSeq::LambdaSeq(Fn gen, Index checked_prefix, std::string label)
    : gen_(std::move(gen)), checked_(checked_prefix), label_(std::move(label)) {
  // Admissibility (positivity, strict monotonicity, growth) is certified by
  // validate_lambda on a requested prefix, not here: a constructed lambda
  // may be fed to the validator precisely to obtain its NonMember verdict.
  if (checked_ < 1) throw std::invalid_argument("LambdaSeq: checked_prefix must be >= 1");
}

LambdaSeq arithmetic_lambda(double a, double b, Index checked) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("arithmetic_lambda: need a > 0 and b > 0");
  return LambdaSeq([a, b](Index k) { return a * static_cast<double>(k) + b; }, checked,
                   "arithmetic:" + std::to_string(a) + "," + std::to_string(b));
}

void Tolerances::validate() const {
  if (!(eps_exact > 0.0) || !(eps_tail > 0.0) || !(growth_ratio > 0.0))
    throw std::invalid_argument("Tolerances: thresholds must be strictly positive");
  if (window <= 0 || n_default <= 0 || window >= n_default)
    throw std::invalid_argument("Tolerances: need 0 < window < n_default");
}

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Member: return "Member";
    case VerdictKind::NonMember: return "NonMember";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict validate_lambda(const LambdaSeq& lam, Index N, const Tolerances& tol) {
  if (N < 2) throw std::invalid_argument("validate_lambda: need N >= 2");
  Verdict v;
  v.truncation = N;
  double min_diff = lam.at(0);
  bool monotone = lam.at(0) > 0.0;
  Index break_at = monotone ? -1 : 0;
  for (Index k = 1; k <= N && monotone; ++k) {
    double d = lam.diff(k);
    if (!(d > 0.0)) {
      monotone = false;
      break_at = k;
    } else {
      min_diff = std::min(min_diff, d);
    }
  }
  if (!monotone) {
    v.kind = VerdictKind::NonMember;
    v.evidence["break_index"] = static_cast<double>(break_at);
    return v;
  }
  const double ratio = lam.at(N) / lam.at(N / 2);
  v.evidence["min_diff"] = min_diff;
  v.evidence["growth_ratio_observed"] = ratio;
  v.kind = ratio >= tol.growth_ratio ? VerdictKind::Member : VerdictKind::Inconclusive;
  return v;
}

}  // namespace seqspace
