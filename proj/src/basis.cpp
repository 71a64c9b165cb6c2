#include "seqspace/basis.hpp"

#include <cmath>

namespace seqspace {

BasisVector basis_vector(const BandParams& p, const LambdaSeq& lam, Index k) {
  if (k < 0) throw std::invalid_argument("basis_vector: k must be >= 0");
  BandInverseSeq d(p);
  const double r = p.r();
  RealSeq seq = RealSeq::recurrence(
      [d, lam, k, r](Index n) {
        if (n < k) return 0.0;
        if (n == k) return (1.0 / r) * lam.at(k) / lam.diff(k);
        return d.at(n - k) * lam.at(k) / lam.diff(k) -
               d.at(n - k - 1) * lam.at(k) / lam.diff(k + 1);
      },
      "b^(" + std::to_string(k) + ")");
  return BasisVector{k, std::move(seq)};
}

RealSeq coefficients(const BandParams& p, const LambdaSeq& lam, const RealSeq& x, Index N) {
  return forward(p, lam, x, N);
}

RealSeq reconstruct(const BandParams& p, const LambdaSeq& lam, const RealSeq& alphas, Index m,
                    Index N) {
  if (m >= N) throw std::invalid_argument("reconstruct: need m < N");
  BandInverseSeq d(p);
  const double r = p.r();
  std::vector<double> out(static_cast<size_t>(N > 0 ? N : 0), 0.0);
  for (Index n = 0; n < N; ++n) {
    double sum = 0.0;
    const Index top = std::min(m, n);
    for (Index k = 0; k <= top; ++k) {
      double b;
      if (n == k)
        b = (1.0 / r) * lam.at(k) / lam.diff(k);
      else
        b = d.at(n - k) * lam.at(k) / lam.diff(k) - d.at(n - k - 1) * lam.at(k) / lam.diff(k + 1);
      sum += alphas.at(k) * b;
    }
    out[static_cast<size_t>(n)] = sum;
  }
  return RealSeq::from_values(std::move(out), "partial-sum reconstruction");
}

CRepresentation c_space_representation(const BandParams& p, const LambdaSeq& lam, const RealSeq& x,
                                       Index N, const Tolerances& tol) {
  RealSeq y = forward(p, lam, x, N);
  Diagnostic diag = classify_base(y, SpaceTag{SpaceTag::Base::c, false, {}}, N, tol);
  if (diag.verdict.kind != VerdictKind::Member || !diag.limit_estimate)
    throw std::runtime_error(
        "c_space_representation: forward transform not classified convergent at this truncation");
  CRepresentation rep;
  rep.limit = *diag.limit_estimate;
  rep.residuals.resize(static_cast<size_t>(N));
  for (Index k = 0; k < N; ++k) rep.residuals[static_cast<size_t>(k)] = y.at(k) - rep.limit;
  return rep;
}

}  // namespace seqspace
