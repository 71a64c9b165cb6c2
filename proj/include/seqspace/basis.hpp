#ifndef SEQSPACE_BASIS_HPP
#define SEQSPACE_BASIS_HPP

#include "seqspace/core.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/transform.hpp"

namespace seqspace {

/// The k-th coordinate basis vector of the W-domain spaces: its forward
/// transform is exactly e^(k).
struct BasisVector {
  Index k = 0;
  RealSeq seq;
};

/// b_n(k): 0 below the k-th row, (1/r) lambda_k / dlam_k on it, and
/// d_{n-k} lambda_k / dlam_k - d_{n-k-1} lambda_k / dlam_{k+1} beyond.
BasisVector basis_vector(const BandParams& p, const LambdaSeq& lam, Index k);

/// Expansion coefficients alpha_k = forward(x)_k.
RealSeq coefficients(const BandParams& p, const LambdaSeq& lam, const RealSeq& x, Index N);

/// Partial sum S_m = sum_{k<=m} alpha_k b^(k), evaluated on 0..N-1.
RealSeq reconstruct(const BandParams& p, const LambdaSeq& lam, const RealSeq& alphas, Index m,
                    Index N);

/// Representation data for the convergent domain: the lambda-limit l of
/// forward(x) and the residual coefficients alpha_k - l, so that
/// x = l De + sum_k (alpha_k - l) b^(k).
struct CRepresentation {
  double limit = 0.0;
  std::vector<double> residuals;
};

/// Throws std::runtime_error when forward(x) is not classified convergent
/// at this truncation.
CRepresentation c_space_representation(const BandParams& p, const LambdaSeq& lam, const RealSeq& x,
                                       Index N, const Tolerances& tol);

}  // namespace seqspace

#endif  // SEQSPACE_BASIS_HPP
