#ifndef SEQSPACE_TRANSFORM_HPP
#define SEQSPACE_TRANSFORM_HPP

#include "seqspace/core.hpp"
#include "seqspace/triangles.hpp"

namespace seqspace {

/// A sequence together with its W-transform on a common prefix.
struct TransformPair {
  std::vector<double> x;
  std::vector<double> y;
  BandParams params;
  LambdaSeq lam;
};

/// y_n = (1/lambda_n) sum_{k<=n} (lambda_k - lambda_{k-1})
///        (r x_k + s x_{k-1} + t x_{k-2}).
/// Computed by prefix accumulation in O(N); agrees with
/// apply(what_matrix(p, lam), x, N).
RealSeq forward(const BandParams& p, const LambdaSeq& lam, const RealSeq& x, Index N);

/// The inverse coordinate change x = D (P y): undo the lambda-mean with the
/// two-band P, then solve the band recurrence r x_k = (Py)_k - s x_{k-1}
/// - t x_{k-2} (which is the Toeplitz inverse D applied to Py). O(N).
RealSeq inverse(const BandParams& p, const LambdaSeq& lam, const RealSeq& y, Index N);

/// max_{n<N} |x_n - inverse(forward(x))_n|.
double roundtrip_error(const BandParams& p, const LambdaSeq& lam, const RealSeq& x, Index N);

TransformPair make_transform_pair(const BandParams& p, const LambdaSeq& lam, const RealSeq& x,
                                  Index N);

}  // namespace seqspace

#endif  // SEQSPACE_TRANSFORM_HPP
