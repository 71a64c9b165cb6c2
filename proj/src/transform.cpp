#include "seqspace/transform.hpp"

#include <cmath>

namespace seqspace {

RealSeq forward(const BandParams& p, const LambdaSeq& lam, const RealSeq& x, Index N) {
  const double r = p.r(), s = p.s(), t = p.t();
  std::vector<double> y(static_cast<size_t>(N > 0 ? N : 0));
  double acc = 0.0;
  double xk1 = 0.0, xk2 = 0.0;  // x_{k-1}, x_{k-2}
  for (Index n = 0; n < N; ++n) {
    const double xn = x.at(n);
    acc += lam.diff(n) * (r * xn + s * xk1 + t * xk2);
    y[static_cast<size_t>(n)] = acc / lam.at(n);
    xk2 = xk1;
    xk1 = xn;
  }
  return RealSeq::from_values(std::move(y), "W(" + x.label() + ")");
}

RealSeq inverse(const BandParams& p, const LambdaSeq& lam, const RealSeq& y, Index N) {
  if (p.r() == 0.0) throw std::invalid_argument("inverse: r must be nonzero");
  const double r = p.r(), s = p.s(), t = p.t();
  std::vector<double> x(static_cast<size_t>(N > 0 ? N : 0));
  double xk1 = 0.0, xk2 = 0.0;
  for (Index k = 0; k < N; ++k) {
    const double z = (lam.at(k) * y.at(k) - lam.at(k - 1) * y.at(k - 1)) / lam.diff(k);
    const double xk = (z - s * xk1 - t * xk2) / r;
    x[static_cast<size_t>(k)] = xk;
    xk2 = xk1;
    xk1 = xk;
  }
  return RealSeq::from_values(std::move(x), "Winv(" + y.label() + ")");
}

double roundtrip_error(const BandParams& p, const LambdaSeq& lam, const RealSeq& x, Index N) {
  RealSeq back = inverse(p, lam, forward(p, lam, x, N), N);
  double err = 0.0;
  for (Index n = 0; n < N; ++n) err = std::max(err, std::fabs(x.at(n) - back.at(n)));
  return err;
}

TransformPair make_transform_pair(const BandParams& p, const LambdaSeq& lam, const RealSeq& x,
                                  Index N) {
  return TransformPair{x.prefix(N), forward(p, lam, x, N).prefix(N), p, lam};
}

}  // namespace seqspace
