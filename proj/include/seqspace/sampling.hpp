#ifndef SEQSPACE_SAMPLING_HPP
#define SEQSPACE_SAMPLING_HPP

#include "seqspace/core.hpp"
#include "seqspace/rng.hpp"

namespace seqspace {

/// Random band parameters drawn through the characteristic roots of the
/// inverse recurrence, so the conditioning of the draw is controlled: the
/// entries of the inverse grow like |root|^m, and checks that demand
/// near-exact identities at truncation N are only meaningful when that
/// growth stays within the floating-point error budget.
///
/// The draw covers negative, zero and positive discriminant (complex pair,
/// double root, real distinct roots) and rejects parameter sets whose
/// inverse growth exceeds the caps.
struct BandSamplerProfile {
  double root_cap = 1.2;       // modulus bound for the sampled roots
  double max_abs_cap = 1e4;    // cap on max_m |d_m| up to N
  double sum_abs_cap = 1e30;   // cap on sum_m |d_m| up to N
  Index N = 64;                // horizon the caps are enforced on
};

BandParams sample_band_params(Rng& rng, const BandSamplerProfile& profile);

/// Conservative profile for identity checks at N = 64 (residuals ~ eps * d).
BandSamplerProfile identity_check_profile();
/// Well-conditioned profile for round trips at N = 200 within 1e-8.
BandSamplerProfile round_trip_profile();
/// Tighter profile for basis duality checks at 1e-10.
BandSamplerProfile basis_profile();

/// A random admissible lambda: arithmetic, squares, logarithmic, geometric
/// or random-increment flavors.
LambdaSeq sample_lambda(Rng& rng);

/// Random sequence with entries uniform in [-1, 1].
RealSeq sample_uniform_seq(Rng& rng);

}  // namespace seqspace

#endif  // SEQSPACE_SAMPLING_HPP
