#ifndef SEQSPACE_TREND_HPP
#define SEQSPACE_TREND_HPP

#include <span>

#include "seqspace/core.hpp"

namespace seqspace {

/// Shared verdict policy for functionals sampled along an increasing
/// truncation schedule (values[i] at schedule point i).
///
/// Boundedness: Member when the relative increase across the last doubling
/// is below eps_tail; NonMember when the functional grows by at least
/// growth_ratio per doubling (sustained over the last two doublings) above
/// the noise floor 10 * eps_tail.
VerdictKind trend_sup(std::span<const double> values, const Tolerances& tol);

/// Limit existence via Cauchy gaps (gaps[i] = |F(N_i) - F(N_{i-1})|):
/// Member when the last gap is below eps_tail; NonMember when gaps sit
/// above the floor and do not decay.
VerdictKind trend_limit_gaps(std::span<const double> gaps, const Tolerances& tol);

/// Zero limit: Member when |last| < eps_tail; NonMember when the values
/// stabilized (or grow) above the floor.
VerdictKind trend_zero(std::span<const double> values, const Tolerances& tol);

}  // namespace seqspace

#endif  // SEQSPACE_TREND_HPP
