#ifndef SEQSPACE_DUALS_HPP
#define SEQSPACE_DUALS_HPP

#include <span>
#include <string>
#include <vector>

#include "seqspace/core.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/triangles.hpp"

/// Evaluation of the alpha/beta/gamma dual membership conditions: the seven
/// f-sets, the pairing matrices F and V, the kernel g_k(n), and the subset
/// sup functionals, all at finite truncation with trend-based verdicts.
namespace seqspace::duals {

/// g_k(n) = lambda_k [ (sum_{j=k}^{n} d_{j-k} a_j) / dlam_k
///                   - (sum_{j=k+1}^{n} d_{j-k-1} a_j) / dlam_{k+1} ].
class GHatKernel {
 public:
  GHatKernel(const BandParams& p, const LambdaSeq& lam, RealSeq a);
  double operator()(Index k, Index n) const;  // requires 0 <= k < n

 private:
  BandInverseSeq d_;
  LambdaSeq lam_;
  RealSeq a_;
};

/// Rows of F are the basis vectors scaled by a_n: F[n,k] = a_n b_n(k).
Triangle build_F(const BandParams& p, const LambdaSeq& lam, const RealSeq& a);
/// V[n,k] = g_k(n) below the diagonal, (1/r) lambda_n a_n / dlam_n on it.
Triangle build_V(const BandParams& p, const LambdaSeq& lam, const RealSeq& a);

struct SubsetSupL1 {
  double exact = 0.0;      // max over column subsets K of sum_n |sum_{k in K} M[n,k]|
  double surrogate = 0.0;  // sum_n sum_k |M[n,k]| over the same window
};

/// Exact enumeration over all subsets of columns {0..kmax} (kmax <= 16);
/// inclusion happens in increasing column order so the incremental sums
/// reproduce a naive per-subset evaluation bit for bit.
SubsetSupL1 subset_sup_l1(const Triangle& M, Index kmax, Index nrows);

/// max over subsets of rows {0..nmax} of sum_{k<kcols} |sum_{n in N} M[n,k]|^q.
double subset_sup_lq(const Triangle& M, double q, Index nmax, Index kcols);

struct ConditionRecord {
  std::string id;
  std::string statement;  // human-readable rendering of the condition
  std::vector<Index> schedule;
  std::vector<double> values;
  VerdictKind verdict = VerdictKind::Inconclusive;
  std::string note;  // dependency or sub-verdict remarks
};

/// Evaluates the idx-th dual condition (1..7) along the truncation
/// schedule. q parameterizes f3 and f6.
ConditionRecord f_condition(int idx, const BandParams& p, const LambdaSeq& lam, const RealSeq& a,
                            std::span<const Index> schedule, const Tolerances& tol,
                            double q = 1.0);

enum class DualType { alpha, beta, gamma };

std::string_view to_string(DualType d);

struct DualReport {
  DualType dual = DualType::alpha;
  SpaceTag space;
  std::vector<ConditionRecord> conditions;
  VerdictKind overall = VerdictKind::Inconclusive;
};

/// Conjunction of the f-conditions the chosen dual of the chosen space
/// requires. The lp variants need p > 1 (conjugate exponent q = p/(p-1)).
DualReport dual_check(DualType dual, const SpaceTag& space, const BandParams& p,
                      const LambdaSeq& lam, const RealSeq& a, std::span<const Index> schedule,
                      const Tolerances& tol);

/// max_{n<N} | sum_{k<=n} a_k x_k - V_n(y) | for y = forward(x).
double pairing_test(const BandParams& p, const LambdaSeq& lam, const RealSeq& a, const RealSeq& x,
                    Index N);

}  // namespace seqspace::duals

#endif  // SEQSPACE_DUALS_HPP
