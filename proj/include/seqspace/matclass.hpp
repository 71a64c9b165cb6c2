#ifndef SEQSPACE_MATCLASS_HPP
#define SEQSPACE_MATCLASS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqspace/core.hpp"
#include "seqspace/duals.hpp"
#include "seqspace/triangles.hpp"

/// Matrix-transformation class characterizations: the g[n,k](m) and g[n,k]
/// kernels of a general infinite matrix, the numbered conditions evaluated
/// along a truncation schedule, and per-theorem class verdicts.
namespace seqspace::matclass {

/// A general (not necessarily triangular) infinite matrix given by an entry
/// function. The optional row-decay hint bounds |a_nk| ~ decay^k and is used
/// to truncate inner series.
class InfiniteMatrix {
 public:
  using Fn = std::function<double(Index n, Index k)>;

  InfiniteMatrix() : InfiniteMatrix([](Index, Index) { return 0.0; }, "0") {}
  InfiniteMatrix(Fn fn, std::string label, std::optional<double> row_decay = std::nullopt)
      : fn_(std::move(fn)), label_(std::move(label)), row_decay_(row_decay) {}

  double at(Index n, Index k) const { return (n < 0 || k < 0) ? 0.0 : fn_(n, k); }
  const std::string& label() const { return label_; }
  std::optional<double> row_decay() const { return row_decay_; }

 private:
  Fn fn_;
  std::string label_;
  std::optional<double> row_decay_;
};

InfiniteMatrix from_triangle(const Triangle& t);

/// g[n,k](m) = lambda_k [ (sum_{j=k}^{m} d_{j-k} a_{nj}) / dlam_k
///                      - (sum_{j=k+1}^{m} d_{j-k-1} a_{nj}) / dlam_{k+1} ],
/// defined for k < m.
double ghat_nk_m(const InfiniteMatrix& A, const BandParams& p, const LambdaSeq& lam, Index n,
                 Index k, Index m);

struct GhatValue {
  double value = 0.0;
  bool converged = false;
};

/// Evaluates g[n,k](m) along the schedule; converged once successive values
/// differ by less than eps_tail. value is the last iterate.
GhatValue ghat_nk(const InfiniteMatrix& A, const BandParams& p, const LambdaSeq& lam, Index n,
                  Index k, const Tolerances& tol, std::span<const Index> schedule);

using ConditionRecord = duals::ConditionRecord;

struct ClassReport {
  int theorem = 0;
  std::string source;
  std::string target;
  std::vector<ConditionRecord> conditions;
  VerdictKind overall = VerdictKind::Inconclusive;
};

/// Evaluates conditions lazily and caches them, since the theorems share
/// conditions. Condition ids: "34".."39", "44".."49", "51", the zero-limit
/// variants "47z"/"48z"/"49z", and the classical-lemma primitives
/// "L1".."L8", "L10".."L12" (applied to the raw matrix).
class Evaluator {
 public:
  Evaluator(InfiniteMatrix A, BandParams p, LambdaSeq lam, std::vector<Index> schedule,
            Tolerances tol);

  ConditionRecord condition(const std::string& id, std::optional<double> q = std::nullopt);

  /// theorem in 11..20; theorems 11, 13, 18, 19, 20 need p_exp > 1.
  /// Theorem 13 has two parts: part 1 targets lp, part 2 targets linf.
  ClassReport class_verdict(int theorem, std::optional<double> p_exp = std::nullopt,
                            int part = 1);

  /// max_{n<N} |A_n(x) - (sum_k g[n,k] y_k + l a_n)| for x with convergent
  /// forward transform (lambda-limit l); throws when prerequisites fail.
  double transform_identity_check(const RealSeq& x, Index N);

  const std::vector<Index>& schedule() const { return schedule_; }

 private:
  struct Digest;
  const Digest& digest();
  ConditionRecord evaluate(const std::string& id, double q);
  double raw(Index n, Index k) const;

  InfiniteMatrix A_;
  BandParams p_;
  LambdaSeq lam_;
  std::vector<Index> schedule_;
  Tolerances tol_;

  std::mutex mu_;
  std::map<std::string, ConditionRecord> cache_;
  std::mutex digest_mu_;
  std::shared_ptr<Digest> digest_;
};

// One-shot wrappers around Evaluator.
ConditionRecord condition(const std::string& id, const InfiniteMatrix& A, const BandParams& p,
                          const LambdaSeq& lam, std::span<const Index> schedule,
                          const Tolerances& tol, std::optional<double> q = std::nullopt);
ClassReport class_verdict(int theorem, const InfiniteMatrix& A, const BandParams& p,
                          const LambdaSeq& lam, std::span<const Index> schedule,
                          const Tolerances& tol, std::optional<double> p_exp = std::nullopt,
                          int part = 1);
double transform_identity_check(const InfiniteMatrix& A, const BandParams& p, const LambdaSeq& lam,
                                const RealSeq& x, Index N, const Tolerances& tol);

}  // namespace seqspace::matclass

#endif  // SEQSPACE_MATCLASS_HPP
