#ifndef SEQSPACE_TRIANGLES_HPP
#define SEQSPACE_TRIANGLES_HPP

#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqspace/core.hpp"

namespace seqspace {

/// A lazily evaluated lower-triangular infinite matrix with nonzero diagonal.
///
/// at(n, k) is 0 outside the triangle (k > n, or negative indices). Entries
/// are memoized row-by-row for small n; the cache is internally synchronized
/// so concurrent readers observe each entry as computed once. Copies share
/// the cache.
class Triangle {
 public:
  using EntryFn = std::function<double(Index n, Index k)>;

  Triangle(std::string kind, std::string params, EntryFn fn,
           std::optional<Index> lower_bandwidth = std::nullopt);

  double at(Index n, Index k) const;

  const std::string& kind() const { return kind_; }
  const std::string& params() const { return params_; }
  /// Lower bandwidth when the matrix is banded (0 = diagonal, 2 = triple band).
  std::optional<Index> bandwidth() const { return band_; }

 private:
  struct Cache {
    mutable std::shared_mutex mu;
    mutable std::unordered_map<Index, std::vector<double>> rows;
  };

  static constexpr Index kRowCacheLimit = 4096;

  std::string kind_;
  std::string params_;
  EntryFn fn_;
  std::optional<Index> band_;
  std::shared_ptr<Cache> cache_;
};

/// Memoized solution d_m of r d_0 = 1, r d_1 + s d_0 = 0,
/// r d_m + s d_{m-1} + t d_{m-2} = 0. The inverse of B(r,s,t) is the
/// Toeplitz triangle d_{nk} = d_{n-k}. Entries may overflow to +-inf for
/// strongly expanding parameters; that is reported, not trapped.
class BandInverseSeq {
 public:
  explicit BandInverseSeq(const BandParams& p);

  double at(Index m) const;
  /// sum_{j=0}^{k} d_j, the k-th entry of De (the c-space basis companion).
  double prefix_sum(Index k) const;
  const BandParams& params() const { return params_; }

 private:
  void extend(Index m) const;

  BandParams params_;
  struct State {
    mutable std::shared_mutex mu;
    mutable std::vector<double> d;
    mutable std::vector<double> psum;
  };
  std::shared_ptr<State> st_;
};

/// A finite lower-triangular window of a Triangle (zeros included).
struct DenseTruncation {
  std::string kind;
  std::string params;
  Index N = 0;
  std::vector<double> values;  // row-major N x N

  double at(Index n, Index k) const { return values[static_cast<size_t>(n * N + k)]; }
};

// The concrete matrices of the construction.
Triangle identity_triangle();
/// The lambda-mean: entry(n,k) = (lambda_k - lambda_{k-1}) / lambda_n for k <= n.
Triangle lambda_mean(const LambdaSeq& lam);
/// B(r,s,t): r on the diagonal, s and t on the first two subdiagonals.
Triangle triple_band(const BandParams& p);
/// The Toeplitz inverse D of B(r,s,t), computed by the band recurrence.
Triangle band_inverse(const BandParams& p);
/// The two-band inverse P of the lambda-mean:
/// entry(j,j) = lambda_j/(lambda_j - lambda_{j-1}),
/// entry(j,j-1) = -lambda_{j-1}/(lambda_j - lambda_{j-1}).
Triangle lambda_mean_inverse(const LambdaSeq& lam);
/// The composed triangle W = lambda_mean * triple_band, written directly
/// from its closed-form entries.
Triangle what_matrix(const BandParams& p, const LambdaSeq& lam);

Triangle compose(const Triangle& a, const Triangle& b);
/// (Ax)_n = sum_{k<=n} a(n,k) x_k for n < N; returns a prefix-backed sequence.
RealSeq apply(const Triangle& a, const RealSeq& x, Index N);

// Classical catalog, transcribed literally. Used for cross-validation.
Triangle cesaro_mean();
Triangle riesz_mean(const RealSeq& q);     // q_k > 0 (checked on a prefix)
Triangle euler_mean(double r);             // 0 < r < 1
Triangle summation_matrix();
Triangle difference_matrix(int order);     // order >= 1
Triangle factorable_matrix(const RealSeq& u, const RealSeq& v);  // u_n v_k, nonzero
Triangle au_matrix(double r, const RealSeq& u);  // (1 + r^k)/(n+1) * u_k

/// Catalog lookup by name: cesaro | riesz | euler | summation | delta |
/// factorable | au. Throws std::invalid_argument for unknown names or
/// invalid parameters.
struct CatalogParams {
  std::optional<double> scalar;
  std::optional<int> order;
  std::optional<RealSeq> u;
  std::optional<RealSeq> v;
};
Triangle catalog(const std::string& name, const CatalogParams& params);

DenseTruncation truncate(const Triangle& a, Index N);
std::string to_csv(const DenseTruncation& t);
std::string to_json(const DenseTruncation& t);  // {kind, params, N, rows}

}  // namespace seqspace

#endif  // SEQSPACE_TRIANGLES_HPP
