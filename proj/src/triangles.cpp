#include "seqspace/triangles.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace seqspace {

Triangle::Triangle(std::string kind, std::string params, EntryFn fn,
                   std::optional<Index> lower_bandwidth)
    : kind_(std::move(kind)),
      params_(std::move(params)),
      fn_(std::move(fn)),
      band_(lower_bandwidth),
      cache_(std::make_shared<Cache>()) {}

double Triangle::at(Index n, Index k) const {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (band_ && n - k > *band_) return 0.0;
  if (n > kRowCacheLimit) return fn_(n, k);

  {
    std::shared_lock lock(cache_->mu);
    auto it = cache_->rows.find(n);
    if (it != cache_->rows.end()) return it->second[static_cast<size_t>(k)];
  }
  std::unique_lock lock(cache_->mu);
  auto it = cache_->rows.find(n);
  if (it == cache_->rows.end()) {
    std::vector<double> row(static_cast<size_t>(n) + 1);
    for (Index j = 0; j <= n; ++j)
      row[static_cast<size_t>(j)] = (band_ && n - j > *band_) ? 0.0 : fn_(n, j);
    it = cache_->rows.emplace(n, std::move(row)).first;
  }
  return it->second[static_cast<size_t>(k)];
}

BandInverseSeq::BandInverseSeq(const BandParams& p)
    : params_(p), st_(std::make_shared<State>()) {
  if (p.r() == 0.0) throw std::invalid_argument("band_inverse: r = 0 has no triangle inverse");
  st_->d.push_back(1.0 / p.r());
  st_->psum.push_back(st_->d[0]);
}

void BandInverseSeq::extend(Index m) const {
  const double r = params_.r(), s = params_.s(), t = params_.t();
  auto& d = st_->d;
  auto& psum = st_->psum;
  while (static_cast<Index>(d.size()) <= m) {
    const size_t i = d.size();
    const double prev1 = d[i - 1];
    const double prev2 = i >= 2 ? d[i - 2] : 0.0;
    const double next = -(s * prev1 + t * prev2) / r;
    d.push_back(next);
    psum.push_back(psum.back() + next);
  }
}

double BandInverseSeq::at(Index m) const {
  if (m < 0) return 0.0;
  {
    std::shared_lock lock(st_->mu);
    if (m < static_cast<Index>(st_->d.size())) return st_->d[static_cast<size_t>(m)];
  }
  std::unique_lock lock(st_->mu);
  extend(m);
  return st_->d[static_cast<size_t>(m)];
}

double BandInverseSeq::prefix_sum(Index k) const {
  if (k < 0) return 0.0;
  {
    std::shared_lock lock(st_->mu);
    if (k < static_cast<Index>(st_->psum.size())) return st_->psum[static_cast<size_t>(k)];
  }
  std::unique_lock lock(st_->mu);
  extend(k);
  return st_->psum[static_cast<size_t>(k)];
}

Triangle identity_triangle() {
  return Triangle("identity", "", [](Index n, Index k) { return n == k ? 1.0 : 0.0; }, 0);
}

Triangle lambda_mean(const LambdaSeq& lam) {
  return Triangle("lambda-mean", lam.label(),
                  [lam](Index n, Index k) { return lam.diff(k) / lam.at(n); });
}

namespace {

std::string band_params_str(const BandParams& p) {
  std::ostringstream os;
  os << p.r() << "," << p.s() << "," << p.t();
  return os.str();
}

}  // namespace

Triangle triple_band(const BandParams& p) {
  const double r = p.r(), s = p.s(), t = p.t();
  return Triangle(
      "band", band_params_str(p),
      [r, s, t](Index n, Index k) {
        if (k == n) return r;
        if (k == n - 1) return s;
        if (k == n - 2) return t;
        return 0.0;
      },
      2);
}

Triangle band_inverse(const BandParams& p) {
  BandInverseSeq d(p);
  return Triangle("band-inverse", band_params_str(p),
                  [d](Index n, Index k) { return d.at(n - k); });
}

Triangle lambda_mean_inverse(const LambdaSeq& lam) {
  return Triangle(
      "lambda-mean-inverse", lam.label(),
      [lam](Index j, Index k) {
        if (k == j) return lam.at(j) / lam.diff(j);
        if (k == j - 1) return -lam.at(j - 1) / lam.diff(j);
        return 0.0;
      },
      1);
}

Triangle what_matrix(const BandParams& p, const LambdaSeq& lam) {
  const double r = p.r(), s = p.s(), t = p.t();
  return Triangle("what", band_params_str(p) + ";" + lam.label(),
                  [r, s, t, lam](Index n, Index k) {
                    if (k < n - 1)
                      return (r * lam.diff(k) + s * lam.diff(k + 1) + t * lam.diff(k + 2)) /
                             lam.at(n);
                    if (k == n - 1) return (r * lam.diff(n - 1) + s * lam.diff(n)) / lam.at(n);
                    return r * lam.diff(n) / lam.at(n);  // k == n
                  });
}

Triangle compose(const Triangle& a, const Triangle& b) {
  std::optional<Index> band;
  if (a.bandwidth() && b.bandwidth()) band = *a.bandwidth() + *b.bandwidth();
  return Triangle(
      "compose", a.kind() + "*" + b.kind(),
      [a, b](Index n, Index k) {
        Index lo = k, hi = n;
        if (b.bandwidth()) hi = std::min(hi, k + *b.bandwidth());
        if (a.bandwidth()) lo = std::max(lo, n - *a.bandwidth());
        double sum = 0.0;
        for (Index j = lo; j <= hi; ++j) sum += a.at(n, j) * b.at(j, k);
        return sum;
      },
      band);
}

RealSeq apply(const Triangle& a, const RealSeq& x, Index N) {
  std::vector<double> out(static_cast<size_t>(N > 0 ? N : 0));
  for (Index n = 0; n < N; ++n) {
    Index lo = a.bandwidth() ? std::max<Index>(0, n - *a.bandwidth()) : 0;
    double sum = 0.0;
    for (Index k = lo; k <= n; ++k) sum += a.at(n, k) * x.at(k);
    out[static_cast<size_t>(n)] = sum;
  }
  return RealSeq::from_values(std::move(out), a.kind() + "(" + x.label() + ")");
}

Triangle cesaro_mean() {
  return Triangle("cesaro", "",
                  [](Index n, Index) { return 1.0 / static_cast<double>(n + 1); });
}

Triangle riesz_mean(const RealSeq& q) {
  for (Index k = 0; k < 64; ++k)
    if (!(q.at(k) > 0.0))
      throw std::invalid_argument("riesz_mean: q must be positive (checked prefix)");
  // Q_n = q_0 + ... + q_n, memoized through the row cache of the Triangle.
  auto qsum = std::make_shared<std::vector<double>>();
  auto mu = std::make_shared<std::mutex>();
  auto Q = [q, qsum, mu](Index n) {
    std::lock_guard lock(*mu);
    while (static_cast<Index>(qsum->size()) <= n) {
      double prev = qsum->empty() ? 0.0 : qsum->back();
      qsum->push_back(prev + q.at(static_cast<Index>(qsum->size())));
    }
    return (*qsum)[static_cast<size_t>(n)];
  };
  return Triangle("riesz", q.label(),
                  [q, Q](Index n, Index k) { return q.at(k) / Q(n); });
}

namespace {

double binom(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double v = 1.0;
  for (Index i = 1; i <= k; ++i)
    v *= static_cast<double>(n - k + i) / static_cast<double>(i);
  return v;
}

}  // namespace

Triangle euler_mean(double r) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("euler_mean: order must satisfy 0 < r < 1");
  return Triangle("euler", std::to_string(r), [r](Index n, Index k) {
    return binom(n, k) * std::pow(1.0 - r, static_cast<double>(n - k)) *
           std::pow(r, static_cast<double>(k));
  });
}

Triangle summation_matrix() {
  return Triangle("summation", "", [](Index, Index) { return 1.0; });
}

Triangle difference_matrix(int order) {
  if (order < 1) throw std::invalid_argument("difference_matrix: order must be >= 1");
  const Index m = order;
  return Triangle(
      "delta", std::to_string(order),
      [m](Index n, Index k) {
        Index j = n - k;
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        return sign * binom(m, j);
      },
      m);
}

Triangle factorable_matrix(const RealSeq& u, const RealSeq& v) {
  for (Index k = 0; k < 64; ++k)
    if (u.at(k) == 0.0 || v.at(k) == 0.0)
      throw std::invalid_argument("factorable_matrix: u and v must be nonzero (checked prefix)");
  return Triangle("factorable", u.label() + ";" + v.label(),
                  [u, v](Index n, Index k) { return u.at(n) * v.at(k); });
}

Triangle au_matrix(double r, const RealSeq& u) {
  for (Index k = 0; k < 64; ++k)
    if (u.at(k) == 0.0)
      throw std::invalid_argument("au_matrix: u must be nonzero (checked prefix)");
  return Triangle("au", std::to_string(r) + ";" + u.label(), [r, u](Index n, Index k) {
    return (1.0 + std::pow(r, static_cast<double>(k))) / static_cast<double>(n + 1) * u.at(k);
  });
}

Triangle catalog(const std::string& name, const CatalogParams& params) {
  auto need_scalar = [&]() {
    if (!params.scalar) throw std::invalid_argument("catalog '" + name + "': missing scalar");
    return *params.scalar;
  };
  auto need_seq = [&](const std::optional<RealSeq>& s, const char* which) -> const RealSeq& {
    if (!s)
      throw std::invalid_argument("catalog '" + name + "': missing sequence parameter " + which);
    return *s;
  };
  if (name == "cesaro") return cesaro_mean();
  if (name == "riesz") return riesz_mean(need_seq(params.u, "q"));
  if (name == "euler") return euler_mean(need_scalar());
  if (name == "summation") return summation_matrix();
  if (name == "delta") {
    if (!params.order) throw std::invalid_argument("catalog 'delta': missing order");
    return difference_matrix(*params.order);
  }
  if (name == "factorable")
    return factorable_matrix(need_seq(params.u, "u"), need_seq(params.v, "v"));
  if (name == "au") return au_matrix(need_scalar(), need_seq(params.u, "u"));
  throw std::invalid_argument("catalog: unknown matrix name '" + name + "'");
}

DenseTruncation truncate(const Triangle& a, Index N) {
  DenseTruncation t;
  t.kind = a.kind();
  t.params = a.params();
  t.N = N;
  t.values.assign(static_cast<size_t>(N * N), 0.0);
  for (Index n = 0; n < N; ++n)
    for (Index k = 0; k <= n; ++k) t.values[static_cast<size_t>(n * N + k)] = a.at(n, k);
  return t;
}

std::string to_csv(const DenseTruncation& t) {
  std::ostringstream os;
  os.precision(17);
  for (Index n = 0; n < t.N; ++n) {
    for (Index k = 0; k < t.N; ++k) {
      if (k) os << ',';
      os << t.at(n, k);
    }
    os << '\n';
  }
  return os.str();
}

std::string to_json(const DenseTruncation& t) {
  nlohmann::ordered_json j;
  j["kind"] = t.kind;
  j["params"] = t.params;
  j["N"] = t.N;
  auto rows = nlohmann::ordered_json::array();
  for (Index n = 0; n < t.N; ++n) {
    auto row = nlohmann::ordered_json::array();
    for (Index k = 0; k < t.N; ++k) row.push_back(t.at(n, k));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

}  // namespace seqspace
