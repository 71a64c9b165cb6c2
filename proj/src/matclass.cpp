#include "seqspace/matclass.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "seqspace/spaces.hpp"
#include "seqspace/transform.hpp"
#include "seqspace/trend.hpp"

namespace seqspace::matclass {

InfiniteMatrix from_triangle(const Triangle& t) {
  return InfiniteMatrix([t](Index n, Index k) { return t.at(n, k); },
                        t.kind() + (t.params().empty() ? "" : ":" + t.params()));
}

double ghat_nk_m(const InfiniteMatrix& A, const BandParams& p, const LambdaSeq& lam, Index n,
                 Index k, Index m) {
  if (k < 0 || k >= m) throw std::invalid_argument("ghat_nk_m: requires 0 <= k < m");
  BandInverseSeq d(p);
  double s1 = 0.0, s2 = 0.0;
  for (Index j = k; j <= m; ++j) s1 += d.at(j - k) * A.at(n, j);
  for (Index j = k + 1; j <= m; ++j) s2 += d.at(j - k - 1) * A.at(n, j);
  return lam.at(k) * (s1 / lam.diff(k) - s2 / lam.diff(k + 1));
}

GhatValue ghat_nk(const InfiniteMatrix& A, const BandParams& p, const LambdaSeq& lam, Index n,
                  Index k, const Tolerances& tol, std::span<const Index> schedule) {
  GhatValue out;
  BandInverseSeq d(p);
  double prev = 0.0, prev_inner = 0.0;
  bool have_prev = false;
  for (Index m : schedule) {
    if (k >= m) continue;
    out.value = ghat_nk_m(A, p, lam, n, k, m);
    // The kernel is only meaningful when the inner series itself settles;
    // two divergent inner sums can cancel in the difference.
    double inner = 0.0;
    for (Index j = k; j <= m; ++j) inner += d.at(j - k) * A.at(n, j);
    if (have_prev)
      out.converged = std::fabs(out.value - prev) < tol.eps_tail &&
                      std::fabs(inner - prev_inner) < tol.eps_tail;
    prev = out.value;
    prev_inner = inner;
    have_prev = true;
  }
  return out;
}

namespace {

constexpr Index kProbe = 8;  // fixed-(n,k) probes for per-index limit conditions

/// Incremental inner sums of g[n,k](m) over one matrix row, on raw arrays.
class RawGhatWalker {
 public:
  RawGhatWalker(std::span<const double> d, std::span<const double> a,
                std::span<const double> lamv, std::span<const double> dlam)
      : d_(d), a_(a), lamv_(lamv), dlam_(dlam) {}

  void push(Index m) {
    const double am = a_[static_cast<size_t>(m)];
    for (Index k = 0; k < m; ++k) {
      s1_[static_cast<size_t>(k)] += d_[static_cast<size_t>(m - k)] * am;
      s2_[static_cast<size_t>(k)] += d_[static_cast<size_t>(m - k - 1)] * am;
    }
    s1_.push_back(d_[0] * am);
    s2_.push_back(0.0);
  }

  double ghat(Index k) const {
    return lamv_[static_cast<size_t>(k)] *
           (s1_[static_cast<size_t>(k)] / dlam_[static_cast<size_t>(k)] -
            s2_[static_cast<size_t>(k)] / dlam_[static_cast<size_t>(k + 1)]);
  }

  double inner(Index k) const { return s1_[static_cast<size_t>(k)]; }

 private:
  std::span<const double> d_, a_, lamv_, dlam_;
  std::vector<double> s1_, s2_;
};

std::string statement_for(const std::string& id) {
  if (id == "34") return "sup over column subsets F of sum_n |sum_{k in F} g[n,k]|^p is finite";
  if (id == "35") return "sum_{j>=k} d_{j-k} a[n,j] converges for each fixed (n,k)";
  if (id == "36") return "sup_m sum_{k<m} |g[n,k](m)| is finite for each n";
  if (id == "37") return "lim_k lambda_k a[n,k] / (r dlam_k) exists for each n";
  if (id == "38") return "the inner-series values over k form a convergent series per row";
  if (id == "39") return "the row limits belong to lp";
  if (id == "44") return "sup_n sum_k |g[n,k]| is finite";
  if (id == "45") return "the row limits are bounded";
  if (id == "46") return "sup_k |lambda_k a[n,k] / (r dlam_k)| is finite for each n";
  if (id == "47") return "the row limits converge";
  if (id == "47z") return "the row limits tend to 0";
  if (id == "48") return "lim_n g[n,k] exists for each fixed k";
  if (id == "48z") return "lim_n g[n,k] = 0 for each fixed k";
  if (id == "49") return "lim_n sum_k g[n,k] exists";
  if (id == "49z") return "lim_n sum_k g[n,k] = 0";
  if (id == "51") return "sup_n sum_k |g[n,k]|^q is finite";
  if (id == "L1") return "row absolute sums tend to 0";
  if (id == "L2i") return "column-subset sup of sum_n |row subset sums| is finite";
  if (id == "L2ii") return "row-subset sup of sum_k |column subset sums|^q is finite";
  if (id == "L3") return "column limits exist and row absolute sums stay bounded";
  if (id == "L4") return "column limits exist, row absolute sums bounded, row sums converge";
  if (id == "L5") return "column limits exist and row abs sums converge to the limits' abs sum";
  if (id == "L6") return "column limits exist and sup_n sum_k |a[n,k]|^q is finite";
  if (id == "L7") return "row absolute sums stay bounded";
  if (id == "L8") return "sup_n sum_k |a[n,k]|^q is finite";
  if (id == "L10") return "column-subset sup of sum_n |row subset sums|^p is finite";
  if (id == "L11") return "bounded rows, zero column limits, zero row-sum limit";
  if (id == "L12") return "bounded rows and zero column limits";
  return "";
}

VerdictKind conj(std::initializer_list<VerdictKind> vs) {
  VerdictKind out = VerdictKind::Member;
  for (VerdictKind v : vs) {
    if (v == VerdictKind::NonMember) return VerdictKind::NonMember;
    if (v == VerdictKind::Inconclusive) out = VerdictKind::Inconclusive;
  }
  return out;
}

}  // namespace

struct Evaluator::Digest {
  Index M = 0;
  std::vector<double> d;     // d_m for m <= M
  std::vector<double> lamv;  // lambda_k for k <= M + 2
  std::vector<double> dlam;  // lambda_k - lambda_{k-1}
  std::vector<std::vector<double>> a;  // raw entries a[n][j], n < M, j <= M

  // Per row n, per schedule point i:
  std::vector<std::vector<std::vector<double>>> ghat_at;  // [n][i][k], k < N_i
  std::vector<std::vector<double>> sup36_at;              // [n][i]
  std::vector<std::vector<double>> tk_full;               // [n][k]: inner series at m = M
  std::vector<std::vector<std::vector<double>>> tk_at;    // [n<kProbe][i][k<kProbe]
};

Evaluator::Evaluator(InfiniteMatrix A, BandParams p, LambdaSeq lam, std::vector<Index> schedule,
                     Tolerances tol)
    : A_(std::move(A)), p_(p), lam_(std::move(lam)), schedule_(std::move(schedule)), tol_(tol) {
  tol_.validate();
  if (schedule_.empty()) throw std::invalid_argument("matclass: empty schedule");
  for (size_t i = 0; i + 1 < schedule_.size(); ++i)
    if (schedule_[i] >= schedule_[i + 1])
      throw std::invalid_argument("matclass: schedule must be strictly increasing");
  if (schedule_.front() < 2 * kProbe)
    throw std::invalid_argument("matclass: schedule starts below the probe window");
  if (schedule_.back() > 2048)
    throw std::invalid_argument("matclass: schedule exceeds the digest guard (2048)");
}

const Evaluator::Digest& Evaluator::digest() {
  std::lock_guard lock(digest_mu_);
  if (digest_) return *digest_;
  auto dig = std::make_shared<Digest>();
  const Index M = schedule_.back();
  dig->M = M;

  BandInverseSeq dseq(p_);
  dig->d.resize(static_cast<size_t>(M) + 1);
  for (Index m = 0; m <= M; ++m) dig->d[static_cast<size_t>(m)] = dseq.at(m);
  dig->lamv.resize(static_cast<size_t>(M) + 3);
  dig->dlam.resize(static_cast<size_t>(M) + 3);
  for (Index k = 0; k <= M + 2; ++k) {
    dig->lamv[static_cast<size_t>(k)] = lam_.at(k);
    dig->dlam[static_cast<size_t>(k)] = lam_.diff(k);
  }

  dig->a.resize(static_cast<size_t>(M));
  dig->ghat_at.resize(static_cast<size_t>(M));
  dig->sup36_at.resize(static_cast<size_t>(M));
  dig->tk_full.resize(static_cast<size_t>(M));
  dig->tk_at.resize(static_cast<size_t>(kProbe));

  for (Index n = 0; n < M; ++n) {
    auto& row = dig->a[static_cast<size_t>(n)];
    row.resize(static_cast<size_t>(M) + 1);
    for (Index j = 0; j <= M; ++j) row[static_cast<size_t>(j)] = A_.at(n, j);

    RawGhatWalker w(dig->d, row, dig->lamv, dig->dlam);
    auto& ghat_rows = dig->ghat_at[static_cast<size_t>(n)];
    auto& sup36 = dig->sup36_at[static_cast<size_t>(n)];
    double running_sup = 0.0;
    size_t next = 0;
    for (Index m = 0; m <= M; ++m) {
      w.push(m);
      double rowsum = 0.0;
      for (Index k = 0; k < m; ++k) rowsum += std::fabs(w.ghat(k));
      running_sup = std::max(running_sup, rowsum);
      if (next < schedule_.size() && m == schedule_[next]) {
        std::vector<double> snap(static_cast<size_t>(m));
        for (Index k = 0; k < m; ++k) snap[static_cast<size_t>(k)] = w.ghat(k);
        ghat_rows.push_back(std::move(snap));
        sup36.push_back(running_sup);
        if (n < kProbe) {
          std::vector<double> tk(static_cast<size_t>(kProbe));
          for (Index k = 0; k < kProbe; ++k) tk[static_cast<size_t>(k)] = w.inner(k);
          dig->tk_at[static_cast<size_t>(n)].push_back(std::move(tk));
        }
        ++next;
      }
    }
    auto& tkf = dig->tk_full[static_cast<size_t>(n)];
    tkf.resize(static_cast<size_t>(M));
    for (Index k = 0; k < M; ++k) tkf[static_cast<size_t>(k)] = w.inner(k);
  }
  digest_ = std::move(dig);
  return *digest_;
}

double Evaluator::raw(Index n, Index k) const { return A_.at(n, k); }

ConditionRecord Evaluator::condition(const std::string& id, std::optional<double> q) {
  const double qq = q.value_or(1.0);
  std::string key = id;
  if (q) key += "@q=" + std::to_string(qq);
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  ConditionRecord rec = evaluate(id, qq);
  std::lock_guard lock(mu_);
  return cache_.emplace(key, std::move(rec)).first->second;
}

ConditionRecord Evaluator::evaluate(const std::string& id, double q) {
  ConditionRecord rec;
  rec.id = id;
  rec.statement = statement_for(id);
  rec.schedule = schedule_;
  const size_t S = schedule_.size();

  // Row-limit values lambda_k a[n,k] / (r dlam_k), shared by several ids.
  auto f46 = [&](const Digest& dig, Index n, Index k) {
    return (1.0 / p_.r()) * dig.lamv[static_cast<size_t>(k)] *
           dig.a[static_cast<size_t>(n)][static_cast<size_t>(k)] /
           dig.dlam[static_cast<size_t>(k)];
  };
  auto row_limit = [&](const Digest& dig, Index n) { return f46(dig, n, dig.M); };

  auto window_gap = [](auto&& value, Index lo, Index hi) {
    double mn = value(lo), mx = mn;
    for (Index i = lo + 1; i < hi; ++i) {
      double v = value(i);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    return mx - mn;
  };

  if (id == "34" || id == "44" || id == "51") {
    const Digest& dig = digest();
    for (size_t i = 0; i < S; ++i) {
      const Index Ni = schedule_[i];
      double value = 0.0;
      if (id == "34") {
        // Minkowski upper bound of the subset sup in lp over rows.
        double total = 0.0;
        for (Index k = 0; k < Ni; ++k) {
          double colp = 0.0;
          for (Index n = 0; n < Ni; ++n)
            colp += std::pow(std::fabs(dig.ghat_at[static_cast<size_t>(n)][i][static_cast<size_t>(k)]), q);
          total += std::pow(colp, 1.0 / q);
        }
        value = std::pow(total, q);
      } else {
        const double power = id == "51" ? q : 1.0;
        for (Index n = 0; n < Ni; ++n) {
          double rowsum = 0.0;
          const auto& row = dig.ghat_at[static_cast<size_t>(n)][i];
          for (double g : row)
            rowsum += power == 1.0 ? std::fabs(g) : std::pow(std::fabs(g), power);
          value = std::max(value, rowsum);
        }
      }
      rec.values.push_back(value);
    }
    rec.verdict = trend_sup(rec.values, tol_);
  } else if (id == "35") {
    const Digest& dig = digest();
    for (size_t i = 0; i < S; ++i) {
      double gap = 0.0;
      if (i > 0)
        for (Index n = 0; n < kProbe; ++n)
          for (Index k = 0; k < kProbe; ++k)
            gap = std::max(gap, std::fabs(dig.tk_at[static_cast<size_t>(n)][i][static_cast<size_t>(k)] -
                                          dig.tk_at[static_cast<size_t>(n)][i - 1][static_cast<size_t>(k)]));
      else
        for (Index n = 0; n < kProbe; ++n)
          for (Index k = 0; k < kProbe; ++k)
            gap = std::max(gap, std::fabs(dig.tk_at[static_cast<size_t>(n)][0][static_cast<size_t>(k)]));
      rec.values.push_back(gap);
    }
    rec.verdict = S >= 2 ? trend_limit_gaps(std::span(rec.values).subspan(1), tol_)
                         : VerdictKind::Inconclusive;
  } else if (id == "36") {
    const Digest& dig = digest();
    for (size_t i = 0; i < S; ++i) {
      double value = 0.0;
      for (Index n = 0; n < schedule_[i]; ++n)
        value = std::max(value, dig.sup36_at[static_cast<size_t>(n)][i]);
      rec.values.push_back(value);
    }
    rec.verdict = trend_sup(rec.values, tol_);
  } else if (id == "37") {
    const Digest& dig = digest();
    for (size_t i = 0; i < S; ++i) {
      const Index lo = i > 0 ? schedule_[i - 1] : 0;
      const Index hi = schedule_[i];
      double gap = 0.0;
      for (Index n = 0; n < kProbe; ++n)
        gap = std::max(gap, window_gap([&](Index k) { return f46(dig, n, k); }, lo, hi));
      rec.values.push_back(gap);
    }
    rec.verdict = trend_limit_gaps(rec.values, tol_);
  } else if (id == "38") {
    const Digest& dig = digest();
    std::vector<double> prev(static_cast<size_t>(kProbe), 0.0);
    for (size_t i = 0; i < S; ++i) {
      double gap = 0.0;
      for (Index n = 0; n < kProbe; ++n) {
        double sum = 0.0;
        for (Index k = 0; k < schedule_[i]; ++k)
          sum += dig.tk_full[static_cast<size_t>(n)][static_cast<size_t>(k)];
        gap = std::max(gap, std::fabs(sum - prev[static_cast<size_t>(n)]));
        prev[static_cast<size_t>(n)] = sum;
      }
      rec.values.push_back(gap);
    }
    rec.verdict = S >= 2 ? trend_limit_gaps(std::span(rec.values).subspan(1), tol_)
                         : VerdictKind::Inconclusive;
  } else if (id == "39") {
    const Digest& dig = digest();
    double prev = 0.0;
    for (size_t i = 0; i < S; ++i) {
      double psum = 0.0;
      for (Index n = 0; n < schedule_[i]; ++n)
        psum += std::pow(std::fabs(row_limit(dig, n)), q);
      rec.values.push_back(psum - prev);
      prev = psum;
    }
    rec.verdict = trend_limit_gaps(rec.values, tol_);
  } else if (id == "45") {
    const Digest& dig = digest();
    for (size_t i = 0; i < S; ++i) {
      double sup = 0.0;
      for (Index n = 0; n < schedule_[i]; ++n)
        sup = std::max(sup, std::fabs(row_limit(dig, n)));
      rec.values.push_back(sup);
    }
    rec.verdict = trend_sup(rec.values, tol_);
  } else if (id == "46") {
    const Digest& dig = digest();
    for (size_t i = 0; i < S; ++i) {
      double sup = 0.0;
      for (Index n = 0; n < schedule_[i]; ++n)
        for (Index k = 0; k <= schedule_[i]; ++k)
          sup = std::max(sup, std::fabs(f46(dig, n, k)));
      rec.values.push_back(sup);
    }
    rec.verdict = trend_sup(rec.values, tol_);
  } else if (id == "47" || id == "47z") {
    const Digest& dig = digest();
    for (size_t i = 0; i < S; ++i) {
      const Index lo = i > 0 ? schedule_[i - 1] : 0;
      const Index hi = schedule_[i];
      if (id == "47")
        rec.values.push_back(window_gap([&](Index n) { return row_limit(dig, n); }, lo, hi));
      else
        rec.values.push_back(std::fabs(row_limit(dig, hi - 1)));
    }
    rec.verdict = id == "47" ? trend_limit_gaps(rec.values, tol_) : trend_zero(rec.values, tol_);
  } else if (id == "48" || id == "48z") {
    const Digest& dig = digest();
    for (size_t i = 0; i < S; ++i) {
      const Index lo = i > 0 ? schedule_[i - 1] : 0;
      const Index hi = schedule_[i];
      double v = 0.0;
      for (Index k = 0; k < kProbe; ++k) {
        auto value = [&](Index n) {
          return dig.ghat_at[static_cast<size_t>(n)][i][static_cast<size_t>(k)];
        };
        v = std::max(v, id == "48" ? window_gap(value, lo, hi) : std::fabs(value(hi - 1)));
      }
      rec.values.push_back(v);
    }
    rec.verdict = id == "48" ? trend_limit_gaps(rec.values, tol_) : trend_zero(rec.values, tol_);
  } else if (id == "49" || id == "49z") {
    const Digest& dig = digest();
    for (size_t i = 0; i < S; ++i) {
      const Index lo = i > 0 ? schedule_[i - 1] : 0;
      const Index hi = schedule_[i];
      auto rowsum = [&](Index n) {
        const auto& row = dig.ghat_at[static_cast<size_t>(n)][i];
        double s = 0.0;
        for (double g : row) s += g;
        return s;
      };
      rec.values.push_back(id == "49" ? window_gap(rowsum, lo, hi) : std::fabs(rowsum(hi - 1)));
    }
    rec.verdict = id == "49" ? trend_limit_gaps(rec.values, tol_) : trend_zero(rec.values, tol_);
  } else if (id == "L1") {
    for (Index Ni : schedule_) {
      double s = 0.0;
      for (Index k = 0; k < Ni; ++k) s += std::fabs(raw(Ni - 1, k));
      rec.values.push_back(s);
    }
    rec.verdict = trend_zero(rec.values, tol_);
  } else if (id == "L2i" || id == "L10") {
    const double power = id == "L10" ? q : 1.0;
    // Minkowski / abs-sum surrogate of the column-subset sup.
    for (Index Ni : schedule_) {
      double total = 0.0;
      for (Index k = 0; k < Ni; ++k) {
        double colp = 0.0;
        for (Index n = 0; n < Ni; ++n) colp += std::pow(std::fabs(raw(n, k)), power);
        total += std::pow(colp, 1.0 / power);
      }
      rec.values.push_back(std::pow(total, power));
    }
    rec.verdict = trend_sup(rec.values, tol_);
  } else if (id == "L2ii") {
    for (Index Ni : schedule_) {
      double total = 0.0;
      for (Index k = 0; k < Ni; ++k) {
        double col = 0.0;
        for (Index n = 0; n < Ni; ++n) col += std::fabs(raw(n, k));
        total += std::pow(col, q);
      }
      rec.values.push_back(total);
    }
    rec.verdict = trend_sup(rec.values, tol_);
  } else if (id == "L7" || id == "L8") {
    const double power = id == "L8" ? q : 1.0;
    for (Index Ni : schedule_) {
      double sup = 0.0;
      for (Index n = 0; n < Ni; ++n) {
        double s = 0.0;
        for (Index k = 0; k < Ni; ++k) s += std::pow(std::fabs(raw(n, k)), power);
        sup = std::max(sup, s);
      }
      rec.values.push_back(sup);
    }
    rec.verdict = trend_sup(rec.values, tol_);
  } else if (id == "L3" || id == "L4" || id == "L5" || id == "L6" || id == "L11" ||
             id == "L12") {
    // Composite classical conditions: column limits plus a row-sum bound.
    std::vector<double> col_gaps, col_last, rowsum_gaps, rowsum_last, bound_vals, twosided;
    const Index M = schedule_.back();
    for (size_t i = 0; i < S; ++i) {
      const Index lo = i > 0 ? schedule_[i - 1] : 0;
      const Index hi = schedule_[i];
      double cg = 0.0, cl = 0.0;
      for (Index k = 0; k < kProbe; ++k) {
        cg = std::max(cg, window_gap([&](Index n) { return raw(n, k); }, lo, hi));
        cl = std::max(cl, std::fabs(raw(hi - 1, k)));
      }
      col_gaps.push_back(cg);
      col_last.push_back(cl);
      auto rowsum = [&](Index n) {
        double s = 0.0;
        for (Index k = 0; k < hi; ++k) s += raw(n, k);
        return s;
      };
      rowsum_gaps.push_back(window_gap(rowsum, lo, hi));
      rowsum_last.push_back(std::fabs(rowsum(hi - 1)));
      const double power = (id == "L6") ? q : 1.0;
      double sup = 0.0;
      for (Index n = 0; n < hi; ++n) {
        double s = 0.0;
        for (Index k = 0; k < hi; ++k) s += std::pow(std::fabs(raw(n, k)), power);
        sup = std::max(sup, s);
      }
      bound_vals.push_back(sup);
      double abs_here = 0.0, abs_limit = 0.0;
      for (Index k = 0; k < hi; ++k) {
        abs_here += std::fabs(raw(hi - 1, k));
        abs_limit += std::fabs(raw(M - 1, k));
      }
      twosided.push_back(std::fabs(abs_here - abs_limit));
    }
    VerdictKind limits = trend_limit_gaps(col_gaps, tol_);
    VerdictKind bound = trend_sup(bound_vals, tol_);
    rec.values = bound_vals;
    if (id == "L3") {
      rec.verdict = conj({limits, bound});
    } else if (id == "L4") {
      rec.verdict = conj({limits, bound, trend_limit_gaps(rowsum_gaps, tol_)});
    } else if (id == "L5") {
      rec.values = twosided;
      rec.verdict = conj({limits, trend_zero(twosided, tol_)});
    } else if (id == "L6") {
      rec.verdict = conj({limits, bound});
    } else if (id == "L11") {
      rec.verdict = conj({bound, trend_zero(col_last, tol_), trend_zero(rowsum_last, tol_)});
    } else {  // L12
      rec.verdict = conj({bound, trend_zero(col_last, tol_)});
    }
    rec.note = "column-limit part: " + std::string(to_string(limits));
  } else {
    throw std::invalid_argument("matclass: unknown condition id '" + id + "'");
  }
  return rec;
}

namespace {

struct TheoremSpec {
  const char* source;
  const char* target;
  std::vector<const char*> ids;
  bool needs_p;
};

TheoremSpec theorem_spec(int theorem, int part) {
  switch (theorem) {
    case 11: return {"c^lambda(B)", "lp", {"34", "35", "36", "37", "38", "39"}, true};
    case 12: return {"c^lambda(B)", "linf", {"37", "38", "44", "45"}, false};
    case 13:
      if (part == 2) return {"c0^lambda(B)", "linf", {"36", "44", "46"}, false};
      return {"c0^lambda(B)", "lp", {"34", "35", "36", "46"}, true};
    case 14: return {"c^lambda(B)", "c", {"37", "38", "44", "47", "48", "49"}, false};
    case 15: return {"c^lambda(B)", "c0", {"37", "38", "44", "47z", "48z", "49z"}, false};
    case 16: return {"c0^lambda(B)", "c", {"35", "44", "46", "48"}, false};
    case 17: return {"c0^lambda(B)", "c0", {"35", "44", "48"}, false};
    case 18: return {"lp^lambda(B)", "linf", {"36", "46", "51"}, true};
    case 19: return {"lp^lambda(B)", "c", {"36", "46", "48", "51"}, true};
    case 20: return {"lp^lambda(B)", "c0", {"36", "46", "51", "48z"}, true};
    default: throw std::invalid_argument("class_verdict: theorem must be in 11..20");
  }
}

}  // namespace

ClassReport Evaluator::class_verdict(int theorem, std::optional<double> p_exp, int part) {
  TheoremSpec spec = theorem_spec(theorem, part);
  if (spec.needs_p && !(p_exp.value_or(0.0) > 1.0))
    throw std::invalid_argument("class_verdict: theorem " + std::to_string(theorem) +
                                " needs an exponent p > 1");
  ClassReport rep;
  rep.theorem = theorem;
  rep.source = spec.source;
  rep.target = spec.target;

  const double pe = p_exp.value_or(2.0);
  for (const char* id : spec.ids) {
    std::optional<double> q;
    std::string sid(id);
    if (sid == "34" || sid == "39") q = pe;
    if (sid == "51") q = pe / (pe - 1.0);
    rep.conditions.push_back(condition(sid, q));
  }

  // A failed inner-series prerequisite leaves the g-based conditions
  // meaningless; their Member evidence is downgraded, divergence stands.
  const std::set<std::string> ghat_dependent = {"34", "44", "48", "48z", "49", "49z", "51"};
  bool prereq_failed = false;
  for (const auto& c : rep.conditions)
    if (c.id == "35" && c.verdict != VerdictKind::Member) prereq_failed = true;
  if (prereq_failed)
    for (auto& c : rep.conditions)
      if (ghat_dependent.count(c.id) && c.verdict == VerdictKind::Member) {
        c.verdict = VerdictKind::Inconclusive;
        c.note = "inner series prerequisite (35) not established";
      }

  rep.overall = VerdictKind::Member;
  for (const auto& c : rep.conditions) {
    if (c.verdict == VerdictKind::NonMember) rep.overall = VerdictKind::NonMember;
    else if (c.verdict == VerdictKind::Inconclusive && rep.overall == VerdictKind::Member)
      rep.overall = VerdictKind::Inconclusive;
  }
  return rep;
}

double Evaluator::transform_identity_check(const RealSeq& x, Index N) {
  Index kcap = std::max<Index>(2 * N, schedule_.back());
  if (A_.row_decay() && *A_.row_decay() > 0.0 && *A_.row_decay() < 1.0) {
    Index hint = N + static_cast<Index>(std::ceil(-32.0 * std::log(10.0) /
                                                  std::log(*A_.row_decay())));
    kcap = std::min(kcap, std::max(N + 8, hint));
  }

  RealSeq y = forward(p_, lam_, x, kcap);
  Diagnostic diag = classify_base(y, SpaceTag{SpaceTag::Base::c, false, {}}, kcap, tol_);
  if (diag.verdict.kind != VerdictKind::Member || !diag.limit_estimate)
    throw std::runtime_error(
        "transform_identity_check: forward transform not classified convergent");
  const double l = *diag.limit_estimate;

  BandInverseSeq dseq(p_);
  std::vector<double> dv(static_cast<size_t>(kcap) + 1);
  for (Index m = 0; m <= kcap; ++m) dv[static_cast<size_t>(m)] = dseq.at(m);
  std::vector<double> lamv(static_cast<size_t>(kcap) + 3), dlam(static_cast<size_t>(kcap) + 3);
  for (Index k = 0; k <= kcap + 2; ++k) {
    lamv[static_cast<size_t>(k)] = lam_.at(k);
    dlam[static_cast<size_t>(k)] = lam_.diff(k);
  }

  double worst = 0.0;
  for (Index n = 0; n < N; ++n) {
    std::vector<double> arow(static_cast<size_t>(kcap) + 1);
    for (Index j = 0; j <= kcap; ++j) arow[static_cast<size_t>(j)] = A_.at(n, j);

    const double row_lim =
        (1.0 / p_.r()) * lamv[static_cast<size_t>(kcap)] * arow[static_cast<size_t>(kcap)] /
        dlam[static_cast<size_t>(kcap)];
    RawGhatWalker w(dv, arow, lamv, dlam);
    std::vector<double> half;
    for (Index m = 0; m <= kcap; ++m) {
      w.push(m);
      if (m == kcap / 2) {
        half.resize(static_cast<size_t>(m));
        for (Index k = 0; k < m; ++k) half[static_cast<size_t>(k)] = w.ghat(k);
      }
    }
    for (Index k = 0; k < kcap / 2; ++k)
      if (std::fabs(w.ghat(k) - half[static_cast<size_t>(k)]) >= tol_.eps_tail)
        throw std::runtime_error("transform_identity_check: g[n,k] row not converged");

    double lhs = 0.0, rhs = l * row_lim;
    for (Index k = 0; k <= kcap; ++k) lhs += arow[static_cast<size_t>(k)] * x.at(k);
    for (Index k = 0; k < kcap; ++k) rhs += w.ghat(k) * y.at(k);
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

ConditionRecord condition(const std::string& id, const InfiniteMatrix& A, const BandParams& p,
                          const LambdaSeq& lam, std::span<const Index> schedule,
                          const Tolerances& tol, std::optional<double> q) {
  Evaluator ev(A, p, lam, std::vector<Index>(schedule.begin(), schedule.end()), tol);
  return ev.condition(id, q);
}

ClassReport class_verdict(int theorem, const InfiniteMatrix& A, const BandParams& p,
                          const LambdaSeq& lam, std::span<const Index> schedule,
                          const Tolerances& tol, std::optional<double> p_exp, int part) {
  Evaluator ev(A, p, lam, std::vector<Index>(schedule.begin(), schedule.end()), tol);
  return ev.class_verdict(theorem, p_exp, part);
}

double transform_identity_check(const InfiniteMatrix& A, const BandParams& p, const LambdaSeq& lam,
                                const RealSeq& x, Index N, const Tolerances& tol) {
  Evaluator ev(A, p, lam, {64, 128, 256, 512}, tol);
  return ev.transform_identity_check(x, N);
}

}  // namespace seqspace::matclass
