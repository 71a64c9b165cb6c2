#include "seqspace/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seqspace/rng.hpp"

namespace seqspace {

SpaceTag SpaceTag::parse(const std::string& text, bool wrapped) {
  SpaceTag tag;
  tag.wrapped = wrapped;
  if (text == "c0") {
    tag.base = Base::c0;
  } else if (text == "c") {
    tag.base = Base::c;
  } else if (text == "linf") {
    tag.base = Base::linf;
  } else if (text.rfind("lp:", 0) == 0) {
    tag.base = Base::lp;
    double p = std::stod(text.substr(3));
    if (!(p >= 1.0)) throw std::invalid_argument("SpaceTag: lp exponent must satisfy p >= 1");
    tag.p = p;
  } else {
    throw std::invalid_argument("SpaceTag: unknown space '" + text +
                                "' (expected c0 | c | linf | lp:<p>)");
  }
  return tag;
}

std::string SpaceTag::str() const {
  std::string b;
  switch (base) {
    case Base::c0: b = "c0"; break;
    case Base::c: b = "c"; break;
    case Base::linf: b = "linf"; break;
    case Base::lp: b = "lp:" + std::to_string(p.value_or(0.0)); break;
  }
  return wrapped ? b + "^lambda(B)" : b;
}

namespace {

struct Windows {
  Index w;       // effective window length
  Index begin3;  // N - 3w
};

Windows make_windows(Index N, const Tolerances& tol) {
  Index w = std::max<Index>(tol.window, N / 4);
  w = std::min<Index>(w, std::max<Index>(1, N / 3));
  return Windows{w, N - 3 * w};
}

double window_sup(const std::vector<double>& v, Index lo, Index hi) {
  double m = 0.0;
  for (Index i = lo; i < hi; ++i) m = std::max(m, std::fabs(v[static_cast<size_t>(i)]));
  return m;
}

}  // namespace

Diagnostic classify_base(const RealSeq& x, const SpaceTag& tag, Index N, const Tolerances& tol) {
  tol.validate();
  if (N <= tol.window)
    throw std::invalid_argument("classify_base: need N > tolerance window");
  Diagnostic d;
  d.N = N;
  d.verdict.truncation = N;
  const auto win = make_windows(N, tol);
  const Index w = win.w;
  std::vector<double> v = x.prefix(N);

  auto member_threshold = [&](SpaceTag::Base b) {
    // The c gap tolerance is doubled so that a c0 Member verdict (tail sup
    // below eps_tail) always implies a c Member verdict on the same data.
    return b == SpaceTag::Base::c ? 2.0 * tol.eps_tail : tol.eps_tail;
  };

  switch (tag.base) {
    case SpaceTag::Base::c0: {
      double s1 = window_sup(v, win.begin3, win.begin3 + w);
      double s2 = window_sup(v, win.begin3 + w, win.begin3 + 2 * w);
      double s3 = window_sup(v, N - w, N);
      d.tail_sup = s3;
      d.verdict.evidence["tail_sup"] = s3;
      d.verdict.evidence["prev_window_sups"] = s2;
      if (s3 < tol.eps_tail)
        d.verdict.kind = VerdictKind::Member;
      else if (s3 > 10.0 * tol.eps_tail && s1 <= s2 && s2 <= s3)
        d.verdict.kind = VerdictKind::NonMember;
      else
        d.verdict.kind = VerdictKind::Inconclusive;
      break;
    }
    case SpaceTag::Base::c: {
      auto window_gap = [&](Index lo, Index hi) {
        double mn = std::numeric_limits<double>::infinity(), mx = -mn;
        for (Index i = lo; i < hi; ++i) {
          mn = std::min(mn, v[static_cast<size_t>(i)]);
          mx = std::max(mx, v[static_cast<size_t>(i)]);
        }
        return mx - mn;
      };
      double g1 = window_gap(win.begin3, win.begin3 + w);
      double g2 = window_gap(win.begin3 + w, win.begin3 + 2 * w);
      double g3 = window_gap(N - w, N);
      d.cauchy_gap = g3;
      d.verdict.evidence["cauchy_gap"] = g3;
      const double thresh = member_threshold(SpaceTag::Base::c);
      if (g3 < thresh) {
        d.verdict.kind = VerdictKind::Member;
        double sum = 0.0;
        for (Index i = N - w; i < N; ++i) sum += v[static_cast<size_t>(i)];
        d.limit_estimate = sum / static_cast<double>(w);
        d.verdict.evidence["limit_estimate"] = *d.limit_estimate;
      } else if (g3 > 10.0 * thresh && g1 <= g2 && g2 <= g3) {
        d.verdict.kind = VerdictKind::NonMember;
      } else {
        d.verdict.kind = VerdictKind::Inconclusive;
      }
      break;
    }
    case SpaceTag::Base::linf: {
      double sup_quarter = window_sup(v, 0, N / 4);
      double sup_half = window_sup(v, 0, N / 2);
      double sup_prev = window_sup(v, 0, N - w);
      double sup_full = std::max(sup_prev, window_sup(v, N - w, N));
      d.tail_sup = sup_full;
      d.verdict.evidence["sup"] = sup_full;
      d.verdict.evidence["sup_increase_last_window"] = sup_full - sup_prev;
      if (sup_full - sup_prev < tol.eps_tail)
        d.verdict.kind = VerdictKind::Member;
      else if (sup_full > 10.0 * tol.eps_tail && sup_full >= tol.growth_ratio * sup_half &&
               sup_half >= tol.growth_ratio * sup_quarter)
        d.verdict.kind = VerdictKind::NonMember;
      else
        d.verdict.kind = VerdictKind::Inconclusive;
      break;
    }
    case SpaceTag::Base::lp: {
      const double p = tag.p.value_or(1.0);
      auto window_increment = [&](Index lo, Index hi) {
        double sum = 0.0;
        for (Index i = lo; i < hi; ++i) sum += std::pow(std::fabs(v[static_cast<size_t>(i)]), p);
        return sum;
      };
      double i1 = window_increment(win.begin3, win.begin3 + w);
      double i2 = window_increment(win.begin3 + w, win.begin3 + 2 * w);
      double i3 = window_increment(N - w, N);
      d.psum_tail_increment = i3;
      d.verdict.evidence["psum_tail_increment"] = i3;
      if (i3 < tol.eps_tail)
        d.verdict.kind = VerdictKind::Member;
      else if (std::min({i1, i2, i3}) >= 10.0 * tol.eps_tail)
        d.verdict.kind = VerdictKind::NonMember;
      else
        d.verdict.kind = VerdictKind::Inconclusive;
      break;
    }
  }
  return d;
}

Diagnostic classify_domain(const RealSeq& x, const SpaceTag& tag, const BandParams& p,
                           const LambdaSeq& lam, Index N, const Tolerances& tol) {
  SpaceTag base = tag;
  base.wrapped = false;
  Diagnostic d = classify_base(forward(p, lam, x, N), base, N, tol);
  return d;
}

RealSeq witness(const std::string& name, const BandParams& p) {
  if (name == "thm4") {
    BandInverseSeq d(p);
    return RealSeq::recurrence([d](Index k) { return d.prefix_sum(k); }, "De");
  }
  if (name == "thm5")
    return RealSeq::closed_form(
        [](Index k) { return std::log(static_cast<double>(k) + 3.0); }, "ln(k+3)");
  if (name == "thm7" || name == "e") return ones_seq();
  if (name.rfind("e_k(", 0) == 0 && name.back() == ')') {
    Index j = std::stoll(name.substr(4, name.size() - 5));
    return unit_seq(j);
  }
  throw std::invalid_argument("witness: unknown name '" + name +
                              "' (expected thm4 | thm5 | thm7 | e | e_k(j))");
}

RealSeq thm6_z(const BandParams& p, const LambdaSeq& lam) {
  const double r = p.r(), s = p.s(), t = p.t();
  return RealSeq::closed_form(
      [r, s, t, lam](Index k) {
        return std::fabs(r * lam.diff(k) + s * lam.diff(k + 1) + t * lam.diff(k + 2)) /
               lam.diff(k);
      },
      "z");
}

namespace {

InclusionReport::Part check_part(const std::string& name, const Diagnostic& got,
                                 VerdictKind expected, const std::string& note = "") {
  InclusionReport::Part part;
  part.name = name;
  part.got = got.verdict.kind;
  part.ok = got.verdict.kind == expected;
  part.note = note;
  return part;
}

// A random convergent sequence: limit + geometrically damped noise.
RealSeq random_convergent(Rng& rng) {
  const double limit = rng.uniform(-2.0, 2.0);
  const Index n_terms = 64;
  std::vector<double> noise(n_terms);
  for (auto& v : noise) v = rng.uniform(-1.0, 1.0);
  return RealSeq::closed_form(
      [limit, noise](Index k) {
        return k < static_cast<Index>(noise.size())
                   ? limit + noise[static_cast<size_t>(k)] * std::pow(0.7, static_cast<double>(k))
                   : limit;
      },
      "random convergent");
}

RealSeq random_bounded(Rng& rng) {
  // Deterministic pseudo-noise from a fixed per-sequence key keeps the
  // sequence pure under repeated evaluation.
  const std::uint64_t key = rng.raw();
  return RealSeq::closed_form(
      [key](Index k) {
        std::uint64_t z = key + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(k + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;  // in [-1, 1)
      },
      "random bounded");
}

}  // namespace

InclusionReport inclusion_check(int theorem, const BandParams& p, const LambdaSeq& lam, Index N,
                                const Tolerances& tol, std::optional<double> p_exp,
                                std::uint64_t seed) {
  InclusionReport rep;
  rep.theorem = theorem;
  Rng rng(seed);
  const SpaceTag c0_tag{SpaceTag::Base::c0, true, {}};
  const SpaceTag c_tag{SpaceTag::Base::c, true, {}};

  switch (theorem) {
    case 4: {
      RealSeq de = witness("thm4", p);
      rep.parts.push_back(check_part("witness in c domain", classify_domain(de, c_tag, p, lam, N, tol),
                                     VerdictKind::Member, "W(De) = e"));
      rep.parts.push_back(check_part("witness not in c0 domain",
                                     classify_domain(de, c0_tag, p, lam, N, tol),
                                     VerdictKind::NonMember));
      for (int i = 0; i < 5; ++i) {
        // Containment direction: members of the null domain lie in the
        // convergent domain. Build x from random y in c0.
        std::vector<double> y(static_cast<size_t>(N));
        double amp = rng.uniform(0.2, 2.0);
        for (Index n = 0; n < N; ++n)
          y[static_cast<size_t>(n)] =
              amp * rng.uniform(-1.0, 1.0) / std::pow(1.0 + static_cast<double>(n), 1.2);
        RealSeq x = inverse(p, lam, RealSeq::from_values(std::move(y)), N);
        rep.parts.push_back(check_part("sampled null-domain member in c domain",
                                       classify_domain(x, c_tag, p, lam, N, tol),
                                       VerdictKind::Member));
      }
      break;
    }
    case 5: {
      if (std::fabs(p.sum()) > 1e-12) {
        rep.hypothesis_ok = false;
        rep.hypothesis_note = "theorem 5 requires r + s + t = 0";
        break;
      }
      RealSeq y = witness("thm5", p);
      rep.parts.push_back(check_part("log witness in c0 domain",
                                     classify_domain(y, c0_tag, p, lam, N, tol),
                                     VerdictKind::Member));
      Diagnostic base_c = classify_base(y, SpaceTag{SpaceTag::Base::c, false, {}}, N, tol);
      InclusionReport::Part part;
      part.name = "log witness not convergent";
      part.got = base_c.verdict.kind;
      part.ok = base_c.verdict.kind != VerdictKind::Member;
      rep.parts.push_back(part);
      for (int i = 0; i < 5; ++i) {
        RealSeq x = random_convergent(rng);
        rep.parts.push_back(check_part("sampled convergent sequence in c0 domain",
                                       classify_domain(x, c0_tag, p, lam, N, tol),
                                       VerdictKind::Member));
      }
      break;
    }
    case 6: {
      RealSeq z = thm6_z(p, lam);
      // z in the lambda-null space means the lambda-mean of z vanishes.
      RealSeq lz = forward(BandParams(1.0, 0.0, 0.0), lam, z, N);
      Diagnostic dz = classify_base(lz, SpaceTag{SpaceTag::Base::c0, false, {}}, N, tol);
      InclusionReport::Part crit;
      crit.name = "criterion: z in lambda-null space";
      crit.got = dz.verdict.kind;
      crit.ok = dz.verdict.kind != VerdictKind::Inconclusive;
      crit.note = dz.verdict.kind == VerdictKind::Member ? "inclusion holds" : "inclusion fails";
      rep.parts.push_back(crit);
      if (dz.verdict.kind == VerdictKind::Member) {
        for (int i = 0; i < 5; ++i) {
          RealSeq x = random_bounded(rng);
          rep.parts.push_back(check_part("sampled bounded sequence in c0 domain",
                                         classify_domain(x, c0_tag, p, lam, N, tol),
                                         VerdictKind::Member));
        }
      }
      break;
    }
    case 7: {
      const double pe = p_exp.value_or(2.0);
      // Containment estimate: |W(x)|_inf <= (|r|+|s|+|t|) |x|_inf, exact on
      // prefixes up to rounding slack.
      const double bound = std::fabs(p.r()) + std::fabs(p.s()) + std::fabs(p.t());
      bool bound_ok = true;
      for (int i = 0; i < 5 && bound_ok; ++i) {
        RealSeq x = random_bounded(rng);
        RealSeq y = forward(p, lam, x, N);
        for (Index n = 0; n < N; ++n)
          if (std::fabs(y.at(n)) > bound * (1.0 + 1e-12) + 1e-12) bound_ok = false;
      }
      InclusionReport::Part bp;
      bp.name = "norm bound |W(x)|_inf <= (|r|+|s|+|t|) |x|_inf";
      bp.got = bound_ok ? VerdictKind::Member : VerdictKind::NonMember;
      bp.ok = bound_ok;
      rep.parts.push_back(bp);
      if (std::fabs(p.sum() - 1.0) > 1e-12) {
        rep.hypothesis_ok = false;
        rep.hypothesis_note = "strictness witness requires r + s + t = 1";
        break;
      }
      RealSeq e = witness("thm7", p);
      rep.parts.push_back(check_part("ones witness in linf domain",
                                     classify_domain(e, SpaceTag{SpaceTag::Base::linf, true, {}},
                                                     p, lam, N, tol),
                                     VerdictKind::Member));
      rep.parts.push_back(check_part("ones witness not in lp domain",
                                     classify_domain(e, SpaceTag{SpaceTag::Base::lp, true, pe}, p,
                                                     lam, N, tol),
                                     VerdictKind::NonMember));
      break;
    }
    default:
      throw std::invalid_argument("inclusion_check: theorem must be one of 4, 5, 6, 7");
  }

  rep.confirmed = rep.hypothesis_ok;
  for (const auto& part : rep.parts) rep.confirmed = rep.confirmed && part.ok;
  return rep;
}

}  // namespace seqspace
