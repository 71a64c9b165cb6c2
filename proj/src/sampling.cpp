#include "seqspace/sampling.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

namespace seqspace {

namespace {

struct RootDraw {
  double s_over_r;  // -(alpha + beta)
  double t_over_r;  // alpha * beta
  bool dyadic_double = false;  // exact zero discriminant wanted
};

RootDraw draw_roots(Rng& rng, double root_cap) {
  switch (rng.uniform_index(0, 2)) {
    case 0: {  // real distinct roots
      double a = rng.sign() * rng.uniform(0.2, root_cap);
      double b = rng.sign() * rng.uniform(0.2, root_cap);
      return {-(a + b), a * b};
    }
    case 1: {  // complex conjugate pair, kept away from the real axis
      double rho = rng.uniform(0.2, root_cap);
      double theta = rng.uniform(0.35, M_PI - 0.35);
      return {-2.0 * rho * std::cos(theta), rho * rho};
    }
    default: {
      // Double root on a dyadic grid, so that together with a dyadic r the
      // products -2ar and a^2 r are exact and the discriminant is exactly 0.
      double a = rng.sign() * static_cast<double>(10 + rng.uniform_index(0, 23)) / 32.0;
      return {-2.0 * a, a * a, true};
    }
  }
}

bool growth_ok(const BandParams& p, const BandSamplerProfile& prof) {
  const double r = p.r(), s = p.s(), t = p.t();
  double d0 = 1.0 / r, d1 = -s * d0 / r;
  double max_abs = std::max(std::fabs(d0), std::fabs(d1));
  double sum_abs = std::fabs(d0) + std::fabs(d1);
  for (Index m = 2; m <= prof.N; ++m) {
    double d2 = -(s * d1 + t * d0) / r;
    max_abs = std::max(max_abs, std::fabs(d2));
    sum_abs += std::fabs(d2);
    if (max_abs > prof.max_abs_cap || sum_abs > prof.sum_abs_cap) return false;
    d0 = d1;
    d1 = d2;
  }
  return true;
}

}  // namespace

BandParams sample_band_params(Rng& rng, const BandSamplerProfile& prof) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    RootDraw roots = draw_roots(rng, prof.root_cap);
    double r = roots.dyadic_double
                   ? static_cast<double>(4 + rng.uniform_index(0, 28)) / 8.0
                   : rng.uniform(0.5, 4.0);
    double s = r * roots.s_over_r;
    double t = r * roots.t_over_r;
    if (std::fabs(s) < 0.1 || std::fabs(s) > 10.0) continue;
    if (std::fabs(t) < 0.1 || std::fabs(t) > 10.0) continue;
    BandParams p(r, s, t);
    if (growth_ok(p, prof)) return p;
  }
  throw std::runtime_error("sample_band_params: rejection sampling did not converge");
}

BandSamplerProfile identity_check_profile() { return {1.2, 1e4, 1e30, 64}; }
BandSamplerProfile round_trip_profile() { return {1.2, 1e4, 2e4, 200}; }
BandSamplerProfile basis_profile() { return {1.05, 1e3, 1e4, 96}; }

LambdaSeq sample_lambda(Rng& rng) {
  switch (rng.uniform_index(0, 4)) {
    case 0: {
      double a = rng.uniform(0.3, 3.0), b = rng.uniform(0.3, 3.0);
      return arithmetic_lambda(a, b);
    }
    case 1:
      return LambdaSeq(
          [](Index k) {
            double v = static_cast<double>(k) + 1.0;
            return v * v;
          },
          1 << 20, "squares");
    case 2:
      return LambdaSeq([](Index k) { return std::log(static_cast<double>(k) + 2.0); }, 1 << 20,
                       "log");
    case 3: {
      double base = rng.uniform(0.5, 2.0), ratio = rng.uniform(1.05, 1.3);
      return LambdaSeq(
          [base, ratio](Index k) { return base * std::pow(ratio, static_cast<double>(k)); },
          1 << 20, "geometric");
    }
    default: {
      // Random strictly positive increments, memoized cumulative sums.
      const std::uint64_t key = rng.raw();
      auto sums = std::make_shared<std::vector<double>>();
      auto mu = std::make_shared<std::mutex>();
      return LambdaSeq(
          [key, sums, mu](Index k) {
            std::lock_guard lock(*mu);
            while (static_cast<Index>(sums->size()) <= k) {
              std::uint64_t i = sums->size();
              std::uint64_t z = key + 0x9e3779b97f4a7c15ull * (i + 1);
              z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
              z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
              z ^= z >> 31;
              double step = 0.2 + 1.8 * static_cast<double>(z >> 11) * 0x1.0p-53;
              sums->push_back((sums->empty() ? 0.0 : sums->back()) + step);
            }
            return (*sums)[static_cast<size_t>(k)];
          },
          1 << 20, "random-increments");
    }
  }
}

RealSeq sample_uniform_seq(Rng& rng) {
  const std::uint64_t key = rng.raw();
  return RealSeq::closed_form(
      [key](Index k) {
        std::uint64_t z = key + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(k + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;
      },
      "random uniform");
}

}  // namespace seqspace
