#pragma once
// Sampler diagnostics: throughput-weight statistics for each sampling
// strategy and a Pearson chi-square goodness-of-fit test of sampled
// directions against the analytic density. Both are sharded with fixed
// stream assignment, so results are identical for any thread count.

#include <cstdint>
#include <vector>

#include "eon/brdf.hpp"
#include "eon/core.hpp"
#include "eon/rng.hpp"
#include "eon/sampling.hpp"
#include "eon/threading.hpp"

namespace eon {

enum class Strategy { cosine, uniform, cltc, cltc_mis };

// Cosine-weighted hemisphere draw, pdf = cos(theta) / pi.
inline DirectionalSample cosine_lobe_sample(RandomPair u) {
  const double radius = std::sqrt(u.u1);
  const double phi = kTwoPi * u.u2;
  const double z = std::sqrt(std::fmax(1.0 - u.u1, 0.0));
  return {Direction::unchecked(radius * std::cos(phi), radius * std::sin(phi), z),
          z * kInvPi};
}

inline DirectionalSample draw_sample(Strategy s, Direction wo, FonRoughness r, RandomPair u) {
  switch (s) {
    case Strategy::cosine:
      return cosine_lobe_sample(u);
    case Strategy::uniform:
      return {uniform_lobe_sample(u), 1.0 / kTwoPi};
    case Strategy::cltc:
      return cltc_sample(wo, r, u);
    case Strategy::cltc_mis:
      return sample_eon(wo, r, u);
  }
  throw std::logic_error("draw_sample: unknown strategy");
}

inline double strategy_pdf(Strategy s, Direction wo, Direction wi, FonRoughness r) {
  switch (s) {
    case Strategy::cosine:
      return std::fmax(wi.z, 0.0) * kInvPi;
    case Strategy::uniform:
      return wi.z < 0.0 ? 0.0 : 1.0 / kTwoPi;
    case Strategy::cltc:
      return cltc_pdf(wo, wi, r);
    case Strategy::cltc_mis:
      return pdf_eon(wo, wi, r);
  }
  throw std::logic_error("strategy_pdf: unknown strategy");
}

struct WeightStats {
  double mean = 0.0;
  double variance = 0.0;  // population variance of the weights
  double max = 0.0;
  std::int64_t count = 0;
};

namespace detail {

inline constexpr int kStatShards = 64;

inline std::int64_t shard_quota(std::int64_t n, int shard) {
  const std::int64_t base = n / kStatShards;
  return base + (shard < n % kStatShards ? 1 : 0);
}

}  // namespace detail

// Distribution of the throughput weight w = f cos(theta_i) / pdf for the
// unit-reflectance EON material (exact albedo flavor) under the given
// strategy. An unbiased strategy has mean equal to the directional albedo;
// the variance is the single-sample estimator variance.
inline WeightStats weight_stats(Strategy strategy, FonRoughness r, double mu_o,
                                std::int64_t n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("weight_stats: n must be positive");
  const double so = std::sqrt(std::fmax(1.0 - mu_o * mu_o, 0.0));
  const Direction wo = Direction::unchecked(so, 0.0, mu_o);
  const Spectrum white(1.0);
  const FonRoughness rr = r;

  struct Partial {
    double sum = 0.0, sum_sq = 0.0, max = 0.0;
  };
  std::vector<Partial> parts(detail::kStatShards);
  parallel_shards(detail::kStatShards, [&](int shard) {
    CounterRng rng(seed, static_cast<std::uint64_t>(shard));
    Partial p;
    const std::int64_t quota = detail::shard_quota(n, shard);
    for (std::int64_t i = 0; i < quota; ++i) {
      const DirectionalSample s = draw_sample(strategy, wo, rr, rng.pair());
      double w = 0.0;
      if (s.pdf > 0.0) {
        w = eval_eon(white, rr, s.wi, wo, true).r * s.wi.z / s.pdf;
      }
      p.sum += w;
      p.sum_sq += w * w;
      p.max = std::fmax(p.max, w);
    }
    parts[static_cast<std::size_t>(shard)] = p;
  });

  double sum = 0.0, sum_sq = 0.0, wmax = 0.0;
  for (const Partial& p : parts) {  // fixed order: thread-count independent
    sum += p.sum;
    sum_sq += p.sum_sq;
    wmax = std::fmax(wmax, p.max);
  }
  WeightStats out;
  out.count = n;
  out.mean = sum / static_cast<double>(n);
  out.variance = std::fmax(sum_sq / static_cast<double>(n) - out.mean * out.mean, 0.0);
  out.max = wmax;
  return out;
}

namespace detail {

// Regularized incomplete gamma pair (series for x < a+1, Lentz continued
// fraction otherwise); standard double-precision numerics, ~1e-12 accurate.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

// Survival function of the chi-square distribution with k dof.
inline double chi2_sf(double statistic, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("chi2_sf: dof must be positive");
  if (statistic <= 0.0) return 1.0;
  const double a = 0.5 * k;
  const double x = 0.5 * statistic;
  return x < a + 1.0 ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_contfrac(a, x);
}

struct Chi2Grid {
  int n_z = 32;    // cos(theta) rows on [0, 1]
  int n_phi = 64;  // azimuth columns on [0, 2 pi)
};

struct Chi2Report {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int cells = 0;                   // cells entering the statistic (after pooling)
  std::int64_t samples = 0;
  std::int64_t below_horizon = 0;  // draws with wi.z < 0 (must stay 0)
};

// Pearson chi-square of n draws against an analytic density on a
// (cos theta, phi) histogram. Expected masses use midpoint-times-area cell
// integration, refined 4x4 in the grazing rows (z < 0.25) where the density
// varies fastest; cells with expected count < 5 are pooled (dropped if the
// pool itself stays < 5).
template <class SampleFn, class PdfFn>
Chi2Report chi2_test(SampleFn&& sample, PdfFn&& pdf, const Chi2Grid& grid,
                     std::int64_t n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("chi2_test: n must be positive");
  const int nz = grid.n_z, np = grid.n_phi;
  const std::size_t n_cells = static_cast<std::size_t>(nz) * static_cast<std::size_t>(np);

  std::vector<std::vector<std::int64_t>> shard_hist(
      detail::kStatShards, std::vector<std::int64_t>(n_cells, 0));
  std::vector<std::int64_t> shard_below(detail::kStatShards, 0);
  parallel_shards(detail::kStatShards, [&](int shard) {
    CounterRng rng(seed, static_cast<std::uint64_t>(shard));
    auto& hist = shard_hist[static_cast<std::size_t>(shard)];
    const std::int64_t quota = detail::shard_quota(n, shard);
    for (std::int64_t i = 0; i < quota; ++i) {
      const Direction wi = sample(rng);
      if (wi.z < 0.0) {
        ++shard_below[static_cast<std::size_t>(shard)];
        continue;
      }
      int zi = static_cast<int>(wi.z * nz);
      if (zi >= nz) zi = nz - 1;
      double phi = std::atan2(wi.y, wi.x);
      if (phi < 0.0) phi += kTwoPi;
      int pi = static_cast<int>(phi / kTwoPi * np);
      if (pi >= np) pi = np - 1;
      ++hist[static_cast<std::size_t>(zi) * np + pi];
    }
  });
  std::vector<std::int64_t> observed(n_cells, 0);
  std::int64_t below = 0;
  for (int shard = 0; shard < detail::kStatShards; ++shard) {
    for (std::size_t c = 0; c < n_cells; ++c) observed[c] += shard_hist[shard][c];
    below += shard_below[static_cast<std::size_t>(shard)];
  }

  std::vector<double> expected(n_cells, 0.0);
  parallel_shards(nz, [&](int zi) {
    const int refine = zi < nz / 4 ? 4 : 1;
    const double dz = 1.0 / nz / refine;
    const double dp = kTwoPi / np / refine;
    for (int sz = 0; sz < refine; ++sz) {
      const double zc = static_cast<double>(zi) / nz + (sz + 0.5) * dz;
      const double st = std::sqrt(std::fmax(1.0 - zc * zc, 0.0));
      for (int pi = 0; pi < np; ++pi) {
        double mass = 0.0;
        for (int sp = 0; sp < refine; ++sp) {
          const double phi = pi * (kTwoPi / np) + (sp + 0.5) * dp;
          mass += pdf(Direction::unchecked(st * std::cos(phi), st * std::sin(phi), zc));
        }
        expected[static_cast<std::size_t>(zi) * np + pi] += mass * dz * dp;
      }
    }
  });

  Chi2Report report;
  report.samples = n;
  report.below_horizon = below;
  double stat = 0.0;
  int used = 0;
  double pool_exp = 0.0;
  std::int64_t pool_obs = 0;
  for (std::size_t c = 0; c < n_cells; ++c) {
    const double e = expected[c] * static_cast<double>(n);
    if (e >= 5.0) {
      const double diff = static_cast<double>(observed[c]) - e;
      stat += diff * diff / e;
      ++used;
    } else {
      pool_exp += e;
      pool_obs += observed[c];
    }
  }
  if (pool_exp >= 5.0) {
    const double diff = static_cast<double>(pool_obs) - pool_exp;
    stat += diff * diff / pool_exp;
    ++used;
  }
  report.statistic = stat;
  report.cells = used;
  report.dof = used - 1;
  report.p_value = report.dof > 0 ? chi2_sf(stat, report.dof) : 1.0;
  return report;
}

// Goodness of fit of sample_eon against pdf_eon at one (mu_o, r) configuration.
inline Chi2Report chi2_sampler_test(FonRoughness r, double mu_o, std::int64_t n,
                                    const Chi2Grid& grid, std::uint64_t seed) {
  const double so = std::sqrt(std::fmax(1.0 - mu_o * mu_o, 0.0));
  const Direction wo = Direction::unchecked(so, 0.0, mu_o);
  return chi2_test(
      [&](CounterRng& rng) { return sample_eon(wo, r, rng.pair()).wi; },
      [&](Direction wi) { return pdf_eon(wo, wi, r); }, grid, n, seed);
}

}  // namespace eon
