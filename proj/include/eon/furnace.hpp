#pragma once
// Single-point furnace closure: a shading point inside a unit-radiance
// environment, path-traced as a chain of scatter events in which each sampled
// incident direction becomes the next bounce's outgoing direction. The
// estimator is E[prod_j f cos/pdf * 1]; a material whose directional albedo
// is identically 1 returns exactly 1 at any bounce count, while lossy models
// decay by roughly their average albedo per bounce. Russian roulette is
// deliberately absent so energy bookkeeping stays exact.

#include <cstdint>

#include "eon/brdf.hpp"
#include "eon/core.hpp"
#include "eon/rng.hpp"
#include "eon/stats.hpp"
#include "eon/threading.hpp"

namespace eon {

// Mean camera-ray radiance over spp paths; the camera direction is
// cosine-weighted per path. Throws on non-finite throughput (a NaN path is a
// hard failure, never clamped away).
inline double furnace_test(const Material& material, Strategy strategy, int bounces,
                           std::int64_t spp, std::uint64_t seed) {
  if (bounces < 1) throw std::invalid_argument("furnace_test: bounces must be >= 1");
  if (spp <= 0) throw std::invalid_argument("furnace_test: spp must be positive");
  const FonRoughness proxy_r(material.model == Model::fon || material.model == Model::eon
                                 ? material.roughness
                                 : 0.0);

  std::vector<Spectrum> partial(detail::kStatShards, Spectrum(0.0));
  parallel_shards(detail::kStatShards, [&](int shard) {
    CounterRng rng(seed, static_cast<std::uint64_t>(shard));
    Spectrum sum(0.0);
    const std::int64_t quota = detail::shard_quota(spp, shard);
    for (std::int64_t p = 0; p < quota; ++p) {
      Direction wo = cosine_lobe_sample(rng.pair()).wi;
      if (wo.z <= 0.0) wo = Direction::unchecked(0.0, 0.0, 1.0);
      Spectrum throughput(1.0);
      for (int b = 0; b < bounces; ++b) {
        const DirectionalSample s = draw_sample(strategy, wo, proxy_r, rng.pair());
        if (!(s.pdf > 0.0)) {
          throughput = Spectrum(0.0);
          break;
        }
        throughput = throughput * (eval_brdf(material, s.wi, wo) * (s.wi.z / s.pdf));
        wo = s.wi;
        if (wo.z <= 0.0) break;  // chain reached the horizon; weight is ~0 there
      }
      if (!is_finite(throughput)) {
        throw std::runtime_error("furnace_test: non-finite path throughput");
      }
      sum += throughput;
    }
    partial[static_cast<std::size_t>(shard)] = sum;
  });

  Spectrum total(0.0);
  for (const Spectrum& p : partial) total += p;  // fixed order
  return total.mean() / static_cast<double>(spp);
}

}  // namespace eon
