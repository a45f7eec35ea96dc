#pragma once
// Micro-benchmark harness for BRDF evaluation and sampling throughput.
// Kernels run over a pre-generated input pool (so timings measure the model,
// not the RNG), accumulate into a sink the optimizer cannot remove, and
// report the median wall time of several repetitions.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "eon/brdf.hpp"
#include "eon/core.hpp"
#include "eon/rng.hpp"
#include "eon/sampling.hpp"
#include "eon/stats.hpp"

namespace eon {

namespace detail {

inline void do_not_optimize(double value) {
#if defined(__GNUC__) || defined(__clang__)
  asm volatile("" : : "g"(value) : "memory");
#else
  volatile double sink = value;
  (void)sink;
#endif
}

// Force the measured kernel to be integrated into the timing loop the way a
// renderer's inner loop integrates its shading math (header-only users get
// the same effect from ordinary inlining). Without it, artificial call
// overhead is added to every row and relative costs are flattened.
#if defined(__GNUC__) || defined(__clang__)
#define EON_BENCH_FLATTEN __attribute__((flatten))
#else
#define EON_BENCH_FLATTEN
#endif

template <typename Fn>
EON_BENCH_FLATTEN void bench_pass(std::size_t n, Fn&& fn) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += fn(i);
  do_not_optimize(acc);
}

inline Direction random_upper_direction(CounterRng& rng) {
  // Cosine-weighted keeps directions representative of shading workloads.
  const RandomPair u = rng.pair();
  const double z = std::sqrt(std::fmax(u.u1, 1e-6));
  const double rad = std::sqrt(std::fmax(1.0 - z * z, 0.0));
  const double phi = kTwoPi * u.u2;
  return Direction::unchecked(rad * std::cos(phi), rad * std::sin(phi), z);
}

}  // namespace detail

struct BenchInputs {
  std::vector<Direction> wi, wo;
  std::vector<RandomPair> uv;
  std::vector<double> rough;  // in [0, 1]; scaled per-model where needed
};

inline BenchInputs make_bench_inputs(std::size_t count, std::uint64_t seed) {
  BenchInputs in;
  in.wi.reserve(count);
  in.wo.reserve(count);
  in.uv.reserve(count);
  in.rough.reserve(count);
  CounterRng rng(seed, 0);
  for (std::size_t i = 0; i < count; ++i) {
    in.wi.push_back(detail::random_upper_direction(rng));
    in.wo.push_back(detail::random_upper_direction(rng));
    in.uv.push_back(rng.pair());
    in.rough.push_back(0.05 + 0.9 * rng.uniform());
  }
  return in;
}

// Median seconds per call over `reps` timed repetitions of the whole pool.
// Dead-code elimination is blocked by accumulating every result and consuming
// the accumulator once per pass; the loop itself stays free of barriers so
// kernels are timed the way shading loops actually run.
template <typename Fn>
double bench_kernel(const BenchInputs& in, int reps, Fn&& fn) {
  const std::size_t n = in.wi.size();
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(reps));
  detail::bench_pass(n, fn);  // untimed warm-up primes caches and predictors
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    detail::bench_pass(n, fn);
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2] / static_cast<double>(n);
}

struct BenchResult {
  std::string name;
  double seconds_per_call = 0.0;
};

// Evaluation benches: seconds per BRDF evaluation. Roughness objects are
// built outside the timed loop so the timing isolates the model arithmetic.
inline double bench_eval_model(const BenchInputs& in, Model model, bool exact,
                               int reps) {
  const Spectrum rho(0.8);
  std::vector<QonRoughness> qr;
  std::vector<FonRoughness> fr;
  qr.reserve(in.rough.size());
  fr.reserve(in.rough.size());
  for (double rr : in.rough) {
    qr.emplace_back(rr * kPi / 2.0);
    fr.emplace_back(rr);
  }
  const Material lambert_mat{Model::lambert, rho, 0.0, false};
  return bench_kernel(in, reps, [&](std::size_t i) {
    switch (model) {
      case Model::lambert:
        // Through the dispatcher so the kernel stays direction-dependent
        // (hemisphere checks) instead of a hoistable constant.
        return eval_brdf(lambert_mat, in.wi[i], in.wo[i]).r;
      case Model::qon:
        return eval_qon(rho, qr[i], in.wi[i], in.wo[i], QonVariant::standard).r;
      case Model::qon_footnote:
        return eval_qon(rho, qr[i], in.wi[i], in.wo[i], QonVariant::footnote).r;
      case Model::fon:
        return eval_fon(rho, fr[i], in.wi[i], in.wo[i]).r;
      case Model::eon:
        return eval_eon(rho, fr[i], in.wi[i], in.wo[i], exact).r;
    }
    return 0.0;
  });
}

// Sampling benches: seconds per draw (direction + pdf), with no BRDF eval in
// the loop — the cost comparison between strategies is about the draw itself.
inline double bench_sampler(const BenchInputs& in, Strategy strategy, int reps) {
  std::vector<FonRoughness> fr;
  fr.reserve(in.rough.size());
  for (double rr : in.rough) fr.emplace_back(rr);
  return bench_kernel(in, reps, [&](std::size_t i) {
    const DirectionalSample s = draw_sample(strategy, in.wo[i], fr[i], in.uv[i]);
    // Consume every output component; otherwise the azimuth trig of the
    // simpler strategies is dead code and their baseline cost collapses.
    return s.pdf + s.wi.x + s.wi.y + s.wi.z;
  });
}

inline std::vector<BenchResult> run_benches(std::size_t pool, int reps,
                                            std::uint64_t seed) {
  const BenchInputs in = make_bench_inputs(pool, seed);
  std::vector<BenchResult> out;
  out.push_back({"eval/lambert", bench_eval_model(in, Model::lambert, false, reps)});
  out.push_back({"eval/qon", bench_eval_model(in, Model::qon, false, reps)});
  out.push_back({"eval/fon", bench_eval_model(in, Model::fon, false, reps)});
  out.push_back({"eval/eon-approx", bench_eval_model(in, Model::eon, false, reps)});
  out.push_back({"eval/eon-exact", bench_eval_model(in, Model::eon, true, reps)});
  out.push_back({"sample/cosine", bench_sampler(in, Strategy::cosine, reps)});
  out.push_back({"sample/uniform", bench_sampler(in, Strategy::uniform, reps)});
  out.push_back({"sample/cltc", bench_sampler(in, Strategy::cltc, reps)});
  out.push_back({"sample/cltc-mis", bench_sampler(in, Strategy::cltc_mis, reps)});
  return out;
}

}  // namespace eon
