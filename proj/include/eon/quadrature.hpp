#pragma once
// Deterministic reference integration used by the validation layer: product
// rule with Gauss-Legendre nodes in the cosine and a uniform (periodic
// trapezoid) rule in azimuth. At the 64 x 128 default the relative truncation
// error of the albedo integrals is below 1e-4 everywhere on [0, 1].

#include <cstddef>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "eon/core.hpp"

namespace eon {

struct QuadratureSpec {
  int n_theta = 64;  // Gauss-Legendre nodes in cos(theta), >= 16
  int n_phi = 128;   // uniform azimuth nodes, >= 32
};

namespace detail {

struct QuadNode {
  double x, w;
};

// Gauss-Legendre nodes on [0, 1] by Newton iteration on the Legendre
// recurrence; |P_n| residuals converge quadratically from the Chebyshev-like
// initial guess. Exact for polynomials of degree <= 2n-1.
inline std::vector<QuadNode> gauss_legendre_unit(int n) {
  std::vector<QuadNode> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = {0.5 * (1.0 - x), 0.5 * w};
    nodes[static_cast<std::size_t>(n - 1 - i)] = {0.5 * (1.0 + x), 0.5 * w};
  }
  return nodes;
}

inline const std::vector<QuadNode>& cached_gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<QuadNode>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre_unit(n)).first;
  return it->second;
}

inline void require_spec(const QuadratureSpec& q) {
  if (q.n_theta < 16 || q.n_phi < 32) {
    throw std::invalid_argument("QuadratureSpec: need n_theta >= 16 and n_phi >= 32");
  }
}

}  // namespace detail

// Integral of fn(wi) over the upper hemisphere in solid angle
// (d omega = d mu d phi).
template <class F>
double integrate_hemisphere(F&& fn, const QuadratureSpec& spec = {}) {
  detail::require_spec(spec);
  const auto& mu_nodes = detail::cached_gauss_legendre(spec.n_theta);
  const double dphi = kTwoPi / spec.n_phi;
  double total = 0.0;
  for (const auto& node : mu_nodes) {
    const double st = std::sqrt(std::fmax(1.0 - node.x * node.x, 0.0));
    double ring = 0.0;
    for (int p = 0; p < spec.n_phi; ++p) {
      const double phi = p * dphi;
      ring += fn(Direction::unchecked(st * std::cos(phi), st * std::sin(phi), node.x));
    }
    total += node.w * ring * dphi;
  }
  return total;
}

// Directional albedo by quadrature: integral of brdf(wi, wo) cos(theta_i)
// over incident directions, with wo placed in the xz-plane (all models here
// are isotropic).
template <class F>
double albedo_numeric(F&& brdf, double mu_o, const QuadratureSpec& spec = {}) {
  if (!(mu_o >= 0.0 && mu_o <= 1.0)) {
    throw std::invalid_argument("albedo_numeric: mu_o must be in [0, 1]");
  }
  const double so = std::sqrt(std::fmax(1.0 - mu_o * mu_o, 0.0));
  const Direction wo = Direction::unchecked(so, 0.0, mu_o);
  return integrate_hemisphere(
      [&](Direction wi) { return brdf(wi, wo) * wi.z; }, spec);
}

// Hemispherical (average) albedo: cosine-weighted mean of the directional
// albedo. Isotropy collapses the outer azimuth, leaving 2 * integral of
// E(mu) mu d mu on [0, 1].
template <class F>
double average_albedo_numeric(F&& brdf, const QuadratureSpec& spec = {}) {
  detail::require_spec(spec);
  const auto& mu_nodes = detail::cached_gauss_legendre(spec.n_theta);
  double total = 0.0;
  for (const auto& node : mu_nodes) {
    total += node.w * node.x * albedo_numeric(brdf, node.x, spec);
  }
  return 2.0 * total;
}

}  // namespace eon
