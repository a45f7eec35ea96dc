#pragma once
// Importance sampling for the EON lobe: a clipped linearly-transformed-cosine
// (CLTC) proxy fitted over (mu_o, r), mixed with a uniform hemisphere lobe by
// a fitted probability. Sample and pdf are exact mirrors of each other; all
// returned directions satisfy wi.z >= 0.

#include <cmath>

#include "eon/brdf.hpp"
#include "eon/core.hpp"

namespace eon {

// Linear transform M = [[a,0,b],[0,c,0],[d,0,1]] acting on the cosine
// hemisphere, expressed in a frame whose +x axis is the projection of wo.
struct LtcCoeffs {
  double a = 1.0, b = 0.0, c = 1.0, d = 0.0;
};

inline double ltc_det(const LtcCoeffs& m) { return m.c * (m.a - m.b * m.d); }

// Rational fit of the proxy transform; identity at r = 0, det > 0 over the
// whole fitted domain mu in (0, 1], r in [0, 1].
inline LtcCoeffs ltc_coeffs(double mu, FonRoughness rr) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("ltc_coeffs: mu must be in (0, 1]");
  }
  const double r = rr.r;
  LtcCoeffs m;
  m.a = 1.0 + r * (0.303392 + (-0.518982 + 0.111709 * mu) * mu +
                   (-0.276266 + 0.335918 * mu) * r);
  m.b = r * (-1.16407 + 1.15859 * mu + (0.150815 - 0.150105 * mu) * r) /
        (mu * mu * mu - 1.43545);
  m.c = 1.0 + (0.20013 + (-0.506373 + 0.261777 * mu) * mu) * r;
  m.d = ((0.540852 + (-1.01625 + 0.475392 * mu) * mu) * r) /
        (-1.0743 + mu * (0.0725628 + mu));
  return m;
}

struct DirectionalSample {
  Direction wi;  // wi.z >= 0 always
  double pdf = 0.0;
};

// Uniform hemisphere lobe used as the safety mixture component; z = u1,
// pdf = 1/(2 pi). u = (1, 0) maps to the pole, u = (0, 0) to (1, 0, 0).
inline Direction uniform_lobe_sample(RandomPair u) {
  const double st = std::sqrt(std::fmax(1.0 - u.u1 * u.u1, 0.0));
  const double phi = kTwoPi * u.u2;
  return Direction::unchecked(st * std::cos(phi), st * std::sin(phi), u.u1);
}

namespace detail {

// Rotation about +z aligning +x with the azimuth of w; falls back to the
// identity when w has no tangential part. Columns (x_axis, y_axis, +z).
struct LtcFrame {
  double xx = 1.0, xy = 0.0;  // first column (x_axis.x, x_axis.y)
};

inline LtcFrame ltc_frame(Direction w) {
  const double len = std::hypot(w.x, w.y);
  if (len == 0.0) return {};
  return {w.x / len, w.y / len};
}

inline Vec3 to_frame(const LtcFrame& f, Vec3 v) {  // world -> frame (transpose)
  return {f.xx * v.x + f.xy * v.y, -f.xy * v.x + f.xx * v.y, v.z};
}

inline Vec3 from_frame(const LtcFrame& f, Vec3 v) {  // frame -> world
  return {f.xx * v.x - f.xy * v.y, f.xy * v.x + f.xx * v.y, v.z};
}

inline void require_strict_upper(Direction wo, const char* what) {
  if (!(wo.z > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": wo.z must be > 0");
  }
}

}  // namespace detail

// Draw from the clipped, transformed cosine lobe. The cosine hemisphere is
// clipped against the plane whose normal is (d, 0, 1) (the preimage of the
// horizon), leaving a half-disc plus half-ellipse footprint that is sampled
// uniformly; the transform M then maps the result to the upper hemisphere
// with no below-horizon leakage. The ellipse side follows the sign of d: the
// published remap assumes d <= 0, which the fit satisfies except in a sliver
// near mu = 1 where d is slightly positive and the lune must be mirrored.
inline DirectionalSample cltc_sample(Direction wo, FonRoughness r, RandomPair u) {
  detail::require_strict_upper(wo, "cltc_sample");
  const LtcCoeffs m = ltc_coeffs(wo.z, r);

  const double radius = std::sqrt(u.u1);
  const double phi = kTwoPi * u.u2;
  double x = radius * std::cos(phi);
  const double y = radius * std::sin(phi);

  const double vz = 1.0 / std::sqrt(m.d * m.d + 1.0);
  const double s = 0.5 * (1.0 + vz);
  x = -((1.0 - s) * std::sqrt(std::fmax(1.0 - y * y, 0.0)) + s * x);
  if (m.d > 0.0) x = -x;

  const double wh_z = std::sqrt(std::fmax(1.0 - x * x - y * y, 0.0));
  const double pdf_wh = wh_z / (kPi * s);

  Vec3 wi{m.a * x + m.b * wh_z, m.c * y, std::fmax(m.d * x + wh_z, 0.0)};
  const double len = length(wi);
  const double pdf = pdf_wh * len * len * len / ltc_det(m);

  const detail::LtcFrame frame = detail::ltc_frame(wo);
  const Vec3 w = detail::from_frame(frame, wi) / len;
  return {Direction::unchecked(w.x, w.y, w.z), pdf};
}

// Density of cltc_sample in solid angle. The adjugate of M recovers the
// (unnormalized) cosine-space preimage; directions whose preimage falls below
// the cosine hemisphere have density zero. Returns 0 for wi.z < 0.
inline double cltc_pdf(Direction wo, Direction wi, FonRoughness r) {
  detail::require_strict_upper(wo, "cltc_pdf");
  if (wi.z < 0.0) return 0.0;
  const detail::LtcFrame frame = detail::ltc_frame(wo);
  const Vec3 w = detail::to_frame(frame, wi.vec());
  const LtcCoeffs m = ltc_coeffs(wo.z, r);
  const double det = ltc_det(m);
  const Vec3 wh{m.c * (w.x - m.b * w.z), (m.a - m.b * m.d) * w.y,
                -m.c * (m.d * w.x - m.a * w.z)};
  const double len_sq = dot(wh, wh);
  const double vz = 1.0 / std::sqrt(m.d * m.d + 1.0);
  const double s = 0.5 * (1.0 + vz);
  return det * det / (len_sq * len_sq) * std::fmax(wh.z, 0.0) / (kPi * s);
}

// Fitted probability of routing a sample through the uniform lobe. Grows
// toward grazing where the CLTC proxy underfits the true lobe.
inline double uniform_mix_weight(double mu, FonRoughness r) {
  if (r.r <= 0.0) return 0.0;  // pow(0, 0.1) = 0; avoid the 0^0 edge
  return std::pow(r.r, 0.1) *
         (0.162925 + mu * (-0.372058 + (0.538233 - 0.290822 * mu) * mu));
}

// One-sample mixture of the uniform lobe and the CLTC lobe. The returned pdf
// is always the full mixture density, so weights f cos / pdf are unbiased
// regardless of which component produced the sample.
inline DirectionalSample sample_eon(Direction wo, FonRoughness r, RandomPair u) {
  detail::require_strict_upper(wo, "sample_eon");
  const double p_u = uniform_mix_weight(wo.z, r);
  const double p_c = 1.0 - p_u;
  Direction wi;
  double pdf_c;
  if (u.u1 <= p_u && p_u > 0.0) {
    const RandomPair remap(u.u1 / p_u, u.u2);
    wi = uniform_lobe_sample(remap);
    pdf_c = cltc_pdf(wo, wi, r);
  } else {
    const RandomPair remap((u.u1 - p_u) / p_c, u.u2);
    const DirectionalSample cs = cltc_sample(wo, r, remap);
    wi = cs.wi;
    pdf_c = cs.pdf;
  }
  return {wi, p_u / kTwoPi + p_c * pdf_c};
}

// Mixture density matching sample_eon. Returns 0 for wi.z < 0.
inline double pdf_eon(Direction wo, Direction wi, FonRoughness r) {
  detail::require_strict_upper(wo, "pdf_eon");
  if (wi.z < 0.0) return 0.0;
  const double p_u = uniform_mix_weight(wo.z, r);
  return p_u / kTwoPi + (1.0 - p_u) * cltc_pdf(wo, wi, r);
}

}  // namespace eon
