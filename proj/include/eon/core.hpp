#pragma once
// Core value types: small vector math and validated domain wrappers shared by
// every module. All angles are in radians, all frames are local shading frames
// with +z along the surface normal.

#include <cmath>
#include <stdexcept>
#include <string>

namespace eon {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInvPi = 1.0 / kPi;

// Floor applied wherever a cosine or an energy deficit appears in a
// denominator; keeps grazing configurations finite without changing values
// away from the horizon.
inline constexpr double kDenomClamp = 1e-7;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(Vec3 a, double s) { return s * a; }
inline Vec3 operator/(Vec3 a, double s) { return (1.0 / s) * a; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a = a + b; return a; }
inline Vec3& operator*=(Vec3& a, double s) { a = s * a; return a; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalize(Vec3 a) { return a / length(a); }
inline bool is_finite(Vec3 a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Unit vector in a local shading frame. The checked constructor enforces
// ||v|| = 1 within 1e-6; sampling code constructs already-normalized results
// through unchecked().
struct Direction {
  double x = 0.0, y = 0.0, z = 1.0;

  Direction() = default;
  Direction(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    const double n2 = x * x + y * y + z * z;
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 2e-6) {
      throw std::invalid_argument("Direction: vector is not unit length");
    }
  }
  static Direction unchecked(double x, double y, double z) {
    Direction d;
    d.x = x; d.y = y; d.z = z;
    return d;
  }
  static Direction from_vec(Vec3 v) { return Direction(v.x, v.y, v.z); }
  Vec3 vec() const { return {x, y, z}; }
  double cos_theta() const { return z; }
};

inline double dot(Direction a, Direction b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Linear RGB triple. Used for reflectance inputs (each channel in [0,1],
// checked at the evaluation entry points) and for BRDF/radiance values
// (finite, otherwise unbounded).
struct Spectrum {
  double r = 0.0, g = 0.0, b = 0.0;

  Spectrum() = default;
  Spectrum(double r_, double g_, double b_) : r(r_), g(g_), b(b_) {}
  explicit Spectrum(double v) : r(v), g(v), b(v) {}
  double max_channel() const { return std::fmax(r, std::fmax(g, b)); }
  double min_channel() const { return std::fmin(r, std::fmin(g, b)); }
  double mean() const { return (r + g + b) / 3.0; }
};

inline Spectrum operator+(Spectrum a, Spectrum b) { return {a.r + b.r, a.g + b.g, a.b + b.b}; }
inline Spectrum operator-(Spectrum a, Spectrum b) { return {a.r - b.r, a.g - b.g, a.b - b.b}; }
inline Spectrum operator*(Spectrum a, Spectrum b) { return {a.r * b.r, a.g * b.g, a.b * b.b}; }
inline Spectrum operator*(double s, Spectrum a) { return {s * a.r, s * a.g, s * a.b}; }
inline Spectrum operator*(Spectrum a, double s) { return s * a; }
inline Spectrum& operator+=(Spectrum& a, Spectrum b) { a = a + b; return a; }
inline bool is_finite(Spectrum a) {
  return std::isfinite(a.r) && std::isfinite(a.g) && std::isfinite(a.b);
}

// Roughness carriers are distinct types on purpose: the QON sigma (radians,
// [0, pi/2]) and the FON/EON roughness r ([0, 1]) live on different scales and
// must not be mixed up silently.
struct QonRoughness {
  explicit QonRoughness(double sigma_) : sigma(sigma_) {
    if (!(sigma >= 0.0 && sigma <= kPi / 2.0)) {
      throw std::invalid_argument("QonRoughness: sigma must be in [0, pi/2]");
    }
  }
  double sigma;
};

struct FonRoughness {
  explicit FonRoughness(double r_) : r(r_) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw std::invalid_argument("FonRoughness: r must be in [0, 1]");
    }
  }
  double r;
};

// Two uniform variates in [0, 1]. Generators emit [0, 1); the closed upper
// bound is accepted so hand-written edge-case inputs like u1 = 1 stay legal.
struct RandomPair {
  RandomPair(double u1_, double u2_) : u1(u1_), u2(u2_) {
    if (!(u1 >= 0.0 && u1 <= 1.0) || !(u2 >= 0.0 && u2 <= 1.0)) {
      throw std::invalid_argument("RandomPair: variates must be in [0, 1]");
    }
  }
  double u1, u2;
};

namespace detail {

inline void require_reflectance(Spectrum rho) {
  // Per-channel comparisons, not fmin/fmax: fmin/fmax silently discard NaN
  // operands, and a NaN channel must be rejected here.
  const bool ok = rho.r >= 0.0 && rho.r <= 1.0 && rho.g >= 0.0 && rho.g <= 1.0 &&
                  rho.b >= 0.0 && rho.b <= 1.0;
  if (!ok) {
    throw std::invalid_argument("reflectance channels must be in [0, 1] and finite");
  }
}

inline void require_upper(Direction w, const char* what) {
  if (!(w.z >= 0.0)) {
    throw std::invalid_argument(std::string(what) + ": direction must satisfy z >= 0");
  }
}

}  // namespace detail

}  // namespace eon
