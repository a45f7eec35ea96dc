#pragma once
// Rough-diffuse BRDF family: the classic qualitative model (QON), its
// energy-constant fixed variant (FON), and the energy-preserving extension
// (EON) that returns the missing multiple-scattering energy through an
// analytically normalized second lobe. All evaluations are reciprocal and
// defined on the upper hemisphere of a local frame (+z = normal).

#include <cmath>

#include "eon/core.hpp"

namespace eon {

// A_F = 1 / (1 + kFonC1 * r); with that choice the FON directional albedo
// reaches exactly 1 at grazing for every r.
inline constexpr double kFonC1 = 0.5 - 2.0 / (3.0 * kPi);
// Average-albedo slope: <E_F> = A_F * (1 + kFonC2 * r).
inline constexpr double kFonC2 = 2.0 / 3.0 - 28.0 / (15.0 * kPi);
// QON average-albedo weight on B: <E_q> = A_q + kQonAvgB * B_q.
inline constexpr double kQonAvgB = 2.0 / 3.0 - 64.0 / (45.0 * kPi);

// Below this cosine the closed-form albedo expressions switch to their
// hard-coded horizon limits (the formulas contain 0*inf at mu = 0).
inline constexpr double kGrazingMu = 1e-12;

enum class QonVariant {
  standard,  // A = 1 - 0.5 sigma^2 / (sigma^2 + 0.33)
  footnote,  // A = 1 - 0.5 sigma^2 / (sigma^2 + 0.57), B unchanged
};

struct QonCoeffs {
  double a = 1.0, b = 0.0;
};

struct FonCoeffs {
  double a = 1.0, b = 0.0;  // b = r * a
};

inline QonCoeffs qon_coeffs(QonRoughness sr, QonVariant variant = QonVariant::standard) {
  const double s2 = sr.sigma * sr.sigma;
  const double a_k = variant == QonVariant::footnote ? 0.57 : 0.33;
  return {1.0 - 0.5 * s2 / (s2 + a_k), 0.45 * s2 / (s2 + 0.09)};
}

inline FonCoeffs fon_coeffs(FonRoughness r) {
  const double a = 1.0 / (1.0 + kFonC1 * r.r);
  return {a, r.r * a};
}

namespace detail {

// s = cos(phi_i - phi_o) sin(theta_i) sin(theta_o), written in vector form.
inline double scatter_s(Direction wi, Direction wo) {
  return dot(wi, wo) - wi.z * wo.z;
}

// Shared closed-form integral behind both directional albedos:
// G(mu) = sin(theta)(theta - sin cos) + (2/3) tan(theta)(1 - sin^3).
// Horizon limit pi/2; the formula itself is 0*inf there. Callers that already
// hold sin(theta) pass it in to avoid recomputing the square root.
inline double albedo_G_with(double mu, double si) {
  return si * (std::acos(std::fmin(mu, 1.0)) - si * mu) +
         (2.0 / 3.0) * (si / mu) * (1.0 - si * si * si);
}

inline double albedo_G(double mu) {
  if (mu < kGrazingMu) return kPi / 2.0;
  return albedo_G_with(mu, std::sqrt(std::fmax(1.0 - mu * mu, 0.0)));
}

// Validation-free FON albedo kernels sharing one coefficient evaluation; the
// public wrappers add the range checks. Keeping these lean matters: the EON
// evaluator calls one of them twice per lookup.
inline double fon_albedo_exact_core(double mu, const FonCoeffs& c) {
  if (mu < kGrazingMu) return 1.0;
  const double si = std::sqrt(std::fmax(1.0 - mu * mu, 0.0));
  const double g_f = albedo_G_with(mu, si) - (2.0 / 3.0) * si;
  return c.a + c.b * kInvPi * g_f;
}

inline double fon_albedo_approx_core(double mu, double r, const FonCoeffs& c) {
  const double mc = 1.0 - mu;
  const double g_over_pi =
      mc * (0.0571085289 + mc * (0.491881867 + mc * (-0.332181442 + mc * 0.0714429953)));
  return c.a * (1.0 + r * g_over_pi);
}

// Compensation-lobe reflectance for a given average albedo; see eon_rho_ms.
inline double rho_ms_channel(double c, double avg) {
  return c * c * avg / (1.0 - c * (1.0 - avg));
}

}  // namespace detail

inline Spectrum eval_lambert(Spectrum rho) {
  detail::require_reflectance(rho);
  return kInvPi * rho;
}

// QON: f = (rho/pi)(A + B s/t), where 1/t is 0 for s <= 0 and
// 1/max(mu_i, mu_o) otherwise. The s = 0 seam is continuous in value but not
// in slope; on spheres that first-derivative kink reads as a faint dark ring.
inline Spectrum eval_qon(Spectrum rho, QonRoughness sr, Direction wi, Direction wo,
                         QonVariant variant = QonVariant::standard) {
  detail::require_reflectance(rho);
  detail::require_upper(wi, "eval_qon wi");
  detail::require_upper(wo, "eval_qon wo");
  const QonCoeffs c = qon_coeffs(sr, variant);
  const double s = detail::scatter_s(wi, wo);
  const double g = s > 0.0 ? s / std::fmax(kDenomClamp, std::fmax(wi.z, wo.z)) : 0.0;
  return kInvPi * (c.a + c.b * g) * rho;
}

// Directional albedo of QON, closed form. Exceeds the hemispherical average
// toward grazing; QON loses energy overall (its average albedo < 1 at rho=1).
inline Spectrum qon_directional_albedo(Spectrum rho, QonRoughness sr, double mu_o,
                                       QonVariant variant = QonVariant::standard) {
  detail::require_reflectance(rho);
  if (!(mu_o >= 0.0 && mu_o <= 1.0)) {
    throw std::invalid_argument("qon_directional_albedo: mu_o must be in [0, 1]");
  }
  const QonCoeffs c = qon_coeffs(sr, variant);
  return (c.a + c.b * kInvPi * detail::albedo_G(mu_o)) * rho;
}

inline Spectrum qon_average_albedo(Spectrum rho, QonRoughness sr,
                                   QonVariant variant = QonVariant::standard) {
  detail::require_reflectance(rho);
  const QonCoeffs c = qon_coeffs(sr, variant);
  return (c.a + kQonAvgB * c.b) * rho;
}

// FON: same vector lobe as QON but with 1/t = 1 on the s <= 0 branch and
// coefficients tied so the grazing albedo is exactly 1.
inline Spectrum eval_fon(Spectrum rho, FonRoughness r, Direction wi, Direction wo) {
  detail::require_reflectance(rho);
  detail::require_upper(wi, "eval_fon wi");
  detail::require_upper(wo, "eval_fon wo");
  const FonCoeffs c = fon_coeffs(r);
  const double s = detail::scatter_s(wi, wo);
  const double sovert = s > 0.0 ? s / std::fmax(kDenomClamp, std::fmax(wi.z, wo.z)) : s;
  return kInvPi * c.a * (1.0 + r.r * sovert) * rho;
}

// Unit-reflectance FON directional albedo, closed form. Equals 1 at mu = 0
// for every r (hard-coded limit; see kGrazingMu).
inline double fon_albedo_exact(double mu, FonRoughness r) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("fon_albedo_exact: mu must be in [0, 1]");
  }
  return detail::fon_albedo_exact_core(mu, fon_coeffs(r));
}

// Quartic fit of the same curve in (1 - mu); max relative error < 1e-3 over
// mu, r in [0, 1] (worst near grazing), exact at mu = 1.
inline double fon_albedo_approx(double mu, FonRoughness r) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("fon_albedo_approx: mu must be in [0, 1]");
  }
  return detail::fon_albedo_approx_core(mu, r.r, fon_coeffs(r));
}

inline double fon_average_albedo(FonRoughness r) {
  const FonCoeffs c = fon_coeffs(r);
  return c.a + kFonC2 * c.b;
}

// Reflectance of the compensation lobe. The denominator 1 - rho(1 - <E_F>)
// is bounded below by <E_F> >= A_F > 0.77 for rho <= 1, so rho = 1 is safe
// even though the expression looks near-singular there.
inline Spectrum eon_rho_ms(Spectrum rho, FonRoughness r) {
  detail::require_reflectance(rho);
  const double avg = fon_average_albedo(r);
  return {detail::rho_ms_channel(rho.r, avg), detail::rho_ms_channel(rho.g, avg),
          detail::rho_ms_channel(rho.b, avg)};
}

// EON: single-scatter FON lobe plus a flat compensation lobe shaped by the
// directional energy deficits. The deficit factors clamp at zero (the fit
// flavor can cross 1 near grazing); only the average-deficit denominator
// keeps the 1e-7 floor. At r = 0 both deficits vanish and the value is
// exactly rho/pi.
inline Spectrum eval_eon(Spectrum rho, FonRoughness r, Direction wi, Direction wo,
                         bool exact = true) {
  detail::require_reflectance(rho);
  detail::require_upper(wi, "eval_eon wi");
  detail::require_upper(wo, "eval_eon wo");
  const FonCoeffs c = fon_coeffs(r);
  const double s = detail::scatter_s(wi, wo);
  const double sovert = s > 0.0 ? s / std::fmax(kDenomClamp, std::fmax(wi.z, wo.z)) : s;
  const Spectrum f_ss = kInvPi * c.a * (1.0 + r.r * sovert) * rho;

  const double e_o = exact ? detail::fon_albedo_exact_core(wo.z, c)
                           : detail::fon_albedo_approx_core(wo.z, r.r, c);
  const double e_i = exact ? detail::fon_albedo_exact_core(wi.z, c)
                           : detail::fon_albedo_approx_core(wi.z, r.r, c);
  const double avg = c.a + kFonC2 * c.b;  // == fon_average_albedo(r)
  const double shape =
      std::fmax(0.0, 1.0 - e_o) * std::fmax(0.0, 1.0 - e_i) / std::fmax(kDenomClamp, 1.0 - avg);
  const Spectrum rho_ms{detail::rho_ms_channel(rho.r, avg),
                        detail::rho_ms_channel(rho.g, avg),
                        detail::rho_ms_channel(rho.b, avg)};
  return f_ss + kInvPi * shape * rho_ms;
}

// EON directional albedo: rho E_F + rho_ms (1 - E_F) per channel; identically
// 1 for rho = 1 with the exact flavor.
inline Spectrum eon_directional_albedo(Spectrum rho, FonRoughness r, double mu,
                                       bool exact = true) {
  detail::require_reflectance(rho);
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("eon_directional_albedo: mu must be in [0, 1]");
  }
  const FonCoeffs c = fon_coeffs(r);
  const double e_f = exact ? detail::fon_albedo_exact_core(mu, c)
                           : detail::fon_albedo_approx_core(mu, r.r, c);
  const double avg = c.a + kFonC2 * c.b;
  const Spectrum ms{detail::rho_ms_channel(rho.r, avg), detail::rho_ms_channel(rho.g, avg),
                    detail::rho_ms_channel(rho.b, avg)};
  return rho * e_f + (1.0 - e_f) * ms;
}

// Runtime-selected material, the common currency of the validation, render,
// and CLI layers. `roughness` is sigma for the QON variants and r otherwise;
// `exact` picks the EON albedo flavor.
enum class Model { lambert, qon, qon_footnote, fon, eon };

struct Material {
  Model model = Model::lambert;
  Spectrum rho = Spectrum(1.0);
  double roughness = 0.0;
  bool exact = true;
};

inline Spectrum eval_brdf(const Material& m, Direction wi, Direction wo) {
  switch (m.model) {
    case Model::lambert:
      detail::require_upper(wi, "eval_brdf wi");
      detail::require_upper(wo, "eval_brdf wo");
      return eval_lambert(m.rho);
    case Model::qon:
      return eval_qon(m.rho, QonRoughness(m.roughness), wi, wo);
    case Model::qon_footnote:
      return eval_qon(m.rho, QonRoughness(m.roughness), wi, wo, QonVariant::footnote);
    case Model::fon:
      return eval_fon(m.rho, FonRoughness(m.roughness), wi, wo);
    case Model::eon:
      return eval_eon(m.rho, FonRoughness(m.roughness), wi, wo, m.exact);
  }
  throw std::logic_error("eval_brdf: unknown model");
}

// Closed-form directional albedo of the material.
inline Spectrum material_albedo(const Material& m, double mu) {
  switch (m.model) {
    case Model::lambert:
      detail::require_reflectance(m.rho);
      return m.rho;
    case Model::qon:
      return qon_directional_albedo(m.rho, QonRoughness(m.roughness), mu);
    case Model::qon_footnote:
      return qon_directional_albedo(m.rho, QonRoughness(m.roughness), mu, QonVariant::footnote);
    case Model::fon:
      detail::require_reflectance(m.rho);
      return fon_albedo_exact(mu, FonRoughness(m.roughness)) * m.rho;
    case Model::eon:
      return eon_directional_albedo(m.rho, FonRoughness(m.roughness), mu, m.exact);
  }
  throw std::logic_error("material_albedo: unknown model");
}

}  // namespace eon
