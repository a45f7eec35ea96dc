// Reference quadrature: node correctness, polynomial exactness, and agreement
// between the closed-form albedos and their defining integrals.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "eon/brdf.hpp"
#include "eon/quadrature.hpp"

using namespace eon;

TEST_CASE("gauss-legendre nodes on the unit interval are correct") {
  const auto n2 = detail::gauss_legendre_unit(2);
  CHECK(n2[0].x == Catch::Approx(0.21132486540518713).epsilon(1e-14));
  CHECK(n2[1].x == Catch::Approx(0.78867513459481287).epsilon(1e-14));
  CHECK(n2[0].w == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(n2[1].w == Catch::Approx(0.5).epsilon(1e-14));
  const auto n3 = detail::gauss_legendre_unit(3);
  CHECK(n3[0].x == Catch::Approx(0.1127016653792583).epsilon(1e-13));
  CHECK(n3[1].x == Catch::Approx(0.5).margin(1e-14));
  CHECK(n3[2].x == Catch::Approx(0.8872983346207417).epsilon(1e-13));
  CHECK(n3[0].w == Catch::Approx(5.0 / 18.0).epsilon(1e-13));
  CHECK(n3[1].w == Catch::Approx(8.0 / 18.0).epsilon(1e-13));
}

TEST_CASE("n-point rule integrates polynomials of degree 2n-1 exactly") {
  const auto nodes = detail::gauss_legendre_unit(16);
  for (int k = 0; k <= 31; ++k) {
    double sum = 0.0;
    for (const auto& nd : nodes) sum += nd.w * std::pow(nd.x, k);
    CHECK(sum == Catch::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("hemisphere integrals of reference integrands") {
  const QuadratureSpec spec{64, 128};
  CHECK(integrate_hemisphere([](Direction) { return 1.0; }, spec) ==
        Catch::Approx(kTwoPi).epsilon(1e-13));
  CHECK(integrate_hemisphere([](Direction w) { return w.z; }, spec) ==
        Catch::Approx(kPi).epsilon(1e-13));
  CHECK(integrate_hemisphere([](Direction w) { return w.x * w.x; }, spec) ==
        Catch::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(integrate_hemisphere([](Direction) { return 1.0; },
                                       QuadratureSpec{8, 128}),
                  std::invalid_argument);
  // Lambert closes the loop: albedo of rho/pi is exactly rho.
  CHECK(albedo_numeric([](Direction, Direction) { return kInvPi; }, 0.37, spec) ==
        Catch::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("closed-form directional albedos match their defining integrals") {
  const QuadratureSpec spec{64, 128};
  const Spectrum white(1.0);
  double worst_qon = 0.0, worst_fon = 0.0, worst_eon = 0.0;
  for (int mi = 0; mi <= 8; ++mi) {
    const double mu = mi / 8.0;
    for (int gi = 0; gi <= 8; ++gi) {
      const QonRoughness sigma(gi / 8.0 * kPi / 2.0);
      const double qn = albedo_numeric(
          [&](Direction wi, Direction wo) { return eval_qon(white, sigma, wi, wo).r; },
          mu, spec);
      const double qa = qon_directional_albedo(white, sigma, mu).r;
      worst_qon = std::fmax(worst_qon, std::abs(qn - qa) / qa);

      const FonRoughness r(gi / 8.0);
      const double fn = albedo_numeric(
          [&](Direction wi, Direction wo) { return eval_fon(white, r, wi, wo).r; },
          mu, spec);
      const double fa = fon_albedo_exact(mu, r);
      worst_fon = std::fmax(worst_fon, std::abs(fn - fa) / fa);

      const double en = albedo_numeric(
          [&](Direction wi, Direction wo) { return eval_eon(white, r, wi, wo, true).r; },
          mu, spec);
      worst_eon = std::fmax(worst_eon, std::abs(en - 1.0));
    }
  }
  CHECK(worst_qon < 1e-3);
  CHECK(worst_fon < 1e-3);
  // White furnace through the quadrature oracle (exact flavor).
  CHECK(worst_eon < 2e-3);
}

TEST_CASE("closed-form average albedos match their defining integrals") {
  const QuadratureSpec spec{64, 128};
  const Spectrum white(1.0);
  const QonRoughness sigma(kPi / 2.0);
  const double q_num = average_albedo_numeric(
      [&](Direction wi, Direction wo) { return eval_qon(white, sigma, wi, wo).r; }, spec);
  CHECK(q_num == Catch::Approx(qon_average_albedo(white, sigma).r).epsilon(1e-3));
  const FonRoughness r(1.0);
  const double f_num = average_albedo_numeric(
      [&](Direction wi, Direction wo) { return eval_fon(white, r, wi, wo).r; }, spec);
  CHECK(f_num == Catch::Approx(fon_average_albedo(r)).epsilon(1e-3));
}

TEST_CASE("the default resolution sits on the converged plateau") {
  const Spectrum white(1.0);
  const FonRoughness r(1.0);
  const auto integrand = [&](Direction wi, Direction wo) {
    return eval_eon(white, r, wi, wo, true).r;
  };
  const double coarse = albedo_numeric(integrand, 0.4, QuadratureSpec{64, 128});
  const double fine = albedo_numeric(integrand, 0.4, QuadratureSpec{96, 192});
  CHECK(std::abs(coarse - fine) < 1e-4);
}
