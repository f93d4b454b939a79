#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "krental/pricing.hpp"
#include "krental/rng.hpp"

using namespace krental;

TEST_CASE("exponential price endpoints and midpoint") {
  CHECK(phi_fixed(0.0, 2.0, 8.0) == doctest::Approx(2.0 / std::exp(1.0)));
  CHECK(phi_fixed(1.0, 2.0, 8.0) == doctest::Approx(8.0));
  // v_min=1, v_max=e: phi(y) = exp(2y - 1), so phi(1/2) = 1.
  CHECK(phi_fixed(0.5, 1.0, std::exp(1.0)) == doctest::Approx(1.0));
  CHECK(phi_variable_closed(0.5, 1.0, std::exp(2.0)) ==
        doctest::Approx(std::exp(0.5)));
  CHECK_THROWS_AS(phi_fixed(0.0, -1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(phi_fixed(0.0, 3.0, 2.0), std::invalid_argument);
}

TEST_CASE("closed-form inverse round-trips") {
  std::mt19937_64 rng(5);
  const double v_min = 1.5, v_max = 40.0;
  for (int it = 0; it < 1000; ++it) {
    const double v = v_min + (v_max - v_min) * canonical_uniform(rng);
    const double y = phi_fixed_inverse(v, v_min, v_max);
    CHECK(std::fabs(phi_fixed(y, v_min, v_max) - v) <= 1e-10 * v);
  }
  // Below phi(0) the inverse clamps to 0, above phi(1) to 1.
  CHECK(phi_fixed_inverse(v_min / 10.0, v_min, v_max) == doctest::Approx(0.0));
  CHECK(phi_fixed_inverse(v_max * 10.0, v_min, v_max) == doctest::Approx(1.0));
}

TEST_CASE("pricing function variants agree with the free functions") {
  const auto pf = PricingFunction::exp_fixed(2.0, 9.0);
  const auto pv = PricingFunction::exp_variable(1.0, 6.0);
  for (double y : {0.0, 0.2, 0.55, 1.0}) {
    CHECK(pf.value(y) == doctest::Approx(phi_fixed(y, 2.0, 9.0)));
    CHECK(pv.value(y) == doctest::Approx(phi_variable_closed(y, 1.0, 6.0)));
  }
  const auto flp = PricingFunction::flp(0.5, std::exp(1.0), 4);
  CHECK(flp.value(0.0) == doctest::Approx(0.0));
  CHECK(flp.value(4.0) == doctest::Approx(0.5 * (std::exp(1.0) - 1.0)));
}

TEST_CASE("piecewise prices hold each value on its cell") {
  const auto phi = PricingFunction::piecewise(0.5, {1.0, 3.0});
  CHECK(phi.value(0.1) == doctest::Approx(1.0));
  CHECK(phi.value(0.5) == doctest::Approx(1.0));
  CHECK(phi.value(0.500001) == doctest::Approx(3.0));
  CHECK(phi.value(1.0) == doctest::Approx(3.0));
}

TEST_CASE("integrals match numeric quadrature") {
  const std::vector<PricingFunction> phis = {
      PricingFunction::exp_fixed(1.0, 7.0),
      PricingFunction::exp_variable(2.0, 5.0),
      PricingFunction::piecewise(0.25, {1.0, 1.0, 2.5, 4.0}),
  };
  for (const auto& phi : phis) {
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {0.0, 1.0}, {0.1, 0.35}, {0.3, 0.9}}) {
      double sum = 0.0;
      const int steps = 200000;
      for (int i = 0; i < steps; ++i) {
        sum += phi.value(a + (b - a) * (i + 0.5) / steps);
      }
      sum *= (b - a) / steps;
      CHECK(phi.integral(a, b) == doctest::Approx(sum).epsilon(1e-5));
    }
  }
}

TEST_CASE("inverse_sup on the closed forms and on steps") {
  const auto pv = PricingFunction::exp_variable(1.0, std::exp(2.0));
  CHECK(pv.inverse_sup(std::exp(2.0)) == doctest::Approx(1.0));
  CHECK(pv.inverse_sup(0.2) == doctest::Approx(0.0));  // below phi(0) = 1/e
  CHECK(pv.inverse_sup(1.0) == doctest::Approx(1.0 / 3.0));

  const auto step = PricingFunction::piecewise(0.5, {1.0, 3.0});
  CHECK(phi_star(step, 2.0) == doctest::Approx(0.5));
  CHECK(phi_star(step, 0.5) == doctest::Approx(0.0));
  CHECK(phi_star(step, 3.0) == doctest::Approx(1.0));
}

TEST_CASE("inverse_sup is the sup of the sublevel set") {
  std::mt19937_64 rng(17);
  const auto phi = PricingFunction::exp_variable(1.0, 8.0);
  for (int it = 0; it < 200; ++it) {
    const double d = 0.2 + 9.0 * canonical_uniform(rng);
    const double x = phi.inverse_sup(d);
    if (x > 1e-9) CHECK(phi.value(x - 1e-9) <= d * (1.0 + 1e-9));
    if (x < 1.0 - 1e-9) CHECK(phi.value(x + 1e-9) >= d * (1.0 - 1e-9));
  }
}

TEST_CASE("constraint checker accepts a constant price at the boundary alpha") {
  // phi == d on [0,1] with d_min = d_max = d reduces both families to
  // alpha/3 >= 1, so alpha = 3 is tight.
  const auto flat = PricingFunction::piecewise(0.5, {2.0, 2.0});
  CHECK(check_theorem4_constraints(flat, 3.0, 2.0, 2.0).min_slack() >= -1e-12);
  CHECK(check_theorem4_constraints(flat, 2.9, 2.0, 2.0).min_slack() < -1e-3);
  // Fractional coefficients (alpha, alpha/2) make alpha = 2 the boundary.
  CHECK(check_theorem4_constraints(flat, 2.0, 2.0, 2.0, 50, 200, true)
            .min_slack() >= -1e-12);
  CHECK(check_theorem4_constraints(flat, 1.9, 2.0, 2.0, 50, 200, true)
            .min_slack() < -1e-3);
}

TEST_CASE("pure exponential prices leave a constant gap") {
  // Measured behavior: the un-capped exponential curve misses the inequality
  // system by a ratio-independent margin of about 26% (the binding point is
  // d_n = d_min), at the alpha value one would expect to certify it.
  for (double r : {1.0, std::exp(1.0), 10.0}) {
    const auto phi = PricingFunction::exp_variable(1.0, r);
    const double alpha = 3.0 * (1.0 + std::log(r));
    const auto cert = check_theorem4_constraints(phi, alpha, 1.0, r);
    CHECK(cert.min_slack() < -0.2);
    CHECK(cert.min_slack() > -0.3);
    CHECK(cert.family1.d_n == doctest::Approx(1.0));
  }
}

TEST_CASE("capping the exponential below at d_min closes the gap") {
  for (double r : {1.0, std::exp(1.0), std::exp(2.0), 10.0}) {
    const double alpha = 3.0 * (1.0 + std::log(r));
    const double F = 1.0 + std::log(r);
    // Left-edge discretization lower-bounds the continuous capped curve.
    const double eps = 1e-3;
    const int cells = static_cast<int>(std::ceil(1.0 / eps));
    std::vector<double> pi(cells);
    for (int i = 0; i < cells; ++i) {
      pi[i] = std::max(1.0, std::exp(F * i * eps - 1.0));
    }
    const auto phi = PricingFunction::piecewise(eps, pi);
    CHECK(check_theorem4_constraints(phi, alpha, 1.0, r).min_slack() >= -1e-9);
  }
}

TEST_CASE("constraint checker reports the violating grid point") {
  const auto phi = PricingFunction::exp_variable(1.0, std::exp(1.0));
  const auto cert = check_theorem4_constraints(phi, 1.0 + 1.0 - 0.1, 1.0,
                                               std::exp(1.0));
  CHECK(cert.min_slack() < -0.1);
  const auto& worst =
      cert.family1.slack < cert.family2.slack ? cert.family1 : cert.family2;
  CHECK(worst.d_n >= 1.0);
  CHECK(worst.d_n <= std::exp(1.0));
  CHECK(worst.y >= 0.0);
  CHECK(worst.y <= 1.0);
}
