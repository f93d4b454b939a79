#include <doctest.h>

#include <cmath>
#include <random>

#include "krental/harness.hpp"
#include "krental/offline.hpp"
#include "krental/online.hpp"
#include "krental/rng.hpp"

using namespace krental;

TEST_CASE("nested fixed-duration family layout") {
  const auto family = gen_hard_fixed(3, 1.0, 4.0, 4, 0.01);
  REQUIRE(family.size() == 4);
  for (int i = 0; i < 4; ++i) {
    const Instance& inst = family[i];
    CHECK(validate_instance(inst).empty());
    REQUIRE(static_cast<int>(inst.requests.size()) == 3 * (i + 1));
    // Batch j carries value v_j, evenly spaced, and everything overlaps.
    for (int j = 0; j <= i; ++j) {
      const double v = 1.0 + 3.0 * j / 3.0;
      for (int u = 0; u < 3; ++u) {
        CHECK(inst.requests[3 * j + u].valuation == doctest::Approx(v));
      }
    }
    CHECK(inst.requests.back().arrival < 0.01);
    // Clairvoyant optimum keeps the k best: value k * v_i.
    const double v_top = 1.0 + 3.0 * i / 3.0;
    CHECK(opt_flow(inst).value == doctest::Approx(3.0 * v_top));
  }
}

TEST_CASE("nested variable-duration family layout") {
  const auto family = gen_hard_variable(2, 1.0, 5.0, 3, 0.01);
  REQUIRE(family.size() == 3);
  for (const auto& inst : family) {
    CHECK(validate_instance(inst).empty());
    for (const auto& r : inst.requests) CHECK(r.valuation == r.duration);
  }
  CHECK(opt_flow(family[2]).value == doctest::Approx(2.0 * 5.0));
}

TEST_CASE("random generators are deterministic and valid") {
  for (std::uint64_t seed : {1ull, 42ull, 777ull}) {
    const Instance a = gen_random_fixed(3, 15, seed, 2.0, 1.0, 5.0, 10.0);
    const Instance b = gen_random_fixed(3, 15, seed, 2.0, 1.0, 5.0, 10.0);
    REQUIRE(a.requests.size() == b.requests.size());
    for (size_t i = 0; i < a.requests.size(); ++i) {
      CHECK(a.requests[i].arrival == b.requests[i].arrival);
      CHECK(a.requests[i].valuation == b.requests[i].valuation);
    }
    CHECK(validate_instance(a).empty());

    const Instance v = gen_random_variable(2, 12, seed, 1.0, 4.0, 9.0);
    CHECK(validate_instance(v).empty());

    const Instance w = gen_random_variable_integral(2, 12, seed, 5, 20);
    CHECK(validate_instance(w).empty());
    for (const auto& r : w.requests) {
      CHECK(r.arrival == std::floor(r.arrival));
      CHECK(r.duration == std::floor(r.duration));
    }
  }
  // Different seeds actually vary.
  const Instance x = gen_random_fixed(3, 15, 1, 2.0, 1.0, 5.0, 10.0);
  const Instance y = gen_random_fixed(3, 15, 2, 2.0, 1.0, 5.0, 10.0);
  bool differs = false;
  for (size_t i = 0; i < x.requests.size(); ++i) {
    if (x.requests[i].valuation != y.requests[i].valuation) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("exact evaluation of the fixed-duration algorithm") {
  const Instance inst = gen_random_fixed(3, 20, 5, 2.0, 1.0, 5.0, 10.0);
  const auto phi = PricingFunction::exp_fixed(1.0, 5.0);
  const EvalStats stats =
      evaluate(Algorithm::DopFixed, inst, phi, FlpParameters{}, 1, 9);
  CHECK(stats.exact);
  CHECK(stats.stddev == doctest::Approx(0.0));
  const RunTrace frac = run_dop_fixed(inst, phi, 0.0, FixedHistory::Fractional);
  CHECK(stats.mean == doctest::Approx(frac.fractional_objective(inst)));
}

TEST_CASE("sampled evaluation is thread-count invariant") {
  const Instance inst = gen_random_variable(2, 15, 3, 1.0, 4.0, 8.0);
  const auto phi = PricingFunction::exp_variable(1.0, 4.0);
  const EvalStats one =
      evaluate(Algorithm::DopVariable, inst, phi, FlpParameters{}, 2000, 7, 1);
  const EvalStats four =
      evaluate(Algorithm::DopVariable, inst, phi, FlpParameters{}, 2000, 7, 4);
  CHECK_FALSE(one.exact);
  CHECK(one.mean == doctest::Approx(four.mean).epsilon(1e-12));
  CHECK(one.stddev == doctest::Approx(four.stddev).epsilon(1e-12));
  CHECK(one.ci_half > 0.0);
}

TEST_CASE("ratio report fundamentals") {
  // A single lone request is served fully: ratio exactly 1.
  Instance solo;
  solo.k = 1;
  solo.kind = FixedKind{1.0, 1.0, std::exp(1.0)};
  solo.requests = {{1, 0.0, 1.0, std::exp(1.0)}};
  const auto phi = PricingFunction::exp_fixed(1.0, std::exp(1.0));
  const auto rows = ratio_report(Algorithm::DopFixed, {solo}, phi,
                                 FlpParameters{}, 2.0, 1, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].opt == doctest::Approx(std::exp(1.0)));
  CHECK(rows[0].ratio == doctest::Approx(1.0));
  CHECK(rows[0].within);

  const std::string csv_a = ratio_report_csv(rows);
  const std::string csv_b = ratio_report_csv(ratio_report(
      Algorithm::DopFixed, {solo}, phi, FlpParameters{}, 2.0, 1, 1));
  CHECK(csv_a == csv_b);
  CHECK(csv_a.find("ratio") != std::string::npos);  // header line
}

TEST_CASE("ratios never drop below one") {
  const auto family = gen_hard_fixed(4, 1.0, std::exp(1.0), 6, 0.001);
  const auto phi = PricingFunction::exp_fixed(1.0, std::exp(1.0));
  for (const auto& row : ratio_report(Algorithm::DopFixed, family, phi,
                                      FlpParameters{}, 3.0, 1, 42)) {
    CHECK(row.ratio >= 1.0 - 1e-9);
    CHECK(row.within);
  }
}

TEST_CASE("gamma curve compares heuristic and optimized damping") {
  const auto rows = gamma_curve({1, 2, 8, 64, 512});
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    CHECK(row.gamma_star >= row.gamma_heuristic - 1e-12);
    CHECK(row.gamma_star >= 0.0);
    CHECK(row.gamma_star <= 1.0);
    CHECK(row.f_heuristic ==
          doctest::Approx(1.0 - std::pow(static_cast<double>(row.k), -1.0 / 3.0)));
  }
  const std::string csv = gamma_curve_csv(rows);
  CHECK(csv.find("gamma_star") != std::string::npos);
}

TEST_CASE("competitive-ratio curve stays inside the analytic envelopes") {
  const auto rows = cr_curve({1.0, std::exp(1.0)}, 0.05);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.alpha_integral <= row.bound_integral + 1e-6);
    CHECK(row.alpha_integral >= 1.0 + std::log(row.ratio) - 1e-6);
    CHECK(row.alpha_fractional <= row.alpha_integral + 1e-9);
    CHECK(row.bound_integral ==
          doctest::Approx(3.0 * (1.0 + std::log(row.ratio))));
    CHECK(row.bound_fractional == doctest::Approx(4.0 + std::log(row.ratio)));
  }
  const std::string svg = curves_to_svg(
      {"alpha"}, {{rows[0].ratio, rows[1].ratio},
                  {rows[0].alpha_integral, rows[1].alpha_integral}},
      false);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}
