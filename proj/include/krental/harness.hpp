#ifndef KRENTAL_HARNESS_HPP
#define KRENTAL_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "krental/model.hpp"
#include "krental/phi_solver.hpp"
#include "krental/pricing.hpp"

namespace krental {

// Nested hard family for the fixed-duration problem: instance i concatenates
// batches of k identical requests at values v_1 < ... < v_i (evenly spaced on
// [v_min, v_max]); all arrivals strictly increasing inside [0, epsilon] with
// shared duration 1, so every pair of requests overlaps.
std::vector<Instance> gen_hard_fixed(int k, double v_min, double v_max, int m,
                                     double epsilon);

// Variable-duration analog: batch j uses duration d_j (valuation = duration);
// arrivals inside [0, epsilon] with epsilon < d_min.
std::vector<Instance> gen_hard_variable(int k, double d_min, double d_max,
                                        int m, double epsilon);

Instance gen_random_fixed(int k, int n, std::uint64_t seed, double d,
                          double v_min, double v_max, double horizon);
Instance gen_random_variable(int k, int n, std::uint64_t seed, double d_min,
                             double d_max, double horizon);
// Integer arrivals on [0, horizon], integral durations in [1, d_max].
Instance gen_random_variable_integral(int k, int n, std::uint64_t seed,
                                      int d_max, int horizon);

enum class Algorithm { DopFixed, DopVariable, DopVariableFractional, Flp };

struct EvalStats {
  double mean = 0.0;
  double stddev = 0.0;
  double ci_half = 0.0;  // 1.96 * stddev / sqrt(trials) when sampled
  long trials = 0;
  bool exact = false;
};

// Expected objective of an algorithm on an instance.  DopFixed and the
// fractional algorithms are evaluated exactly (sum of v_n * x_hat_n, justified
// for DopFixed by lossless rounding); DopVariable is Monte Carlo sampled over
// `trials` derived seeds, optionally in parallel.
EvalStats evaluate(Algorithm alg, const Instance& inst,
                   const PricingFunction& phi, const FlpParameters& flp,
                   long trials, std::uint64_t seed, int threads = 1);

struct RatioRow {
  std::string id;
  double opt = 0.0;
  double alg_mean = 0.0;
  double ci_half = 0.0;
  double ratio = 0.0;   // opt / alg_mean
  double bound = 0.0;   // theoretical guarantee
  bool within = false;  // ratio <= bound + CI-adjusted tolerance
};

std::vector<RatioRow> ratio_report(Algorithm alg,
                                   const std::vector<Instance>& family,
                                   const PricingFunction& phi,
                                   const FlpParameters& flp, double bound,
                                   long trials, std::uint64_t seed,
                                   int threads = 1);

std::string ratio_report_csv(const std::vector<RatioRow>& rows);

struct GammaCurveRow {
  long k = 0;
  double f_heuristic = 0.0;  // 1 - k^(-1/3)
  double f_star = 0.0;
  double gamma_heuristic = 0.0;
  double gamma_star = 0.0;
};

std::vector<GammaCurveRow> gamma_curve(const std::vector<long>& k_values);
std::string gamma_curve_csv(const std::vector<GammaCurveRow>& rows);

struct CrCurveRow {
  double ratio = 0.0;  // d_max / d_min
  double alpha_integral = 0.0;
  double alpha_fractional = 0.0;
  double bound_integral = 0.0;    // 3 * (1 + ln ratio)
  double bound_fractional = 0.0;  // 4 + ln ratio
};

std::vector<CrCurveRow> cr_curve(const std::vector<double>& ratios,
                                 double epsilon);
std::string cr_curve_csv(const std::vector<CrCurveRow>& rows);

// Minimal line plot of selected CSV-equivalent series (one polyline per
// y-column against the first column).
std::string curves_to_svg(const std::vector<std::string>& names,
                          const std::vector<std::vector<double>>& x_and_ys,
                          bool log_x);

}  // namespace krental

#endif
