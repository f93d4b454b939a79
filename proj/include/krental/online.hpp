#ifndef KRENTAL_ONLINE_HPP
#define KRENTAL_ONLINE_HPP

#include <cstdint>
#include <vector>

#include "krental/model.hpp"
#include "krental/pricing.hpp"

namespace krental {

// Fractional allocation for a fixed-duration request:
//   clamp(k * phi^{-1}(v) - y, 0, min(1, k - y)).
double dop_fixed_fraction(double v, double y, int k, const PricingFunction& phi);

// Which past decisions feed the utilization level y_n of the fixed-duration
// algorithm: the integral allocations (the literal reading) or the fractional
// ones (equivalent in expectation because the rounding is lossless, and
// deterministic — used for exact evaluation).
enum class FixedHistory { Integral, Fractional };

// Price-based fixed-duration algorithm: computes x_hat per request and rounds
// through a single shared dependent-rounding instance driven by seed r.
RunTrace run_dop_fixed(const Instance& inst, const PricingFunction& phi,
                       double r, FixedHistory history = FixedHistory::Integral);

// Variable-duration algorithm with limited correlation: routes each request
// to the least-utilized unit and accepts with probability x_hat/(1 - y) when
// that unit is free.  The fractional side is deterministic; only acceptance
// is random.
RunTrace run_dop_variable(const Instance& inst, const PricingFunction& phi,
                          std::uint64_t seed);

// Fractional variable-duration algorithm over the aggregate utilization:
//   x_hat = clamp(k * phi_star(d_n) - y_n, 0, min(1, k - y_n)).
RunTrace run_dop_variable_fractional(const Instance& inst,
                                     const PricingFunction& phi);

struct FlpRun {
  RunTrace trace;
  std::vector<double> slot_utilization;  // y_t per integer time slot
};

// Forward-looking pricing with phi(u) = eta*(beta^(u/k) - 1): the fractional
// allocation maximizes x*d_n - sum_{t in the rental slots} int phi, solved by
// bisection on the stationarity condition.  Requires integer arrivals and
// integral durations.
FlpRun run_flp_variable(const Instance& inst, double eta, double beta);

}  // namespace krental

#endif
