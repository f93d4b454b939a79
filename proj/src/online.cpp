#include "krental/online.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "krental/rng.hpp"

namespace krental {

double dop_fixed_fraction(double v, double y, int k,
                          const PricingFunction& phi) {
  const double cap = std::min(1.0, k - y);
  if (cap <= 0.0) return 0.0;
  const double x = k * phi.inverse_sup(v) - y;
  return std::clamp(x, 0.0, cap);
}

RunTrace run_dop_fixed(const Instance& inst, const PricingFunction& phi,
                       double r, FixedHistory history) {
  if (!inst.is_fixed()) throw std::invalid_argument("fixed instance required");
  const double d = inst.fixed().d;
  const size_t n = inst.requests.size();

  RunTrace trace;
  trace.records.resize(n);

  // Inlined dependent-rounding state shared across all requests.
  int m = 1;
  double p = 0.0;

  for (size_t i = 0; i < n; ++i) {
    const auto& req = inst.requests[i];

    double y = 0.0;       // utilization from past decisions still active
    double guard = 0.0;   // fractional mass still active (feasibility guard)
    for (size_t j = 0; j < i; ++j) {
      if (inst.requests[j].arrival + d > req.arrival) {
        guard += trace.records[j].fractional;
        y += history == FixedHistory::Integral
                 ? (trace.records[j].accepted ? 1.0 : 0.0)
                 : trace.records[j].fractional;
      }
    }
    if (y >= inst.k) continue;  // reject: inventory exhausted

    const double x = dop_fixed_fraction(req.valuation, y, inst.k, phi);
    trace.records[i].fractional = x;

    const bool guard_ok = guard + x <= inst.k + 1e-9;
    if (p + x < 1.0) {
      if (guard_ok && r >= p && r < p + x) {
        trace.records[i].accepted = true;
        trace.records[i].unit = m;
      }
      p += x;
    } else {
      const int next = (m % inst.k) + 1;
      if (guard_ok) {
        if (r >= p) {
          trace.records[i].accepted = true;
          trace.records[i].unit = m;
        } else if (r < p + x - 1.0) {
          trace.records[i].accepted = true;
          trace.records[i].unit = next;
        }
      }
      p = p + x - 1.0;
      m = next;
    }
  }
  trace.objective = trace.integral_objective(inst);
  return trace;
}

RunTrace run_dop_variable(const Instance& inst, const PricingFunction& phi,
                          std::uint64_t seed) {
  if (inst.is_fixed())
    throw std::invalid_argument("variable instance required");
  const size_t n = inst.requests.size();
  std::mt19937_64 rng(seed);

  RunTrace trace;
  trace.records.resize(n);
  std::vector<int> routed(n, -1);              // chosen unit per request
  std::vector<double> busy_until(inst.k, -1.0);

  for (size_t i = 0; i < n; ++i) {
    const auto& req = inst.requests[i];
    const double s = canonical_uniform(rng);  // drawn for every request

    // Probabilistic utilization per unit from the fractional history.
    std::vector<double> y(inst.k, 0.0);
    for (size_t j = 0; j < i; ++j) {
      const auto& prev = inst.requests[j];
      if (prev.arrival + prev.duration > req.arrival)
        y[routed[j]] += trace.records[j].fractional;
    }
    int unit = 0;
    for (int u = 1; u < inst.k; ++u) {
      if (y[u] < y[unit]) unit = u;  // ties resolve to the lowest index
    }
    routed[i] = unit;

    if (y[unit] >= 1.0 - 1e-12) continue;  // no probability mass left

    const double x = std::clamp(phi.inverse_sup(req.duration) - y[unit], 0.0, 1.0);
    trace.records[i].fractional = x;
    if (x <= 0.0) continue;

    const bool unit_free = busy_until[unit] <= req.arrival;
    if (unit_free && s <= x / (1.0 - y[unit])) {
      trace.records[i].accepted = true;
      trace.records[i].unit = unit + 1;
      busy_until[unit] = req.arrival + req.duration;
    }
  }
  trace.objective = trace.integral_objective(inst);
  return trace;
}

RunTrace run_dop_variable_fractional(const Instance& inst,
                                     const PricingFunction& phi) {
  if (inst.is_fixed())
    throw std::invalid_argument("variable instance required");
  const size_t n = inst.requests.size();

  RunTrace trace;
  trace.records.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& req = inst.requests[i];
    double y = 0.0;
    for (size_t j = 0; j < i; ++j) {
      const auto& prev = inst.requests[j];
      if (prev.arrival + prev.duration > req.arrival)
        y += trace.records[j].fractional;
    }
    const double cap = std::min(1.0, inst.k - y);
    if (cap <= 0.0) continue;
    const double x = inst.k * phi.inverse_sup(req.duration) - y;
    trace.records[i].fractional = std::clamp(x, 0.0, cap);
  }
  trace.objective = trace.fractional_objective(inst);
  return trace;
}

FlpRun run_flp_variable(const Instance& inst, double eta, double beta) {
  if (inst.is_fixed())
    throw std::invalid_argument("variable instance required");

  long horizon = 0;
  for (const auto& req : inst.requests) {
    const long a = std::lround(req.arrival);
    const long d = std::lround(req.duration);
    if (std::abs(req.arrival - a) > 1e-9 || std::abs(req.duration - d) > 1e-9 ||
        d < 1)
      throw std::invalid_argument("integer arrivals and durations required");
    horizon = std::max(horizon, a + d);
  }

  const double lnb = std::log(beta);
  auto price = [&](double u) {
    return eta * (std::exp(lnb * u / inst.k) - 1.0);
  };

  FlpRun run;
  run.trace.records.resize(inst.requests.size());
  run.slot_utilization.assign(static_cast<size_t>(horizon), 0.0);

  for (size_t i = 0; i < inst.requests.size(); ++i) {
    const auto& req = inst.requests[i];
    const long a = std::lround(req.arrival);
    const long d = std::lround(req.duration);

    // Marginal pseudo-utility derivative d_n - sum_t phi(y_t + x) is
    // decreasing in x; the maximizer is the clamped stationary point.
    auto deriv_gap = [&](double x) {
      double cost = 0.0;
      for (long t = a; t < a + d; ++t) cost += price(run.slot_utilization[t] + x);
      return req.duration - cost;
    };
    double x = 0.0;
    if (deriv_gap(0.0) > 0.0) {
      if (deriv_gap(1.0) >= 0.0) {
        x = 1.0;
      } else {
        double lo = 0.0, hi = 1.0;
        while (hi - lo > 1e-10) {
          const double mid = 0.5 * (lo + hi);
          (deriv_gap(mid) > 0.0 ? lo : hi) = mid;
        }
        x = 0.5 * (lo + hi);
      }
    }
    run.trace.records[i].fractional = x;
    for (long t = a; t < a + d; ++t) run.slot_utilization[t] += x;
  }
  run.trace.objective = run.trace.fractional_objective(inst);
  return run;
}

}  // namespace krental
