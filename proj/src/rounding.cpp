#include "krental/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "krental/rng.hpp"

namespace krental {

namespace {

// Sum of targets of players j <= last whose rental still covers arrival `a`.
double active_target_mass(const OcrInput& input, size_t last, double a,
                          bool variable_durations) {
  double sum = 0.0;
  for (size_t j = 0; j <= last; ++j) {
    const double dur =
        variable_durations ? input.player_duration(j) : input.d;
    if (input.players[j].arrival + dur > a) sum += input.players[j].target;
  }
  return sum;
}

}  // namespace

bool check_ocr_condition(const OcrInput& input, double tol,
                         bool variable_durations) {
  const size_t n = input.players.size();
  for (size_t i = 0; i < n; ++i) {
    const double x = input.players[i].target;
    if (x < -tol || x > 1 + tol) return false;
    double active = 0.0;
    for (size_t j = 0; j < i; ++j) {
      const double dj =
          variable_durations ? input.player_duration(j) : input.d;
      if (input.players[j].arrival + dj > input.players[i].arrival)
        active += input.players[j].target;
    }
    if (x > std::min(1.0, input.k - active) + tol) return false;
  }
  return true;
}

double gamma_lower_bound(int k, double f) {
  const double kk = static_cast<double>(k);
  const double num = (kk - f * kk) * (kk - f * kk);
  const double den = f * kk + kk;
  return f * (1.0 - std::exp(-num / den));
}

OptimalF optimal_f(int k) {
  auto g = [k](double f) { return gamma_lower_bound(k, f); };

  // Grid pre-check: locate the best cell, then refine by golden section.
  const int grid = 1000;
  int best_i = 0;
  double best_v = g(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double v = g(static_cast<double>(i) / grid);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  double lo = std::max(0.0, (best_i - 1.0) / grid);
  double hi = std::min(1.0, (best_i + 1.0) / grid);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = g(c), fd = g(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g(d);
    }
  }
  OptimalF out;
  out.f_star = (a + b) / 2.0;
  out.gamma_star = g(out.f_star);
  // Guard against a non-unimodal surprise: never return less than the grid max.
  if (best_v > out.gamma_star) {
    out.f_star = static_cast<double>(best_i) / grid;
    out.gamma_star = best_v;
  }
  return out;
}

RunTrace independent_round(const OcrInput& input, double f,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RunTrace trace;
  trace.records.resize(input.players.size());

  // busy_until[i] is the return time of unit i (1-based ids, slot i-1).
  std::vector<double> busy_until(input.k, -1.0);
  for (size_t n = 0; n < input.players.size(); ++n) {
    const auto& pl = input.players[n];
    trace.records[n].fractional = pl.target;
    const double s = canonical_uniform(rng);
    int free_unit = -1;
    int rented = 0;
    for (int i = 0; i < input.k; ++i) {
      if (busy_until[i] > pl.arrival) {
        ++rented;
      } else if (free_unit < 0) {
        free_unit = i;
      }
    }
    if (s <= f * pl.target && rented < input.k) {
      trace.records[n].accepted = true;
      trace.records[n].unit = free_unit + 1;
      busy_until[free_unit] = pl.arrival + input.player_duration(n);
    }
  }
  return trace;
}

std::vector<OcrPointerState> pointer_trajectory(const OcrInput& input) {
  std::vector<OcrPointerState> states;
  states.reserve(input.players.size() + 1);
  OcrPointerState st;  // m=1, p=0
  states.push_back(st);
  for (const auto& pl : input.players) {
    const double x = pl.target;
    if (st.p + x < 1.0) {
      st.p += x;
    } else {
      st.p = st.p + x - 1.0;
      st.m = (st.m % input.k) + 1;
    }
    states.push_back(st);
  }
  return states;
}

RunTrace dependent_round_1ocr(const OcrInput& input, double r,
                              bool variable_durations) {
  RunTrace trace;
  trace.records.resize(input.players.size());
  OcrPointerState st;
  for (size_t n = 0; n < input.players.size(); ++n) {
    const auto& pl = input.players[n];
    trace.records[n].fractional = pl.target;
    const double x = pl.target;

    const bool guard_ok =
        active_target_mass(input, n, pl.arrival, variable_durations) <=
        input.k + 1e-9;

    if (st.p + x < 1.0) {
      if (guard_ok && r >= st.p && r < st.p + x) {
        trace.records[n].accepted = true;
        trace.records[n].unit = st.m;
      }
      st.p += x;
    } else {
      // The two seed intervals are disjoint because x <= 1.
      const int next = (st.m % input.k) + 1;
      if (guard_ok) {
        if (r >= st.p) {
          trace.records[n].accepted = true;
          trace.records[n].unit = st.m;
        } else if (r < st.p + x - 1.0) {
          trace.records[n].accepted = true;
          trace.records[n].unit = next;
        }
      }
      st.p = st.p + x - 1.0;
      st.m = next;
    }
  }
  return trace;
}

AllocationProbabilityReport exact_allocation_probabilities(
    const OcrInput& input, bool variable_durations) {
  const size_t n = input.players.size();

  // Endpoints of the outcome-constant partition of [0,1): every p_n and every
  // wrapped interval end p_n + x_n (mod 1).
  std::vector<double> cuts{0.0, 1.0};
  const auto states = pointer_trajectory(input);
  for (size_t i = 0; i < n; ++i) {
    const double p = states[i].p;
    const double x = input.players[i].target;
    cuts.push_back(p);
    cuts.push_back(p + x < 1.0 ? p + x : p + x - 1.0);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> uniq;
  for (double c : cuts) {
    if (c < 0.0 || c > 1.0) continue;
    if (uniq.empty() || c - uniq.back() > 1e-12) uniq.push_back(c);
  }
  if (uniq.back() < 1.0 - 1e-12) uniq.push_back(1.0);

  AllocationProbabilityReport report;
  report.players.resize(n);

  for (size_t c = 0; c + 1 < uniq.size(); ++c) {
    const double lo = uniq[c], hi = uniq[c + 1];
    const double len = hi - lo;
    if (len <= 0) continue;
    const RunTrace trace =
        dependent_round_1ocr(input, (lo + hi) / 2.0, variable_durations);

    for (size_t i = 0; i < n; ++i) {
      if (!trace.records[i].accepted) continue;
      const int unit = *trace.records[i].unit;
      report.players[i].probability += len;
      auto& iv = report.players[i].intervals;
      if (!iv.empty() && iv.back().unit == unit &&
          std::abs(iv.back().hi - lo) <= 1e-12) {
        iv.back().hi = hi;  // merge contiguous cells with the same unit
      } else {
        iv.push_back({lo, hi, unit});
      }
      // Availability check: a unit assigned here must not still be held by an
      // earlier player whose rental covers this player's arrival.
      for (size_t j = 0; j < i; ++j) {
        if (!trace.records[j].accepted || *trace.records[j].unit != unit)
          continue;
        const double dj = variable_durations ? input.player_duration(j) : input.d;
        if (input.players[j].arrival + dj > input.players[i].arrival) {
          report.violations.push_back({unit, static_cast<int>(j) + 1,
                                       static_cast<int>(i) + 1, lo, hi});
        }
      }
    }
  }
  return report;
}

OcrInput variable_duration_counterexample() {
  OcrInput input;
  input.k = 2;
  input.d = 0.0;  // unused: every player carries its own duration
  input.players = {
      {1.0, 0.5, 5.0},       {2.0, 0.5, 7.0},  {5.5, 2.0 / 3.0, 9.0},
      {6.0, 1.0 / 3.0, 8.0}, {8.0, 0.5, 10.0}, {14.0, 5.0 / 6.0, 10.0},
  };
  return input;
}

}  // namespace krental
