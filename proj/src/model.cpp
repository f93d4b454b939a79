#include "krental/model.hpp"

#include <cmath>
#include <sstream>

namespace krental {

double RunTrace::integral_objective(const Instance& inst) const {
  double total = 0.0;
  for (size_t i = 0; i < records.size() && i < inst.requests.size(); ++i) {
    if (records[i].accepted) total += inst.requests[i].valuation;
  }
  return total;
}

double RunTrace::fractional_objective(const Instance& inst) const {
  double total = 0.0;
  for (size_t i = 0; i < records.size() && i < inst.requests.size(); ++i) {
    total += records[i].fractional * inst.requests[i].valuation;
  }
  return total;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  auto fail = [&out](int index, const std::string& what) {
    std::ostringstream os;
    if (index > 0) os << "request " << index << ": ";
    os << what;
    out.push_back(os.str());
  };

  if (inst.k < 1) fail(0, "inventory k must be >= 1");
  if (inst.is_fixed()) {
    const auto& f = inst.fixed();
    if (!(f.d > 0)) fail(0, "fixed duration d must be > 0");
    if (!(0 < f.v_min && f.v_min <= f.v_max))
      fail(0, "need 0 < v_min <= v_max");
  } else {
    const auto& v = inst.variable();
    if (!(0 < v.d_min && v.d_min <= v.d_max))
      fail(0, "need 0 < d_min <= d_max");
  }

  double prev_arrival = -1.0;
  for (const auto& r : inst.requests) {
    if (r.arrival < 0) fail(r.index, "arrival must be >= 0");
    if (r.arrival < prev_arrival) fail(r.index, "arrivals must be non-decreasing");
    prev_arrival = r.arrival;
    if (!(r.duration > 0)) fail(r.index, "duration must be > 0");
    if (!(r.valuation > 0)) fail(r.index, "valuation must be > 0");
    if (inst.is_fixed()) {
      const auto& f = inst.fixed();
      if (r.duration != f.d) fail(r.index, "duration differs from the shared d");
      if (r.valuation < f.v_min || r.valuation > f.v_max)
        fail(r.index, "valuation outside [v_min, v_max]");
    } else {
      const auto& v = inst.variable();
      if (r.duration < v.d_min || r.duration > v.d_max)
        fail(r.index, "duration outside [d_min, d_max]");
      if (r.valuation != r.duration)
        fail(r.index, "valuation must equal duration");
    }
  }
  return out;
}

int occupancy(const RunTrace& trace, const Instance& inst, double t) {
  int count = 0;
  for (size_t i = 0; i < trace.records.size() && i < inst.requests.size(); ++i) {
    const auto& r = inst.requests[i];
    if (trace.records[i].accepted && r.arrival <= t && t < r.arrival + r.duration)
      ++count;
  }
  return count;
}

bool check_feasible(const RunTrace& trace, const Instance& inst) {
  for (const auto& r : inst.requests) {
    if (occupancy(trace, inst, r.arrival) > inst.k) return false;
  }
  // No unit may serve two requests whose rental intervals overlap.
  const size_t n = std::min(trace.records.size(), inst.requests.size());
  for (size_t i = 0; i < n; ++i) {
    if (!trace.records[i].accepted || !trace.records[i].unit) continue;
    for (size_t j = i + 1; j < n; ++j) {
      if (!trace.records[j].accepted || !trace.records[j].unit) continue;
      if (*trace.records[i].unit != *trace.records[j].unit) continue;
      const auto& a = inst.requests[i];
      const auto& b = inst.requests[j];
      if (a.arrival < b.arrival + b.duration && b.arrival < a.arrival + a.duration)
        return false;
    }
  }
  return true;
}

}  // namespace krental
