#ifndef KRENTAL_MODEL_HPP
#define KRENTAL_MODEL_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace krental {

// One arriving rental demand.  `index` is the 1-based arrival position.
struct Request {
  int index = 0;
  double arrival = 0.0;
  double duration = 0.0;
  double valuation = 0.0;
};

// Fixed-duration problem: every request rents for exactly `d` time units and
// valuations live in [v_min, v_max].
struct FixedKind {
  double d = 1.0;
  double v_min = 1.0;
  double v_max = 1.0;
};

// Variable-duration problem: durations live in [d_min, d_max] and the
// valuation of a request equals its duration.
struct VariableKind {
  double d_min = 1.0;
  double d_max = 1.0;
};

struct Instance {
  int k = 1;
  std::variant<FixedKind, VariableKind> kind;
  std::vector<Request> requests;

  bool is_fixed() const { return std::holds_alternative<FixedKind>(kind); }
  const FixedKind& fixed() const { return std::get<FixedKind>(kind); }
  const VariableKind& variable() const { return std::get<VariableKind>(kind); }
};

// Per-request outcome of one algorithm run.  `fractional` is the fractional
// allocation decided at arrival, `accepted` the integral decision, `unit` the
// 1-based unit id when one was assigned.
struct TraceRecord {
  double fractional = 0.0;
  bool accepted = false;
  std::optional<int> unit;
};

struct RunTrace {
  std::vector<TraceRecord> records;
  double objective = 0.0;

  double integral_objective(const Instance& inst) const;
  double fractional_objective(const Instance& inst) const;
};

// Returns a human-readable description per broken invariant; empty means the
// instance is well formed.
std::vector<std::string> validate_instance(const Instance& inst);

// Number of accepted requests whose rental interval [a, a+d) covers time t.
int occupancy(const RunTrace& trace, const Instance& inst, double t);

// True iff occupancy at every arrival is at most k and no unit is held by two
// requests with overlapping rental intervals.
bool check_feasible(const RunTrace& trace, const Instance& inst);

}  // namespace krental

#endif
