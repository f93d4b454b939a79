#ifndef KRENTAL_ROUNDING_HPP
#define KRENTAL_ROUNDING_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "krental/model.hpp"

namespace krental {

// One player of the rounding subproblem: arrival time and target allocation
// probability.  `duration` is only set for the variable-duration
// demonstration; normally the shared OcrInput::d applies.
struct OcrPlayer {
  double arrival = 0.0;
  double target = 0.0;
  std::optional<double> duration;
};

struct OcrInput {
  int k = 1;
  double d = 1.0;
  std::vector<OcrPlayer> players;

  double player_duration(size_t n) const {
    return players[n].duration ? *players[n].duration : d;
  }
};

// Pointer state of the dependent rounding scheme after each player; depends
// only on the target sequence, never on the random seed.
struct OcrPointerState {
  int m = 1;    // unit pointer in {1..k}
  double p = 0; // sub-interval pointer in [0,1)
};

// Feasibility of the target sequence: for every n,
//   target_n <= min(1, k - sum_{j<n} target_j * [a_j + d > a_n]).
// With `variable_durations` the indicator uses each player's own duration.
bool check_ocr_condition(const OcrInput& input, double tol = 1e-9,
                         bool variable_durations = false);

// gamma_k = f * (1 - exp(-(k - f*k)^2 / (f*k + k))), the guaranteed fraction
// of each target served by independent rounding with damping factor f.
double gamma_lower_bound(int k, double f);

struct OptimalF {
  double f_star = 0.0;
  double gamma_star = 0.0;
};

// Maximizes gamma_lower_bound(k, .) over f in [0,1] to within 1e-8.
OptimalF optimal_f(int k);

// Independent rounding: allocate player n iff S_n <= f * target_n and a unit
// is currently free; assigns the lowest-indexed free unit.
RunTrace independent_round(const OcrInput& input, double f, std::uint64_t seed);

// Dependent rounding driven by a single seed r in [0,1).  Pointer updates are
// independent of r.  Players violating the feasibility guard are rejected but
// the pointers still advance.  With `variable_durations`, per-player
// durations are used in the guard (the allocation logic is unchanged — this
// is the naive extension whose failure the breakpoint analyzer exposes).
RunTrace dependent_round_1ocr(const OcrInput& input, double r,
                              bool variable_durations = false);

// (m_n, p_n) before each player plus the final state; r-independent.
std::vector<OcrPointerState> pointer_trajectory(const OcrInput& input);

// A maximal interval of seeds r on which a player receives a specific unit.
struct SeedInterval {
  double lo = 0.0;
  double hi = 0.0;
  int unit = 0;
};

struct PlayerProbability {
  double probability = 0.0;
  std::vector<SeedInterval> intervals;
};

// Two overlapping players assigned the same unit for seeds in [r_lo, r_hi).
struct AvailabilityViolation {
  int unit = 0;
  int player_a = 0;  // 1-based, earlier player
  int player_b = 0;  // 1-based, later player
  double r_lo = 0.0;
  double r_hi = 0.0;
};

struct AllocationProbabilityReport {
  std::vector<PlayerProbability> players;
  std::vector<AvailabilityViolation> violations;
};

// Exact allocation probabilities: the pointer evolution partitions [0,1) into
// finitely many sub-intervals on which the outcome is constant; one replay at
// each midpoint yields exact per-player probabilities as summed lengths.
AllocationProbabilityReport exact_allocation_probabilities(
    const OcrInput& input, bool variable_durations = false);

// The 6-player, k=2 variable-duration instance on which every interval-based
// dependent rounding scheme must lose probability mass or double-book a unit.
OcrInput variable_duration_counterexample();

}  // namespace krental

#endif
