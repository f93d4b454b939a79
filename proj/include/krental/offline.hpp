#ifndef KRENTAL_OFFLINE_HPP
#define KRENTAL_OFFLINE_HPP

#include <vector>

#include "krental/model.hpp"

namespace krental {

struct OptResult {
  double value = 0.0;
  std::vector<int> accepted;  // 1-based request indices, ascending
};

// Exhaustive clairvoyant optimum (N <= 22): maximizes total accepted value
// subject to occupancy <= k at every arrival; ties broken towards the
// lexicographically smallest accepted set.
OptResult opt_bruteforce(const Instance& inst);

// Exact optimum via successive-shortest-path min-cost flow on the arrival
// timeline: k units flow through capacity-k timeline arcs, and serving a
// request routes one unit over a bypass arc with cost -v_n spanning its
// rental interval.
OptResult opt_flow(const Instance& inst);

// Optimum of the fractional relaxation.  Equal to opt_flow: the overlap
// constraint matrix has the consecutive-ones interval property, so the
// relaxation has an integral optimal vertex.
double opt_fractional(const Instance& inst);

}  // namespace krental

#endif
