#ifndef KRENTAL_PHI_SOLVER_HPP
#define KRENTAL_PHI_SOLVER_HPP

#include "krental/pricing.hpp"

namespace krental {

enum class PhiVariant { Integral, Fractional };

struct PhiSolveResult {
  double alpha_star = 0.0;
  PricingFunction prices = PricingFunction::exp_fixed(1.0, 1.0);
  Theorem4Certificate certificate;  // grid re-verification at alpha_star
};

// Smallest alpha (relative tolerance 1e-6) admitting a monotone step-price
// vector on the eps-grid that satisfies the price-design inequality system,
// found by binary search over alpha.  The feasibility oracle for a fixed
// alpha builds the prices greedily: pi_1 = d_min and each later price is the
// largest value keeping every already-determined constraint satisfiable
// (constraints are linear in the new price), then requires pi_last >= d_max.
PhiSolveResult solve_phi_discretized(double epsilon, double d_min,
                                     double d_max, PhiVariant variant);

struct FlpParameters {
  double eta = 0.0;
  double beta = 0.0;
  double cr = 0.0;  // (1 + eta) * ln(beta)
};

// Minimizes (1+eta)*ln(beta) subject to beta >= e and
//   ln(beta) >= -ln( prod_{i=1..d_max} (1 - 1/(i*(1+eta))) ),
// the feasibility condition of the forward-looking pricing scheme.
FlpParameters flp_parameters(int d_max);

}  // namespace krental

#endif
