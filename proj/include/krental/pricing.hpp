#ifndef KRENTAL_PRICING_HPP
#define KRENTAL_PRICING_HPP

#include <vector>

namespace krental {

// Closed-form exponential marginal price on [0,1]:
//   phi(y) = lo * exp((1 + ln(hi/lo)) * y - 1),
// used for both the fixed-duration (lo=v_min, hi=v_max) and the
// variable-duration (lo=d_min, hi=d_max) problems.
double phi_exponential(double y, double lo, double hi);
double phi_fixed(double y, double v_min, double v_max);
double phi_fixed_inverse(double v, double v_min, double v_max);
double phi_variable_closed(double y, double d_min, double d_max);

// A monotone marginal price map.  Exponential variants are closed-form;
// Piecewise holds prices[i-1] on ((i-1)*eps, i*eps]; FlpExp is
// phi(u) = eta * (beta^(u/k) - 1) on [0, k].
class PricingFunction {
 public:
  enum class Kind { ExpFixed, ExpVariable, Piecewise, FlpExp };

  static PricingFunction exp_fixed(double v_min, double v_max);
  static PricingFunction exp_variable(double d_min, double d_max);
  static PricingFunction piecewise(double epsilon, std::vector<double> prices);
  static PricingFunction flp(double eta, double beta, int k);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double epsilon() const { return epsilon_; }
  const std::vector<double>& prices() const { return prices_; }
  double eta() const { return eta_; }
  double beta() const { return beta_; }
  int k() const { return k_; }

  // Marginal price at utilization y.
  double value(double y) const;

  // Exact integral of the marginal price over [a, b] (closed form for the
  // exponential variants, exact piecewise sums otherwise).
  double integral(double a, double b) const;

  // phi*(d) = sup{x in [0,1] : phi(x) <= d}; 0 when phi(0) > d.
  double inverse_sup(double d) const;

 private:
  Kind kind_ = Kind::ExpFixed;
  double lo_ = 1.0, hi_ = 1.0;        // exponential variants
  double epsilon_ = 0.0;              // piecewise
  std::vector<double> prices_;
  double eta_ = 0.0, beta_ = 0.0;     // FLP
  int k_ = 1;
};

double phi_star(const PricingFunction& phi, double d);

// One violated-or-tight grid point of the price-design constraint system.
struct ConstraintSlack {
  double slack = 0.0;   // (LHS - d_n)/d_n, relative
  double d_n = 0.0;
  double y = 0.0;
};

struct Theorem4Certificate {
  ConstraintSlack family1;  // minimum over the pseudo-revenue inequality
  ConstraintSlack family2;  // minimum over the truncation inequality
  double min_slack() const {
    return family1.slack < family2.slack ? family1.slack : family2.slack;
  }
};

// Grid evaluation of the two price-design inequality families
//   int_{y1}^{2 y1} c1*phi + c2*d_n*(phi*(d_n) - 2 y1) >= d_n,  y1 in [0, phi*/2]
//   c2*d_n*phi*(d_n) - c2*y2*(d_n - phi(y2))           >= d_n,  y2 in [0, phi*]
// with (c1, c2) = (2a/3, a/3) for the integral system and (a, a/2) for the
// fractional one.  Returns the minimum relative slack per family over
// d_grid log-spaced d_n values and y_grid points per family.
Theorem4Certificate check_theorem4_constraints(const PricingFunction& phi,
                                               double alpha, double d_min,
                                               double d_max, int d_grid = 50,
                                               int y_grid = 200,
                                               bool fractional = false);

}  // namespace krental

#endif
