#include "krental/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace krental {

double phi_exponential(double y, double lo, double hi) {
  if (!(0 < lo && lo <= hi)) throw std::invalid_argument("need 0 < lo <= hi");
  if (y < 0.0 || y > 1.0) throw std::invalid_argument("y outside [0,1]");
  const double growth = 1.0 + std::log(hi / lo);
  return lo * std::exp(growth * y - 1.0);
}

double phi_fixed(double y, double v_min, double v_max) {
  return phi_exponential(y, v_min, v_max);
}

double phi_fixed_inverse(double v, double v_min, double v_max) {
  if (!(0 < v_min && v_min <= v_max))
    throw std::invalid_argument("need 0 < v_min <= v_max");
  if (v < v_min / std::exp(1.0)) return 0.0;  // below range: clamp to 0
  if (v > v_max) return 1.0;                  // above range: clamp to 1
  return (1.0 + std::log(v / v_min)) / (1.0 + std::log(v_max / v_min));
}

double phi_variable_closed(double y, double d_min, double d_max) {
  return phi_exponential(y, d_min, d_max);
}

PricingFunction PricingFunction::exp_fixed(double v_min, double v_max) {
  if (!(0 < v_min && v_min <= v_max))
    throw std::invalid_argument("need 0 < v_min <= v_max");
  PricingFunction p;
  p.kind_ = Kind::ExpFixed;
  p.lo_ = v_min;
  p.hi_ = v_max;
  return p;
}

PricingFunction PricingFunction::exp_variable(double d_min, double d_max) {
  PricingFunction p = exp_fixed(d_min, d_max);
  p.kind_ = Kind::ExpVariable;
  return p;
}

PricingFunction PricingFunction::piecewise(double epsilon,
                                           std::vector<double> prices) {
  if (!(epsilon > 0 && epsilon <= 0.5))
    throw std::invalid_argument("epsilon outside (0, 0.5]");
  if (prices.empty()) throw std::invalid_argument("empty price vector");
  for (size_t i = 1; i < prices.size(); ++i) {
    if (prices[i] < prices[i - 1])
      throw std::invalid_argument("prices must be non-decreasing");
  }
  PricingFunction p;
  p.kind_ = Kind::Piecewise;
  p.epsilon_ = epsilon;
  p.prices_ = std::move(prices);
  return p;
}

PricingFunction PricingFunction::flp(double eta, double beta, int k) {
  if (!(eta > 0) || !(beta > 1) || k < 1)
    throw std::invalid_argument("need eta > 0, beta > 1, k >= 1");
  PricingFunction p;
  p.kind_ = Kind::FlpExp;
  p.eta_ = eta;
  p.beta_ = beta;
  p.k_ = k;
  return p;
}

double PricingFunction::value(double y) const {
  switch (kind_) {
    case Kind::ExpFixed:
    case Kind::ExpVariable:
      return phi_exponential(y, lo_, hi_);
    case Kind::Piecewise: {
      if (y <= 0.0) return prices_.front();
      size_t idx = static_cast<size_t>(std::ceil(y / epsilon_ - 1e-12));
      idx = std::clamp<size_t>(idx, 1, prices_.size());
      return prices_[idx - 1];
    }
    case Kind::FlpExp:
      return eta_ * (std::pow(beta_, y / k_) - 1.0);
  }
  return 0.0;
}

double PricingFunction::integral(double a, double b) const {
  if (b < a) return -integral(b, a);
  switch (kind_) {
    case Kind::ExpFixed:
    case Kind::ExpVariable: {
      const double growth = 1.0 + std::log(hi_ / lo_);
      const double scale = lo_ / growth;
      return scale * (std::exp(growth * b - 1.0) - std::exp(growth * a - 1.0));
    }
    case Kind::Piecewise: {
      // phi holds prices_[i] on (i*eps, (i+1)*eps]; sum exact cell overlaps.
      double total = 0.0;
      const size_t cells = prices_.size();
      const size_t first =
          static_cast<size_t>(std::max(0.0, std::floor(a / epsilon_ - 1e-12)));
      for (size_t i = first; i < cells; ++i) {
        const double cell_lo = i * epsilon_;
        const double cell_hi = (i + 1) * epsilon_;
        if (cell_lo >= b) break;
        const double overlap =
            std::min(b, cell_hi) - std::max(a, cell_lo);
        if (overlap > 0) total += overlap * prices_[i];
      }
      // Tail beyond the last cell (only reachable when b > 1): extend at the
      // top price so the map stays monotone.
      if (b > cells * epsilon_)
        total += (b - std::max(a, cells * epsilon_)) * prices_.back();
      return total;
    }
    case Kind::FlpExp: {
      const double lnb = std::log(beta_) / k_;
      auto anti = [&](double u) {
        return eta_ * (std::exp(lnb * u) / lnb - u);
      };
      return anti(b) - anti(a);
    }
  }
  return 0.0;
}

double PricingFunction::inverse_sup(double d) const {
  switch (kind_) {
    case Kind::ExpFixed:
    case Kind::ExpVariable: {
      if (d < lo_ / std::exp(1.0)) return 0.0;
      if (d >= hi_) return 1.0;
      return (1.0 + std::log(d / lo_)) / (1.0 + std::log(hi_ / lo_));
    }
    case Kind::Piecewise: {
      // Largest index i with prices_[i-1] <= d gives sup = i*eps.
      size_t idx = 0;
      for (size_t i = 0; i < prices_.size(); ++i) {
        if (prices_[i] <= d) idx = i + 1;
      }
      if (idx == 0) return 0.0;
      return std::min(1.0, idx * epsilon_);
    }
    case Kind::FlpExp: {
      if (d <= 0.0) return 0.0;
      const double x = k_ * std::log1p(d / eta_) / std::log(beta_);
      return std::clamp(x, 0.0, 1.0);
    }
  }
  return 0.0;
}

double phi_star(const PricingFunction& phi, double d) {
  return phi.inverse_sup(d);
}

Theorem4Certificate check_theorem4_constraints(const PricingFunction& phi,
                                               double alpha, double d_min,
                                               double d_max, int d_grid,
                                               int y_grid, bool fractional) {
  const double c1 = fractional ? alpha : 2.0 * alpha / 3.0;
  const double c2 = fractional ? alpha / 2.0 : alpha / 3.0;

  Theorem4Certificate cert;
  cert.family1.slack = cert.family2.slack = 1e300;

  const double log_lo = std::log(d_min);
  const double log_hi = std::log(d_max);
  for (int di = 0; di < d_grid; ++di) {
    const double t = d_grid == 1 ? 0.0 : static_cast<double>(di) / (d_grid - 1);
    const double d_n = std::exp(log_lo + t * (log_hi - log_lo));
    const double ps = phi.inverse_sup(d_n);

    for (int yi = 0; yi <= y_grid; ++yi) {
      const double y1 = ps / 2.0 * yi / y_grid;
      const double lhs1 =
          c1 * phi.integral(y1, 2.0 * y1) + c2 * d_n * (ps - 2.0 * y1);
      const double s1 = (lhs1 - d_n) / d_n;
      if (s1 < cert.family1.slack) cert.family1 = {s1, d_n, y1};

      const double y2 = ps * yi / y_grid;
      const double lhs2 =
          c2 * d_n * ps - c2 * y2 * (d_n - phi.value(y2));
      const double s2 = (lhs2 - d_n) / d_n;
      if (s2 < cert.family2.slack) cert.family2 = {s2, d_n, y2};
    }
  }
  return cert;
}

}  // namespace krental
