#include "krental/phi_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace krental {

namespace {

constexpr double kSlackTol = 1e-9;  // relative feasibility tolerance

// Lightweight view of a step-price prefix: phi holds pi[i] on (i*eps,(i+1)*eps].
struct StepPrices {
  double eps;
  const std::vector<double>& pi;

  double phi(double y) const {
    if (y <= 0.0) return pi.front();
    size_t idx = static_cast<size_t>(std::ceil(y / eps - 1e-12));
    idx = std::clamp<size_t>(idx, 1, pi.size());
    return pi[idx - 1];
  }

  double integ(double a, double b) const {
    double total = 0.0;
    for (size_t i = 0; i < pi.size(); ++i) {
      const double lo = i * eps, hi = (i + 1) * eps;
      if (lo >= b) break;
      const double overlap = std::min(b, hi) - std::max(a, lo);
      if (overlap > 0) total += overlap * pi[i];
    }
    return total;
  }
};

// Minimum relative slack of the two inequality families for a single value
// level: requests with valuation-rate d_n in [d_lo, d_hi] all see the
// utilization cap `ps` (= phi-inverse-sup of the level).  Slack is linear in
// d_n and piecewise linear in the y variables, so the exact continuum minimum
// is attained on the checked finite set.
double level_min_slack(const StepPrices& sp, double c1, double c2, double d_lo,
                       double d_hi, double ps) {
  double min_slack = 1e300;
  for (double d_n : {d_lo, d_hi}) {
    // Truncation family: y2 at cell right-endpoints (slack decreases within a
    // cell since phi is constant there and d_n >= phi).
    {
      const double base = c2 * d_n * ps - d_n;
      double y2 = 0.0;
      for (;;) {
        const double s = (base - c2 * y2 * (d_n - sp.phi(y2))) / d_n;
        if (s < min_slack) min_slack = s;
        if (y2 >= ps) break;
        y2 = std::min(ps, y2 + sp.eps);
      }
    }
    // Pseudo-revenue family: breakpoints of the piecewise-linear slack are the
    // half-grid points (where either y1 or 2*y1 crosses a cell boundary).
    {
      double y1 = 0.0;
      for (;;) {
        const double lhs =
            c1 * sp.integ(y1, 2.0 * y1) + c2 * d_n * (ps - 2.0 * y1);
        const double s = (lhs - d_n) / d_n;
        if (s < min_slack) min_slack = s;
        if (y1 >= ps / 2.0) break;
        y1 = std::min(ps / 2.0, y1 + sp.eps / 2.0);
      }
    }
  }
  return min_slack;
}

// Distinct value levels ("runs") of the price vector with their top index.
struct Run {
  double value;
  size_t top;  // 1-based index of the last grid cell at this value
};

std::vector<Run> runs_of(const std::vector<double>& pi) {
  std::vector<Run> runs;
  for (size_t i = 0; i < pi.size(); ++i) {
    if (runs.empty() || pi[i] > runs.back().value)
      runs.push_back({pi[i], i + 1});
    else
      runs.back().top = i + 1;
  }
  return runs;
}

// Full verification of a complete price vector at a given alpha.
bool verify_prices(const std::vector<double>& pi, double eps, double c1,
                   double c2, double d_max) {
  StepPrices sp{eps, pi};
  const auto runs = runs_of(pi);
  for (size_t j = 0; j < runs.size(); ++j) {
    if (runs[j].value > d_max) break;
    const double d_hi =
        j + 1 < runs.size() ? std::min(runs[j + 1].value, d_max) : d_max;
    const double ps = std::min(1.0, runs[j].top * eps);
    if (level_min_slack(sp, c1, c2, runs[j].value, d_hi, ps) < -kSlackTol)
      return false;
  }
  return pi.back() >= d_max * (1.0 - 1e-12);
}

// Greedy extremal construction.  Appending a price v > pi[l-1] closes the
// current top run, whose constraints (linear in v through the d_n interval
// endpoint) then become final; each step raises the new price as far as those
// allow.  Staying flat never violates anything mid-stream — it only extends
// the open run, which is judged by the final verification.
bool feasible_alpha(double alpha, double eps, double d_min, double d_max,
                    bool fractional, std::vector<double>* out) {
  const double c1 = fractional ? alpha : 2.0 * alpha / 3.0;
  const double c2 = fractional ? alpha / 2.0 : alpha / 3.0;
  const size_t levels = static_cast<size_t>(std::ceil(1.0 / eps - 1e-12));

  std::vector<double> pi{d_min};
  pi.reserve(levels);
  for (size_t l = 2; l <= levels; ++l) {
    const double prev = pi.back();
    if (prev >= d_max) {
      pi.push_back(prev);
      continue;
    }
    StepPrices sp{eps, pi};
    const double prev_ps = std::min(1.0, (l - 1) * eps);
    // Raising to v > prev closes the top run (value prev, top index l-1),
    // which then has to certify every d_n in [prev, v).
    auto ok = [&](double v) {
      return level_min_slack(sp, c1, c2, prev, std::min(v, d_max), prev_ps) >=
             -kSlackTol;
    };
    if (!ok(prev)) {
      pi.push_back(prev);  // cannot raise yet; extend the run
      continue;
    }
    if (ok(d_max)) {
      pi.push_back(d_max);
      continue;
    }
    double lo = prev, hi = d_max;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? lo : hi) = mid;
    }
    pi.push_back(lo);
  }

  const bool good = verify_prices(pi, eps, c1, c2, d_max);
  if (good && out) *out = pi;
  return good;
}

}  // namespace

PhiSolveResult solve_phi_discretized(double epsilon, double d_min,
                                     double d_max, PhiVariant variant) {
  if (!(epsilon > 0 && epsilon <= 0.5))
    throw std::invalid_argument("epsilon outside (0, 0.5]");
  if (!(0 < d_min && d_min <= d_max))
    throw std::invalid_argument("need 0 < d_min <= d_max");
  const bool fractional = variant == PhiVariant::Fractional;
  const double r = d_max / d_min;

  double lo = std::max(0.5, std::log(r));            // below any feasible alpha
  double hi = 3.0 * (1.0 + std::log(r)) + 1.0;
  auto feas = [&](double a, std::vector<double>* out) {
    return feasible_alpha(a, epsilon, d_min, d_max, fractional, out);
  };
  int widen = 0;
  while (!feas(hi, nullptr)) {
    hi *= 2.0;
    if (++widen > 6) throw std::runtime_error("no feasible alpha found");
  }
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    (feas(mid, nullptr) ? hi : lo) = mid;
  }

  PhiSolveResult result;
  std::vector<double> pi;
  feas(hi, &pi);
  result.alpha_star = hi;
  result.prices = PricingFunction::piecewise(epsilon, pi);
  result.certificate = check_theorem4_constraints(
      result.prices, result.alpha_star, d_min, d_max, 50, 200, fractional);
  return result;
}

FlpParameters flp_parameters(int d_max) {
  if (d_max < 1) throw std::invalid_argument("d_max must be >= 1");
  const double e = std::exp(1.0);

  // For a candidate eta the cheapest admissible beta is forced; the objective
  // (1+eta)*ln(beta) is then one-dimensional in eta.
  auto beta_of = [&](double eta) {
    double log_prod = 0.0;
    for (int i = 1; i <= d_max; ++i) {
      const double term = 1.0 - 1.0 / (i * (1.0 + eta));
      if (term <= 0.0) return 1e300;  // infeasible: product non-positive
      log_prod += std::log(term);
    }
    return std::max(e, std::exp(-log_prod));
  };
  auto cr_of = [&](double eta) {
    const double b = beta_of(eta);
    return b >= 1e300 ? 1e300 : (1.0 + eta) * std::log(b);
  };

  // Coarse log-spaced scan, then golden-section refinement around the best.
  const int grid = 4000;
  const double eta_lo = 1e-6, eta_hi = 1e3;
  double best_eta = eta_lo, best_cr = cr_of(eta_lo);
  for (int i = 1; i <= grid; ++i) {
    const double eta =
        eta_lo * std::pow(eta_hi / eta_lo, static_cast<double>(i) / grid);
    const double c = cr_of(eta);
    if (c < best_cr) {
      best_cr = c;
      best_eta = eta;
    }
  }
  double a = best_eta / std::pow(eta_hi / eta_lo, 1.0 / grid);
  double b = best_eta * std::pow(eta_hi / eta_lo, 1.0 / grid);
  a = std::max(a, eta_lo);
  b = std::min(b, eta_hi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = cr_of(c), fd = cr_of(d);
  while (b - a > 1e-12 * (1.0 + b)) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = cr_of(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = cr_of(d);
    }
  }
  FlpParameters out;
  out.eta = 0.5 * (a + b);
  out.beta = beta_of(out.eta);
  out.cr = cr_of(out.eta);
  return out;
}

}  // namespace krental
