#include "krental/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "krental/offline.hpp"
#include "krental/online.hpp"
#include "krental/rng.hpp"
#include "krental/rounding.hpp"

namespace krental {

namespace {

Instance hard_family_member(int k, double lo, double hi, int m, double epsilon,
                            int batches, bool variable) {
  Instance inst;
  inst.k = k;
  if (variable)
    inst.kind = VariableKind{lo, hi};
  else
    inst.kind = FixedKind{1.0, lo, hi};
  const double step = m == 1 ? 0.0 : (hi - lo) / (m - 1);
  const int total = batches * k;
  int index = 0;
  for (int b = 0; b < batches; ++b) {
    const double level = lo + b * step;
    for (int i = 0; i < k; ++i) {
      Request r;
      r.index = ++index;
      // Strictly increasing arrivals inside [0, epsilon).
      r.arrival = epsilon * index / (total + 1);
      r.duration = variable ? level : 1.0;
      r.valuation = level;
      inst.requests.push_back(r);
    }
  }
  return inst;
}

}  // namespace

std::vector<Instance> gen_hard_fixed(int k, double v_min, double v_max, int m,
                                     double epsilon) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  if (!(epsilon < 1.0)) throw std::invalid_argument("need epsilon < d = 1");
  std::vector<Instance> family;
  for (int i = 1; i <= m; ++i)
    family.push_back(hard_family_member(k, v_min, v_max, m, epsilon, i, false));
  return family;
}

std::vector<Instance> gen_hard_variable(int k, double d_min, double d_max,
                                        int m, double epsilon) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  if (!(epsilon < d_min)) throw std::invalid_argument("need epsilon < d_min");
  std::vector<Instance> family;
  for (int i = 1; i <= m; ++i)
    family.push_back(hard_family_member(k, d_min, d_max, m, epsilon, i, true));
  return family;
}

Instance gen_random_fixed(int k, int n, std::uint64_t seed, double d,
                          double v_min, double v_max, double horizon) {
  std::mt19937_64 rng(seed);
  std::vector<double> arrivals(n);
  for (auto& a : arrivals) a = canonical_uniform(rng) * horizon;
  std::sort(arrivals.begin(), arrivals.end());

  Instance inst;
  inst.k = k;
  inst.kind = FixedKind{d, v_min, v_max};
  for (int i = 0; i < n; ++i) {
    Request r;
    r.index = i + 1;
    r.arrival = arrivals[i];
    r.duration = d;
    r.valuation = v_min + canonical_uniform(rng) * (v_max - v_min);
    inst.requests.push_back(r);
  }
  return inst;
}

Instance gen_random_variable(int k, int n, std::uint64_t seed, double d_min,
                             double d_max, double horizon) {
  std::mt19937_64 rng(seed);
  std::vector<double> arrivals(n);
  for (auto& a : arrivals) a = canonical_uniform(rng) * horizon;
  std::sort(arrivals.begin(), arrivals.end());

  Instance inst;
  inst.k = k;
  inst.kind = VariableKind{d_min, d_max};
  for (int i = 0; i < n; ++i) {
    Request r;
    r.index = i + 1;
    r.arrival = arrivals[i];
    r.duration = d_min + canonical_uniform(rng) * (d_max - d_min);
    r.valuation = r.duration;
    inst.requests.push_back(r);
  }
  return inst;
}

Instance gen_random_variable_integral(int k, int n, std::uint64_t seed,
                                      int d_max, int horizon) {
  std::mt19937_64 rng(seed);
  std::vector<long> arrivals(n);
  for (auto& a : arrivals)
    a = static_cast<long>(rng() % static_cast<std::uint64_t>(horizon + 1));
  std::sort(arrivals.begin(), arrivals.end());

  Instance inst;
  inst.k = k;
  inst.kind = VariableKind{1.0, static_cast<double>(d_max)};
  for (int i = 0; i < n; ++i) {
    Request r;
    r.index = i + 1;
    r.arrival = static_cast<double>(arrivals[i]);
    r.duration = static_cast<double>(1 + rng() % static_cast<std::uint64_t>(d_max));
    r.valuation = r.duration;
    inst.requests.push_back(r);
  }
  return inst;
}

EvalStats evaluate(Algorithm alg, const Instance& inst,
                   const PricingFunction& phi, const FlpParameters& flp,
                   long trials, std::uint64_t seed, int threads) {
  EvalStats stats;
  switch (alg) {
    case Algorithm::DopFixed: {
      // Deterministic fractional pass; the expectation over the rounding seed
      // equals the fractional objective because the rounding is lossless.
      const RunTrace t =
          run_dop_fixed(inst, phi, 0.5, FixedHistory::Fractional);
      stats.mean = t.fractional_objective(inst);
      stats.trials = 1;
      stats.exact = true;
      return stats;
    }
    case Algorithm::DopVariableFractional: {
      const RunTrace t = run_dop_variable_fractional(inst, phi);
      stats.mean = t.objective;
      stats.trials = 1;
      stats.exact = true;
      return stats;
    }
    case Algorithm::Flp: {
      const FlpRun r = run_flp_variable(inst, flp.eta, flp.beta);
      stats.mean = r.trace.objective;
      stats.trials = 1;
      stats.exact = true;
      return stats;
    }
    case Algorithm::DopVariable:
      break;
  }

  // Monte Carlo over per-trial derived seeds; the reduction order is fixed by
  // trial index, so the result is independent of the worker count.
  std::vector<double> values(static_cast<size_t>(trials));
  const int workers = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (long t = w; t < trials; t += workers) {
        const RunTrace trace =
            run_dop_variable(inst, phi, derive_seed(seed, t));
        values[t] = trace.objective;
      }
    });
  }
  for (auto& th : pool) th.join();

  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / trials;
  double ss = 0.0;
  for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
  stats.stddev = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
  stats.ci_half = 1.96 * stats.stddev / std::sqrt(static_cast<double>(trials));
  stats.trials = trials;
  return stats;
}

std::vector<RatioRow> ratio_report(Algorithm alg,
                                   const std::vector<Instance>& family,
                                   const PricingFunction& phi,
                                   const FlpParameters& flp, double bound,
                                   long trials, std::uint64_t seed,
                                   int threads) {
  std::vector<RatioRow> rows;
  int idx = 0;
  for (const auto& inst : family) {
    ++idx;
    const EvalStats stats =
        evaluate(alg, inst, phi, flp, trials, derive_seed(seed, idx), threads);
    RatioRow row;
    row.id = "I_" + std::to_string(idx);
    row.opt = opt_flow(inst).value;
    row.alg_mean = stats.mean;
    row.ci_half = stats.ci_half;
    row.ratio = stats.mean > 0 ? row.opt / stats.mean : 0.0;
    row.bound = bound;
    row.within = row.ratio <= bound + 1e-9 + (stats.mean > 0
                     ? row.opt * stats.ci_half / (stats.mean * stats.mean)
                     : 0.0);
    rows.push_back(row);
  }
  return rows;
}

std::string ratio_report_csv(const std::vector<RatioRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << "instance,opt,alg_mean,ci_half,ratio,bound,within\n";
  for (const auto& r : rows) {
    os << r.id << ',' << r.opt << ',' << r.alg_mean << ',' << r.ci_half << ','
       << r.ratio << ',' << r.bound << ',' << (r.within ? 1 : 0) << '\n';
  }
  return os.str();
}

std::vector<GammaCurveRow> gamma_curve(const std::vector<long>& k_values) {
  std::vector<GammaCurveRow> rows;
  for (long k : k_values) {
    GammaCurveRow row;
    row.k = k;
    row.f_heuristic = 1.0 - std::pow(static_cast<double>(k), -1.0 / 3.0);
    const OptimalF opt = optimal_f(static_cast<int>(k));
    row.f_star = opt.f_star;
    row.gamma_heuristic =
        gamma_lower_bound(static_cast<int>(k), row.f_heuristic);
    row.gamma_star = opt.gamma_star;
    rows.push_back(row);
  }
  return rows;
}

std::string gamma_curve_csv(const std::vector<GammaCurveRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << "k,f_heuristic,f_star,gamma_heuristic,gamma_star\n";
  for (const auto& r : rows) {
    os << r.k << ',' << r.f_heuristic << ',' << r.f_star << ','
       << r.gamma_heuristic << ',' << r.gamma_star << '\n';
  }
  return os.str();
}

std::vector<CrCurveRow> cr_curve(const std::vector<double>& ratios,
                                 double epsilon) {
  std::vector<CrCurveRow> rows;
  for (double r : ratios) {
    CrCurveRow row;
    row.ratio = r;
    row.alpha_integral =
        solve_phi_discretized(epsilon, 1.0, r, PhiVariant::Integral).alpha_star;
    row.alpha_fractional =
        solve_phi_discretized(epsilon, 1.0, r, PhiVariant::Fractional)
            .alpha_star;
    row.bound_integral = 3.0 * (1.0 + std::log(r));
    row.bound_fractional = 4.0 + std::log(r);
    rows.push_back(row);
  }
  return rows;
}

std::string cr_curve_csv(const std::vector<CrCurveRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << "ratio,alpha_integral,alpha_fractional,bound_integral,bound_fractional\n";
  for (const auto& r : rows) {
    os << r.ratio << ',' << r.alpha_integral << ',' << r.alpha_fractional << ','
       << r.bound_integral << ',' << r.bound_fractional << '\n';
  }
  return os.str();
}

std::string curves_to_svg(const std::vector<std::string>& names,
                          const std::vector<std::vector<double>>& x_and_ys,
                          bool log_x) {
  const int width = 640, height = 420, margin = 50;
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  if (x_and_ys.size() < 2 || x_and_ys[0].empty()) {
    os << "</svg>\n";
    return os.str();
  }

  std::vector<double> xs = x_and_ys[0];
  if (log_x)
    for (auto& x : xs) x = std::log10(std::max(x, 1e-12));
  double x_lo = xs.front(), x_hi = xs.front();
  for (double x : xs) {
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
  }
  double y_lo = 1e300, y_hi = -1e300;
  for (size_t s = 1; s < x_and_ys.size(); ++s) {
    for (double y : x_and_ys[s]) {
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (y_hi == y_lo) y_hi = y_lo + 1;

  auto px = [&](double x) {
    return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin);
  };
  auto py = [&](double y) {
    return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
  };

  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\""
     << width - 2 * margin << "\" height=\"" << height - 2 * margin
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  const char* colors[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e"};
  for (size_t s = 1; s < x_and_ys.size(); ++s) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[(s - 1) % 5]
       << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < xs.size() && i < x_and_ys[s].size(); ++i)
      os << px(xs[i]) << ',' << py(x_and_ys[s][i]) << ' ';
    os << "\"/>\n";
    if (s - 1 < names.size()) {
      os << "<text x=\"" << margin + 8 << "\" y=\"" << margin + 16 * s
         << "\" fill=\"" << colors[(s - 1) % 5] << "\" font-size=\"12\">"
         << names[s - 1] << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace krental
