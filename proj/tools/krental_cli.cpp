// Command-line front end: instance generation, algorithm runs, Monte Carlo
// evaluation, competitive-ratio reports, price-design solving, and the
// variable-duration impossibility demonstration.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "krental/harness.hpp"
#include "krental/json_io.hpp"
#include "krental/offline.hpp"
#include "krental/online.hpp"
#include "krental/phi_solver.hpp"
#include "krental/rounding.hpp"

namespace {

using namespace krental;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& out_dir, const std::string& name,
          const std::string& content) {
  if (out_dir.empty()) {
    std::cout << content;
    return;
  }
  const std::string path = out_dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  std::cerr << "wrote " << path << "\n";
}

PricingFunction load_phi(const std::string& spec, const Instance& inst) {
  if (spec == "closed") {
    if (inst.is_fixed())
      return PricingFunction::exp_fixed(inst.fixed().v_min, inst.fixed().v_max);
    return PricingFunction::exp_variable(inst.variable().d_min,
                                         inst.variable().d_max);
  }
  if (spec.rfind("file:", 0) == 0)
    return prices_from_json(slurp(spec.substr(5)), nullptr);
  throw std::runtime_error("--phi must be 'closed' or 'file:<prices.json>'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online k-rental allocation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand too

  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir;
  app.add_option("--seed", seed, "base RNG seed");
  app.add_option("--threads", threads, "Monte Carlo worker threads");
  app.add_option("--out-dir", out_dir, "output directory (default: stdout)");

  int exit_code = 0;

  // ---- generate ----
  auto* gen = app.add_subcommand("generate", "emit instance JSON");
  std::string family = "hard-fixed";
  int g_k = 2, g_m = 5, g_n = 20, g_dmax_i = 5, g_horizon_i = 30;
  double g_vmin = 1.0, g_vmax = std::exp(1.0), g_dmin = 1.0,
         g_dmax = std::exp(1.0), g_eps = 0.01, g_d = 1.0, g_horizon = 10.0;
  gen->add_option("--family", family,
                  "hard-fixed | hard-variable | random-fixed | "
                  "random-variable | random-variable-integral");
  gen->add_option("--k", g_k);
  gen->add_option("--m", g_m, "number of nested batches (hard families)");
  gen->add_option("--n", g_n, "request count (random families)");
  gen->add_option("--v-min", g_vmin);
  gen->add_option("--v-max", g_vmax);
  gen->add_option("--d-min", g_dmin);
  gen->add_option("--d-max", g_dmax);
  gen->add_option("--d", g_d, "shared duration (fixed)");
  gen->add_option("--epsilon", g_eps, "arrival window (hard families)");
  gen->add_option("--horizon", g_horizon);
  gen->add_option("--int-d-max", g_dmax_i);
  gen->add_option("--int-horizon", g_horizon_i);
  gen->callback([&]() {
    if (family == "hard-fixed" || family == "hard-variable") {
      const auto fam =
          family == "hard-fixed"
              ? gen_hard_fixed(g_k, g_vmin, g_vmax, g_m, g_eps)
              : gen_hard_variable(g_k, g_dmin, g_dmax, g_m, g_eps);
      for (size_t i = 0; i < fam.size(); ++i)
        emit(out_dir, "instance_" + std::to_string(i + 1) + ".json",
             instance_to_json(fam[i]) + "\n");
      return;
    }
    Instance inst;
    if (family == "random-fixed")
      inst = gen_random_fixed(g_k, g_n, seed, g_d, g_vmin, g_vmax, g_horizon);
    else if (family == "random-variable")
      inst = gen_random_variable(g_k, g_n, seed, g_dmin, g_dmax, g_horizon);
    else if (family == "random-variable-integral")
      inst = gen_random_variable_integral(g_k, g_n, seed, g_dmax_i, g_horizon_i);
    else
      throw CLI::ValidationError("unknown family " + family);
    emit(out_dir, "instance.json", instance_to_json(inst) + "\n");
  });

  // ---- run ----
  auto* run = app.add_subcommand("run", "single algorithm run -> trace JSON");
  std::string r_alg = "dop-fixed", r_instance, r_phi = "closed";
  double r_r = -1.0;
  run->add_option("--alg", r_alg,
                  "dop-fixed | dop-variable | dop-variable-frac | flp");
  run->add_option("--instance", r_instance)->required();
  run->add_option("--phi", r_phi, "closed | file:<prices.json>");
  run->add_option("--r", r_r, "rounding seed in [0,1) (dop-fixed)");
  run->callback([&]() {
    const Instance inst = instance_from_json(slurp(r_instance));
    RunTrace trace;
    if (r_alg == "dop-fixed") {
      const double r = r_r >= 0 ? r_r : 0.5;
      trace = run_dop_fixed(inst, load_phi(r_phi, inst), r);
    } else if (r_alg == "dop-variable") {
      trace = run_dop_variable(inst, load_phi(r_phi, inst), seed);
    } else if (r_alg == "dop-variable-frac") {
      trace = run_dop_variable_fractional(inst, load_phi(r_phi, inst));
    } else if (r_alg == "flp") {
      const FlpParameters p = flp_parameters(
          static_cast<int>(std::lround(inst.variable().d_max)));
      trace = run_flp_variable(inst, p.eta, p.beta).trace;
    } else {
      throw CLI::ValidationError("unknown algorithm " + r_alg);
    }
    emit(out_dir, "trace.json", trace_to_json(trace, inst) + "\n");
    if (!check_feasible(trace, inst)) exit_code = 2;
  });

  // ---- evaluate ----
  auto* ev = app.add_subcommand("evaluate", "expected objective of a run");
  std::string e_alg = "dop-fixed", e_instance, e_phi = "closed";
  long e_trials = 10000;
  ev->add_option("--alg", e_alg);
  ev->add_option("--instance", e_instance)->required();
  ev->add_option("--phi", e_phi);
  ev->add_option("--trials", e_trials);
  ev->callback([&]() {
    const Instance inst = instance_from_json(slurp(e_instance));
    Algorithm alg;
    FlpParameters flp;
    if (e_alg == "dop-fixed") alg = Algorithm::DopFixed;
    else if (e_alg == "dop-variable") alg = Algorithm::DopVariable;
    else if (e_alg == "dop-variable-frac") alg = Algorithm::DopVariableFractional;
    else if (e_alg == "flp") {
      alg = Algorithm::Flp;
      flp = flp_parameters(static_cast<int>(std::lround(inst.variable().d_max)));
    } else
      throw CLI::ValidationError("unknown algorithm " + e_alg);
    const PricingFunction phi =
        e_alg == "flp" ? PricingFunction::flp(1.0, std::exp(1.0), inst.k)
                       : load_phi(e_phi, inst);
    const EvalStats s = evaluate(alg, inst, phi, flp, e_trials, seed, threads);
    std::ostringstream os;
    os.precision(12);
    os << "mean,stddev,ci_half,trials,exact\n"
       << s.mean << ',' << s.stddev << ',' << s.ci_half << ',' << s.trials
       << ',' << (s.exact ? 1 : 0) << '\n';
    emit(out_dir, "stats.csv", os.str());
  });

  // ---- ratio-report ----
  auto* rr = app.add_subcommand("ratio-report",
                                "competitive ratios on a hard family -> CSV");
  std::string rr_alg = "dop-fixed";
  int rr_k = 10, rr_m = 50;
  double rr_lo = 1.0, rr_hi = std::exp(1.0), rr_eps = 0.01, rr_phi_eps = 0.01;
  long rr_trials = 1000;
  rr->add_option("--alg", rr_alg);
  rr->add_option("--k", rr_k);
  rr->add_option("--m", rr_m);
  rr->add_option("--lo", rr_lo, "v_min or d_min");
  rr->add_option("--hi", rr_hi, "v_max or d_max");
  rr->add_option("--epsilon", rr_eps, "arrival window");
  rr->add_option("--phi-epsilon", rr_phi_eps, "price grid (solved phi)");
  rr->add_option("--trials", rr_trials);
  rr->callback([&]() {
    std::vector<Instance> fam;
    Algorithm alg;
    PricingFunction phi = PricingFunction::exp_fixed(rr_lo, rr_hi);
    FlpParameters flp;
    double bound = 0.0;
    if (rr_alg == "dop-fixed") {
      alg = Algorithm::DopFixed;
      fam = gen_hard_fixed(rr_k, rr_lo, rr_hi, rr_m, rr_eps);
      bound = 1.0 + std::log(rr_hi / rr_lo);
    } else if (rr_alg == "dop-variable" || rr_alg == "dop-variable-frac") {
      alg = rr_alg == "dop-variable" ? Algorithm::DopVariable
                                     : Algorithm::DopVariableFractional;
      fam = gen_hard_variable(rr_k, rr_lo, rr_hi, rr_m, rr_eps);
      if (rr_alg == "dop-variable") {
        phi = PricingFunction::exp_variable(rr_lo, rr_hi);
        bound = 3.0 * (1.0 + std::log(rr_hi / rr_lo));
      } else {
        const PhiSolveResult sol = solve_phi_discretized(
            rr_phi_eps, rr_lo, rr_hi, PhiVariant::Fractional);
        phi = sol.prices;
        bound = sol.alpha_star;
      }
    } else {
      throw CLI::ValidationError("unsupported algorithm " + rr_alg);
    }
    const auto rows =
        ratio_report(alg, fam, phi, flp, bound, rr_trials, seed, threads);
    emit(out_dir, "ratio_report.csv", ratio_report_csv(rows));
    for (const auto& row : rows)
      if (!row.within) exit_code = 2;
  });

  // ---- solve-phi ----
  auto* sp = app.add_subcommand("solve-phi", "discretized price design");
  double sp_eps = 0.01, sp_dmin = 1.0, sp_dmax = std::exp(1.0);
  std::string sp_variant = "integral";
  sp->add_option("--epsilon", sp_eps);
  sp->add_option("--dmin", sp_dmin);
  sp->add_option("--dmax", sp_dmax);
  sp->add_option("--variant", sp_variant, "integral | fractional");
  sp->callback([&]() {
    const PhiVariant variant = sp_variant == "fractional"
                                   ? PhiVariant::Fractional
                                   : PhiVariant::Integral;
    const PhiSolveResult sol =
        solve_phi_discretized(sp_eps, sp_dmin, sp_dmax, variant);
    emit(out_dir, "prices.json",
         prices_to_json(sol.prices, sol.alpha_star) + "\n");
    std::cerr.precision(10);
    std::cerr << "alpha* = " << sol.alpha_star
              << ", min slack = " << sol.certificate.min_slack() << "\n";
    if (sol.certificate.min_slack() < -1e-9) exit_code = 2;
  });

  // ---- gamma-curve ----
  auto* gc = app.add_subcommand("gamma-curve",
                                "rounding guarantee vs inventory size");
  std::vector<long> gc_k;
  gc->add_option("--k", gc_k, "k values (default powers of two up to 2^16)");
  gc->callback([&]() {
    if (gc_k.empty())
      for (long k = 1; k <= (1 << 16); k *= 2) gc_k.push_back(k);
    const auto rows = gamma_curve(gc_k);
    emit(out_dir, "gamma_curve.csv", gamma_curve_csv(rows));
    std::vector<std::vector<double>> series(5);
    for (const auto& r : rows) {
      series[0].push_back(static_cast<double>(r.k));
      series[1].push_back(r.gamma_heuristic);
      series[2].push_back(r.gamma_star);
      series[3].push_back(r.f_heuristic);
      series[4].push_back(r.f_star);
    }
    emit(out_dir, "gamma_curve.svg",
         curves_to_svg({"gamma(f_heuristic)", "gamma(f*)", "f_heuristic", "f*"},
                       series, true));
  });

  // ---- cr-curve ----
  auto* cc = app.add_subcommand("cr-curve",
                                "solved competitive ratio vs d_max/d_min");
  std::vector<double> cc_ratios{1.0, 2.0, std::exp(1.0), 5.0, 10.0};
  double cc_eps = 0.01;
  cc->add_option("--ratios", cc_ratios);
  cc->add_option("--epsilon", cc_eps);
  cc->callback([&]() {
    const auto rows = cr_curve(cc_ratios, cc_eps);
    emit(out_dir, "cr_curve.csv", cr_curve_csv(rows));
    std::vector<std::vector<double>> series(5);
    for (const auto& r : rows) {
      series[0].push_back(r.ratio);
      series[1].push_back(r.alpha_integral);
      series[2].push_back(r.alpha_fractional);
      series[3].push_back(r.bound_integral);
      series[4].push_back(r.bound_fractional);
    }
    emit(out_dir, "cr_curve.svg",
         curves_to_svg({"alpha* integral", "alpha* fractional",
                        "3(1+ln r)", "4+ln r"},
                       series, false));
  });

  // ---- opt ----
  auto* op = app.add_subcommand("opt", "clairvoyant optimum");
  std::string o_instance, o_method = "flow";
  op->add_option("--instance", o_instance)->required();
  op->add_option("--method", o_method, "flow | brute");
  op->callback([&]() {
    const Instance inst = instance_from_json(slurp(o_instance));
    const OptResult res =
        o_method == "brute" ? opt_bruteforce(inst) : opt_flow(inst);
    std::ostringstream os;
    os.precision(12);
    os << "{\"value\": " << res.value << ", \"accepted\": [";
    for (size_t i = 0; i < res.accepted.size(); ++i)
      os << (i ? ", " : "") << res.accepted[i];
    os << "]}\n";
    emit(out_dir, "opt.json", os.str());
  });

  // ---- counterexample ----
  auto* cx = app.add_subcommand(
      "counterexample",
      "variable-duration rounding failure, via exact breakpoint analysis");
  cx->callback([&]() {
    const OcrInput input = variable_duration_counterexample();
    const auto report =
        exact_allocation_probabilities(input, /*variable_durations=*/true);
    std::ostringstream os;
    os.precision(12);
    os << ocr_input_to_json(input) << "\n";
    for (size_t i = 0; i < report.players.size(); ++i) {
      os << "player " << i + 1 << ": target " << input.players[i].target
         << ", served probability " << report.players[i].probability << "\n";
    }
    for (const auto& v : report.violations) {
      os << "VIOLATION: unit " << v.unit << " double-booked by players "
         << v.player_a << " and " << v.player_b << " for r in [" << v.r_lo
         << ", " << v.r_hi << ")\n";
    }
    emit(out_dir, "counterexample.txt", os.str());
    if (!report.violations.empty()) exit_code = 2;
    for (size_t i = 0; i < report.players.size(); ++i) {
      if (report.players[i].probability <
          input.players[i].target - 1e-9)
        exit_code = 2;
    }
  });

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
