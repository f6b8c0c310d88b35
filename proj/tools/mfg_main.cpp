// Command-line front end: config-driven experiments with CSV artifacts.
//
// Exit codes: 0 success, 1 config validation failure, 2 solver
// non-convergence, 3 oracle disagreement.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfg/aux_mdp.hpp"
#include "mfg/config.hpp"
#include "mfg/csv.hpp"
#include "mfg/grid.hpp"
#include "mfg/mean_field.hpp"
#include "mfg/nplayer.hpp"
#include "mfg/parallel.hpp"
#include "mfg/regen.hpp"
#include "mfg/stationary.hpp"

namespace fs = std::filesystem;
using namespace mfg;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int threads = 1;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

ExperimentConfig prepare(const CommonArgs& args) {
  ExperimentConfig cfg = load_config(args.config_path);
  if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
  if (args.seed_set) cfg.seed = args.seed;
  set_num_threads(args.threads);

  const auto errs = cfg.validate();
  if (!errs.empty()) {
    for (const auto& e : errs) std::fprintf(stderr, "config error: %s\n", e.c_str());
    std::exit(1);
  }
  for (const auto& w : cfg.model.warnings())
    std::fprintf(stderr, "config warning: %s\n", w.c_str());
  fs::create_directories(cfg.output_dir);
  cfg.write_resolved(cfg.output_dir + "/resolved_config.json");
  return cfg;
}

void write_policy_csv(const std::string& path, const PolicySchedule& schedule) {
  CsvWriter csv(path, {"t", "theta_kind", "theta_value"});
  for (int t = 0; t < schedule.horizon(); ++t) {
    const auto& d = schedule.steps[t];
    csv.field(t).field(std::string(to_string(d.kind))).field(d.value);
    csv.end_row();
  }
}

void write_value_table_csv(const std::string& path, const ValueTable& table) {
  CsvWriter csv(path, {"t", "x", "V"});
  const Grid g(table.grid_n);
  for (int t = 0; t <= table.horizon; ++t)
    for (int i = 0; i < table.grid_n; ++i) {
      csv.field(t).field(g.node(i)).field(table.values[t][i]);
      csv.end_row();
    }
}

int cmd_finite(const CommonArgs& args) {
  const auto cfg = prepare(args);
  const auto xi = cfg.make_xi();
  const auto mu0 = cfg.make_mu0();
  const auto sol = solve_fixed_point(mu0, cfg.model, xi, cfg.damping, cfg.fp_tol, cfg.fp_max_iter);

  const std::string dir = cfg.output_dir;
  {
    CsvWriter csv(dir + "/z_path.csv", {"t", "z_hat", "theta_kind", "theta_value", "mean_mu"});
    for (int t = 0; t < static_cast<int>(sol.z_hat.size()); ++t) {
      csv.field(t).field(sol.z_hat[t]);
      if (t < sol.schedule.horizon()) {
        csv.field(std::string(to_string(sol.schedule.steps[t].kind)))
            .field(sol.schedule.steps[t].value);
      } else {
        csv.field(std::string("terminal_a0")).field(std::string());
      }
      csv.field(sol.mu_path[t].mean());
      csv.end_row();
    }
  }
  write_policy_csv(dir + "/policy.csv", sol.schedule);
  {
    CsvWriter csv(dir + "/residuals.csv", {"iter", "residual"});
    for (std::size_t k = 0; k < sol.residual_history.size(); ++k) {
      csv.field(static_cast<long>(k)).field(sol.residual_history[k]);
      csv.end_row();
    }
  }
  const auto dp = solve_dp(sol.z_hat, cfg.model, xi);
  write_value_table_csv(dir + "/value_table.csv", dp.table);

  std::printf("finite: residual=%.3e iterations=%d converged=%s\n", sol.residual, sol.iterations,
              sol.converged ? "yes" : "no");
  return sol.converged ? 0 : 2;
}

int cmd_stationary(const CommonArgs& args) {
  const auto cfg = prepare(args);
  const auto xi = cfg.make_xi();
  const auto sol = solve_stationary_equilibrium(cfg.model, xi, cfg.eq_tol);

  const std::string dir = cfg.output_dir;
  {
    CsvWriter csv(dir + "/stationary_solution.csv",
                  {"z_hat", "theta_kind", "theta_value", "residual", "pi_mean", "pi_atom0"});
    csv.field(sol.z_hat)
        .field(std::string(to_string(sol.theta_hat.kind)))
        .field(sol.theta_hat.value)
        .field(sol.residual)
        .field(sol.pi_hat.mean())
        .field(sol.pi_hat.atom0);
    csv.end_row();
  }
  write_measure_csv(dir + "/pi_hat.csv", sol.pi_hat);
  {
    CsvWriter csv(dir + "/v_stationary.csv", {"x", "V"});
    const Grid g(cfg.model.grid_n);
    for (int i = 0; i < cfg.model.grid_n; ++i) {
      csv.field(g.node(i)).field(sol.v[i]);
      csv.end_row();
    }
  }
  const auto probe = uniqueness_probe(cfg.model, xi, 101);
  {
    CsvWriter csv(dir + "/z_scan.csv", {"z", "theta_kind", "theta_value", "h"});
    for (std::size_t k = 0; k < probe.z_grid.size(); ++k) {
      csv.field(probe.z_grid[k])
          .field(std::string(to_string(probe.thetas[k].kind)))
          .field(probe.thetas[k].value)
          .field(probe.h_values[k]);
      csv.end_row();
    }
  }
  std::printf("stationary: z_hat=%.8f theta=%s(%.8f) residual=%.3e sign_changes=%d\n", sol.z_hat,
              to_string(sol.theta_hat.kind), sol.theta_hat.value, sol.residual,
              probe.sign_changes);
  return sol.converged ? 0 : 2;
}

int cmd_theta_sweep(const CommonArgs& args) {
  const auto cfg = prepare(args);
  const auto xi = cfg.make_xi();
  CsvWriter csv(cfg.output_dir + "/theta_sweep.csv", {"theta", "z_of_theta"});
  for (double th : cfg.theta_grid) {
    const double z = z_of_theta(ThresholdDescriptor::interior(th), xi, cfg.model.grid_n, cfg.pi_tol);
    csv.field(th).field(z);
    csv.end_row();
  }
  return 0;
}

int cmd_r_sweep(const CommonArgs& args) {
  const auto cfg = prepare(args);
  const auto xi = cfg.make_xi();
  if (!cfg.model.cost.is_product()) {
    std::fprintf(stderr, "r-sweep needs a product-form cost\n");
    return 1;
  }
  const auto& r1 = cfg.model.cost.r1();
  const auto rb = r_bounds(r1, xi, cfg.model.rho, cfg.model.grid_n);
  {
    CsvWriter csv(cfg.output_dir + "/r_bounds.csv", {"r_low", "r_high", "c_r1"});
    csv.field(rb.r_low).field(rb.r_high).field(rb.c_r1);
    csv.end_row();
  }
  std::vector<double> grid = cfg.r_grid;
  if (grid.empty()) {
    // straddle the interior interval
    for (int i = 0; i < 4; ++i) grid.push_back(rb.r_low * (0.2 + 0.2 * i));
    for (int i = 0; i <= 16; ++i)
      grid.push_back(rb.r_low + (rb.r_high - rb.r_low) * i / 16.0);
    for (int i = 1; i <= 4; ++i) grid.push_back(rb.r_high * (1.0 + 0.25 * i));
  }
  CsvWriter csv(cfg.output_dir + "/r_sweep.csv", {"r", "theta_kind", "theta_value"});
  for (double r : grid) {
    const auto d = theta_of_r(r, r1, xi, cfg.model.rho, cfg.model.grid_n, cfg.vi_tol);
    csv.field(r).field(std::string(to_string(d.kind))).field(d.value);
    csv.end_row();
  }
  std::printf("r-sweep: r_low=%.8f r_high=%.8f c_r1=%.8f\n", rb.r_low, rb.r_high, rb.c_r1);
  return 0;
}

int cmd_nplayer(const CommonArgs& args) {
  const auto cfg = prepare(args);
  const auto params = cfg.nplayer_params();
  const auto xi = cfg.make_xi(cfg.nplayer_quad_n);
  GridMeasure mu0 = cfg.make_mu0();
  if (mu0.n() != params.grid_n) {
    // re-express mu0 on the n-player grid
    if (cfg.mu0_kind == "atom0") mu0 = GridMeasure::unit_atom0(params.grid_n);
    else if (cfg.mu0_kind == "uniform") mu0 = GridMeasure::uniform_density(params.grid_n);
    else {
      std::fprintf(stderr, "nplayer: table mu0 must match nplayer.grid_n\n");
      return 1;
    }
  }
  const auto sol = solve_fixed_point(mu0, params, xi, cfg.damping, cfg.fp_tol, cfg.fp_max_iter);
  if (!sol.converged) return 2;

  CsvWriter reps(cfg.output_dir + "/nplayer_reps.csv",
                 {"N", "replication", "J_equilibrium", "J_deviation", "gap"});
  CsvWriter summary(cfg.output_dir + "/nplayer_summary.csv", {"N", "eps", "se"});
  CsvWriter dev(cfg.output_dir + "/nplayer_meanfield.csv", {"N", "mean_sup_dev"});
  for (int N : cfg.nplayer_counts) {
    const auto gap = epsilon_nash_gap(N, sol, mu0, xi, params, cfg.seed, cfg.nplayer_replications);
    for (int r = 0; r < cfg.nplayer_replications; ++r) {
      reps.field(N).field(r).field(gap.j_equilibrium[r]).field(gap.j_deviation[r]).field(gap.gap[r]);
      reps.end_row();
    }
    summary.field(N).field(gap.eps).field(gap.se);
    summary.end_row();
    const auto run = simulate_game(N, sol.schedule, mu0, xi, params, cfg.seed,
                                   cfg.nplayer_replications, sol.z_hat);
    dev.field(N).field(run.mean_sup_dev);
    dev.end_row();
    std::printf("nplayer N=%d: eps=%.6f se=%.6f sup_dev=%.6f\n", N, gap.eps, gap.se,
                run.mean_sup_dev);
  }
  return 0;
}

int cmd_oracle_compare(const CommonArgs& args) {
  const auto cfg = prepare(args);
  const auto xi = cfg.make_xi();
  CsvWriter csv(cfg.output_dir + "/oracle_compare.csv",
                {"theta", "z_power", "z_regen", "z_path_avg", "max_abs_diff"});
  CsvWriter regen_csv(cfg.output_dir + "/regen.csv",
                      {"theta", "n_cycles", "mean_tau", "mean_s", "z_est", "se_z"});
  bool ok = true;
  for (double th : cfg.oracle_thetas) {
    const double zp = z_of_theta(ThresholdDescriptor::interior(th), xi, cfg.model.grid_n, cfg.pi_tol);
    const auto re = regen_estimate(th, xi, cfg.regen_cycles, cfg.seed);
    const auto pa = path_average(th, xi, cfg.path_horizon, cfg.seed + 1);
    const double d1 = std::abs(zp - re.z_est);
    const double d2 = std::abs(zp - pa.mean);
    const double d3 = std::abs(re.z_est - pa.mean);
    const double max_diff = std::max({d1, d2, d3});
    const double tol1 = std::max(3.0 * re.se_z, 1e-3);
    const double tol2 = std::max(3.0 * pa.se, 1e-3);
    const double tol3 = std::max(3.0 * std::hypot(re.se_z, pa.se), 1e-3);
    if (d1 > tol1 || d2 > tol2 || d3 > tol3) ok = false;
    csv.field(th).field(zp).field(re.z_est).field(pa.mean).field(max_diff);
    csv.end_row();
    regen_csv.field(th).field(re.n_cycles).field(re.mean_tau).field(re.mean_s).field(re.z_est)
        .field(re.se_z);
    regen_csv.end_row();
    std::printf("oracle theta=%.2f: power=%.6f regen=%.6f+-%.6f path=%.6f+-%.6f\n", th, zp,
                re.z_est, re.se_z, pa.mean, pa.se);
  }
  return ok ? 0 : 3;
}

int cmd_ergodicity(const CommonArgs& args) {
  const auto cfg = prepare(args);
  const auto xi = cfg.make_xi();
  CsvWriter csv(cfg.output_dir + "/ergodicity.csv", {"t", "initial_x", "tv"});
  CsvWriter fit(cfg.output_dir + "/ergodicity_fit.csv", {"theta", "fitted_K", "fitted_r", "fit_ok"});
  for (double th : cfg.oracle_thetas) {
    const auto rep = ergodicity_report(ThresholdDescriptor::interior(th), xi, cfg.model.grid_n,
                                       cfg.ergodicity_horizon, cfg.ergodicity_initials, cfg.pi_tol);
    for (std::size_t i = 0; i < rep.initials.size(); ++i)
      for (std::size_t t = 0; t < rep.tv_series[i].size(); ++t) {
        csv.field(static_cast<long>(t)).field(rep.initials[i]).field(rep.tv_series[i][t]);
        csv.end_row();
      }
    fit.field(th).field(rep.fitted_k).field(rep.fitted_r).field(std::string(rep.fit_ok ? "1" : "0"));
    fit.end_row();
    std::printf("ergodicity theta=%.2f: K=%.4f r=%.4f\n", th, rep.fitted_k, rep.fitted_r);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean field game solver suite for reset-controlled risk dynamics"};
  app.require_subcommand(1);

  CommonArgs args;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "config file (JSON)")->required();
    sub->add_option("--out", args.out_dir, "output directory override");
    sub->add_option("--threads", args.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { args.seed = s; args.seed_set = true; },
        "seed override");
  };

  auto* finite = app.add_subcommand("finite", "finite-horizon equilibrium fixed point");
  auto* stationary = app.add_subcommand("stationary", "stationary equilibrium");
  auto* theta_sweep = app.add_subcommand("theta-sweep", "z(theta) over a threshold grid");
  auto* r_sweep = app.add_subcommand("r-sweep", "theta(r) over an effort-cost grid");
  auto* nplayer = app.add_subcommand("nplayer", "finite-N simulation and Nash gap");
  auto* oracle = app.add_subcommand("oracle-compare", "stationary mean: three independent estimates");
  auto* ergodicity = app.add_subcommand("ergodicity", "TV mixing report");
  for (auto* sub : {finite, stationary, theta_sweep, r_sweep, nplayer, oracle, ergodicity})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (finite->parsed()) return cmd_finite(args);
    if (stationary->parsed()) return cmd_stationary(args);
    if (theta_sweep->parsed()) return cmd_theta_sweep(args);
    if (r_sweep->parsed()) return cmd_r_sweep(args);
    if (nplayer->parsed()) return cmd_nplayer(args);
    if (oracle->parsed()) return cmd_oracle_compare(args);
    if (ergodicity->parsed()) return cmd_ergodicity(args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
