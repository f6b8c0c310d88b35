#include "mfg/nplayer.hpp"

#include <cmath>
#include <stdexcept>

namespace mfg {

namespace {

// One player's trajectory from pre-drawn innovations; u[t] is consumed only
// when the step does not reset.
std::vector<double> roll_path(double x0, const PolicySchedule& schedule, int T,
                              std::span<const double> u) {
  std::vector<double> x(T + 1);
  x[0] = x0;
  for (int t = 0; t < T; ++t) {
    if (schedule.steps[t].acts(x[t])) x[t + 1] = 0.0;
    else x[t + 1] = x[t] + (1.0 - x[t]) * u[t];
  }
  return x;
}

double path_cost(std::span<const double> x, const PolicySchedule& schedule,
                 std::span<const double> mean_path, const ModelParams& params) {
  const int T = static_cast<int>(x.size()) - 1;
  double total = 0.0, disc = 1.0;
  for (int t = 0; t <= T; ++t) {
    double c = params.cost(x[t], mean_path[t]);
    if (t < T && schedule.steps[t].acts(x[t])) c += params.gamma;
    total += disc * c;
    disc *= params.rho;
  }
  return total;
}

struct GameRep {
  std::vector<std::vector<double>> paths;
  std::vector<double> mean_path;
};

GameRep run_replication(int N, const PolicySchedule& schedule, const GridMeasure& mu0,
                        const XiSpec& xi, const ModelParams& params, std::uint64_t seed,
                        int rep) {
  const int T = params.horizon;
  GameRep g;
  g.paths.resize(N);
  for (int i = 0; i < N; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(rep) * (N + 1) + i);
    const double x0 = sample_state(mu0, rng);
    std::vector<double> u(T);
    for (int t = 0; t < T; ++t) u[t] = xi.sample(rng);
    g.paths[i] = roll_path(x0, schedule, T, u);
  }
  g.mean_path.assign(T + 1, 0.0);
  for (int t = 0; t <= T; ++t) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += g.paths[i][t];
    g.mean_path[t] = s / N;
  }
  return g;
}

}  // namespace

NPlayerRun simulate_game(int n_players, const PolicySchedule& schedule, const GridMeasure& mu0,
                         const XiSpec& xi, const ModelParams& params, std::uint64_t seed,
                         int replications, std::span<const double> z_ref) {
  if (n_players < 1) throw std::invalid_argument("simulate_game: need at least one player");
  if (replications < 1) throw std::invalid_argument("simulate_game: need replications >= 1");
  if (schedule.horizon() != params.horizon)
    throw std::invalid_argument("simulate_game: schedule length must match the horizon");

  const int T = params.horizon;
  NPlayerRun run;
  run.n_players = n_players;
  run.seed = seed;
  run.replications = replications;

  double sup_dev_acc = 0.0;
  for (int rep = 0; rep < replications; ++rep) {
    GameRep g = run_replication(n_players, schedule, mu0, xi, params, seed, rep);
    if (!z_ref.empty()) {
      double sup = 0.0;
      for (int t = 0; t <= T; ++t) sup = std::max(sup, std::abs(g.mean_path[t] - z_ref[t]));
      sup_dev_acc += sup;
    }
    if (rep == 0) {
      run.empirical_mean = g.mean_path;
      run.realized_costs.resize(n_players);
      for (int i = 0; i < n_players; ++i)
        run.realized_costs[i] = path_cost(g.paths[i], schedule, g.mean_path, params);
      run.paths = std::move(g.paths);
    }
  }
  run.mean_sup_dev = z_ref.empty() ? 0.0 : sup_dev_acc / replications;
  return run;
}

NashGapEstimate epsilon_nash_gap(int n_players, const MeanFieldSolution& solution,
                                 const GridMeasure& mu0, const XiSpec& xi,
                                 const ModelParams& params, std::uint64_t seed,
                                 int replications) {
  if (n_players < 1) throw std::invalid_argument("epsilon_nash_gap: need at least one player");
  if (replications < 2) throw std::invalid_argument("epsilon_nash_gap: need replications >= 2");
  const int N = n_players;
  const int T = params.horizon;
  const PolicySchedule& schedule = solution.schedule;
  if (schedule.horizon() != T)
    throw std::invalid_argument("epsilon_nash_gap: schedule length must match the horizon");

  NashGapEstimate est;
  est.j_equilibrium.resize(replications);
  est.j_deviation.resize(replications);
  est.gap.resize(replications);

  for (int rep = 0; rep < replications; ++rep) {
    // other players (indices 1..N-1) under the equilibrium schedule
    std::vector<double> other_sum(T + 1, 0.0);
    std::vector<std::vector<double>> others;
    others.reserve(N - 1);
    for (int i = 1; i < N; ++i) {
      RngStream rng(seed, static_cast<std::uint64_t>(rep) * (N + 1) + i);
      const double x0 = sample_state(mu0, rng);
      std::vector<double> u(T);
      for (int t = 0; t < T; ++t) u[t] = xi.sample(rng);
      auto path = roll_path(x0, schedule, T, u);
      for (int t = 0; t <= T; ++t) other_sum[t] += path[t];
    }

    // player 1 innovations, shared by both arms
    RngStream rng0(seed, static_cast<std::uint64_t>(rep) * (N + 1));
    const double x0 = sample_state(mu0, rng0);
    std::vector<double> u0(T);
    for (int t = 0; t < T; ++t) u0[t] = xi.sample(rng0);

    const auto x_eq = roll_path(x0, schedule, T, u0);
    std::vector<double> mean_eq(T + 1);
    for (int t = 0; t <= T; ++t) mean_eq[t] = (other_sum[t] + x_eq[t]) / N;
    const double j_eq = path_cost(x_eq, schedule, mean_eq, params);

    // best response to the realized mean path of the other N-1 players;
    // a single player best-responds to its own realized path
    std::vector<double> z_tilde(T + 1);
    if (N > 1) {
      for (int t = 0; t <= T; ++t) z_tilde[t] = other_sum[t] / (N - 1);
    } else {
      z_tilde = x_eq;
    }
    const auto dev = solve_dp(z_tilde, params, xi);
    const auto x_dev = roll_path(x0, dev.schedule, T, u0);
    std::vector<double> mean_dev(T + 1);
    for (int t = 0; t <= T; ++t) mean_dev[t] = (other_sum[t] + x_dev[t]) / N;
    const double j_dev = path_cost(x_dev, dev.schedule, mean_dev, params);

    est.j_equilibrium[rep] = j_eq;
    est.j_deviation[rep] = j_dev;
    est.gap[rep] = j_eq - j_dev;
  }

  double mean = 0.0;
  for (double g : est.gap) mean += g;
  mean /= replications;
  double ss = 0.0;
  for (double g : est.gap) ss += (g - mean) * (g - mean);
  est.eps = mean;
  est.se = std::sqrt(ss / (replications - 1.0) / replications);
  return est;
}

}  // namespace mfg
