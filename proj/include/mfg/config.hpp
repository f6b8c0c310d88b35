#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfg/cost.hpp"
#include "mfg/measure.hpp"
#include "mfg/xi.hpp"

namespace mfg {

/// Everything a run needs, parsed from the JSON config file. Defaults are
/// filled at load time; write_resolved() round-trips the effective values
/// next to the outputs for provenance.
struct ExperimentConfig {
  int schema_version = 1;

  ModelParams model;
  std::string cost_json;  // raw cost block, round-tripped for provenance
  int xi_quad_n = XiSpec::kDefaultQuadN;
  // xi family
  std::string xi_family = "uniform";
  double xi_a = 0.0, xi_b = 0.0, xi_rate = 0.0;

  // mu0 descriptor
  std::string mu0_kind = "atom0";  // atom0 | uniform | table
  double mu0_atom0 = 1.0;
  std::vector<double> mu0_density;

  // solver knobs
  double damping = 0.5;
  double fp_tol = 1e-6;
  int fp_max_iter = 200;
  double vi_tol = 1e-10;
  double pi_tol = 1e-10;
  double eq_tol = 1e-6;

  std::uint64_t seed = 20240801;

  // sweeps and experiment sizes
  std::vector<double> theta_grid;         // default 0.05..0.95, 19 points
  std::vector<double> r_grid;             // empty: derive from r_bounds
  long regen_cycles = 100000;
  long path_horizon = 1000000;
  int ergodicity_horizon = 200;
  std::vector<double> ergodicity_initials = {0.0, 0.5, 1.0};
  std::vector<int> nplayer_counts = {50, 200, 800};
  int nplayer_replications = 200;
  int nplayer_grid_n = 501;
  int nplayer_quad_n = 501;
  std::vector<double> oracle_thetas = {0.2, 0.5, 0.8};

  std::string output_dir = "out";

  XiSpec make_xi(std::optional<int> quad_override = {}) const;
  GridMeasure make_mu0() const;
  /// ModelParams with the n-player grid resolution substituted in.
  ModelParams nplayer_params() const;

  /// Empty when valid; one message per violated bound otherwise.
  std::vector<std::string> validate() const;

  void write_resolved(const std::string& path) const;
};

ExperimentConfig load_config(const std::string& path);

}  // namespace mfg
