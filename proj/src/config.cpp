#include "mfg/config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mfg {

using nlohmann::json;

namespace {

ScalarFn parse_scalar_fn(const json& j, const std::string& where) {
  const std::string kind = j.value("kind", "");
  if (kind == "power")
    return ScalarFn::power(j.value("scale", 1.0), j.value("exponent", 1.0), j.value("offset", 0.0));
  if (kind == "affine") return ScalarFn::affine(j.value("offset", 0.0), j.value("slope", 1.0));
  if (kind == "table") return ScalarFn::table(j.at("values").get<std::vector<double>>());
  throw std::invalid_argument("config: unknown scalar function kind in " + where);
}

CostFn parse_cost(const json& j) {
  const std::string form = j.value("form", "product");
  if (form == "product")
    return CostFn::product(parse_scalar_fn(j.at("r1"), "cost.r1"),
                           parse_scalar_fn(j.at("r2"), "cost.r2"));
  if (form == "table")
    return CostFn::bilinear_table(j.at("x").get<std::vector<double>>(),
                                  j.at("z").get<std::vector<double>>(),
                                  j.at("values").get<std::vector<std::vector<double>>>());
  throw std::invalid_argument("config: unknown cost form '" + form + "'");
}

std::vector<double> parse_grid_spec(const json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  const double from = j.at("from").get<double>();
  const double to = j.at("to").get<double>();
  const int count = j.at("count").get<int>();
  if (count < 2) throw std::invalid_argument("config: grid count must be >= 2");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = from + (to - from) * i / (count - 1);
  return out;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  json j;
  in >> j;

  ExperimentConfig c;
  c.schema_version = j.value("schema_version", 1);
  if (c.schema_version != 1)
    throw std::invalid_argument("config: unsupported schema_version");

  if (j.contains("model")) {
    const auto& m = j["model"];
    c.model.rho = m.value("rho", c.model.rho);
    c.model.gamma = m.value("gamma", c.model.gamma);
    c.model.horizon = m.value("T", c.model.horizon);
    c.model.m0 = m.value("m0", c.model.m0);
    c.model.grid_n = m.value("grid_n", c.model.grid_n);
    if (m.contains("cost")) {
      c.model.cost = parse_cost(m["cost"]);
      c.cost_json = m["cost"].dump();
    }
  }
  if (c.cost_json.empty())
    c.cost_json = R"({"form":"product","r1":{"kind":"affine","offset":0,"slope":1},)"
                  R"("r2":{"kind":"affine","offset":1,"slope":1}})";

  if (j.contains("xi")) {
    const auto& x = j["xi"];
    c.xi_family = x.value("family", "uniform");
    // canonical shape nests the family parameters under "params"
    const json p = x.contains("params") ? x["params"] : x;
    c.xi_a = p.value("a", 0.0);
    c.xi_b = p.value("b", 0.0);
    c.xi_rate = p.value("rate", 0.0);
    c.xi_quad_n = x.value("quad_n", c.xi_quad_n);
  }

  if (j.contains("mu0")) {
    const auto& m = j["mu0"];
    c.mu0_kind = m.value("kind", "atom0");
    c.mu0_atom0 = m.value("atom0", c.mu0_kind == "atom0" ? 1.0 : 0.0);
    if (m.contains("density")) c.mu0_density = m["density"].get<std::vector<double>>();
  }

  if (j.contains("solver")) {
    const auto& s = j["solver"];
    c.damping = s.value("damping", c.damping);
    c.fp_tol = s.value("fp_tol", c.fp_tol);
    c.fp_max_iter = s.value("fp_max_iter", c.fp_max_iter);
    c.vi_tol = s.value("vi_tol", c.vi_tol);
    c.pi_tol = s.value("pi_tol", c.pi_tol);
    c.eq_tol = s.value("eq_tol", c.eq_tol);
  }

  c.seed = j.value("seed", c.seed);

  if (j.contains("sweeps")) {
    const auto& s = j["sweeps"];
    if (s.contains("theta")) c.theta_grid = parse_grid_spec(s["theta"]);
    if (s.contains("r")) c.r_grid = parse_grid_spec(s["r"]);
  }
  if (c.theta_grid.empty()) {
    for (int i = 0; i < 19; ++i) c.theta_grid.push_back(0.05 + 0.05 * i);
  }

  if (j.contains("regen")) {
    c.regen_cycles = j["regen"].value("n_cycles", c.regen_cycles);
    c.path_horizon = j["regen"].value("path_horizon", c.path_horizon);
  }
  if (j.contains("ergodicity")) {
    c.ergodicity_horizon = j["ergodicity"].value("horizon", c.ergodicity_horizon);
    if (j["ergodicity"].contains("initials"))
      c.ergodicity_initials = j["ergodicity"]["initials"].get<std::vector<double>>();
  }
  if (j.contains("nplayer")) {
    const auto& n = j["nplayer"];
    if (n.contains("N")) c.nplayer_counts = n["N"].get<std::vector<int>>();
    c.nplayer_replications = n.value("replications", c.nplayer_replications);
    c.nplayer_grid_n = n.value("grid_n", c.nplayer_grid_n);
    c.nplayer_quad_n = n.value("xi_quad_n", c.nplayer_quad_n);
  }
  if (j.contains("oracle_compare") && j["oracle_compare"].contains("theta"))
    c.oracle_thetas = j["oracle_compare"]["theta"].get<std::vector<double>>();

  if (j.contains("output")) c.output_dir = j["output"].value("dir", c.output_dir);
  return c;
}

XiSpec ExperimentConfig::make_xi(std::optional<int> quad_override) const {
  const int qn = quad_override.value_or(xi_quad_n);
  if (xi_family == "uniform") return XiSpec::uniform(qn);
  if (xi_family == "beta") return XiSpec::beta(xi_a, xi_b, qn);
  if (xi_family == "truncated_exp") return XiSpec::truncated_exp(xi_rate, qn);
  throw std::invalid_argument("config: unknown xi family '" + xi_family + "'");
}

GridMeasure ExperimentConfig::make_mu0() const {
  if (mu0_kind == "atom0") return GridMeasure::unit_atom0(model.grid_n);
  if (mu0_kind == "uniform") return GridMeasure::uniform_density(model.grid_n);
  if (mu0_kind == "table") {
    GridMeasure mu;
    mu.atom0 = mu0_atom0;
    mu.density = mu0_density;
    mu.validate(1e-6);
    return mu;
  }
  throw std::invalid_argument("config: unknown mu0 kind '" + mu0_kind + "'");
}

ModelParams ExperimentConfig::nplayer_params() const {
  ModelParams p = model;
  p.grid_n = nplayer_grid_n;
  return p;
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> errs = model.validate();
  try {
    (void)make_xi();
  } catch (const std::exception& e) {
    errs.push_back(e.what());
  }
  try {
    const GridMeasure mu = make_mu0();
    if (std::abs(mu.mean() - model.m0) > 1e-6)
      errs.push_back("mu0 mean does not match m0 within 1e-6");
  } catch (const std::exception& e) {
    errs.push_back(e.what());
  }
  if (!(damping > 0.0 && damping <= 1.0)) errs.push_back("solver.damping must lie in (0,1]");
  if (!(fp_tol > 0.0)) errs.push_back("solver.fp_tol must be positive");
  if (fp_max_iter < 1) errs.push_back("solver.fp_max_iter must be >= 1");
  for (double th : theta_grid)
    if (!(th > 0.0 && th < 1.0)) {
      errs.push_back("sweeps.theta entries must lie in (0,1)");
      break;
    }
  return errs;
}

void ExperimentConfig::write_resolved(const std::string& path) const {
  json j;
  j["schema_version"] = schema_version;
  j["model"] = {{"rho", model.rho}, {"gamma", model.gamma}, {"T", model.horizon},
                {"m0", model.m0},   {"grid_n", model.grid_n}};
  if (!cost_json.empty()) j["model"]["cost"] = json::parse(cost_json);
  json xi;
  xi["family"] = xi_family;
  xi["params"] = json::object();
  if (xi_family == "beta") {
    xi["params"]["a"] = xi_a;
    xi["params"]["b"] = xi_b;
  }
  if (xi_family == "truncated_exp") xi["params"]["rate"] = xi_rate;
  xi["quad_n"] = xi_quad_n;
  j["xi"] = xi;
  j["mu0"] = {{"kind", mu0_kind}};
  j["solver"] = {{"damping", damping}, {"fp_tol", fp_tol},   {"fp_max_iter", fp_max_iter},
                 {"vi_tol", vi_tol},   {"pi_tol", pi_tol},   {"eq_tol", eq_tol}};
  j["seed"] = seed;
  j["sweeps"] = {{"theta", theta_grid}};
  if (!r_grid.empty()) j["sweeps"]["r"] = r_grid;
  j["regen"] = {{"n_cycles", regen_cycles}, {"path_horizon", path_horizon}};
  j["ergodicity"] = {{"horizon", ergodicity_horizon}, {"initials", ergodicity_initials}};
  j["nplayer"] = {{"N", nplayer_counts},
                  {"replications", nplayer_replications},
                  {"grid_n", nplayer_grid_n},
                  {"xi_quad_n", nplayer_quad_n}};
  j["oracle_compare"] = {{"theta", oracle_thetas}};
  j["output"] = {{"dir", output_dir}};

  std::ofstream out(path);
  if (!out) throw std::runtime_error("config: cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace mfg
