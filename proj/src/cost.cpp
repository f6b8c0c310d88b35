#include "mfg/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "mfg/grid.hpp"

namespace mfg {

ScalarFn ScalarFn::power(double scale, double exponent, double offset) {
  if (!(exponent > 0.0)) throw std::invalid_argument("ScalarFn::power: exponent must be positive");
  ScalarFn f;
  f.kind_ = Kind::power;
  f.p0_ = offset;
  f.p1_ = scale;
  f.p2_ = exponent;
  return f;
}

ScalarFn ScalarFn::affine(double offset, double slope) {
  ScalarFn f;
  f.kind_ = Kind::affine;
  f.p0_ = offset;
  f.p1_ = slope;
  return f;
}

ScalarFn ScalarFn::table(std::vector<double> values) {
  if (values.size() < 2) throw std::invalid_argument("ScalarFn::table: need at least 2 samples");
  ScalarFn f;
  f.kind_ = Kind::table;
  f.values_ = std::move(values);
  return f;
}

double ScalarFn::operator()(double x) const {
  switch (kind_) {
    case Kind::power:
      return p0_ + p1_ * std::pow(x, p2_);
    case Kind::affine:
      return p0_ + p1_ * x;
    case Kind::table:
      return lerp_grid(values_, x);
  }
  return 0.0;
}

bool ScalarFn::strictly_increasing(int check_n) const {
  const Grid g(check_n);
  double prev = (*this)(0.0);
  for (int i = 1; i < check_n; ++i) {
    const double v = (*this)(g.node(i));
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

bool ScalarFn::strictly_positive(int check_n) const {
  const Grid g(check_n);
  for (int i = 0; i < check_n; ++i)
    if (!((*this)(g.node(i)) > 0.0)) return false;
  return true;
}

struct BilinearTable {
  std::vector<double> xs, zs;
  std::vector<std::vector<double>> values;  // values[zi][xi]

  double eval(double x, double z) const {
    const auto locate = [](const std::vector<double>& nodes, double v, int& i, double& w) {
      if (v <= nodes.front()) { i = 0; w = 0.0; return; }
      if (v >= nodes.back()) { i = static_cast<int>(nodes.size()) - 2; w = 1.0; return; }
      i = 0;
      while (nodes[i + 1] < v) ++i;
      w = (v - nodes[i]) / (nodes[i + 1] - nodes[i]);
    };
    int xi, zi;
    double wx, wz;
    locate(xs, x, xi, wx);
    locate(zs, z, zi, wz);
    const double lo = values[zi][xi] + wx * (values[zi][xi + 1] - values[zi][xi]);
    const double hi = values[zi + 1][xi] + wx * (values[zi + 1][xi + 1] - values[zi + 1][xi]);
    return lo + wz * (hi - lo);
  }
};

CostFn CostFn::product(ScalarFn r1, ScalarFn r2) {
  CostFn c;
  c.kind_ = Kind::product;
  c.r1_ = std::make_shared<ScalarFn>(std::move(r1));
  c.r2_ = std::make_shared<ScalarFn>(std::move(r2));
  return c;
}

CostFn CostFn::bilinear_table(std::vector<double> x_nodes, std::vector<double> z_nodes,
                              std::vector<std::vector<double>> values) {
  if (x_nodes.size() < 2 || z_nodes.size() < 2)
    throw std::invalid_argument("CostFn::bilinear_table: need at least a 2x2 lattice");
  if (values.size() != z_nodes.size())
    throw std::invalid_argument("CostFn::bilinear_table: row count must match z nodes");
  for (const auto& row : values)
    if (row.size() != x_nodes.size())
      throw std::invalid_argument("CostFn::bilinear_table: column count must match x nodes");
  auto t = std::make_shared<BilinearTable>();
  t->xs = std::move(x_nodes);
  t->zs = std::move(z_nodes);
  t->values = std::move(values);
  CostFn c;
  c.kind_ = Kind::table;
  c.table_ = std::move(t);
  return c;
}

CostFn CostFn::closure(std::function<double(double, double)> fn) {
  CostFn c;
  c.kind_ = Kind::closure;
  c.fn_ = std::make_shared<std::function<double(double, double)>>(std::move(fn));
  return c;
}

double CostFn::operator()(double x, double z) const {
  switch (kind_) {
    case Kind::product:
      return (*r1_)(x) * (*r2_)(z);
    case Kind::table:
      return table_->eval(x, z);
    case Kind::closure:
      return (*fn_)(x, z);
  }
  return 0.0;
}

const ScalarFn& CostFn::r1() const {
  if (kind_ != Kind::product) throw std::logic_error("CostFn::r1: not a product cost");
  return *r1_;
}

const ScalarFn& CostFn::r2() const {
  if (kind_ != Kind::product) throw std::logic_error("CostFn::r2: not a product cost");
  return *r2_;
}

std::vector<double> CostFn::grid_slice(double z, int n) const {
  const Grid g(n);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = (*this)(g.node(i), z);
  return out;
}

std::vector<std::string> ModelParams::validate() const {
  std::vector<std::string> errs;
  if (!(rho > 0.0 && rho < 1.0)) errs.push_back("rho must lie in (0,1)");
  if (!(gamma > 0.0)) errs.push_back("gamma must be positive");
  if (horizon < 0) errs.push_back("horizon T must be nonnegative");
  if (!(m0 >= 0.0 && m0 <= 1.0)) errs.push_back("m0 must lie in [0,1]");
  if (grid_n < 3) errs.push_back("grid_n must be at least 3");
  // the stage cost must rise strictly in the player's own state
  bool a2_ok = true;
  for (double z : {0.0, 0.5, 1.0}) {
    auto slice = cost.grid_slice(z, 257);
    for (std::size_t i = 1; i < slice.size() && a2_ok; ++i)
      if (!(slice[i] > slice[i - 1])) a2_ok = false;
  }
  if (!a2_ok) errs.push_back("cost must be strictly increasing in the own state x for every z");
  if (cost.is_product() && !cost.r2().strictly_positive())
    errs.push_back("cost violates R2 > 0");
  return errs;
}

std::vector<std::string> ModelParams::warnings() const {
  std::vector<std::string> notes;
  // positive externalities back the stationary uniqueness argument only
  if (cost.is_product() && !cost.r2().strictly_increasing())
    notes.push_back("R2 is not strictly increasing (no positive externalities); "
                    "stationary uniqueness is not guaranteed");
  return notes;
}

}  // namespace mfg
