#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace mfg {

/// Scalar function on [0,1] used for the cost factors R1 and R2.
class ScalarFn {
 public:
  /// offset + scale * x^exponent
  static ScalarFn power(double scale, double exponent, double offset = 0.0);
  /// offset + slope * x
  static ScalarFn affine(double offset, double slope);
  /// Samples on a uniform grid over [0,1], evaluated by linear interpolation.
  static ScalarFn table(std::vector<double> values);

  double operator()(double x) const;

  /// Strict monotonicity probe on a uniform check grid (adjacent differences).
  bool strictly_increasing(int check_n = 257) const;
  bool strictly_positive(int check_n = 257) const;

 private:
  enum class Kind { power, affine, table };
  Kind kind_ = Kind::affine;
  double p0_ = 0.0, p1_ = 0.0, p2_ = 0.0;
  std::vector<double> values_;
};

/// Stage cost R(x, z): product form R1(x)*R2(z), a bilinear table, or an
/// arbitrary closure. Product form is what the stationary uniqueness theory
/// needs; the other forms are accepted wherever the solvers can fall back to
/// scans.
class CostFn {
 public:
  static CostFn product(ScalarFn r1, ScalarFn r2);
  static CostFn bilinear_table(std::vector<double> x_nodes, std::vector<double> z_nodes,
                               std::vector<std::vector<double>> values);
  static CostFn closure(std::function<double(double, double)> fn);

  double operator()(double x, double z) const;
  bool is_product() const { return kind_ == Kind::product; }
  const ScalarFn& r1() const;
  const ScalarFn& r2() const;

  /// R(., z) sampled on an n-node uniform state grid.
  std::vector<double> grid_slice(double z, int n) const;

 private:
  enum class Kind { product, table, closure };
  Kind kind_ = Kind::product;
  std::shared_ptr<const ScalarFn> r1_, r2_;
  std::shared_ptr<const std::function<double(double, double)>> fn_;
  std::shared_ptr<const struct BilinearTable> table_;
};

/// Model constants shared by all solvers. Library entry points take the
/// struct as given; the config layer owns validation.
struct ModelParams {
  double rho = 0.9;      // discount factor, in (0,1)
  double gamma = 0.3;    // effort cost, positive
  int horizon = 25;      // T
  double m0 = 0.0;       // initial mean state
  int grid_n = 2001;     // state grid nodes
  CostFn cost = CostFn::product(ScalarFn::affine(0.0, 1.0), ScalarFn::affine(1.0, 1.0));

  /// Empty when the parameters satisfy the model assumptions; otherwise one
  /// message per violated bound.
  std::vector<std::string> validate() const;

  /// Soft diagnostics: satisfied assumptions that only some solvers rely on.
  std::vector<std::string> warnings() const;
};

}  // namespace mfg
