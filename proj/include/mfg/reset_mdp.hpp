#pragma once

#include <span>
#include <vector>

#include "mfg/xi.hpp"

namespace mfg {

/// One application of the discounted reset-MDP operator
///   (Lg)(x) = stage(x) + min( rho ∫ g dQ0(.|x),  rho g(0) + gamma_eff ).
std::vector<double> reset_bellman_apply(std::span<const double> g,
                                        std::span<const double> stage_cost,
                                        double gamma_eff, double rho, const XiSpec& xi);

/// Fixed point of the operator above by value iteration from 0 (or from
/// `warm`), stopping when the sup-norm step is at most tol*(1-rho).
std::vector<double> reset_value_iteration(std::span<const double> stage_cost, double gamma_eff,
                                          double rho, const XiSpec& xi, double tol,
                                          std::span<const double> warm = {},
                                          int max_iter = 1000000);

}  // namespace mfg
