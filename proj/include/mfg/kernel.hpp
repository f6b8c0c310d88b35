#pragma once

#include <span>
#include <vector>

#include "mfg/xi.hpp"

namespace mfg {

/// Next state under the passive action: x + (1-x)u. Never moves down, keeps
/// 1 absorbing and maps the resetting point to u itself.
double q0_next(double x, double u);

/// Quadrature approximation of the kernel expectation
///   ∫ h((1-u)x + u) dF_ξ(u),
/// where h is a grid function on [0,1] evaluated by linear interpolation.
double q0_expectation(const XiSpec& xi, double x, std::span<const double> h);

/// q0_expectation at every node of h's own grid; parallelized over nodes.
std::vector<double> q0_expectation_grid(const XiSpec& xi, std::span<const double> h);

}  // namespace mfg
