#pragma once

#include <vector>

namespace bvp4 {

/// Finite-difference weights for derivatives 0..max_order at z from the
/// nodes x (Fornberg's recursion). Result[m][j] multiplies f(x[j]) in the
/// approximation of the m-th derivative.
std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& x, int max_order);

/// Weights for the m-th derivative at z = x[0] + offset*h using the equally
/// spaced stencil x[j] = j*h, j = 0..points-1. `offset` is in units of h.
std::vector<double> fd_weights_uniform(double offset, int points, int order, double h);

}  // namespace bvp4
