#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "bvp4/errors.hpp"

namespace bvp4 {

enum class QuadratureKind { simpson, gauss_legendre_4 };

/// Composite rule. For Simpson a panel is one pair of subintervals, so two
/// panels on [0,1] produce the nodes 0, 1/4, 1/2, 3/4, 1.
///
/// Seams split the interval into segments that no panel straddles. The
/// panel budget is shared between segments in proportion to their length
/// with at least one panel each. Seams outside the open integration interval
/// are ignored.
struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::gauss_legendre_4;
  int panels = 64;
  std::vector<double> seams;

  /// Throws DomainError on panels < 1 or seams that are unsorted or outside (0,1).
  void validate() const;
};

struct NodesWeights {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre 4-point abscissae and weights on [-1,1].
inline constexpr std::array<double, 4> kGaussLegendre4Nodes = {
    -0.86113631159405257522, -0.33998104358485626480, 0.33998104358485626480,
    0.86113631159405257522};
inline constexpr std::array<double, 4> kGaussLegendre4Weights = {
    0.34785484513745385737, 0.65214515486254614263, 0.65214515486254614263,
    0.34785484513745385737};

/// Nodes sorted ascending, weights summing to b - a. Simpson segments share
/// their common endpoint as a single node.
NodesWeights nodes_weights(const QuadratureRule& rule, double a, double b);

/// The default rule for scalar constants: Gauss-Legendre-4, 64 panels.
QuadratureRule default_constants_rule(std::vector<double> seams = {});

/// Composite Simpson weights for n (odd, >= 3) equally spaced nodes on [a,b].
std::vector<double> simpson_weights(int n, double a = 0.0, double b = 1.0);

/// Single-panel 4-point Gauss-Legendre on [a,b]; exact for degree 7.
template <class F>
double gauss4(F&& g, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t k = 0; k < 4; ++k) sum += kGaussLegendre4Weights[k] * g(mid + half * kGaussLegendre4Nodes[k]);
  return half * sum;
}

/// Composite approximation of the integral of g over [a,b].
/// Throws NonFiniteError if g is not finite at a node.
template <class F>
double integrate(F&& g, double a, double b, const QuadratureRule& rule) {
  const NodesWeights nw = nodes_weights(rule, a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < nw.nodes.size(); ++i) {
    const double v = g(nw.nodes[i]);
    if (!std::isfinite(v))
      throw NonFiniteError("integrand is not finite at s = " + std::to_string(nw.nodes[i]));
    sum += nw.weights[i] * v;
  }
  return sum;
}

}  // namespace bvp4
