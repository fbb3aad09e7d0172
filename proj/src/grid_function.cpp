#include "bvp4/grid_function.hpp"

#include <algorithm>
#include <cmath>

#include "bvp4/errors.hpp"
#include "bvp4/finite_difference.hpp"
#include "bvp4/quadrature.hpp"

namespace bvp4 {

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  const int m = n();
  if (m < 11 || m % 2 == 0) throw DomainError("grid size must be odd and >= 11, got " + std::to_string(m));
  for (double v : values_)
    if (!std::isfinite(v)) throw NonFiniteError("grid function has a non-finite value");

  // Five-point stencils: centred in the interior, shifted near the ends.
  slopes_.resize(values_.size());
  const double hh = h();
  std::vector<std::vector<double>> w(5);
  for (int off = 0; off < 5; ++off) w[off] = fd_weights_uniform(off, 5, 1, hh);
  for (int i = 0; i < m; ++i) {
    const int start = std::clamp(i - 2, 0, m - 5);
    const std::vector<double>& wi = w[i - start];
    double d = 0.0;
    for (int j = 0; j < 5; ++j) d += wi[j] * values_[start + j];
    slopes_[i] = d;
  }
}

GridFunction GridFunction::constant(int n, double c) {
  return GridFunction(std::vector<double>(static_cast<std::size_t>(std::max(n, 0)), c));
}

GridFunction GridFunction::sample(int n, const std::function<double(double)>& g) {
  std::vector<double> v(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) v[i] = g(static_cast<double>(i) / (n - 1));
  return GridFunction(std::move(v));
}

double GridFunction::sup_norm() const noexcept {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::fabs(v));
  return s;
}

double GridFunction::min_value() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double GridFunction::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("interpolation point outside [0,1]");
  const double hh = h();
  const int i = std::min(static_cast<int>(t / hh), n() - 2);
  const double x = (t - i * hh) / hh;
  const double x2 = x * x;
  const double x3 = x2 * x;
  const double h00 = 2 * x3 - 3 * x2 + 1;
  const double h10 = x3 - 2 * x2 + x;
  const double h01 = -2 * x3 + 3 * x2;
  const double h11 = x3 - x2;
  return h00 * values_[i] + h10 * hh * slopes_[i] + h01 * values_[i + 1] + h11 * hh * slopes_[i + 1];
}

double GridFunction::integral() const {
  const std::vector<double> w = simpson_weights(n());
  double s = 0.0;
  for (int i = 0; i < n(); ++i) s += w[i] * values_[i];
  return s;
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
  if (a.n() != b.n()) throw DomainError("grid functions live on different grids");
  double d = 0.0;
  for (int i = 0; i < a.n(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

}  // namespace bvp4
