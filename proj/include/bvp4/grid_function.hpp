#pragma once

#include <functional>
#include <vector>

namespace bvp4 {

/// Values of a candidate solution at t_i = i/(n-1), n odd and >= 11, with
/// piecewise cubic Hermite interpolation whose node slopes come from
/// fourth-order finite differences.
class GridFunction {
 public:
  /// Throws DomainError unless the size is odd and >= 11 and all values are finite.
  explicit GridFunction(std::vector<double> values);

  static GridFunction constant(int n, double c);
  static GridFunction sample(int n, const std::function<double(double)>& g);

  int n() const noexcept { return static_cast<int>(values_.size()); }
  double h() const noexcept { return 1.0 / (n() - 1); }
  double node(int i) const noexcept { return static_cast<double>(i) / (n() - 1); }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](int i) const noexcept { return values_[i]; }

  double sup_norm() const noexcept;
  double min_value() const noexcept;
  double slope(int i) const noexcept { return slopes_[i]; }

  /// Hermite interpolant at t in [0,1]; throws DomainError outside.
  double operator()(double t) const;

  /// Composite Simpson integral over [0,1].
  double integral() const;

 private:
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// max_i |a_i - b_i| on a shared grid; throws DomainError on size mismatch.
double sup_distance(const GridFunction& a, const GridFunction& b);

}  // namespace bvp4
