#include "bvp4/quadrature.hpp"

#include <algorithm>

namespace bvp4 {

void QuadratureRule::validate() const {
  if (panels < 1) throw DomainError("quadrature needs at least one panel");
  for (std::size_t i = 0; i < seams.size(); ++i) {
    if (!(seams[i] > 0.0 && seams[i] < 1.0)) throw DomainError("seam outside (0,1)");
    if (i > 0 && !(seams[i] > seams[i - 1])) throw DomainError("seams must be strictly increasing");
  }
}

namespace {

std::vector<double> segment_breaks(const QuadratureRule& rule, double a, double b) {
  std::vector<double> breaks{a};
  for (double s : rule.seams)
    if (s > a && s < b) breaks.push_back(s);
  breaks.push_back(b);
  return breaks;
}

int panels_for(double length, double total, int budget) {
  if (total <= 0.0) return 1;
  return std::max(1, static_cast<int>(std::lround(budget * length / total)));
}

}  // namespace

NodesWeights nodes_weights(const QuadratureRule& rule, double a, double b) {
  rule.validate();
  if (!(a <= b)) throw DomainError("integration interval needs a <= b");
  NodesWeights out;
  if (a == b) return out;

  const std::vector<double> breaks = segment_breaks(rule, a, b);
  for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
    const double lo = breaks[seg];
    const double hi = breaks[seg + 1];
    const int p = panels_for(hi - lo, b - a, rule.panels);
    const double width = (hi - lo) / p;

    if (rule.kind == QuadratureKind::gauss_legendre_4) {
      for (int j = 0; j < p; ++j) {
        const double mid = lo + (j + 0.5) * width;
        for (std::size_t k = 0; k < 4; ++k) {
          out.nodes.push_back(mid + 0.5 * width * kGaussLegendre4Nodes[k]);
          out.weights.push_back(0.5 * width * kGaussLegendre4Weights[k]);
        }
      }
      continue;
    }

    const int m = 2 * p;
    const double h = (hi - lo) / m;
    for (int i = 0; i <= m; ++i) {
      const double w = (i == 0 || i == m) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
      if (i == 0 && !out.nodes.empty()) {
        out.weights.back() += w;
        continue;
      }
      out.nodes.push_back(i == m ? hi : lo + i * h);
      out.weights.push_back(w);
    }
  }
  return out;
}

QuadratureRule default_constants_rule(std::vector<double> seams) {
  std::sort(seams.begin(), seams.end());
  seams.erase(std::unique(seams.begin(), seams.end()), seams.end());
  return QuadratureRule{QuadratureKind::gauss_legendre_4, 64, std::move(seams)};
}

std::vector<double> simpson_weights(int n, double a, double b) {
  if (n < 3 || n % 2 == 0) throw DomainError("Simpson needs an odd node count >= 3");
  const double h = (b - a) / (n - 1);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    w[i] = (i == 0 || i == n - 1) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
  return w;
}

}  // namespace bvp4
