#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace partition_stats {

/// Gauss-Legendre rule with a runtime point count. Nodes are found by
/// Newton iteration on the Legendre recurrence; a k-point rule integrates
/// polynomials up to degree 2k-1 exactly, so smooth integrands on [0,1]
/// converge at machine precision once k is large enough.
class GaussLegendre {
 public:
  explicit GaussLegendre(std::size_t points) : nodes_(points), weights_(points) {
    const std::size_t k = points;
    for (std::size_t i = 0; i < (k + 1) / 2; ++i) {
      double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(k) + 0.5));
      double pp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p1 = 1.0;
        double p2 = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / static_cast<double>(j);
        }
        pp = static_cast<double>(k) * (z * p1 - p2) / (z * z - 1.0);
        const double dz = p1 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      nodes_[i] = -z;
      nodes_[k - 1 - i] = z;
      const double w = 2.0 / ((1.0 - z * z) * pp * pp);
      weights_[i] = w;
      weights_[k - 1 - i] = w;
    }
  }

  std::size_t size() const { return nodes_.size(); }

  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      acc += weights_[i] * f(mid + half * nodes_[i]);
    }
    return acc * half;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace partition_stats
