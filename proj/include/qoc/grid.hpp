#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>

namespace qoc {

/// Uniform periodic spatial grid with the matching FFT wavenumbers.
/// x_j = x_min + j*dx for j = 0..n-1; x_max itself is the periodic image of
/// x_min and is not sampled. n must be a power of two.
struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_points = 0;
  double dx = 0.0;
  Eigen::VectorXd x;  // sample positions
  Eigen::VectorXd k;  // FFT-ordered wavenumbers, k_j = 2*pi*f_j

  static std::shared_ptr<const SpatialGrid> make(double x_min, double x_max,
                                                 int n_points) {
    if (!(x_max > x_min)) throw std::invalid_argument("grid: x_max <= x_min");
    if (n_points < 2 || (n_points & (n_points - 1)) != 0)
      throw std::invalid_argument("grid: n_points must be a power of two");
    auto g = std::make_shared<SpatialGrid>();
    g->x_min = x_min;
    g->x_max = x_max;
    g->n_points = n_points;
    g->dx = (x_max - x_min) / n_points;
    g->x.resize(n_points);
    g->k.resize(n_points);
    const double dk = 2.0 * M_PI / (x_max - x_min);
    for (int j = 0; j < n_points; ++j) {
      g->x[j] = x_min + j * g->dx;
      g->k[j] = dk * (j < n_points / 2 ? j : j - n_points);
    }
    return g;
  }

  /// Index of the mirror point under x -> -x on a symmetric periodic grid.
  int reflect_index(int j) const { return j == 0 ? 0 : n_points - j; }

  /// True when the grid is symmetric about x = 0 (so parity is exact).
  bool symmetric() const {
    return std::abs(x_min + x_max) < 1e-12 * (x_max - x_min);
  }
};

inline bool same_geometry(const SpatialGrid& a, const SpatialGrid& b) {
  return a.n_points == b.n_points && a.x_min == b.x_min && a.x_max == b.x_max;
}

}  // namespace qoc
