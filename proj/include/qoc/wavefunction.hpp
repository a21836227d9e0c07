#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <stdexcept>

#include "qoc/grid.hpp"

namespace qoc {

using Complex = std::complex<double>;

/// State vector on a SpatialGrid. Normalization convention:
/// sum_j |amp_j|^2 * dx = 1.
struct WaveFunction {
  std::shared_ptr<const SpatialGrid> grid;
  Eigen::VectorXcd amp;

  WaveFunction() = default;
  explicit WaveFunction(std::shared_ptr<const SpatialGrid> g)
      : grid(std::move(g)), amp(Eigen::VectorXcd::Zero(grid->n_points)) {}
  WaveFunction(std::shared_ptr<const SpatialGrid> g, Eigen::VectorXcd a)
      : grid(std::move(g)), amp(std::move(a)) {}
};

namespace detail {
inline void require_same_grid(const WaveFunction& a, const WaveFunction& b) {
  if (!a.grid || !b.grid || !same_geometry(*a.grid, *b.grid))
    throw std::invalid_argument("wavefunction: grid mismatch");
}
}  // namespace detail

/// dx-weighted L2 inner product of two raw vectors.
template <typename DerivedA, typename DerivedB>
Complex l2_inner(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b, double dx) {
  return a.dot(b) * dx;  // Eigen's dot conjugates the first argument
}

inline Complex inner_product(const WaveFunction& a, const WaveFunction& b) {
  detail::require_same_grid(a, b);
  return l2_inner(a.amp, b.amp, a.grid->dx);
}

inline double norm_sq(const WaveFunction& a) {
  return a.amp.squaredNorm() * a.grid->dx;
}

inline WaveFunction& normalize(WaveFunction& a) {
  const double n = std::sqrt(norm_sq(a));
  if (!(n > 0.0)) throw std::invalid_argument("normalize: zero norm");
  a.amp /= n;
  return a;
}

/// |<a|b>|^2, clamped to [0, 1] against rounding.
inline double fidelity(const WaveFunction& a, const WaveFunction& b) {
  const double f = std::norm(inner_product(a, b));
  return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
}

inline double expectation_x(const WaveFunction& a) {
  return (a.amp.array().abs2() * a.grid->x.array()).sum() * a.grid->dx;
}

inline double expectation_x2(const WaveFunction& a) {
  return (a.amp.array().abs2() * a.grid->x.array().square()).sum() *
         a.grid->dx;
}

/// Projects onto odd parity about x = 0: psi(x) <- (psi(x) - psi(-x)) / 2.
/// Exact on a symmetric periodic grid.
inline void project_odd(WaveFunction& a) {
  const int n = a.grid->n_points;
  Eigen::VectorXcd out(n);
  for (int j = 0; j < n; ++j)
    out[j] = 0.5 * (a.amp[j] - a.amp[a.grid->reflect_index(j)]);
  a.amp = std::move(out);
}

inline void project_even(WaveFunction& a) {
  const int n = a.grid->n_points;
  Eigen::VectorXcd out(n);
  for (int j = 0; j < n; ++j)
    out[j] = 0.5 * (a.amp[j] + a.amp[a.grid->reflect_index(j)]);
  a.amp = std::move(out);
}

}  // namespace qoc
