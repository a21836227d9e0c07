#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <unsupported/Eigen/FFT>

#include "qoc/errors.hpp"
#include "qoc/wavefunction.hpp"

namespace qoc {

/// Dimensionless propagation parameters (hbar = 1 internally; mass carries
/// the unit conversion of each problem).
struct GpeParams {
  double mass = 1.0;
  double beta = 0.0;  // nonlinear self-interaction, >= 0 here
  double dt = 1e-3;   // real-time step
};

/// Fills `out` with the potential column V(x_j, u) for a given control value.
using PotentialFn = std::function<void(double u, Eigen::VectorXd& out)>;

/// Forward propagation output. `states` column j holds psi(t_j) when the
/// trajectory was stored; `final_state` is always psi(T).
struct Trajectory {
  Eigen::VectorXcd final_state;
  Eigen::MatrixXcd states;  // n_points x (n_steps + 1), empty unless stored
  bool stored = false;
  int n_steps = 0;
};

/// Strang split-step engine for i dpsi/dt = (-1/2m d^2/dx^2 + V + beta|psi|^2) psi.
/// Owns its transform plans and scratch; one instance per worker thread.
class SplitStepPropagator {
 public:
  explicit SplitStepPropagator(std::shared_ptr<const SpatialGrid> grid);

  const SpatialGrid& grid() const { return *grid_; }
  std::shared_ptr<const SpatialGrid> grid_ptr() const { return grid_; }

  /// One real-time Strang step under a frozen potential column. The second
  /// potential half-step re-evaluates the density after the kinetic step.
  void step(Eigen::VectorXcd& psi, const Eigen::VectorXd& potential,
            const GpeParams& p);

  /// One imaginary-time step (dt -> -i dtau); caller renormalizes.
  void imag_step(Eigen::VectorXcd& psi, const Eigen::VectorXd& potential,
                 const GpeParams& p, double dtau);

  /// <psi| -1/2m d2/dx2 + V + (beta/2)|psi|^2 |psi> with spectral kinetic term.
  double energy(const Eigen::VectorXcd& psi, const Eigen::VectorXd& potential,
                const GpeParams& p);

  /// Kinetic phase application psi <- F^-1[ exp(sign * i k^2 dt / 2m) F psi ].
  void apply_kinetic_phase(Eigen::VectorXcd& psi, double dt_over_m,
                           double sign);

  /// Adjoint pieces used by the cost gradient: exact reverse-mode transpose of
  /// `step`'s half potential factor. Maps w <- conj(a) * w + b * conj(w) where
  /// a, b are the linearization of psi -> psi * exp(-i theta(psi)).
  void half_step_adjoint(Eigen::VectorXcd& w, const Eigen::VectorXcd& psi_in,
                         const Eigen::VectorXd& potential, const GpeParams& p);

  /// Forward half potential factor psi <- psi * exp(-i dt/2 (V + beta|psi|^2)).
  void half_step_forward(Eigen::VectorXcd& psi,
                         const Eigen::VectorXd& potential, const GpeParams& p);

 private:
  void ensure_kinetic_cache(double dt_over_m, double sign);

  std::shared_ptr<const SpatialGrid> grid_;
  Eigen::FFT<double> fft_;
  Eigen::VectorXcd spec_;       // spectral scratch
  Eigen::VectorXcd kin_phase_;  // cached exp(sign*i*k^2*dt/2m)
  double cached_key_ = std::numeric_limits<double>::quiet_NaN();
};

/// Forward propagation along sampled control values. control[j] drives step j
/// (the last sample only pins the endpoint; with shape-pinned controls it
/// carries no gradient weight). Throws NumericalBlowup on non-finite output.
Trajectory propagate(const WaveFunction& psi0,
                     const Eigen::VectorXd& control_samples,
                     const PotentialFn& potential, const GpeParams& params,
                     bool store, SplitStepPropagator& prop);

struct ImagTimeOptions {
  double energy_tol = 1e-10;   // per-iteration energy delta
  int max_iterations = 400000;
  bool odd_parity = false;     // project out the even component each step
  std::optional<WaveFunction> initial_guess;
};

struct EigenstateResult {
  WaveFunction state;
  double energy = 0.0;
  int iterations = 0;
};

/// Imaginary-time relaxation with renormalization each step. dtau is staged:
/// a coarse warmup, then 0.1 / E_kin_max until the energy delta criterion.
/// Returns a normalized state with real, non-negative peak phase.
EigenstateResult relax_to_eigenstate(const Eigen::VectorXd& potential,
                                     const GpeParams& params,
                                     const ImagTimeOptions& opts,
                                     SplitStepPropagator& prop);

}  // namespace qoc
