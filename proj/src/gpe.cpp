#include "qoc/gpe.hpp"

#include <cmath>
#include <limits>

namespace qoc {

SplitStepPropagator::SplitStepPropagator(std::shared_ptr<const SpatialGrid> grid)
    : grid_(std::move(grid)),
      spec_(grid_->n_points),
      kin_phase_(grid_->n_points) {}

void SplitStepPropagator::ensure_kinetic_cache(double dt_over_m, double sign) {
  const double key = sign * dt_over_m;
  if (key == cached_key_) return;
  const auto& k = grid_->k;
  for (int j = 0; j < grid_->n_points; ++j) {
    const double phase = sign * 0.5 * k[j] * k[j] * dt_over_m;
    kin_phase_[j] = Complex(std::cos(phase), std::sin(phase));
  }
  cached_key_ = key;
}

void SplitStepPropagator::apply_kinetic_phase(Eigen::VectorXcd& psi,
                                              double dt_over_m, double sign) {
  ensure_kinetic_cache(dt_over_m, sign);
  fft_.fwd(spec_, psi);
  spec_.array() *= kin_phase_.array();
  fft_.inv(psi, spec_);
}

void SplitStepPropagator::half_step_forward(Eigen::VectorXcd& psi,
                                            const Eigen::VectorXd& potential,
                                            const GpeParams& p) {
  const double c = 0.5 * p.dt;
  const int n = grid_->n_points;
  if (p.beta == 0.0) {
    for (int j = 0; j < n; ++j) {
      const double th = c * potential[j];
      psi[j] *= Complex(std::cos(th), -std::sin(th));
    }
  } else {
    for (int j = 0; j < n; ++j) {
      const double th = c * (potential[j] + p.beta * std::norm(psi[j]));
      psi[j] *= Complex(std::cos(th), -std::sin(th));
    }
  }
}

void SplitStepPropagator::step(Eigen::VectorXcd& psi,
                               const Eigen::VectorXd& potential,
                               const GpeParams& p) {
  if (p.beta == 0.0) {
    // Density does not enter; compute the potential phase once per step.
    const double c = 0.5 * p.dt;
    const int n = grid_->n_points;
    if (spec_phase_.size() != n) spec_phase_.resize(n);
    for (int j = 0; j < n; ++j) {
      const double th = c * potential[j];
      spec_phase_[j] = Complex(std::cos(th), -std::sin(th));
    }
    psi.array() *= spec_phase_.array();
    apply_kinetic_phase(psi, p.dt / p.mass, -1.0);
    psi.array() *= spec_phase_.array();
  } else {
    half_step_forward(psi, potential, p);
    apply_kinetic_phase(psi, p.dt / p.mass, -1.0);
    half_step_forward(psi, potential, p);
  }
}

void SplitStepPropagator::half_step_adjoint(Eigen::VectorXcd& w,
                                            const Eigen::VectorXcd& psi_in,
                                            const Eigen::VectorXd& potential,
                                            const GpeParams& p) {
  // Forward factor: phi = psi * exp(-i theta(psi)), theta = dt/2 (V + beta|psi|^2).
  // Its R-linearization is dphi = a dpsi + b conj(dpsi) with
  //   a = exp(-i theta) (1 - i bp |psi|^2),  b = -i bp psi^2 exp(-i theta),
  // bp = beta dt/2; the real-pairing transpose is w <- conj(a) w + b conj(w).
  const double c = 0.5 * p.dt;
  const double bp = 0.5 * p.beta * p.dt;
  const int n = grid_->n_points;
  for (int j = 0; j < n; ++j) {
    const double rho = std::norm(psi_in[j]);
    const double th = c * (potential[j] + p.beta * rho);
    const Complex e(std::cos(th), -std::sin(th));
    const Complex a_conj = std::conj(e) * Complex(1.0, bp * rho);
    const Complex b = Complex(0.0, -bp) * psi_in[j] * psi_in[j] * e;
    w[j] = a_conj * w[j] + b * std::conj(w[j]);
  }
}

void SplitStepPropagator::imag_step(Eigen::VectorXcd& psi,
                                    const Eigen::VectorXd& potential,
                                    const GpeParams& p, double dtau) {
  const double c = 0.5 * dtau;
  const int n = grid_->n_points;
  if (kin_decay_.size() != n || cached_decay_key_ != dtau / p.mass) {
    kin_decay_.resize(n);
    for (int j = 0; j < n; ++j)
      kin_decay_[j] = std::exp(-0.5 * grid_->k[j] * grid_->k[j] * dtau / p.mass);
    cached_decay_key_ = dtau / p.mass;
  }
  for (int j = 0; j < n; ++j)
    psi[j] *= std::exp(-c * (potential[j] + p.beta * std::norm(psi[j])));
  fft_.fwd(spec_, psi);
  spec_.array() *= kin_decay_.array();
  fft_.inv(psi, spec_);
  for (int j = 0; j < n; ++j)
    psi[j] *= std::exp(-c * (potential[j] + p.beta * std::norm(psi[j])));
}

double SplitStepPropagator::energy(const Eigen::VectorXcd& psi,
                                   const Eigen::VectorXd& potential,
                                   const GpeParams& p) {
  const int n = grid_->n_points;
  fft_.fwd(spec_, const_cast<Eigen::VectorXcd&>(psi));
  double kin = 0.0;
  for (int j = 0; j < n; ++j)
    kin += 0.5 * grid_->k[j] * grid_->k[j] / p.mass * std::norm(spec_[j]);
  kin *= grid_->dx / n;  // Parseval: sum |psi|^2 = (1/n) sum |spec|^2
  double pot = 0.0;
  for (int j = 0; j < n; ++j) {
    const double rho = std::norm(psi[j]);
    pot += (potential[j] + 0.5 * p.beta * rho) * rho;
  }
  pot *= grid_->dx;
  return kin + pot;
}

Trajectory propagate(const WaveFunction& psi0,
                     const Eigen::VectorXd& control_samples,
                     const PotentialFn& potential, const GpeParams& params,
                     bool store, SplitStepPropagator& prop) {
  if (!psi0.grid || !same_geometry(*psi0.grid, prop.grid()))
    throw std::invalid_argument("propagate: state grid does not match propagator");
  const int n_steps = static_cast<int>(control_samples.size()) - 1;
  const int n = prop.grid().n_points;

  Trajectory tr;
  tr.n_steps = std::max(n_steps, 0);
  tr.stored = store;
  Eigen::VectorXcd psi = psi0.amp;
  if (store) {
    tr.states.resize(n, tr.n_steps + 1);
    tr.states.col(0) = psi;
  }
  Eigen::VectorXd v(n);
  for (int j = 0; j < n_steps; ++j) {
    potential(control_samples[j], v);
    prop.step(psi, v, params);
    if (!psi.real().allFinite() || !psi.imag().allFinite())
      throw NumericalBlowup("propagation blow-up", j + 1);
    if (store) tr.states.col(j + 1) = psi;
  }
  tr.final_state = std::move(psi);
  return tr;
}

EigenstateResult relax_to_eigenstate(const Eigen::VectorXd& potential,
                                     const GpeParams& params,
                                     const ImagTimeOptions& opts,
                                     SplitStepPropagator& prop) {
  const auto& grid = prop.grid();
  const int n = grid.n_points;

  WaveFunction psi(prop.grid_ptr());
  if (opts.initial_guess) {
    psi = *opts.initial_guess;
  } else {
    // Gaussian seeded at the potential minimum with a curvature-matched width.
    int jmin = 0;
    potential.minCoeff(&jmin);
    const double x0 = grid.x[jmin];
    const int jl = (jmin + n - 1) % n, jr = (jmin + 1) % n;
    const double curv =
        (potential[jl] - 2.0 * potential[jmin] + potential[jr]) /
        (grid.dx * grid.dx);
    double width = curv > 0.0 ? std::pow(params.mass * curv, -0.25)
                              : 0.125 * (grid.x_max - grid.x_min);
    width = std::clamp(width, 2.0 * grid.dx, 0.125 * (grid.x_max - grid.x_min));
    for (int j = 0; j < n; ++j) {
      const double z = (grid.x[j] - x0) / width;
      double a = std::exp(-0.5 * z * z);
      if (opts.odd_parity) a *= grid.x[j] - x0;
      psi.amp[j] = a;
    }
  }
  if (opts.odd_parity) project_odd(psi);
  normalize(psi);

  GpeParams p = params;
  double kin_max = 0.0;
  for (int j = 0; j < n; ++j)
    kin_max = std::max(kin_max, 0.5 * grid.k[j] * grid.k[j] / p.mass);
  const double dtau_fine = 0.1 / kin_max;
  const double dtau_warm = 20.0 * dtau_fine;

  double e_prev = prop.energy(psi.amp, potential, p);
  double delta = std::numeric_limits<double>::infinity();
  int iters = 0;
  // Warmup stage with a coarse step, then the fine step to tolerance.
  for (int stage = 0; stage < 2; ++stage) {
    const double dtau = stage == 0 ? dtau_warm : dtau_fine;
    const double tol = stage == 0 ? 1e-6 : opts.energy_tol;
    while (iters < opts.max_iterations) {
      prop.imag_step(psi.amp, potential, p, dtau);
      if (opts.odd_parity) project_odd(psi);
      normalize(psi);
      ++iters;
      const double e = prop.energy(psi.amp, potential, p);
      delta = std::abs(e - e_prev);
      e_prev = e;
      if (delta < tol) break;
    }
  }
  if (delta >= opts.energy_tol)
    throw ConvergenceError("imaginary-time relaxation did not converge", delta);

  // Amplitudes stay real for a real seed; enforce the sign convention.
  int jpeak = 0;
  psi.amp.array().abs2().maxCoeff(&jpeak);
  if (psi.amp[jpeak].real() < 0.0) psi.amp = -psi.amp;
  for (int j = 0; j < n; ++j) psi.amp[j] = Complex(psi.amp[j].real(), 0.0);
  normalize(psi);

  EigenstateResult out;
  out.energy = prop.energy(psi.amp, potential, p);
  out.state = std::move(psi);
  out.iterations = iters;
  return out;
}

}  // namespace qoc
