#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "gevrey/lattice.hpp"

namespace gevrey {

// Incompressible Euler: dv/dt = -P[(v.grad)v].
struct Euler {};

// Vector Burgers: dv/dt = -(v.grad)v, no projection and no solenoidality
// requirement. The projected flavor exists only to exercise the
// energy-neutrality of the projected advection term in isolation.
struct Burgers {
  bool projected = false;
};

// Regularized Euler: (1 + alpha^2 |n|^{2s}) divides the projected advection
// term mode-wise.
struct EulerVoigt {
  double alpha = 1.0;
  double s = 1.0;
};

// Same divisor with viscous damping: rhs = (advection - nu |n|^2 v) / divisor.
struct NSVoigt {
  double alpha = 1.0;
  double s = 1.0;
  double nu = 1.0;
};

using EquationSpec = std::variant<Euler, Burgers, EulerVoigt, NSVoigt>;

void validate(const EquationSpec& eq);

// Every variant except unprojected Burgers evolves on the divergence-free
// subspace.
bool requires_solenoidal(const EquationSpec& eq);

// Spectral time derivative at the given state. For solenoidal equations the
// input must satisfy max_divergence_ratio <= 1e-10 (state_error otherwise);
// the result is again solenoidal and Hermitian-symmetric.
SpectralField rhs(const SpectralField& f, const EquationSpec& eq);

// One classical fourth-order Runge-Kutta step of size dt, followed by
// conjugate-pair symmetrization and, for solenoidal equations, re-projection.
// Fixed step only; dt is never adapted.
void step(SpectralField& f, const EquationSpec& eq, double dt);

// The quadratic quantity whose budget the equation controls:
//   Euler / Burgers   : sum |v(n)|^2              (conserved when projected
//                       advection acts on solenoidal data)
//   EulerVoigt        : sum (1 + alpha^2 |n|^{2s}) |v(n)|^2   (conserved)
//   NSVoigt           : same sum; decays at rate 2 nu sum |n|^2 |v(n)|^2.
double conserved_quantity(const SpectralField& f, const EquationSpec& eq);

// One row of a run's time series. Columns beyond the norms are diagnostics
// filled in by an observer (NaN = not produced).
struct Sample {
  double t = 0.0;
  double energy = 0.0;           // sum |v(n)|^2
  std::vector<double> sobolev;   // ||v||_q for each requested index q
  double gevrey = std::numeric_limits<double>::quiet_NaN();
  double psi = std::numeric_limits<double>::quiet_NaN();
  double xi = std::numeric_limits<double>::quiet_NaN();
  double envelope = std::numeric_limits<double>::quiet_NaN();
  double margin = std::numeric_limits<double>::quiet_NaN();
  double sigma_fit = std::numeric_limits<double>::quiet_NaN();  // in-memory only, not exported
};

struct RunSeries {
  std::vector<double> sobolev_indices;
  std::vector<Sample> samples;
  bool blew_up = false;
  double last_valid_time = 0.0;  // t of the last sample taken before a halt
};

// Hook invoked at every sampling instant with the current state; fills the
// diagnostic columns of the sample and may capture arbitrary data of its own.
class SampleObserver {
public:
  virtual ~SampleObserver() = default;
  virtual void observe(const SpectralField& v, Sample& sample) = 0;
};

struct IntegrationParams {
  double dt = 1e-3;
  double t_end = 1.0;
  double sample_interval = 0.0;  // <= dt samples every step
};

// March v0 with fixed-step RK4, sampling at t = 0, every sample_interval
// (rounded to a whole number of steps), and at t_end. A non-finite state or
// any recorded norm above 1e12 halts integration early: the series returned
// so far is kept, blew_up is set, and last_valid_time marks the final good
// sample. Sampling times are k*dt computed from the step index, never
// accumulated.
RunSeries integrate(const SpectralField& v0, const EquationSpec& eq, const IntegrationParams& p,
                    const std::vector<double>& sobolev_indices, SampleObserver* observer = nullptr);

// One measurement for the dissipation identity d/dt quantity + rate = 0.
struct DissipationSample {
  double t = 0.0;
  double quantity = 0.0;  // conserved_quantity at t
  double rate = 0.0;      // 2 nu ||v||_1^2 at t
};

// Max over interior samples of |centered difference of quantity + rate|,
// normalized pointwise by max(1, rate). Needs at least 3 samples.
double max_dissipation_residual(const std::vector<DissipationSample>& samples);

}  // namespace gevrey
