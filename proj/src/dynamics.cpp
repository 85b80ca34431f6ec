#include "gevrey/dynamics.hpp"

#include <cmath>
#include <string>

#include "gevrey/kahan.hpp"
#include "gevrey/norms.hpp"

namespace gevrey {

namespace {

constexpr double kDivergenceTol = 1e-10;
constexpr double kBlowUpNorm = 1e12;

struct VoigtParams {
  double alpha = 0.0;
  double s = 1.0;
};

// alpha = 0 encodes "no divisor".
VoigtParams voigt_of(const EquationSpec& eq) {
  if (const auto* ev = std::get_if<EulerVoigt>(&eq)) return {ev->alpha, ev->s};
  if (const auto* ns = std::get_if<NSVoigt>(&eq)) return {ns->alpha, ns->s};
  return {};
}

}  // namespace

void validate(const EquationSpec& eq) {
  const auto bad = [](const std::string& what) { throw config_error("equation: " + what); };
  if (const auto* ev = std::get_if<EulerVoigt>(&eq)) {
    if (!(ev->alpha > 0.0)) bad("alpha must be > 0");
    if (!(ev->s > 0.0)) bad("s must be > 0");
  } else if (const auto* ns = std::get_if<NSVoigt>(&eq)) {
    if (!(ns->alpha > 0.0)) bad("alpha must be > 0");
    if (!(ns->s > 0.0)) bad("s must be > 0");
    if (!(ns->nu > 0.0)) bad("nu must be > 0");
  }
}

bool requires_solenoidal(const EquationSpec& eq) {
  if (const auto* b = std::get_if<Burgers>(&eq)) return b->projected;
  return true;
}

SpectralField rhs(const SpectralField& f, const EquationSpec& eq) {
  validate(eq);
  const bool solenoidal = requires_solenoidal(eq);
  if (solenoidal) {
    const double div = max_divergence_ratio(f);
    if (div > kDivergenceTol) {
      throw state_error("rhs: field has divergence ratio " + std::to_string(div) +
                        " but the equation evolves solenoidal states");
    }
  }
  SpectralField out = nonlinear_term(f, solenoidal);

  const Lattice& lat = f.lattice();
  if (const auto* ns = std::get_if<NSVoigt>(&eq)) {
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const double damp = ns->nu * lat.mode_abs2(i);
      for (int c = 0; c < 3; ++c) out.coeff(i, c) -= damp * f.coeff(i, c);
    }
  }
  const VoigtParams vp = voigt_of(eq);
  if (vp.alpha > 0.0) {
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const double divisor = 1.0 + vp.alpha * vp.alpha * std::pow(lat.mode_abs2(i), vp.s);
      for (int c = 0; c < 3; ++c) out.coeff(i, c) /= divisor;
    }
  }
  return out;
}

void step(SpectralField& f, const EquationSpec& eq, double dt) {
  const SpectralField k1 = rhs(f, eq);
  SpectralField stage = f;
  stage.axpy(0.5 * dt, k1);
  const SpectralField k2 = rhs(stage, eq);
  stage = f;
  stage.axpy(0.5 * dt, k2);
  const SpectralField k3 = rhs(stage, eq);
  stage = f;
  stage.axpy(dt, k3);
  const SpectralField k4 = rhs(stage, eq);

  f.axpy(dt / 6.0, k1);
  f.axpy(dt / 3.0, k2);
  f.axpy(dt / 3.0, k3);
  f.axpy(dt / 6.0, k4);
  f = enforce_hermitian(f);
  if (requires_solenoidal(eq)) f = project_solenoidal(f);
}

double conserved_quantity(const SpectralField& f, const EquationSpec& eq) {
  const Lattice& lat = f.lattice();
  const VoigtParams vp = voigt_of(eq);
  detail::KahanSum sum;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double w =
        vp.alpha > 0.0 ? 1.0 + vp.alpha * vp.alpha * std::pow(lat.mode_abs2(i), vp.s) : 1.0;
    sum.add(w * f.coeff_abs2(i));
  }
  return sum.value();
}

RunSeries integrate(const SpectralField& v0, const EquationSpec& eq, const IntegrationParams& p,
                    const std::vector<double>& sobolev_indices, SampleObserver* observer) {
  validate(eq);
  if (!(p.dt > 0.0)) throw config_error("integration: dt must be > 0");
  if (!(p.t_end > 0.0)) throw config_error("integration: t_end must be > 0");
  const long long steps_total = std::llround(p.t_end / p.dt);
  if (steps_total < 1) throw config_error("integration: t_end shorter than one step");
  const long long steps_per_sample =
      p.sample_interval <= p.dt ? 1 : std::llround(p.sample_interval / p.dt);

  RunSeries series;
  series.sobolev_indices = sobolev_indices;

  SpectralField v = v0;
  const auto take_sample = [&](long long k) -> bool {
    Sample sample;
    sample.t = static_cast<double>(k) * p.dt;
    sample.energy = conserved_quantity(v, Euler{});
    sample.sobolev.reserve(sobolev_indices.size());
    for (double q : sobolev_indices) sample.sobolev.push_back(sobolev_norm(v, q));
    bool ok = all_finite(v) && std::isfinite(sample.energy) &&
              std::sqrt(sample.energy) <= kBlowUpNorm;
    for (double n : sample.sobolev) ok = ok && std::isfinite(n) && n <= kBlowUpNorm;
    if (!ok) {
      series.blew_up = true;
      return false;
    }
    if (observer != nullptr) observer->observe(v, sample);
    series.samples.push_back(std::move(sample));
    series.last_valid_time = static_cast<double>(k) * p.dt;
    return true;
  };

  if (!take_sample(0)) return series;
  for (long long k = 1; k <= steps_total; ++k) {
    step(v, eq, p.dt);
    if (!all_finite(v)) {
      series.blew_up = true;
      return series;
    }
    if (k % steps_per_sample == 0 || k == steps_total) {
      if (!take_sample(k)) return series;
    }
  }
  return series;
}

double max_dissipation_residual(const std::vector<DissipationSample>& samples) {
  if (samples.size() < 3) {
    throw diagnostic_error("dissipation residual needs at least 3 samples");
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const auto& a = samples[i - 1];
    const auto& m = samples[i];
    const auto& b = samples[i + 1];
    const double rate_fd = (b.quantity - a.quantity) / (b.t - a.t);
    const double residual = std::abs(rate_fd + m.rate) / std::max(1.0, m.rate);
    worst = std::max(worst, residual);
  }
  return worst;
}

}  // namespace gevrey
