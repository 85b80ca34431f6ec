#include "gevrey/norms.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gevrey/kahan.hpp"

namespace gevrey {

namespace {

constexpr double kLogSumExpThreshold = 300.0;
constexpr double kShellFloor = 1e-14;

double direct_weighted_sum(const SpectralField& f, double sigma, double q) {
  const Lattice& lat = f.lattice();
  detail::KahanSum acc;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double rn = lat.mode_abs(i);
    const double factor = std::exp(sigma * rn);
    const double weight = std::pow(rn, 2.0 * q);
    double mag2 = 0.0;
    for (int c = 0; c < 3; ++c) mag2 += std::norm(f.coeff(i, c) * factor);
    acc.add(mag2 * weight);
  }
  return acc.value();
}

// log of the same sum, evaluated with the max exponent factored out.
double log_weighted_sum(const SpectralField& f, double sigma, double q) {
  const Lattice& lat = f.lattice();
  double shift = -std::numeric_limits<double>::infinity();
  std::vector<double> exponents(lat.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double mag2 = f.coeff_abs2(i);
    if (mag2 == 0.0) continue;
    const double rn = lat.mode_abs(i);
    exponents[i] = 2.0 * sigma * rn + 2.0 * q * std::log(rn) + std::log(mag2);
    if (exponents[i] > shift) shift = exponents[i];
  }
  if (!std::isfinite(shift)) return -std::numeric_limits<double>::infinity();  // zero field
  detail::KahanSum acc;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (std::isfinite(exponents[i])) acc.add(std::exp(exponents[i] - shift));
  }
  return shift + std::log(acc.value());
}

}  // namespace

double gevrey_norm(const SpectralField& f, GevreyIndex idx) {
  const Lattice& lat = f.lattice();
  if (idx.sigma * lat.max_abs() > kLogSumExpThreshold) {
    const double log_sq = log_weighted_sum(f, idx.sigma, idx.q);
    if (!std::isfinite(log_sq)) return 0.0;
    return std::exp(0.5 * log_sq);
  }
  return std::sqrt(direct_weighted_sum(f, idx.sigma, idx.q));
}

double sobolev_norm(const SpectralField& f, double q) {
  return gevrey_norm(f, GevreyIndex{0.0, q});
}

double sobolev_norm(const ScalarSpectralField& f, double q) {
  const Lattice& lat = f.lattice();
  detail::KahanSum acc;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double v = f.value(i);
    acc.add(v * v * std::pow(lat.mode_abs(i), 2.0 * q));
  }
  return std::sqrt(acc.value());
}

double gevrey_triple_norm(const SpectralField& f, double sigma, TripleNormParams p) {
  const Lattice& lat = f.lattice();
  if (sigma * lat.max_abs() > kLogSumExpThreshold) {
    // Split as (weight) * e^{2 sigma |n|} |f|^2 in log space.
    double shift = -std::numeric_limits<double>::infinity();
    std::vector<double> exponents(lat.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const double mag2 = f.coeff_abs2(i);
      if (mag2 == 0.0) continue;
      const double rn = lat.mode_abs(i);
      const double weight = (1.0 + p.alpha * p.alpha * std::pow(rn, 2.0 * p.s)) * rn;
      exponents[i] = 2.0 * sigma * rn + std::log(weight) + std::log(mag2);
      if (exponents[i] > shift) shift = exponents[i];
    }
    if (!std::isfinite(shift)) return 0.0;
    detail::KahanSum acc;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      if (std::isfinite(exponents[i])) acc.add(std::exp(exponents[i] - shift));
    }
    return std::exp(0.5 * (shift + std::log(acc.value())));
  }
  detail::KahanSum acc;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double rn = lat.mode_abs(i);
    const double factor = std::exp(sigma * rn);
    const double weight = (1.0 + p.alpha * p.alpha * std::pow(rn, 2.0 * p.s)) * rn;
    double mag2 = 0.0;
    for (int c = 0; c < 3; ++c) mag2 += std::norm(f.coeff(i, c) * factor);
    acc.add(mag2 * weight);
  }
  return std::sqrt(acc.value());
}

double triple_norm(const SpectralField& f, TripleNormParams p) {
  return gevrey_triple_norm(f, 0.0, p);
}

ScalarSpectralField modulus_spectrum(const SpectralField& f, double q) {
  const Lattice& lat = f.lattice();
  ScalarSpectralField out(f.lattice_ptr());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    out.value(i) = std::sqrt(f.coeff_abs2(i)) * std::pow(lat.mode_abs(i), q);
  }
  return out;
}

RadiusFit fit_analyticity_radius(const SpectralField& f) {
  const Lattice& lat = f.lattice();
  const int max_shell = static_cast<int>(std::llround(lat.max_abs())) + 1;
  std::vector<double> shell_max(static_cast<std::size_t>(max_shell) + 1, 0.0);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const int b = static_cast<int>(std::llround(lat.mode_abs(i)));
    const double mag = std::sqrt(f.coeff_abs2(i));
    if (mag > shell_max[b]) shell_max[b] = mag;
  }

  std::vector<double> xs, ys;
  for (int b = 1; b <= max_shell; ++b) {
    if (shell_max[b] > kShellFloor) {
      xs.push_back(static_cast<double>(b));
      ys.push_back(std::log(shell_max[b]));
    }
  }
  if (xs.size() < 3) {
    throw diagnostic_error("analyticity-radius fit needs >= 3 shells above 1e-14, got " +
                           std::to_string(xs.size()));
  }

  const std::size_t m = xs.size();
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(m);
  mean_y /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  RadiusFit fit;
  fit.sigma_hat = -slope;
  if (syy == 0.0) {
    fit.r2 = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double resid = (ys[i] - mean_y) - slope * (xs[i] - mean_x);
      ss_res += resid * resid;
    }
    fit.r2 = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace gevrey
