#include "gevrey/xform.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gevrey/kahan.hpp"

namespace gevrey {

namespace {

constexpr double kPsiRelTol = 5e-15;  // on exp(h)-1; comfortably inside the 1e-12*beta contract
constexpr int kPsiMaxIter = 200;
constexpr double kCriticalDamping = 0.5;
constexpr int kCriticalMaxIter = 200;

double weight_of(const PsiNormKind& kind, double rn) {
  if (const auto* sob = std::get_if<SobolevWeight>(&kind)) {
    return std::pow(rn, 2.0 * sob->q);
  }
  const auto& tri = std::get<TripleWeight>(kind);
  return (1.0 + tri.alpha * tri.alpha * std::pow(rn, 2.0 * tri.s)) * rn;
}

// Per-mode data for the psi equation: log(weight * |v(n)|^2) and |n| for the
// modes that actually carry energy. Everything downstream works in log space,
// so fields of any magnitude and brackets of any width are safe.
struct PsiTerms {
  std::vector<double> rn;
  std::vector<double> log_a;

  PsiTerms(const SpectralField& v, const PsiNormKind& kind) {
    const Lattice& lat = v.lattice();
    rn.reserve(lat.size());
    log_a.reserve(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const double mag2 = v.coeff_abs2(i);
      if (mag2 == 0.0) continue;
      const double r = lat.mode_abs(i);
      rn.push_back(r);
      log_a.push_back(std::log(weight_of(kind, r)) + std::log(mag2));
    }
  }

  bool empty() const { return rn.empty(); }

  // log G(psi) and d(log G)/d(psi), where G(psi)^2 = sum a_i e^{2 psi rn_i}.
  std::pair<double, double> log_norm_and_rate(double psi) const {
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rn.size(); ++i) {
      shift = std::max(shift, log_a[i] + 2.0 * psi * rn[i]);
    }
    detail::KahanSum s0, s1;
    for (std::size_t i = 0; i < rn.size(); ++i) {
      const double e = std::exp(log_a[i] + 2.0 * psi * rn[i] - shift);
      s0.add(e);
      s1.add(rn[i] * e);
    }
    const double log_g = 0.5 * (shift + std::log(s0.value()));
    return {log_g, s1.value() / s0.value()};
  }
};

PsiSolution solve_critical_shift(const SpectralField& v, const CriticalShift& spec) {
  const TripleNormParams params{spec.alpha, 0.5};
  auto next = [&](double psi) {
    const double t = gevrey_triple_norm(v, psi, params);
    return spec.beta / ((1.0 + t) * (1.0 + t));
  };
  double psi = next(0.0);
  PsiSolution sol;
  for (int iter = 1; iter <= kCriticalMaxIter; ++iter) {
    const double target = next(psi);
    const double t = gevrey_triple_norm(v, psi, params);
    sol.psi = psi;
    sol.residual = psi * (1.0 + t) * (1.0 + t) - spec.beta;
    sol.iterations = iter;
    if (std::abs(sol.residual) <= 1e-13 * spec.beta) return sol;
    psi = (1.0 - kCriticalDamping) * psi + kCriticalDamping * target;
  }
  throw transform_error("critical-shift psi iteration did not converge in " +
                        std::to_string(kCriticalMaxIter) + " steps (residual " +
                        std::to_string(sol.residual) + ")");
}

}  // namespace

void validate(const TransformSpec& spec) {
  const auto bad = [](const std::string& what) { throw config_error("transform: " + what); };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if (!(s.beta > 0.0)) bad("beta must be > 0");
        if constexpr (std::is_same_v<T, FixedSobolev> || std::is_same_v<T, VoigtTriple>) {
          if (!(s.epsilon > 0.0 && s.epsilon < 2.0)) bad("epsilon must lie in (0,2)");
          if (!(s.s > 0.0)) bad("s must be > 0");
        }
        if constexpr (std::is_same_v<T, VoigtTriple> || std::is_same_v<T, CriticalShift>) {
          if (!(s.alpha > 0.0)) bad("alpha must be > 0");
        }
      },
      spec);
}

double transform_beta(const TransformSpec& spec) {
  return std::visit([](const auto& s) { return s.beta; }, spec);
}

SpectralField apply_exponential_weight(const SpectralField& f, double psi) {
  const Lattice& lat = f.lattice();
  SpectralField out = f;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double factor = std::exp(psi * lat.mode_abs(i));
    for (int c = 0; c < 3; ++c) out.coeff(i, c) *= factor;
  }
  return out;  // real, sign-symmetric factor: solenoidality and Hermitian symmetry survive
}

PsiSolution solve_psi(const SpectralField& v, double beta, double epsilon,
                      const PsiNormKind& kind) {
  if (!(beta > 0.0)) throw config_error("solve_psi: beta must be > 0");
  if (!(epsilon > 0.0 && epsilon < 2.0)) throw config_error("solve_psi: epsilon must lie in (0,2)");
  const PsiTerms terms(v, kind);
  if (terms.empty()) throw transform_error("psi equation has no solution for the zero field");

  const double log_beta = std::log(beta);
  // G is increasing, so psi * G(psi)^eps >= psi * G(0)^eps: the root sits in
  // (0, beta / G(0)^eps].
  double hi = std::exp(log_beta - epsilon * terms.log_norm_and_rate(0.0).first);
  double lo = 0.0;
  {
    // Guard against rounding making h(hi) fractionally negative.
    int widen = 0;
    while (std::log(hi) + epsilon * terms.log_norm_and_rate(hi).first - log_beta < 0.0 &&
           widen++ < 64) {
      lo = hi;
      hi *= 2.0;
    }
  }

  double psi = hi;
  PsiSolution best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= kPsiMaxIter; ++iter) {
    const auto [log_g, rate] = terms.log_norm_and_rate(psi);
    const double h = std::log(psi) + epsilon * log_g - log_beta;
    const double rel = std::expm1(h);
    if (std::abs(rel * beta) < std::abs(best.residual)) {
      best.psi = psi;
      best.residual = rel * beta;
      best.iterations = iter;
    }
    if (std::abs(rel) <= kPsiRelTol) break;
    if (h > 0.0) {
      hi = psi;
    } else {
      lo = psi;
    }
    const double deriv = 1.0 / psi + epsilon * rate;
    double cand = psi - h / deriv;
    if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
    if (cand == psi) break;  // bracket exhausted at this precision
    psi = cand;
  }
  return best;
}

PsiSolution transform_psi(const SpectralField& v, const TransformSpec& spec, double t) {
  validate(spec);
  if (const auto* lin = std::get_if<LinearInTime>(&spec)) {
    if (t < 0.0) throw config_error("transform: time must be >= 0 for the linear-in-time weight");
    return PsiSolution{lin->beta * t, 0.0, 0};
  }
  if (const auto* crit = std::get_if<CriticalShift>(&spec)) {
    if (v.is_zero()) return PsiSolution{crit->beta, 0.0, 0};
    return solve_critical_shift(v, *crit);
  }
  if (v.is_zero()) return PsiSolution{0.0, 0.0, 0};  // documented zero-field convention
  if (const auto* fix = std::get_if<FixedSobolev>(&spec)) {
    return solve_psi(v, fix->beta, fix->epsilon, SobolevWeight{fix->s + 1.5});
  }
  const auto& voigt = std::get<VoigtTriple>(spec);
  return solve_psi(v, voigt.beta, voigt.epsilon, TripleWeight{voigt.alpha, voigt.s});
}

TransformResult v_to_w(const SpectralField& v, const TransformSpec& spec, double t) {
  const PsiSolution sol = transform_psi(v, spec, t);
  return TransformResult{apply_exponential_weight(v, sol.psi), sol};
}

SpectralField w_to_v(const SpectralField& w, const TransformSpec& spec, double t) {
  validate(spec);
  double psi = 0.0;
  if (const auto* fix = std::get_if<FixedSobolev>(&spec)) {
    const double norm = sobolev_norm(w, fix->s + 1.5);
    if (norm == 0.0) {
      throw transform_error("inverse transform undefined for the zero field (norm^-epsilon)");
    }
    psi = fix->beta * std::pow(norm, -fix->epsilon);
  } else if (const auto* voigt = std::get_if<VoigtTriple>(&spec)) {
    const double norm = triple_norm(w, TripleNormParams{voigt->alpha, voigt->s});
    if (norm == 0.0) {
      throw transform_error("inverse transform undefined for the zero field (norm^-epsilon)");
    }
    psi = voigt->beta * std::pow(norm, -voigt->epsilon);
  } else if (const auto* crit = std::get_if<CriticalShift>(&spec)) {
    const double norm = triple_norm(w, TripleNormParams{crit->alpha, 0.5});
    psi = crit->beta / ((1.0 + norm) * (1.0 + norm));
  } else {
    if (t < 0.0) throw config_error("transform: time must be >= 0 for the linear-in-time weight");
    psi = std::get<LinearInTime>(spec).beta * t;
  }
  return apply_exponential_weight(w, -psi);
}

bool beta_admissible(const SpectralField& v_in, const TransformSpec& spec, double sigma) {
  validate(spec);
  if (!(sigma > 0.0)) throw config_error("beta admissibility: sigma must be > 0");
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedSobolev>) {
          const double g = gevrey_norm(v_in, GevreyIndex{sigma, s.s + 1.5});
          return s.beta < sigma * std::pow(g, s.epsilon);
        } else if constexpr (std::is_same_v<T, VoigtTriple>) {
          const double g_half = gevrey_norm(v_in, GevreyIndex{sigma, 0.5});
          const double g_s = gevrey_norm(v_in, GevreyIndex{sigma, s.s + 0.5});
          const double sq = g_half * g_half + s.alpha * s.alpha * g_s * g_s;
          return s.beta < sigma * std::pow(sq, 0.5 * s.epsilon);
        } else if constexpr (std::is_same_v<T, CriticalShift>) {
          const double g_half = gevrey_norm(v_in, GevreyIndex{sigma, 0.5});
          const double g_one = gevrey_norm(v_in, GevreyIndex{sigma, 1.0});
          const double root = std::sqrt(g_half * g_half + s.alpha * s.alpha * g_one * g_one);
          return s.beta < sigma * (1.0 + root) * (1.0 + root);
        } else {
          return true;
        }
      },
      spec);
}

}  // namespace gevrey
