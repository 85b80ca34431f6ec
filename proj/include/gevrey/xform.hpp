#pragma once

#include <variant>

#include "gevrey/lattice.hpp"
#include "gevrey/norms.hpp"

namespace gevrey {

// The four exponential re-weightings w(n) = v(n) e^{psi |n|}, distinguished by
// how psi is tied to the field:
//   FixedSobolev  : psi solves  psi * G(psi)^epsilon = beta, G = Gevrey-weighted H_{s+3/2} norm
//   VoigtTriple   : same equation with the Gevrey-weighted triple norm (alpha, s)
//   CriticalShift : psi = beta / (1 + T(psi))^2, T = Gevrey-weighted triple norm at s = 1/2
//   LinearInTime  : psi = beta * t
struct FixedSobolev {
  double beta;
  double epsilon;
  double s;
};
struct VoigtTriple {
  double beta;
  double epsilon;
  double alpha;
  double s;
};
struct CriticalShift {
  double beta;
  double alpha;
};
struct LinearInTime {
  double beta;
};
using TransformSpec = std::variant<FixedSobolev, VoigtTriple, CriticalShift, LinearInTime>;

void validate(const TransformSpec& spec);
double transform_beta(const TransformSpec& spec);

struct SobolevWeight {
  double q;
};
struct TripleWeight {
  double alpha;
  double s;
};
using PsiNormKind = std::variant<SobolevWeight, TripleWeight>;

struct PsiSolution {
  double psi = 0.0;
  double residual = 0.0;  // psi * G(psi)^epsilon - beta (resp. the fixed-point defect)
  int iterations = 0;
};

// w(n) = f(n) e^{psi |n|} for any real psi. This is the one place the weight
// is applied, so a plain norm of the result matches the Gevrey norm of the
// input bit for bit.
SpectralField apply_exponential_weight(const SpectralField& f, double psi);

// Solves psi * G(psi)^epsilon = beta for the unique positive root, where G(psi)
// is the sigma = psi Gevrey weighting of the selected norm of v. G is increasing
// in psi, so [0, beta/G(0)^epsilon] brackets the root; a safeguarded Newton
// iteration on log(psi) + epsilon log G(psi) - log(beta) polishes it. Residual
// tolerance: |residual| <= 1e-12 * beta (typically ~1e-15 * beta). Throws
// transform_error for the zero field.
PsiSolution solve_psi(const SpectralField& v, double beta, double epsilon, const PsiNormKind& kind);

// psi for the given transform at time t (t only matters for LinearInTime).
// CriticalShift runs the damped fixed-point iteration (damping 0.5, cap 200
// iterations; throws transform_error if the cap is hit). Zero-field convention:
// psi = 0, except CriticalShift where the equation itself gives psi = beta.
PsiSolution transform_psi(const SpectralField& v, const TransformSpec& spec, double t);

struct TransformResult {
  SpectralField w;
  PsiSolution psi;
};

// w(n) = v(n) e^{psi |n|} with psi from transform_psi.
TransformResult v_to_w(const SpectralField& v, const TransformSpec& spec, double t);

// Inverse: v(n) = w(n) e^{-psi' |n|} where psi' is recomputed from w itself
// (beta ||w||^{-epsilon}, beta |||w|||^{-epsilon}, beta (1+|||w|||)^{-2}, or
// beta t). Throws transform_error for the zero field under FixedSobolev and
// VoigtTriple, where the normalization is undefined.
SpectralField w_to_v(const SpectralField& w, const TransformSpec& spec, double t);

// Strict admissibility of beta at analyticity index sigma:
//   FixedSobolev  : beta <  sigma * G_{sigma,s+3/2}(v)^epsilon
//   VoigtTriple   : beta <  sigma * (G_{sigma,1/2}^2 + alpha^2 G_{sigma,s+1/2}^2)^{epsilon/2}
//   CriticalShift : beta <  sigma * (1 + sqrt(G_{sigma,1/2}^2 + alpha^2 G_{sigma,1}^2))^2
//   LinearInTime  : no sigma-linked condition (always true here; the theorem
//                   using it carries its own viscosity-side constraint)
bool beta_admissible(const SpectralField& v_in, const TransformSpec& spec, double sigma);

}  // namespace gevrey
