#pragma once

#include "gevrey/lattice.hpp"

namespace gevrey {

// Exponential-polynomial weight pair (sigma, q): per-mode factor e^{2 sigma |n|} |n|^{2q}.
struct GevreyIndex {
  double sigma = 0.0;
  double q = 0.0;
};

struct TripleNormParams {
  double alpha = 1.0;
  double s = 1.0;
};

// sqrt( sum |f(n)|^2 |n|^{2q} ). Computed as gevrey_norm with sigma = 0, so the
// two agree bitwise where they coincide.
double sobolev_norm(const SpectralField& f, double q);
double sobolev_norm(const ScalarSpectralField& f, double q);

// sqrt( sum |f(n)|^2 e^{2 sigma |n|} |n|^{2q} ). The exponential factor is applied
// to the complex coefficient before squaring, exactly the way field transforms
// apply it, so norm identities between transformed fields hold bitwise. When
// sigma*max|n| > 300 the sum is evaluated in log space (log-sum-exp) to dodge
// intermediate overflow; the result is still exp-ed back (inf if unrepresentable).
double gevrey_norm(const SpectralField& f, GevreyIndex idx);

// sqrt( sum (1 + alpha^2 |n|^{2s}) |n| |f(n)|^2 ).
double triple_norm(const SpectralField& f, TripleNormParams p);

// Same with the e^{2 sigma |n|} factor; sigma = 0 reduces to triple_norm.
double gevrey_triple_norm(const SpectralField& f, double sigma, TripleNormParams p);

// Scalar field of per-mode moduli: |f(n)| |n|^q.
ScalarSpectralField modulus_spectrum(const SpectralField& f, double q);

struct RadiusFit {
  double sigma_hat = 0.0;  // minus the fitted slope of log shell max vs |n|
  double r2 = 0.0;
};

// Bins modes into integer shells round(|n|), takes each shell's max coefficient
// modulus, and least-squares fits log(max) against the shell radius over shells
// with max > 1e-14. Needs at least 3 usable shells; throws diagnostic_error
// otherwise.
RadiusFit fit_analyticity_radius(const SpectralField& f);

}  // namespace gevrey
