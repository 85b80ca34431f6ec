#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "gevrey/errors.hpp"

namespace gevrey {

using Mode = std::array<int, 3>;
using Complex = std::complex<double>;

// Cube truncation of the integer frequency lattice: all n with 0 < max_i|n_i| <= N.
// The zero mode is excluded everywhere (zero-mean fields). Mode enumeration is
// lexicographic in (n1,n2,n3) and is the canonical summation/storage order for
// every reduction in the library, which keeps results bit-reproducible.
class Lattice {
public:
  explicit Lattice(int trunc);

  int truncation() const { return trunc_; }
  std::size_t size() const { return modes_.size(); }  // (2N+1)^3 - 1

  const std::vector<Mode>& modes() const { return modes_; }
  const Mode& mode(std::size_t i) const { return modes_[i]; }
  double mode_abs(std::size_t i) const { return mode_abs_[i]; }    // |n|
  double mode_abs2(std::size_t i) const { return mode_abs2_[i]; }  // |n|^2
  double max_abs() const { return max_abs_; }

  // Index of n in enumeration order; throws state_error if n is outside the
  // truncation or is the zero mode.
  std::size_t index_of(const Mode& n) const;
  bool contains(const Mode& n) const;

  std::size_t conjugate_index(std::size_t i) const;  // index of -n
  // True for exactly one mode of each {n, -n} pair (the lexicographically
  // positive one); used to visit Hermitian pairs once.
  bool is_canonical(std::size_t i) const;

private:
  int trunc_;
  int span_;  // 2N+1
  std::vector<Mode> modes_;
  std::vector<double> mode_abs_;
  std::vector<double> mode_abs2_;
  std::vector<std::size_t> cube_to_index_;  // dense (2N+1)^3 lookup
  double max_abs_;
};

// Complex Fourier coefficients of a 3-component velocity field on a shared
// lattice. Value semantics; all module operations return new fields. The
// solenoidal tag is an assertion that coeff(n) . n == 0 for every mode
// (tolerance 1e-13 relative), maintained by the operations that guarantee it.
class SpectralField {
public:
  explicit SpectralField(std::shared_ptr<const Lattice> lattice);

  const Lattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }

  Complex& coeff(std::size_t mode_index, int component) {
    return coeffs_[mode_index * 3 + component];
  }
  const Complex& coeff(std::size_t mode_index, int component) const {
    return coeffs_[mode_index * 3 + component];
  }
  std::array<Complex, 3> at(std::size_t mode_index) const {
    return {coeffs_[mode_index * 3], coeffs_[mode_index * 3 + 1], coeffs_[mode_index * 3 + 2]};
  }
  void set(std::size_t mode_index, const std::array<Complex, 3>& value) {
    for (int c = 0; c < 3; ++c) coeffs_[mode_index * 3 + c] = value[c];
  }

  bool solenoidal_tag() const { return solenoidal_; }
  void set_solenoidal_tag(bool v) { solenoidal_ = v; }

  // Squared Euclidean modulus of the 3-vector coefficient at one mode.
  double coeff_abs2(std::size_t mode_index) const;

  bool is_zero() const;

  // In-place linear algebra for the integrator. Tags are invalidated by the
  // caller when the combination does not preserve them.
  void scale(double a);
  void axpy(double a, const SpectralField& x);

  std::vector<Complex>& raw() { return coeffs_; }
  const std::vector<Complex>& raw() const { return coeffs_; }

private:
  std::shared_ptr<const Lattice> lattice_;
  std::vector<Complex> coeffs_;  // size 3*lattice.size(), mode-major
  bool solenoidal_ = false;
};

// Scalar-valued lattice data (e.g. modulus spectra). Same enumeration order.
class ScalarSpectralField {
public:
  explicit ScalarSpectralField(std::shared_ptr<const Lattice> lattice);

  const Lattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }

  double& value(std::size_t mode_index) { return values_[mode_index]; }
  double value(std::size_t mode_index) const { return values_[mode_index]; }

private:
  std::shared_ptr<const Lattice> lattice_;
  std::vector<double> values_;
};

// Mode-wise orthogonal projection onto divergence-free fields:
// v  ->  v - (v.n / |n|^2) n. Never increases any per-mode modulus.
SpectralField project_solenoidal(const SpectralField& f);

// Canonicalize Hermitian symmetry: for each pair {n,-n} replace both entries by
// the symmetric part (c(n)+conj(c(-n)))/2. Idempotent; afterwards
// coeff(n) == conj(coeff(-n)) holds exactly (bitwise).
SpectralField enforce_hermitian(const SpectralField& f);

bool is_hermitian_exact(const SpectralField& f);

// max over modes of |v.n| / (|v||n|); 0 for the zero field.
double max_divergence_ratio(const SpectralField& f);

bool all_finite(const SpectralField& f);

// Galerkin truncation of the advective convolution:
//   out(n) = -i * sum_k (f(k) . (n-k)) [P_n] f(n-k),
// both k and n-k inside the truncation. For the incompressible equations this
// is the whole time derivative dv/dt at nu = 0. Evaluated with zero-padded
// FFTs sized >= 3N+1 per axis, which makes the retained-mode result equal to
// the exact double sum up to roundoff. Hermitian symmetry of the result is
// re-enforced after evaluation.
SpectralField nonlinear_term(const SpectralField& f, bool apply_projection);

}  // namespace gevrey
