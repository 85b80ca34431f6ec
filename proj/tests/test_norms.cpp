#include <cmath>
#include <limits>

#include "doctest.h"
#include "gevrey/errors.hpp"
#include "gevrey/norms.hpp"
#include "oracle.hpp"

using namespace gevrey;

namespace {

// Conjugate pair +/-n with coefficient (0, a, 0); every norm has a closed form.
SpectralField pair_field(std::shared_ptr<const Lattice> lat, const Mode& n, double a) {
  SpectralField f(lat);
  const std::size_t i = f.lattice().index_of(n);
  f.coeff(i, 1) = Complex(0.0, a);
  f.coeff(f.lattice().conjugate_index(i), 1) = Complex(0.0, -a);
  return f;
}

}  // namespace

TEST_CASE("norms of a single conjugate pair match closed forms") {
  const auto lat = oracle::make_lattice(2);
  const double a = 0.75;

  const SpectralField f1 = pair_field(lat, Mode{1, 0, 0}, a);  // |n| = 1
  const double base = std::sqrt(2.0) * a;
  CHECK(sobolev_norm(f1, 0.0) == doctest::Approx(base).epsilon(1e-15));
  CHECK(sobolev_norm(f1, 2.0) == doctest::Approx(base).epsilon(1e-15));
  CHECK(gevrey_norm(f1, GevreyIndex{0.4, 1.0}) ==
        doctest::Approx(base * std::exp(0.4)).epsilon(1e-15));

  const SpectralField f2 = pair_field(lat, Mode{1, 1, 0}, a);  // |n|^2 = 2
  CHECK(sobolev_norm(f2, 1.5) == doctest::Approx(base * std::pow(2.0, 0.75)).epsilon(1e-14));
  const double alpha = 0.8;
  const double s = 0.6;
  const double triple_sq = 2.0 * a * a * (1.0 + alpha * alpha * std::pow(2.0, s)) * std::sqrt(2.0);
  CHECK(triple_norm(f2, TripleNormParams{alpha, s}) ==
        doctest::Approx(std::sqrt(triple_sq)).epsilon(1e-14));
}

TEST_CASE("sobolev_norm is the sigma = 0 Gevrey norm, bitwise") {
  const auto lat = oracle::make_lattice(4);
  const SpectralField f = oracle::random_field(lat, 17, false);
  for (double q : {0.0, 0.5, 1.0, 2.5}) {
    CHECK(sobolev_norm(f, q) == gevrey_norm(f, GevreyIndex{0.0, q}));
  }
  CHECK(triple_norm(f, TripleNormParams{1.3, 0.7}) ==
        gevrey_triple_norm(f, 0.0, TripleNormParams{1.3, 0.7}));
}

TEST_CASE("weighted norms agree with direct long double sums") {
  const auto lat = oracle::make_lattice(4);
  for (std::uint64_t seed : {2u, 8u}) {
    const SpectralField f = oracle::random_field(lat, seed, false);
    for (double q : {0.0, 0.5, 1.0, 2.0}) {
      for (double sigma : {0.0, 0.1, 0.3}) {
        const double got = gevrey_norm(f, GevreyIndex{sigma, q});
        const double ref = oracle::sum_norm(f, sigma, q);
        CHECK(std::abs(got - ref) <= 1e-13 * ref);
      }
    }
    for (double sigma : {0.0, 0.2}) {
      const double got = gevrey_triple_norm(f, sigma, TripleNormParams{1.1, 0.75});
      const double ref = oracle::sum_triple(f, sigma, 1.1, 0.75);
      CHECK(std::abs(got - ref) <= 1e-13 * ref);
    }
  }
}

TEST_CASE("weighted norms are monotone in their indices") {
  const auto lat = oracle::make_lattice(3);
  const SpectralField f = oracle::random_field(lat, 23, false);
  double prev = 0.0;
  for (double sigma : {0.0, 0.1, 0.2, 0.5, 1.0}) {
    const double cur = gevrey_norm(f, GevreyIndex{sigma, 1.0});
    CHECK(cur > prev);
    prev = cur;
  }
  prev = 0.0;
  for (double q : {0.0, 0.5, 1.0, 2.0}) {  // every mode has |n| >= 1
    const double cur = sobolev_norm(f, q);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("triple norm decomposes into its two Sobolev pieces") {
  const auto lat = oracle::make_lattice(3);
  const SpectralField f = oracle::random_field(lat, 31, true);
  const double alpha = 1.4;
  const double s = 0.8;
  const double t = triple_norm(f, TripleNormParams{alpha, s});
  const double lo = sobolev_norm(f, 0.5);      // |n| weight on the square
  const double hi = sobolev_norm(f, s + 0.5);  // |n|^{2s+1} weight on the square
  const double composed = std::sqrt(lo * lo + alpha * alpha * hi * hi);
  CHECK(t == doctest::Approx(composed).epsilon(1e-14));
}

TEST_CASE("large exponents take the log-sum path and stay accurate") {
  const int N = 16;
  const auto lat = oracle::make_lattice(N);
  SpectralField f(lat);
  for (int k = 1; k <= N; ++k) {
    const std::size_t i = lat->index_of(Mode{k, 0, 0});
    f.coeff(i, 0) = Complex(std::exp(-1.0 * k), 0.0);
    f.coeff(lat->conjugate_index(i), 0) = Complex(std::exp(-1.0 * k), 0.0);
  }

  // sigma * max|n| = 12 * sqrt(768) > 300, value ~ e^{176}: representable.
  const double got = gevrey_norm(f, GevreyIndex{12.0, 0.5});
  CHECK(std::isfinite(got));
  const double ref_log = oracle::log_sum_norm(f, 12.0, 0.5);
  CHECK(std::abs(std::log(got) - ref_log) <= 1e-12 * std::abs(ref_log));

  // value ~ e^{944}: past double range, reported as overflow rather than junk.
  CHECK(std::isinf(gevrey_norm(f, GevreyIndex{60.0, 0.5})));

  const double got3 = gevrey_triple_norm(f, 12.0, TripleNormParams{1.0, 0.5});
  CHECK(std::isfinite(got3));
  CHECK(got3 > got);  // the triple weight only adds mass at |n| >= 1

  // Zero field stays exactly zero on the same path.
  const SpectralField z(lat);
  CHECK(gevrey_norm(z, GevreyIndex{12.0, 0.5}) == 0.0);
  CHECK(gevrey_triple_norm(z, 12.0, TripleNormParams{1.0, 0.5}) == 0.0);
}

TEST_CASE("modulus spectrum holds per-mode weighted magnitudes") {
  const auto lat = oracle::make_lattice(2);
  const SpectralField f = oracle::random_field(lat, 40, false);
  const ScalarSpectralField m = modulus_spectrum(f, 1.5);
  for (std::size_t i = 0; i < lat->size(); ++i) {
    const double expect = std::sqrt(f.coeff_abs2(i)) * std::pow(lat->mode_abs(i), 1.5);
    CHECK(m.value(i) == doctest::Approx(expect).epsilon(1e-15));
  }
  // The scalar norm of the q-spectrum is the field's H_q norm.
  const ScalarSpectralField m0 = modulus_spectrum(f, 0.0);
  CHECK(sobolev_norm(m0, 2.0) == doctest::Approx(sobolev_norm(f, 2.0)).epsilon(1e-13));
}

TEST_CASE("analyticity-radius fit recovers an exact exponential decay") {
  const auto lat = oracle::make_lattice(6);
  for (double sigma0 : {0.4, 1.0}) {
    SpectralField f(lat);
    for (int k = 1; k <= 6; ++k) {
      const std::size_t i = lat->index_of(Mode{k, 0, 0});
      f.coeff(i, 1) = Complex(std::exp(-sigma0 * k), 0.0);
      f.coeff(lat->conjugate_index(i), 1) = Complex(std::exp(-sigma0 * k), 0.0);
    }
    const RadiusFit fit = fit_analyticity_radius(f);
    CHECK(fit.sigma_hat == doctest::Approx(sigma0).epsilon(1e-12));
    CHECK(fit.r2 >= 1.0 - 1e-12);
  }
}

TEST_CASE("flat shell profile fits slope zero with r2 = 1 by convention") {
  const auto lat = oracle::make_lattice(4);
  SpectralField f(lat);
  for (int k = 1; k <= 4; ++k) {
    const std::size_t i = lat->index_of(Mode{k, 0, 0});
    f.coeff(i, 0) = Complex(0.5, 0.0);
    f.coeff(lat->conjugate_index(i), 0) = Complex(0.5, 0.0);
  }
  const RadiusFit fit = fit_analyticity_radius(f);
  CHECK(fit.sigma_hat == 0.0);
  CHECK(fit.r2 == 1.0);
}

TEST_CASE("analyticity-radius fit refuses under-determined data") {
  // Truncation 1 only has shells round(|n|) in {1, 2}: structurally too few.
  const auto small = oracle::make_lattice(1);
  const SpectralField tiny = oracle::random_field(small, 3, false);
  CHECK_THROWS_AS(fit_analyticity_radius(tiny), diagnostic_error);

  // Large lattice, but all mass in one shell.
  const auto lat = oracle::make_lattice(4);
  SpectralField f(lat);
  const std::size_t i = lat->index_of(Mode{2, 0, 0});
  f.coeff(i, 0) = Complex(1.0, 0.0);
  f.coeff(lat->conjugate_index(i), 0) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(fit_analyticity_radius(f), diagnostic_error);

  CHECK_THROWS_AS(fit_analyticity_radius(SpectralField(lat)), diagnostic_error);
}
