#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "gevrey/bounds.hpp"
#include "gevrey/errors.hpp"

using namespace gevrey;

namespace {

constexpr double kPi = std::numbers::pi;

// Partial lattice sum over the cube max|n_i| <= M by positive-octant
// enumeration with sign multiplicity; independent of the library's
// sorted-triple walk.
double partial_cs_square(int cutoff, double s) {
  const long double p = 3.0L + 2.0L * static_cast<long double>(s);
  long double acc = 0.0L;
  for (int i = 0; i <= cutoff; ++i) {
    for (int j = 0; j <= cutoff; ++j) {
      for (int k = 0; k <= cutoff; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const long double n2 = static_cast<long double>(i) * i +
                               static_cast<long double>(j) * j +
                               static_cast<long double>(k) * k;
        const int mult = 1 << ((i != 0) + (j != 0) + (k != 0));
        acc += mult * std::pow(n2, -0.5L * p);
      }
    }
  }
  return static_cast<double>(acc);
}

// Everything outside the cube lies outside the ball of radius M - 1; twice the
// isotropic integral over that ball complement over-counts the discarded tail.
double cs_tail_bound(int cutoff, double s) {
  const double p = 3.0 + 2.0 * s;
  return 2.0 * 4.0 * kPi * std::pow(cutoff - 1.0, 3.0 - p) / (p - 3.0);
}

RunSeries series_from(std::initializer_list<Sample> samples) {
  RunSeries run;
  run.samples = samples;
  if (!run.samples.empty()) run.last_valid_time = run.samples.back().t;
  return run;
}

Sample functional_sample(double t, double xi) {
  Sample s;
  s.t = t;
  s.xi = xi;
  return s;
}

Sample norm_sample(double t, double xi, double gevrey) {
  Sample s = functional_sample(t, xi);
  s.gevrey = gevrey;
  return s;
}

}  // namespace

TEST_CASE("lattice sums: frozen values, bracketing, stability") {
  const double c_half = lattice_sum_cs(0.5, 1e-8);
  const double c_one = lattice_sum_cs(1.0, 1e-8);
  CHECK(c_half * c_half == doctest::Approx(16.532315959746402).epsilon(1e-9));
  CHECK(c_one * c_one == doctest::Approx(10.377524830844919).epsilon(1e-9));

  // The full sum must exceed any partial sum and stay inside the tail bracket.
  for (double s : {0.5, 1.0}) {
    const double full_sq = std::pow(lattice_sum_cs(s, 1e-8), 2.0);
    const double partial = partial_cs_square(100, s);
    const double gap = full_sq - partial;
    CHECK(gap > 0.0);
    CHECK(gap < cs_tail_bound(100, s));
  }

  for (double s : {0.5, 1.0}) {
    const double loose = lattice_sum_cs(s, 1e-6);
    const double tight = lattice_sum_cs(s, 1e-8);
    CHECK(std::abs(loose - tight) <= 1e-6 * tight);
  }

  // Monotone in s, and always above the |n| = 1 shell alone (6 modes).
  double prev = std::numeric_limits<double>::infinity();
  for (double s : {0.3, 0.5, 0.75, 1.0, 1.5}) {
    const double c = lattice_sum_cs(s, 1e-7);
    CHECK(c < prev);
    CHECK(c * c > 6.0);
    prev = c;
  }

  CHECK_THROWS_AS(lattice_sum_cs(0.0, 1e-8), config_error);
  CHECK_THROWS_AS(lattice_sum_cs(-1.0, 1e-8), config_error);
  CHECK_THROWS_AS(lattice_sum_cs(0.5, 0.0), config_error);
  CHECK_THROWS_AS(lattice_sum_cs(0.5, -1e-8), config_error);
}

TEST_CASE("constants table: defaults, overrides, provenance, resolution log") {
  BoundConstants consts;
  const Constant def = consts.embedding(0.5);
  CHECK(def.value == 4.0);
  CHECK(!def.provenance.empty());

  consts.set_embedding(0.5, 2.5, "tabulated");
  CHECK(consts.embedding(0.5).value == 2.5);
  CHECK(consts.embedding(0.5).provenance == "tabulated");
  CHECK(consts.embedding(0.75).value == 4.0);  // untouched index keeps the default

  CHECK_THROWS_AS(consts.set_embedding(0.5, 0.0, "x"), config_error);
  CHECK_THROWS_AS(consts.set_embedding(0.5, -2.0, "x"), config_error);
  CHECK_THROWS_AS(consts.set_embedding(0.5, 1.0, ""), config_error);

  const double c1 = consts.lattice_constant(1.0);
  CHECK(c1 == consts.lattice_constant(1.0));  // cached, deterministic
  CHECK(consts.resolved().count("C[0.5]") == 1);
  CHECK(consts.resolved().count("C[0.75]") == 1);
  CHECK(consts.resolved().count("c_s[1]") == 1);
  CHECK(consts.resolved().at("c_s[1]").value == c1);
}

TEST_CASE("family 1 coefficients and envelope") {
  CHECK(thm1_A(0.5, 1.0) == 1.0);
  CHECK(thm1_theta(1.0) == 2.0);
  CHECK(thm1_Ds(4.07, 4.0, 4.0) ==
        doctest::Approx((4.07 + 16.0) / (4.0 * kPi * kPi * kPi)).epsilon(1e-15));

  const Thm1Params p{0.4, 1.0, 0.1};  // s, epsilon, beta
  CHECK(thm1_xi(p, 2.0, 3.0) == doctest::Approx(4.0 + 0.2 * 3.0).epsilon(1e-15));

  const double A = 0.2;
  const double theta = 1.5;
  const double Ds = 0.2;
  const double eps = 0.8;
  const double xi0 = 0.7;
  const double t_star = thm1_t_star(A, theta, Ds, eps, xi0);
  CHECK(t_star ==
        doctest::Approx(std::pow(A, 3.0 / 1.2) * std::pow(xi0, -1.5) / (Ds * 1.5)).epsilon(1e-14));

  CHECK(thm1_phi(A, theta, Ds, eps, A, 0.0) == 1.0);  // phi(0) = 1 when xi0 = A

  // The two published routes to the same bound must coincide.
  double prev_phi = 0.0;
  double prev_sigma = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 25; ++k) {
    const double t = 0.99 * t_star * k / 24.0;
    const double phi = thm1_phi(A, theta, Ds, eps, xi0, t);
    const double via_xi = std::pow(thm1_xi_bound(A, theta, Ds, eps, xi0, t) / A, 1.0 / (2.0 - eps));
    CHECK(std::abs(phi - via_xi) <= 1e-10 * phi);
    CHECK(phi > prev_phi);  // envelope grows toward the horizon
    const double sigma = thm1_sigma_index(0.1, eps, phi);
    CHECK(sigma < prev_sigma);  // guaranteed radius shrinks
    prev_phi = phi;
    prev_sigma = sigma;
  }

  CHECK_THROWS_AS(thm1_phi(A, theta, Ds, eps, xi0, t_star), horizon_error);
  CHECK_THROWS_AS(thm1_phi(A, theta, Ds, eps, xi0, 1.01 * t_star), horizon_error);
  CHECK_THROWS_AS(thm1_xi_bound(A, theta, Ds, eps, xi0, t_star), horizon_error);
}

TEST_CASE("family 2 coefficients and envelope") {
  CHECK(thm2_epsilon(1.0 / 6.0) == 1.0);
  CHECK(thm2_epsilon(0.1) == doctest::Approx(1.4).epsilon(1e-16));
  CHECK(thm2_D(0.4, 0.1, 2.0, 3.0, 5.0) ==
        doctest::Approx(0.4 * 3.0 * 25.0 / (std::pow(kPi * 2.0, 3.0) * 4.0)).epsilon(1e-15));

  // At the endpoint the envelope is exactly exponential.
  CHECK(thm2_phi(1.0 / 6.0, 1.0, 1.0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));

  // Power branch, hand-expanded: d = 0.2, phi = (xi0^0.2 + 0.2 D t)^5.
  const double got = thm2_phi(0.1, 0.7, 2.0, 1.3);
  const double expect = std::pow(std::pow(2.0, 0.2) + 0.2 * 0.7 * 1.3, 5.0);
  CHECK(got == doctest::Approx(expect).epsilon(1e-14));

  // The power branch converges to the exponential one as zeta -> 1/6.
  const double exact = thm2_phi(1.0 / 6.0, 1.0, 2.0, 0.7);
  const double near = thm2_phi(1.0 / 6.0 - 1e-6, 1.0, 2.0, 0.7);
  CHECK(std::abs(near - exact) <= 1e-5 * exact);

  CHECK(thm2_norm_bound(0.1, 0.5, 3.0) == doctest::Approx(std::pow(6.0, 1.0 / 0.6)).epsilon(1e-14));
  CHECK(thm2_sigma_index(0.4, 0.1, 0.5, 3.0) ==
        doctest::Approx(0.4 * std::pow(6.0, 1.0 - 1.0 / 0.3)).epsilon(1e-14));

  const Thm2Params p{0.1, 1.0, 2.0, 0.3};  // zeta, s, alpha, beta
  const double A = thm1_A(0.3, thm2_epsilon(0.1));
  CHECK(thm2_xi(p, 1.0, 2.0, 1.5) ==
        doctest::Approx(1.0 + 4.0 * 4.0 + A * std::pow(1.5, 0.6)).epsilon(1e-14));
}

TEST_CASE("family 3 coefficients and envelope") {
  CHECK(thm3_kappa(0.75, 1.6) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(thm3_kappa(0.8, 1.9) == 1.0);  // capped branch

  const double D = thm3_D(0.75, 1.5, 2.0, 0.3, 4.0, 3.0, 5.0);
  CHECK(D == doctest::Approx(4.0 * 3.0 * 5.0 * std::pow(0.6, 1.0 / 1.5) /
                             (8.0 * kPi * kPi * kPi * 2.0))
                 .epsilon(1e-14));

  const double Dp = thm3_Dprime(0.8, 0.5, 2.0, 0.1);
  const double expect = std::pow(0.8, 4.0) * 0.5 / 8.0 * std::pow(1.5 / 0.4, 3.0);
  CHECK(Dp == doctest::Approx(expect).epsilon(1e-13));

  CHECK(thm3_phi(0.7, 2.0, 1.1) == doctest::Approx(2.0 * std::exp(0.77)).epsilon(1e-15));
  CHECK(thm3_norm_bound(1.5, 0.2, 1.6) == doctest::Approx(std::pow(8.0, 2.0)).epsilon(1e-13));
  CHECK(thm3_sigma_index(0.3, 1.5, 0.2, 1.6) ==
        doctest::Approx(0.3 * std::pow(8.0, -3.0)).epsilon(1e-13));
}

TEST_CASE("family 4 coefficients") {
  CHECK(thm4_beta_cap(0.1, 1.0, 4.0, 4.0) ==
        doctest::Approx(4.806945967876522).epsilon(1e-14));
  // Quartic in alpha, quadratic in nu, inverse quadratic in each constant.
  CHECK(thm4_beta_cap(0.2, 1.0, 4.0, 4.0) ==
        doctest::Approx(4.0 * 4.806945967876522).epsilon(1e-13));
  CHECK(thm4_beta_cap(0.1, 2.0, 4.0, 4.0) ==
        doctest::Approx(16.0 * 4.806945967876522).epsilon(1e-13));
  CHECK(thm4_beta_cap(0.1, 1.0, 8.0, 4.0) ==
        doctest::Approx(4.806945967876522 / 4.0).epsilon(1e-13));

  const Thm4Params p{1.5, 0.2, 0.1};  // alpha, beta, nu
  CHECK(thm4_xi(p, 1.0, 2.0, 3.0) ==
        doctest::Approx(1.0 + 2.25 * 4.0 + 0.8 * std::log1p(3.0)).epsilon(1e-15));
  CHECK(thm4_norm_bound(0.2, 1.0) == doctest::Approx(std::sqrt(2.2)).epsilon(1e-15));
  CHECK(thm4_sigma_index(0.2, 0.0) == doctest::Approx(0.2 * std::exp(-3.0)).epsilon(1e-15));
  CHECK(thm4_sigma_index(0.2, 0.4) == doctest::Approx(0.2 * std::exp(-4.0)).epsilon(1e-15));
}

TEST_CASE("family 5 coefficients and envelope") {
  // Below and at the viscosity threshold the first correction vanishes.
  CHECK(thm5_Q1(0.25, 0.09, 1.0, 0.1) == 0.0);
  CHECK(thm5_Q1(0.25, 0.1, 1.0, 0.1) == 0.0);
  CHECK(thm5_Q1(0.25, 0.2, 1.0, 0.1) == doctest::Approx(16.0 / 135.0).epsilon(1e-15));

  const double Q2 = thm5_Q2(1.0, 0.05, 2.0, 3.0, 1.5);
  const double expect_q2 =
      2.0 * std::pow(3.0 / 0.05, 3.0) *
      std::pow(2.0 * 3.0 * 1.5 / (4.0 * 8.0 * kPi * kPi * kPi), 4.0);
  CHECK(Q2 == doctest::Approx(expect_q2).epsilon(1e-13));

  CHECK(thm5_q(0.2, 0.1, 0.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(thm5_q(0.1, 5.0, 0.3) == doctest::Approx(0.6).epsilon(1e-15));

  const Thm5Params p{0.5, 1.0, 2.0, 0.03, 0.1, 0.03, 0.04, 0.03};
  CHECK(thm5_xi(p, 1.5, 0.5) == doctest::Approx(2.25 + 4.0 * 0.25).epsilon(1e-15));

  // Pinned horizon: g = 1/2, denom = 1, t* = ln(2)/2.
  CHECK(thm5_t_star(1.0, 1.0, 1.0, 1.0) ==
        doctest::Approx(0.34657359027997264).epsilon(1e-15));
  // Driftless branch: t* = g / (Q2 xi0^{1/g}).
  CHECK(thm5_t_star(0.0, 2.0, 0.8, 1.5) ==
        doctest::Approx(0.3 / (2.0 * std::pow(1.5, 1.0 / 0.3))).epsilon(1e-14));

  CHECK(thm5_phi(1.0, 1.0, 1.0, 2.5, 0.0) == doctest::Approx(2.5).epsilon(1e-15));
  // Closed-form value of the driftless envelope.
  CHECK(thm5_phi(0.0, 1.0, 1.0, 1.0, 0.3) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
  // The driven branch converges to the driftless one as q -> 0.
  const double lim = thm5_phi(0.0, 1.0, 1.0, 1.0, 0.3);
  const double near = thm5_phi(1e-12, 1.0, 1.0, 1.0, 0.3);
  CHECK(std::abs(near - lim) <= 1e-10 * lim);

  const double ts = thm5_t_star(1.0, 1.0, 1.0, 1.0);
  CHECK_THROWS_AS(thm5_phi(1.0, 1.0, 1.0, 1.0, ts), horizon_error);
  CHECK_THROWS_AS(thm5_phi(1.0, 1.0, 1.0, 1.0, ts * 1.5), horizon_error);

  // Envelope grows monotonically inside the horizon.
  double prev = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double phi = thm5_phi(1.0, 1.0, 1.0, 1.0, 0.95 * ts * k / 19.0);
    CHECK(phi > prev);
    prev = phi;
  }
}

TEST_CASE("hypothesis validation per family") {
  BoundConstants consts;
  CHECK_NOTHROW(validate(TheoremSpec{Thm1Params{0.5, 1.0, 0.1}}, consts));
  CHECK_THROWS_AS(validate(TheoremSpec{Thm1Params{0.6, 1.0, 0.1}}, consts), config_error);
  CHECK_THROWS_AS(validate(TheoremSpec{Thm1Params{0.5, 2.0, 0.1}}, consts), config_error);
  CHECK_THROWS_AS(validate(TheoremSpec{Thm1Params{0.5, 1.0, 0.0}}, consts), config_error);

  CHECK_NOTHROW(validate(TheoremSpec{Thm2Params{1.0 / 6.0, 1.0, 1.0, 0.1}}, consts));
  CHECK_THROWS_AS(validate(TheoremSpec{Thm2Params{0.2, 1.1, 1.0, 0.1}}, consts), config_error);
  CHECK_THROWS_AS(validate(TheoremSpec{Thm2Params{1.0 / 6.0, 0.9, 1.0, 0.1}}, consts),
                  config_error);

  CHECK_NOTHROW(validate(TheoremSpec{Thm3Params{0.75, 1.5, 1.0, 0.1, 0.1}}, consts));
  CHECK_THROWS_AS(validate(TheoremSpec{Thm3Params{0.75, 1.2, 1.0, 0.1, 0.1}}, consts),
                  config_error);  // epsilon below 1/s
  CHECK_THROWS_AS(validate(TheoremSpec{Thm3Params{0.5, 1.5, 1.0, 0.1, 0.1}}, consts),
                  config_error);
  CHECK_THROWS_AS(validate(TheoremSpec{Thm3Params{0.75, 1.5, 1.0, 0.1, 0.0}}, consts),
                  config_error);

  CHECK_NOTHROW(validate(TheoremSpec{Thm4Params{1.0, 4.0, 0.1}}, consts));
  CHECK_THROWS_AS(validate(TheoremSpec{Thm4Params{1.0, 5.0, 0.1}}, consts),
                  config_error);  // beta above the viscosity cap

  const Thm5Params ok{0.5, 1.0, 1.0, 0.03, 0.1, 0.03, 0.04, 0.03};
  CHECK_NOTHROW(validate(TheoremSpec{ok}, consts));
  Thm5Params bad = ok;
  bad.gamma = 0.5;
  CHECK_THROWS_AS(validate(TheoremSpec{bad}, consts), config_error);
  bad = ok;
  bad.gamma = 1.1;
  CHECK_THROWS_AS(validate(TheoremSpec{bad}, consts), config_error);
  bad = ok;
  bad.eta3 = 0.05;  // sum no longer matches nu
  CHECK_THROWS_AS(validate(TheoremSpec{bad}, consts), config_error);
  bad = ok;
  bad.eta1 = -0.03;
  CHECK_THROWS_AS(validate(TheoremSpec{bad}, consts), config_error);
  bad = ok;
  bad.beta = 0.05;  // above eta2 / alpha^2 at the critical index
  CHECK_THROWS_AS(validate(TheoremSpec{bad}, consts), config_error);
  bad = ok;
  bad.beta = 0.05;
  bad.s = 0.4;  // same beta is fine away from the critical index
  CHECK_NOTHROW(validate(TheoremSpec{bad}, consts));

  CHECK(theorem_id(TheoremSpec{Thm1Params{}}) == 1);
  CHECK(theorem_id(TheoremSpec{Thm3Params{}}) == 3);
  CHECK(theorem_id(TheoremSpec{Thm5Params{0.5, 1.0, 1.0, 0.03, 0.1, 0.03, 0.04, 0.03}}) == 5);
}

TEST_CASE("derived constants expose each family's coefficients by name") {
  BoundConstants consts;
  const auto d1 = derived_constants(TheoremSpec{Thm1Params{0.5, 1.0, 0.1}}, consts);
  CHECK(d1.count("A") == 1);
  CHECK(d1.count("theta") == 1);
  CHECK(d1.count("D_s") == 1);
  CHECK(d1.at("A") == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(d1.at("theta") == 2.0);

  const auto d2 = derived_constants(TheoremSpec{Thm2Params{1.0 / 6.0, 1.0, 1.0, 0.1}}, consts);
  CHECK(d2.count("epsilon") == 1);
  CHECK(d2.count("A") == 1);
  CHECK(d2.count("D") == 1);
  CHECK(d2.at("epsilon") == 1.0);

  const auto d3 = derived_constants(TheoremSpec{Thm3Params{0.75, 1.6, 1.0, 0.1, 0.1}}, consts);
  CHECK(d3.count("kappa") == 1);
  CHECK(d3.count("D_prime") == 1);
  CHECK(d3.at("kappa") == doctest::Approx(0.5).epsilon(1e-14));

  const auto d4 = derived_constants(TheoremSpec{Thm4Params{1.0, 0.1, 0.1}}, consts);
  CHECK(d4.count("beta_cap") == 1);
  CHECK(d4.at("beta_cap") == doctest::Approx(4.806945967876522).epsilon(1e-13));

  const auto d5 = derived_constants(
      TheoremSpec{Thm5Params{0.5, 1.0, 1.0, 0.03, 0.1, 0.03, 0.04, 0.03}}, consts);
  CHECK(d5.count("Q1") == 1);
  CHECK(d5.count("Q2") == 1);
  CHECK(d5.count("q") == 1);
  CHECK(d5.at("Q1") == 0.0);
  CHECK(d5.at("q") == doctest::Approx(0.03 * 0.03 / 0.06).epsilon(1e-14));
}

TEST_CASE("envelope dispatch: monitored column, horizon, time dependence") {
  BoundConstants consts;
  const TheoremSpec t1{Thm1Params{0.5, 1.0, 0.1}};
  const TheoremSpec t2{Thm2Params{1.0 / 6.0, 1.0, 1.0, 0.1}};
  const TheoremSpec t3{Thm3Params{0.75, 1.6, 1.0, 0.1, 0.1}};
  const TheoremSpec t4{Thm4Params{1.0, 0.1, 0.1}};
  const TheoremSpec t5{Thm5Params{0.5, 1.0, 1.0, 0.03, 0.1, 0.03, 0.04, 0.03}};

  CHECK(monitored_column(t1) == MonitoredColumn::transformed_norm);
  CHECK(monitored_column(t2) == MonitoredColumn::transformed_norm);
  CHECK(monitored_column(t3) == MonitoredColumn::transformed_norm);
  CHECK(monitored_column(t4) == MonitoredColumn::functional);
  CHECK(monitored_column(t5) == MonitoredColumn::functional);

  CHECK(std::isfinite(horizon(t1, consts, 1.0)));
  CHECK(std::isinf(horizon(t2, consts, 1.0)));
  CHECK(std::isinf(horizon(t3, consts, 1.0)));
  CHECK(std::isinf(horizon(t4, consts, 1.0)));
  CHECK(std::isfinite(horizon(t5, consts, 1.0)));

  // Families 2 and 3 grow without a horizon; family 4 is constant in time.
  const double xi0 = 0.5;
  double prev2 = 0.0;
  double prev3 = 0.0;
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    const double e2 = envelope_at(t2, consts, xi0, t);
    const double e3 = envelope_at(t3, consts, xi0, t);
    CHECK(e2 > prev2);
    CHECK(e3 > prev3);
    prev2 = e2;
    prev3 = e3;
    CHECK(envelope_at(t4, consts, xi0, t) == xi0 + 0.6);
  }

  // Family-5 guaranteed radius is the linear-in-time weight itself.
  CHECK(sigma_index_at(t5, consts, xi0, 0.25) == doctest::Approx(0.03 * 0.25).epsilon(1e-15));
  // Family-4 radius is time independent.
  CHECK(sigma_index_at(t4, consts, 0.2, 0.0) == sigma_index_at(t4, consts, 0.2, 5.0));
}

TEST_CASE("certification verdicts and precedence") {
  BoundConstants consts;
  const TheoremSpec thm4{Thm4Params{1.0, 0.1, 0.1}};  // envelope = xi0 + 0.6, no horizon

  SUBCASE("certified when every sample stays inside the envelope") {
    const RunSeries run = series_from({functional_sample(0.0, 0.5),
                                       functional_sample(0.1, 0.8),
                                       functional_sample(0.2, 1.05)});
    const BoundReport rep = certify(run, thm4, consts);
    CHECK(rep.verdict == Verdict::certified_within_envelope);
    CHECK(rep.theorem == 4);
    CHECK(rep.xi0 == 0.5);
    CHECK(std::isinf(rep.t_star));
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[2].envelope == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(rep.min_margin == doctest::Approx(1.1 - 1.05).epsilon(1e-12));
    CHECK(rep.norm_bound_final == doctest::Approx(std::sqrt(1.1)).epsilon(1e-15));
    CHECK(rep.sigma_index_final ==
          doctest::Approx(0.1 * std::exp(-0.5 / 0.2 - 3.0)).epsilon(1e-14));
    CHECK(verdict_name(rep.verdict) == "certified-within-envelope");
  }

  SUBCASE("one sample above the envelope flips the verdict") {
    const RunSeries run = series_from({functional_sample(0.0, 0.5),
                                       functional_sample(0.1, 1.2),
                                       functional_sample(0.2, 0.9)});
    const BoundReport rep = certify(run, thm4, consts);
    CHECK(rep.verdict == Verdict::envelope_violated);
    CHECK(rep.min_margin == doctest::Approx(1.1 - 1.2).epsilon(1e-12));
  }

  SUBCASE("a blow-up outranks a violated envelope") {
    RunSeries run = series_from({functional_sample(0.0, 0.5), functional_sample(0.1, 1.2)});
    run.blew_up = true;
    CHECK(certify(run, thm4, consts).verdict == Verdict::integration_failed);
  }

  SUBCASE("samples past a finite horizon") {
    const TheoremSpec thm1{Thm1Params{0.5, 1.0, 0.1}};
    const double t_star = horizon(thm1, consts, 1.0);
    REQUIRE(std::isfinite(t_star));

    // In-domain rows fine, later samples beyond t*: horizon-exceeded, and the
    // out-of-domain samples contribute no rows even with empty diagnostics.
    Sample past;
    past.t = t_star * 2.0;
    past.xi = 1.0;  // gevrey left NaN: must not matter out of domain
    const RunSeries run = series_from(
        {norm_sample(0.0, 1.0, 0.01), norm_sample(t_star * 0.5, 1.0, 0.02), past});
    const BoundReport rep = certify(run, thm1, consts);
    CHECK(rep.verdict == Verdict::horizon_exceeded);
    CHECK(rep.rows.size() == 2);
    CHECK(rep.min_margin > 0.0);

    // An envelope violation inside the domain still wins over the horizon.
    const RunSeries worse = series_from(
        {norm_sample(0.0, 1.0, 0.01), norm_sample(t_star * 0.5, 1.0, 1e9), past});
    CHECK(certify(worse, thm1, consts).verdict == Verdict::envelope_violated);

    // A series that never enters the domain has no margin at all.
    const RunSeries late = series_from(
        {norm_sample(t_star * 1.5, 1.0, 0.01), norm_sample(t_star * 2.0, 1.0, 0.01)});
    const BoundReport empty_rep = certify(late, thm1, consts);
    CHECK(empty_rep.verdict == Verdict::horizon_exceeded);
    CHECK(empty_rep.rows.empty());
    CHECK(std::isnan(empty_rep.min_margin));
  }

  SUBCASE("family 1 monitors the transformed norm against its envelope") {
    const TheoremSpec thm1{Thm1Params{0.5, 1.0, 0.1}};
    const double xi0 = 0.05;  // envelope starts at (A/xi0)^{-theta/(1+eps)} = 0.25
    const RunSeries run =
        series_from({norm_sample(0.0, xi0, 0.2), norm_sample(0.5, xi0, 0.22)});
    const BoundReport rep = certify(run, thm1, consts);
    CHECK(rep.verdict == Verdict::certified_within_envelope);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].monitored == 0.2);
    CHECK(rep.rows[0].envelope == doctest::Approx(envelope_at(thm1, consts, xi0, 0.0)));
    CHECK(rep.norm_bound_final == rep.rows[1].envelope);
  }

  SUBCASE("incomplete series raise diagnostics") {
    CHECK_THROWS_WITH_AS(certify(RunSeries{}, thm4, consts),
                         "report incomplete: series has no samples", diagnostic_error);

    Sample no_xi;
    no_xi.t = 0.0;
    CHECK_THROWS_AS(certify(series_from({no_xi}), thm4, consts), diagnostic_error);

    // Family 1 needs the transformed-norm column on every in-domain sample.
    const TheoremSpec thm1{Thm1Params{0.5, 1.0, 0.1}};
    const RunSeries missing =
        series_from({norm_sample(0.0, 1.0, 0.01), functional_sample(0.001, 1.0)});
    CHECK_THROWS_AS(certify(missing, thm1, consts), diagnostic_error);
  }

  SUBCASE("identical inputs give identical reports") {
    const RunSeries run = series_from({functional_sample(0.0, 0.5),
                                       functional_sample(0.1, 0.8)});
    const BoundReport a = certify(run, thm4, consts);
    const BoundReport b = certify(run, thm4, consts);
    CHECK(a.verdict == b.verdict);
    CHECK(a.xi0 == b.xi0);
    CHECK(a.min_margin == b.min_margin);
    CHECK(a.norm_bound_final == b.norm_bound_final);
    CHECK(a.sigma_index_final == b.sigma_index_final);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].monitored == b.rows[i].monitored);
      CHECK(a.rows[i].envelope == b.rows[i].envelope);
      CHECK(a.rows[i].margin == b.rows[i].margin);
    }
  }

  SUBCASE("family-specific notes") {
    const TheoremSpec thm3{Thm3Params{0.75, 1.6, 1.0, 0.1, 0.1}};
    const RunSeries run3 = series_from({norm_sample(0.0, 0.5, 0.1)});
    CHECK(certify(run3, thm3, consts).notes.size() == 1);

    const TheoremSpec low_s{Thm5Params{0.4, 1.0, 1.0, 0.03, 0.1, 0.03, 0.04, 0.03}};
    const RunSeries run5 = series_from({functional_sample(0.0, 0.01)});
    CHECK(certify(run5, low_s, consts).notes.size() == 1);

    const TheoremSpec crit_s{Thm5Params{0.5, 1.0, 1.0, 0.03, 0.1, 0.03, 0.04, 0.03}};
    CHECK(certify(run5, crit_s, consts).notes.empty());
  }
}
