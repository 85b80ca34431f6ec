#include "gevrey/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "gevrey/kahan.hpp"

namespace gevrey {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string index_key(const char* prefix, double q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s[%.17g]", prefix, q);
  return buf;
}

// Recursive adaptive Simpson; tol is absolute. Smooth integrands here, so the
// depth cap is never the binding constraint in practice.
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate_1d(const F& f, double a, double b) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = 1e-13 * (1.0 + std::abs(whole));
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = 0.5 * (1.0 - z);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[i] = w[n - 1 - i] = 1.0 / ((1.0 - z * z) * pp * pp);
  }
}

// G(p) = int_0^1 int_0^1 (1 + y^2 + z^2)^{-(p+2)/2} dy dz (smooth).
double face_gradient_integral(double p) {
  std::vector<double> x, w;
  gauss_legendre_01(48, x, w);
  detail::KahanSum sum;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      sum.add(w[i] * w[j] * std::pow(1.0 + x[i] * x[i] + x[j] * x[j], -0.5 * (p + 2.0)));
    }
  }
  return sum.value();
}

// Exact integral of |x|^{-p} over the complement of the cube [-a,a]^3,
// by inclusion-exclusion over the three slabs |x_i| > a.
double cube_complement_integral(double p, double a, double edge_integral,
                                double corner_integral) {
  const double scale = std::pow(a, 3.0 - p);
  const double face = 4.0 * kPi * scale / ((p - 2.0) * (p - 3.0));
  const double k_p = std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (p - 1.0)) - std::lgamma(0.5 * p));
  const double edge = 8.0 * k_p * scale / (p - 3.0) * edge_integral;
  const double corner = 8.0 * scale * corner_integral;
  return 3.0 * face - 3.0 * edge + corner;
}

double octant_partial_sum(int cutoff, double p) {
  detail::KahanSum sum;
  for (int i = 0; i <= cutoff; ++i) {
    for (int j = i; j <= cutoff; ++j) {
      for (int k = j; k <= cutoff; ++k) {
        if (k == 0) continue;  // skips only (0,0,0)
        const double n2 = double(i) * i + double(j) * j + double(k) * k;
        int perms = 6;
        if (i == j && j == k) {
          perms = 1;
        } else if (i == j || j == k) {
          perms = 3;
        }
        const int signs = 1 << ((i != 0) + (j != 0) + (k != 0));
        sum.add(perms * signs * std::pow(n2, -0.5 * p));
      }
    }
  }
  return sum.value();
}

}  // namespace

double lattice_sum_cs(double s, double tail_tol) {
  if (!(s > 0.0)) throw config_error("lattice sum diverges for s <= 0");
  if (!(tail_tol > 0.0)) throw config_error("lattice sum: tail tolerance must be > 0");
  const double p = 3.0 + 2.0 * s;
  const double edge_integral =
      integrate_1d([p](double t) { return std::pow(std::sin(t), p - 3.0); }, 0.0, kPi / 4.0);
  const double corner_integral =
      6.0 / ((p - 3.0) * (p - 2.0)) *
      integrate_1d(
          [p](double t) {
            const double sn = std::sin(t);
            return std::pow(sn / std::sqrt(1.0 + sn * sn), p - 2.0);
          },
          0.0, kPi / 4.0);
  const double grad = face_gradient_integral(p);

  for (int cutoff = 64; cutoff <= 4096; cutoff *= 2) {
    const double partial = octant_partial_sum(cutoff, p);
    const double a = cutoff + 0.5;
    const double integral = cube_complement_integral(p, a, edge_integral, corner_integral);
    // Midpoint-rule curvature correction of the cell-by-cell approximation;
    // it also dominates the remaining error, so it doubles as the stopping
    // control.
    const double correction = p * std::pow(a, 1.0 - p) * grad;
    if (std::abs(correction) <= tail_tol * partial) {
      return std::sqrt(partial + integral - correction);
    }
  }
  throw diagnostic_error("lattice sum: tail tolerance not reachable within the cutoff cap");
}

void BoundConstants::set_embedding(double q, double value, const std::string& provenance) {
  if (!(value > 0.0)) throw config_error("embedding constant must be > 0");
  if (provenance.empty()) throw config_error("embedding constant needs a provenance string");
  embedding_[q] = Constant{value, provenance};
}

Constant BoundConstants::embedding(double q) const {
  Constant c{kDefaultEmbedding, "conservative configured default"};
  if (const auto it = embedding_.find(q); it != embedding_.end()) c = it->second;
  resolved_[index_key("C", q)] = c;
  return c;
}

double BoundConstants::lattice_constant(double s) const {
  auto it = lattice_cache_.find(s);
  if (it == lattice_cache_.end()) {
    it = lattice_cache_.emplace(s, lattice_sum_cs(s, kLatticeTailTol)).first;
  }
  resolved_[index_key("c_s", s)] = Constant{it->second, "lattice sum, tail tolerance 1e-08"};
  return it->second;
}

void validate(const TheoremSpec& thm, const BoundConstants& consts) {
  const auto bad = [&](const std::string& what) {
    throw config_error("theorem " + std::to_string(theorem_id(thm)) + ": " + what);
  };
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if (!(p.beta > 0.0)) bad("beta must be > 0");
        if constexpr (std::is_same_v<T, Thm1Params>) {
          if (!(p.s > 0.0 && p.s <= 0.5)) bad("s must lie in (0, 1/2]");
          if (!(p.epsilon > 0.0 && p.epsilon < 2.0)) bad("epsilon must lie in (0, 2)");
        } else if constexpr (std::is_same_v<T, Thm2Params>) {
          if (!(p.zeta > 0.0 && p.zeta <= 1.0 / 6.0)) bad("zeta must lie in (0, 1/6]");
          if (!(p.s >= 5.0 / 6.0 + p.zeta)) bad("s must be >= 5/6 + zeta");
          if (!(p.alpha > 0.0)) bad("alpha must be > 0");
        } else if constexpr (std::is_same_v<T, Thm3Params>) {
          if (!(p.s > 0.5 && p.s < 1.0)) bad("s must lie in (1/2, 1)");
          if (!(p.epsilon > 1.0 / p.s && p.epsilon < 2.0)) bad("epsilon must lie in (1/s, 2)");
          if (!(p.alpha > 0.0)) bad("alpha must be > 0");
          if (!(p.nu > 0.0)) bad("nu must be > 0");
        } else if constexpr (std::is_same_v<T, Thm4Params>) {
          if (!(p.alpha > 0.0)) bad("alpha must be > 0");
          if (!(p.nu > 0.0)) bad("nu must be > 0");
          const double cap = thm4_beta_cap(p.nu, p.alpha, consts.embedding(0.5).value,
                                           consts.embedding(1.0).value);
          if (!(p.beta <= cap)) {
            bad("beta exceeds the viscosity cap " + std::to_string(cap));
          }
        } else {
          if (!(p.s > 0.0 && p.s <= 0.5)) bad("s must lie in (0, 1/2]");
          if (!(p.gamma > 0.5 && p.gamma <= 1.0)) bad("gamma must lie in (1/2, 1]");
          if (!(p.alpha > 0.0)) bad("alpha must be > 0");
          if (!(p.nu > 0.0)) bad("nu must be > 0");
          if (!(p.eta1 > 0.0 && p.eta2 > 0.0 && p.eta3 > 0.0)) bad("all eta must be > 0");
          if (std::abs(p.eta1 + p.eta2 + p.eta3 - p.nu) > 1e-12 * p.nu) {
            bad("eta1 + eta2 + eta3 must equal nu");
          }
          if (p.s == 0.5 && !(p.beta <= p.eta2 / (p.alpha * p.alpha))) {
            bad("at s = 1/2, beta must be <= eta2 / alpha^2");
          }
        }
      },
      thm);
}

int theorem_id(const TheoremSpec& thm) {
  return 1 + static_cast<int>(thm.index());
}

// ---- family 1 ----------------------------------------------------------

double thm1_A(double beta, double epsilon) { return 2.0 * beta * epsilon / (2.0 - epsilon); }

double thm1_theta(double epsilon) { return (1.0 + epsilon) / (2.0 - epsilon); }

double thm1_Ds(double c_s, double C_one, double C_half) {
  return (c_s + C_one * C_half) / (4.0 * kPi * kPi * kPi);
}

double thm1_xi(const Thm1Params& p, double w_norm_1ps, double w_norm_s32) {
  const double A = thm1_A(p.beta, p.epsilon);
  return w_norm_1ps * w_norm_1ps + A * std::pow(w_norm_s32, 2.0 - p.epsilon);
}

double thm1_t_star(double A, double theta, double Ds, double epsilon, double xi0) {
  return std::pow(A, 3.0 / (2.0 - epsilon)) * std::pow(xi0, -theta) / (Ds * theta);
}

double thm1_phi(double A, double theta, double Ds, double epsilon, double xi0, double t) {
  if (!(t < thm1_t_star(A, theta, Ds, epsilon, xi0))) {
    throw horizon_error("family-1 envelope is undefined at or past its horizon");
  }
  const double base = std::pow(A / xi0, theta) - Ds * theta * t / A;
  return std::pow(base, -1.0 / (1.0 + epsilon));
}

double thm1_xi_bound(double A, double theta, double Ds, double epsilon, double xi0, double t) {
  if (!(t < thm1_t_star(A, theta, Ds, epsilon, xi0))) {
    throw horizon_error("family-1 envelope is undefined at or past its horizon");
  }
  const double base = std::pow(xi0, -theta) - Ds * theta * std::pow(A, -3.0 / (2.0 - epsilon)) * t;
  return std::pow(base, -1.0 / theta);
}

double thm1_sigma_index(double beta, double epsilon, double phi) {
  return beta * std::pow(phi, -epsilon);
}

// ---- family 2 ----------------------------------------------------------

double thm2_epsilon(double zeta) { return 2.0 - 6.0 * zeta; }

double thm2_D(double beta, double zeta, double alpha, double C_high, double C_low) {
  (void)zeta;
  return beta * C_high * C_low * C_low * std::pow(kPi * alpha, -3.0) / 4.0;
}

double thm2_xi(const Thm2Params& p, double w_norm_0, double w_norm_s, double w_triple) {
  const double A = thm1_A(p.beta, thm2_epsilon(p.zeta));
  return w_norm_0 * w_norm_0 + p.alpha * p.alpha * w_norm_s * w_norm_s +
         A * std::pow(w_triple, 6.0 * p.zeta);
}

double thm2_phi(double zeta, double D, double xi0, double t) {
  if (zeta == 1.0 / 6.0) return xi0 * std::exp(D * t);
  const double d = 0.5 - 3.0 * zeta;
  return std::pow(std::pow(xi0, d) + d * D * t, 1.0 / d);
}

double thm2_norm_bound(double zeta, double A, double phi) {
  return std::pow(phi / A, 1.0 / (6.0 * zeta));
}

double thm2_sigma_index(double beta, double zeta, double A, double phi) {
  return beta * std::pow(phi / A, 1.0 - 1.0 / (3.0 * zeta));
}

// ---- family 3 ----------------------------------------------------------

double thm3_kappa(double s, double epsilon) {
  return std::min(1.0, (s - 1.0 / epsilon) / (1.0 - s));
}

double thm3_D(double s, double epsilon, double alpha, double beta, double C_one,
              double C_one_minus_s, double C_s_minus_half) {
  (void)s;
  return C_one * C_one_minus_s * C_s_minus_half * std::pow(2.0 * beta, 1.0 / epsilon) /
         (8.0 * kPi * kPi * kPi * alpha);
}

double thm3_Dprime(double D, double kappa, double alpha, double nu) {
  return std::pow(D, 2.0 / kappa) * kappa / (2.0 * alpha * alpha) *
         std::pow((2.0 - kappa) / (4.0 * nu), (2.0 - kappa) / kappa);
}

double thm3_xi(const Thm3Params& p, double w_norm_0, double w_norm_s, double w_triple) {
  const double A = thm1_A(p.beta, p.epsilon);
  return w_norm_0 * w_norm_0 + p.alpha * p.alpha * w_norm_s * w_norm_s +
         A * std::pow(w_triple, 2.0 - p.epsilon);
}

double thm3_phi(double Dprime, double xi0, double t) { return xi0 * std::exp(Dprime * t); }

double thm3_norm_bound(double epsilon, double A, double phi) {
  return std::pow(phi / A, 1.0 / (2.0 - epsilon));
}

double thm3_sigma_index(double beta, double epsilon, double A, double phi) {
  return beta * std::pow(phi / A, -epsilon / (2.0 - epsilon));
}

// ---- family 4 ----------------------------------------------------------

double thm4_beta_cap(double nu, double alpha, double C_half, double C_one) {
  const double two_pi_6 = std::pow(2.0 * kPi, 6.0);
  const double a2 = alpha * alpha;
  return 2.0 * nu * nu * two_pi_6 * a2 * a2 / (C_half * C_half * C_one * C_one);
}

double thm4_xi(const Thm4Params& p, double w_norm_0, double w_norm_half, double w_triple) {
  return w_norm_0 * w_norm_0 + p.alpha * p.alpha * w_norm_half * w_norm_half +
         4.0 * p.beta * std::log1p(w_triple);
}

double thm4_norm_bound(double beta, double xi0) { return std::sqrt(xi0 + 6.0 * beta); }

double thm4_sigma_index(double beta, double xi0) {
  return beta * std::exp(-xi0 / (2.0 * beta) - 3.0);
}

// ---- family 5 ----------------------------------------------------------

double thm5_Q1(double s, double beta, double alpha, double eta2) {
  if (beta <= eta2 / (alpha * alpha)) return 0.0;
  return beta * (1.0 - 2.0 * s) / (2.0 * (1.0 - s)) *
         std::pow(beta * alpha * alpha / (2.0 * eta2 * (1.0 - s)), 1.0 / (1.0 - 2.0 * s));
}

double thm5_Q2(double gamma, double eta3, double C_gamma, double C_half,
               double C_one_minus_gamma) {
  const double two_pi_3 = 8.0 * kPi * kPi * kPi;
  return 2.0 * (2.0 * gamma - 1.0) *
         std::pow((5.0 - 2.0 * gamma) / eta3, (5.0 - 2.0 * gamma) / (2.0 * gamma - 1.0)) *
         std::pow(C_gamma * C_half * C_one_minus_gamma / (4.0 * two_pi_3),
                  4.0 / (2.0 * gamma - 1.0));
}

double thm5_q(double beta, double eta1, double Q1) {
  return std::max(beta * beta / (2.0 * eta1), 2.0 * Q1);
}

double thm5_xi(const Thm5Params& p, double w_norm_gamma, double w_norm_gamma_half) {
  return w_norm_gamma * w_norm_gamma +
         p.alpha * p.alpha * w_norm_gamma_half * w_norm_gamma_half;
}

double thm5_t_star(double q, double Q2, double gamma, double xi0) {
  const double g = gamma - 0.5;
  const double denom = Q2 * std::pow(xi0, 1.0 / g);
  if (q == 0.0) return g / denom;
  return (2.0 * gamma - 1.0) / (2.0 * q) * std::log1p(q / denom);
}

double thm5_phi(double q, double Q2, double gamma, double xi0, double t) {
  if (!(t < thm5_t_star(q, Q2, gamma, xi0))) {
    throw horizon_error("family-5 envelope is undefined at or past its horizon");
  }
  const double g = gamma - 0.5;
  if (q == 0.0) return std::pow(std::pow(xi0, -1.0 / g) - Q2 * t / g, -g);
  const double inner = std::pow(xi0, -1.0 / g) - (Q2 / q) * std::expm1(q * t / g);
  return std::exp(q * t) * std::pow(inner, -g);
}

// ---- certification ------------------------------------------------------

namespace {

struct EnvelopeCoeffs {
  double A = 0.0;
  double theta = 0.0;
  double D = 0.0;  // family 1: D_s; 2: D; 3: D'; 5: q. Unused by 4.
  double Q2 = 0.0;
};

EnvelopeCoeffs coeffs_for(const TheoremSpec& thm, const BoundConstants& c) {
  EnvelopeCoeffs out;
  if (const auto* p1 = std::get_if<Thm1Params>(&thm)) {
    out.A = thm1_A(p1->beta, p1->epsilon);
    out.theta = thm1_theta(p1->epsilon);
    out.D = thm1_Ds(c.lattice_constant(p1->s), c.embedding(1.0).value, c.embedding(0.5).value);
  } else if (const auto* p2 = std::get_if<Thm2Params>(&thm)) {
    out.A = thm1_A(p2->beta, thm2_epsilon(p2->zeta));
    out.D = thm2_D(p2->beta, p2->zeta, p2->alpha, c.embedding(5.0 / 6.0 + p2->zeta).value,
                   c.embedding(1.0 / 3.0 - p2->zeta / 2.0).value);
  } else if (const auto* p3 = std::get_if<Thm3Params>(&thm)) {
    out.A = thm1_A(p3->beta, p3->epsilon);
    const double D = thm3_D(p3->s, p3->epsilon, p3->alpha, p3->beta, c.embedding(1.0).value,
                            c.embedding(1.0 - p3->s).value, c.embedding(p3->s - 0.5).value);
    out.D = thm3_Dprime(D, thm3_kappa(p3->s, p3->epsilon), p3->alpha, p3->nu);
  } else if (const auto* p5 = std::get_if<Thm5Params>(&thm)) {
    const double Q1 = thm5_Q1(p5->s, p5->beta, p5->alpha, p5->eta2);
    out.Q2 = thm5_Q2(p5->gamma, p5->eta3, c.embedding(p5->gamma).value, c.embedding(0.5).value,
                     c.embedding(1.0 - p5->gamma).value);
    out.D = thm5_q(p5->beta, p5->eta1, Q1);
  }
  return out;
}

}  // namespace

std::map<std::string, double> derived_constants(const TheoremSpec& thm,
                                                const BoundConstants& consts) {
  std::map<std::string, double> out;
  const EnvelopeCoeffs k = coeffs_for(thm, consts);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Thm1Params>) {
          out["A"] = k.A;
          out["theta"] = k.theta;
          out["D_s"] = k.D;
        } else if constexpr (std::is_same_v<T, Thm2Params>) {
          out["epsilon"] = thm2_epsilon(p.zeta);
          out["A"] = k.A;
          out["D"] = k.D;
        } else if constexpr (std::is_same_v<T, Thm3Params>) {
          out["A"] = k.A;
          out["kappa"] = thm3_kappa(p.s, p.epsilon);
          out["D_prime"] = k.D;
        } else if constexpr (std::is_same_v<T, Thm4Params>) {
          out["beta_cap"] = thm4_beta_cap(p.nu, p.alpha, consts.embedding(0.5).value,
                                          consts.embedding(1.0).value);
        } else {
          out["Q1"] = thm5_Q1(p.s, p.beta, p.alpha, p.eta2);
          out["Q2"] = k.Q2;
          out["q"] = k.D;
        }
      },
      thm);
  return out;
}

MonitoredColumn monitored_column(const TheoremSpec& thm) {
  return theorem_id(thm) <= 3 ? MonitoredColumn::transformed_norm : MonitoredColumn::functional;
}

double envelope_at(const TheoremSpec& thm, const BoundConstants& consts, double xi0, double t) {
  const EnvelopeCoeffs k = coeffs_for(thm, consts);
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Thm1Params>) {
          return thm1_phi(k.A, k.theta, k.D, p.epsilon, xi0, t);
        } else if constexpr (std::is_same_v<T, Thm2Params>) {
          return thm2_norm_bound(p.zeta, k.A, thm2_phi(p.zeta, k.D, xi0, t));
        } else if constexpr (std::is_same_v<T, Thm3Params>) {
          return thm3_norm_bound(p.epsilon, k.A, thm3_phi(k.D, xi0, t));
        } else if constexpr (std::is_same_v<T, Thm4Params>) {
          return xi0 + 6.0 * p.beta;
        } else {
          return thm5_phi(k.D, k.Q2, p.gamma, xi0, t);
        }
      },
      thm);
}

double horizon(const TheoremSpec& thm, const BoundConstants& consts, double xi0) {
  const EnvelopeCoeffs k = coeffs_for(thm, consts);
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Thm1Params>) {
          return thm1_t_star(k.A, k.theta, k.D, p.epsilon, xi0);
        } else if constexpr (std::is_same_v<T, Thm5Params>) {
          return thm5_t_star(k.D, k.Q2, p.gamma, xi0);
        } else {
          (void)p;
          return kInf;
        }
      },
      thm);
}

double sigma_index_at(const TheoremSpec& thm, const BoundConstants& consts, double xi0, double t) {
  const EnvelopeCoeffs k = coeffs_for(thm, consts);
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Thm1Params>) {
          return thm1_sigma_index(p.beta, p.epsilon,
                                  thm1_phi(k.A, k.theta, k.D, p.epsilon, xi0, t));
        } else if constexpr (std::is_same_v<T, Thm2Params>) {
          return thm2_sigma_index(p.beta, p.zeta, k.A, thm2_phi(p.zeta, k.D, xi0, t));
        } else if constexpr (std::is_same_v<T, Thm3Params>) {
          return thm3_sigma_index(p.beta, p.epsilon, k.A, thm3_phi(k.D, xi0, t));
        } else if constexpr (std::is_same_v<T, Thm4Params>) {
          return thm4_sigma_index(p.beta, xi0);
        } else {
          return p.beta * t;
        }
      },
      thm);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified_within_envelope:
      return "certified-within-envelope";
    case Verdict::envelope_violated:
      return "envelope-violated";
    case Verdict::horizon_exceeded:
      return "horizon-exceeded";
    case Verdict::integration_failed:
      return "integration-failed";
  }
  return "unknown";
}

BoundReport certify(const RunSeries& run, const TheoremSpec& thm, const BoundConstants& consts) {
  validate(thm, consts);
  if (run.samples.empty()) {
    throw diagnostic_error("report incomplete: series has no samples");
  }
  BoundReport rep;
  rep.theorem = theorem_id(thm);
  rep.xi0 = run.samples.front().xi;
  if (std::isnan(rep.xi0)) {
    throw diagnostic_error("report incomplete: initial functional value missing");
  }
  rep.t_star = horizon(thm, consts, rep.xi0);

  const bool use_norm = monitored_column(thm) == MonitoredColumn::transformed_norm;
  bool past_horizon = false;
  bool violated = false;
  double min_margin = kInf;
  for (const Sample& s : run.samples) {
    if (!(s.t < rep.t_star)) {
      past_horizon = true;
      continue;
    }
    const double monitored = use_norm ? s.gevrey : s.xi;
    if (std::isnan(monitored)) {
      throw diagnostic_error("report incomplete: monitored diagnostic missing at t = " +
                             std::to_string(s.t));
    }
    ReportRow row;
    row.t = s.t;
    row.monitored = monitored;
    row.envelope = envelope_at(thm, consts, rep.xi0, s.t);
    row.margin = row.envelope - row.monitored;
    if (row.margin < 0.0) violated = true;
    min_margin = std::min(min_margin, row.margin);
    rep.rows.push_back(row);
  }
  rep.min_margin = rep.rows.empty() ? std::numeric_limits<double>::quiet_NaN() : min_margin;

  if (!rep.rows.empty()) {
    const double t_last = rep.rows.back().t;
    rep.sigma_index_final = sigma_index_at(thm, consts, rep.xi0, t_last);
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Thm4Params>) {
            rep.norm_bound_final = thm4_norm_bound(p.beta, rep.xi0);
          } else if constexpr (std::is_same_v<T, Thm5Params>) {
            rep.norm_bound_final = std::sqrt(rep.rows.back().envelope);
          } else {
            (void)p;
            rep.norm_bound_final = rep.rows.back().envelope;
          }
        },
        thm);
  }

  if (run.blew_up) {
    rep.verdict = Verdict::integration_failed;
  } else if (violated) {
    rep.verdict = Verdict::envelope_violated;
  } else if (past_horizon) {
    rep.verdict = Verdict::horizon_exceeded;
  } else {
    rep.verdict = Verdict::certified_within_envelope;
  }

  if (const auto* p3 = std::get_if<Thm3Params>(&thm)) {
    (void)p3;
    rep.notes.push_back("monitored norm is the composite weighted norm of the transformed field");
  }
  if (const auto* p5 = std::get_if<Thm5Params>(&thm); p5 != nullptr && p5->s < 0.5) {
    rep.notes.push_back(
        "s < 1/2: the certified functional uses indices (gamma, gamma + 1/2) independent of s");
  }
  return rep;
}

}  // namespace gevrey
