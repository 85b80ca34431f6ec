#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gevrey/dynamics.hpp"

namespace gevrey {

// sqrt( sum over all nonzero integer modes of |n|^{-3-2s} ). Evaluated as a
// partial sum over the cube max|n_i| <= M plus an exact integral over the cube
// complement with a midpoint curvature correction; M doubles from 64 until
// |correction| <= tail_tol * partial, so the discarded residual (which the
// correction dominates) is below tail_tol relative. Throws config_error for
// s <= 0 (the sum diverges) and diagnostic_error if the tolerance is not
// reachable within the M cap.
double lattice_sum_cs(double s, double tail_tol);

struct Constant {
  double value = 0.0;
  std::string provenance;
};

// Table of the embedding constants C_q plus the lattice sums c_s, all with
// provenance strings. C_q values are configuration, never derived here; the
// default is deliberately conservative. Lattice sums are computed on first
// use (tail tolerance 1e-8) and cached. Every constant ever resolved is
// recorded for inclusion in reports.
class BoundConstants {
public:
  static constexpr double kDefaultEmbedding = 4.0;
  static constexpr double kLatticeTailTol = 1e-8;

  void set_embedding(double q, double value, const std::string& provenance);
  Constant embedding(double q) const;       // C_q
  double lattice_constant(double s) const;  // c_s

  // Constants resolved so far, keyed "C[q]" / "c_s[s]".
  const std::map<std::string, Constant>& resolved() const { return resolved_; }

private:
  std::map<double, Constant> embedding_;
  mutable std::map<double, double> lattice_cache_;
  mutable std::map<std::string, Constant> resolved_;
};

// Parameter sets of the five certified bound families. Members are the raw
// hypotheses; derived coefficients come from the thm*_ functions below.
struct Thm1Params {  // ideal flow, fixed Sobolev-weight transform
  double s = 0.5;      // (0, 1/2]
  double epsilon = 1;  // (0, 2)
  double beta = 0.1;   // > 0
};
struct Thm2Params {  // regularized ideal flow, composite-weight transform
  double zeta = 1.0 / 6.0;  // (0, 1/6]; the transform exponent is 2 - 6 zeta
  double s = 1.0;           // >= 5/6 + zeta
  double alpha = 1.0;
  double beta = 0.1;
};
struct Thm3Params {  // viscous regularized flow, s above critical
  double s = 0.75;       // (1/2, 1)
  double epsilon = 1.5;  // (1/s, 2)
  double alpha = 1.0;
  double beta = 0.1;
  double nu = 0.1;
};
struct Thm4Params {  // viscous regularized flow at critical s = 1/2
  double alpha = 1.0;
  double beta = 0.1;  // also capped by thm4_beta_cap
  double nu = 0.1;
};
struct Thm5Params {  // viscous regularized flow, linear-in-time weight
  double s = 0.5;      // (0, 1/2]
  double gamma = 1.0;  // (1/2, 1]
  double alpha = 1.0;
  double beta = 0.1;  // <= eta2 / alpha^2 required when s = 1/2
  double nu = 0.1;
  double eta1 = 0.0, eta2 = 0.0, eta3 = 0.0;  // positive, summing to nu
};

using TheoremSpec = std::variant<Thm1Params, Thm2Params, Thm3Params, Thm4Params, Thm5Params>;

// Strict hypothesis checks; parameters are never clamped. Thm4's beta cap
// depends on configured constants, hence the second argument.
void validate(const TheoremSpec& thm, const BoundConstants& consts);

int theorem_id(const TheoremSpec& thm);  // 1..5

// ---- family 1 ----------------------------------------------------------
double thm1_A(double beta, double epsilon);    // 2 beta eps / (2 - eps)
double thm1_theta(double epsilon);             // (1 + eps) / (2 - eps)
double thm1_Ds(double c_s, double C_one, double C_half);  // (c_s + C1 C1/2) / (4 pi^3)
// xi = ||w||_{1+s}^2 + A ||w||_{s+3/2}^{2-eps}
double thm1_xi(const Thm1Params& p, double w_norm_1ps, double w_norm_s32);
double thm1_t_star(double A, double theta, double Ds, double epsilon, double xi0);
// Envelope of ||w||_{s+3/2}: ((A/xi0)^theta - Ds theta t / A)^{-1/(1+eps)}.
// Throws horizon_error for t >= t_star.
double thm1_phi(double A, double theta, double Ds, double epsilon, double xi0, double t);
// Independent route: bound of xi itself, (xi0^{-theta} - Ds theta A^{-3/(2-eps)} t)^{-1/theta}.
// Satisfies (xi_bound/A)^{1/(2-eps)} == phi identically.
double thm1_xi_bound(double A, double theta, double Ds, double epsilon, double xi0, double t);
double thm1_sigma_index(double beta, double epsilon, double phi);  // beta phi^{-eps}

// ---- family 2 ----------------------------------------------------------
double thm2_epsilon(double zeta);  // 2 - 6 zeta
// D = beta C_{5/6+zeta} C_{1/3-zeta/2}^2 (pi alpha)^{-3} / 4
double thm2_D(double beta, double zeta, double alpha, double C_high, double C_low);
// xi = ||w||_0^2 + alpha^2 ||w||_s^2 + A |||w|||^{6 zeta}
double thm2_xi(const Thm2Params& p, double w_norm_0, double w_norm_s, double w_triple);
// zeta < 1/6: (xi0^{1/2-3zeta} + (1/2-3zeta) D t)^{1/(1/2-3zeta)}; at 1/6: xi0 e^{Dt}
double thm2_phi(double zeta, double D, double xi0, double t);
double thm2_norm_bound(double zeta, double A, double phi);           // (phi/A)^{1/(6 zeta)}
double thm2_sigma_index(double beta, double zeta, double A, double phi);  // beta (phi/A)^{1-1/(3 zeta)}

// ---- family 3 ----------------------------------------------------------
double thm3_kappa(double s, double epsilon);  // min(1, (s - 1/eps)/(1 - s))
// D = C1 C_{1-s} C_{s-1/2} (2 beta)^{1/eps} (2 pi)^{-3} / alpha
double thm3_D(double s, double epsilon, double alpha, double beta, double C_one,
              double C_one_minus_s, double C_s_minus_half);
// D' = D^{2/kappa} kappa / (2 alpha^2) * ((2-kappa)/(4 nu))^{(2-kappa)/kappa}
double thm3_Dprime(double D, double kappa, double alpha, double nu);
double thm3_xi(const Thm3Params& p, double w_norm_0, double w_norm_s, double w_triple);
double thm3_phi(double Dprime, double xi0, double t);                    // xi0 e^{D' t}
double thm3_norm_bound(double epsilon, double A, double phi);            // (phi/A)^{1/(2-eps)}
double thm3_sigma_index(double beta, double epsilon, double A, double phi);

// ---- family 4 ----------------------------------------------------------
double thm4_beta_cap(double nu, double alpha, double C_half, double C_one);
// xi = ||w||_0^2 + alpha^2 ||w||_{1/2}^2 + 4 beta ln(1 + |||w|||); bounded by xi0 + 6 beta.
double thm4_xi(const Thm4Params& p, double w_norm_0, double w_norm_half, double w_triple);
double thm4_norm_bound(double beta, double xi0);   // sqrt(xi0 + 6 beta)
double thm4_sigma_index(double beta, double xi0);  // beta exp(-xi0/(2 beta) - 3)

// ---- family 5 ----------------------------------------------------------
double thm5_Q1(double s, double beta, double alpha, double eta2);
double thm5_Q2(double gamma, double eta3, double C_gamma, double C_half, double C_one_minus_gamma);
double thm5_q(double beta, double eta1, double Q1);  // max(beta^2/(2 eta1), 2 Q1)
// xi = ||w||_gamma^2 + alpha^2 ||w||_{gamma+1/2}^2
double thm5_xi(const Thm5Params& p, double w_norm_gamma, double w_norm_gamma_half);
double thm5_t_star(double q, double Q2, double gamma, double xi0);
// e^{qt} (xi0^{-1/(gamma-1/2)} - (Q2/q)(e^{qt/(gamma-1/2)} - 1))^{-(gamma-1/2)};
// q = 0 takes the limit form. Throws horizon_error for t >= t_star.
double thm5_phi(double q, double Q2, double gamma, double xi0, double t);

// ---- certification ------------------------------------------------------

// Derived coefficients of the family, by name (echoed into reports).
std::map<std::string, double> derived_constants(const TheoremSpec& thm,
                                                const BoundConstants& consts);

// Which series column the family's envelope bounds: the transformed field's
// norm (gevrey column) for families 1-3, the functional xi for 4-5.
enum class MonitoredColumn { transformed_norm, functional };
MonitoredColumn monitored_column(const TheoremSpec& thm);

// Envelope of the monitored column at time t given the initial functional
// value xi0; horizon() is the end of its validity (+infinity when global).
double envelope_at(const TheoremSpec& thm, const BoundConstants& consts, double xi0, double t);
double horizon(const TheoremSpec& thm, const BoundConstants& consts, double xi0);
// Guaranteed analyticity-radius index at time t (the first index of the
// norm each family's conclusion controls).
double sigma_index_at(const TheoremSpec& thm, const BoundConstants& consts, double xi0, double t);

enum class Verdict {
  certified_within_envelope,
  envelope_violated,
  horizon_exceeded,
  integration_failed,
};
std::string verdict_name(Verdict v);

struct ReportRow {
  double t = 0.0;
  double monitored = 0.0;
  double envelope = 0.0;
  double margin = 0.0;  // envelope - monitored
};

struct BoundReport {
  int theorem = 0;
  Verdict verdict = Verdict::certified_within_envelope;
  double xi0 = 0.0;
  double t_star = 0.0;            // +infinity when the bound is global
  double min_margin = 0.0;        // over in-domain rows
  double norm_bound_final = 0.0;  // norm-level bound at the last in-domain sample
  double sigma_index_final = 0.0;
  std::vector<ReportRow> rows;  // samples with t < t_star only
  std::vector<std::string> notes;
};

// Margins of a recorded run against the family's envelope. Verdict
// precedence: integration-failed beats envelope-violated beats
// horizon-exceeded beats certified-within-envelope. Samples at or past
// t_star contribute no margin. Missing diagnostics (NaN in the monitored
// column or in the initial xi) raise diagnostic_error ("report incomplete").
// Deterministic: identical inputs give identical reports.
BoundReport certify(const RunSeries& run, const TheoremSpec& thm, const BoundConstants& consts);

}  // namespace gevrey
