#include "gevrey/run.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <utility>
#include <variant>

#include "gevrey/errors.hpp"
#include "gevrey/ic.hpp"
#include "gevrey/io.hpp"
#include "gevrey/norms.hpp"

namespace gevrey {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// States with divergence above this are not accepted as solenoidal initial
// conditions; matches the integrator's own precondition.
constexpr double kDivergenceTol = 1e-10;

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::integration_failed:
      return 3;
    case Verdict::envelope_violated:
      return 2;
    case Verdict::horizon_exceeded:
    case Verdict::certified_within_envelope:
      return 0;
  }
  return 1;
}

void print_report_summary(const BoundReport& rep) {
  std::printf("theorem %d: %s\n", rep.theorem, verdict_name(rep.verdict).c_str());
  std::printf("  xi0 = %.17g\n", rep.xi0);
  if (std::isfinite(rep.t_star)) std::printf("  t_star = %.17g\n", rep.t_star);
  std::printf("  min_margin = %.17g\n", rep.min_margin);
  std::printf("  norm_bound_final = %.17g\n", rep.norm_bound_final);
  std::printf("  sigma_index_final = %.17g\n", rep.sigma_index_final);
}

}  // namespace

DiagnosticObserver::DiagnosticObserver(std::optional<TransformSpec> transform,
                                       std::optional<TheoremSpec> theorem,
                                       const BoundConstants* constants)
    : transform_(std::move(transform)), theorem_(std::move(theorem)), constants_(constants) {
  if (theorem_) {
    if (const auto* p5 = std::get_if<Thm5Params>(&*theorem_)) w_norm_index_ = p5->gamma;
  }
}

void DiagnosticObserver::observe(const SpectralField& v, Sample& sample) {
  try {
    sample.sigma_fit = fit_analyticity_radius(v).sigma_hat;
  } catch (const diagnostic_error&) {
    // too few populated shells to fit; the column stays NaN
  }
  if (!transform_) return;

  const TransformResult tr = v_to_w(v, *transform_, sample.t);
  sample.psi = tr.psi.psi;
  const SpectralField& w = tr.w;
  std::visit(overloaded{
                 [&](const FixedSobolev& fs) { sample.gevrey = sobolev_norm(w, fs.s + 1.5); },
                 [&](const VoigtTriple& vt) {
                   sample.gevrey = triple_norm(w, TripleNormParams{vt.alpha, vt.s});
                 },
                 [&](const CriticalShift&) { sample.gevrey = sobolev_norm(w, 0.0); },
                 [&](const LinearInTime&) { sample.gevrey = sobolev_norm(w, w_norm_index_); },
             },
             *transform_);
  if (!theorem_) return;

  sample.xi = std::visit(
      overloaded{
          [&](const Thm1Params& p) {
            return thm1_xi(p, sobolev_norm(w, 1.0 + p.s), sobolev_norm(w, p.s + 1.5));
          },
          [&](const Thm2Params& p) {
            return thm2_xi(p, sobolev_norm(w, 0.0), sobolev_norm(w, p.s),
                           triple_norm(w, TripleNormParams{p.alpha, p.s}));
          },
          [&](const Thm3Params& p) {
            return thm3_xi(p, sobolev_norm(w, 0.0), sobolev_norm(w, p.s),
                           triple_norm(w, TripleNormParams{p.alpha, p.s}));
          },
          [&](const Thm4Params& p) {
            return thm4_xi(p, sobolev_norm(w, 0.0), sobolev_norm(w, 0.5),
                           triple_norm(w, TripleNormParams{p.alpha, 0.5}));
          },
          [&](const Thm5Params& p) {
            return thm5_xi(p, sobolev_norm(w, p.gamma), sobolev_norm(w, p.gamma + 0.5));
          },
      },
      *theorem_);

  if (first_sample_) {
    first_sample_ = false;
    xi0_ = sample.xi;
    t_star_ = horizon(*theorem_, *constants_, xi0_);
  }
  if (sample.t < t_star_) {
    sample.envelope = envelope_at(*theorem_, *constants_, xi0_, sample.t);
    const double monitored = monitored_column(*theorem_) == MonitoredColumn::transformed_norm
                                 ? sample.gevrey
                                 : sample.xi;
    sample.margin = sample.envelope - monitored;
  }
}

RunOutcome run_pipeline(const RunConfig& cfg, const std::filesystem::path& out_dir, bool quiet) {
  auto lattice = std::make_shared<const Lattice>(cfg.truncation);
  validate(cfg.equation);
  if (cfg.transform) validate(*cfg.transform);

  SpectralField v0 = make_ic(cfg.ic, lattice);
  if (requires_solenoidal(cfg.equation) && max_divergence_ratio(v0) > kDivergenceTol) {
    throw config_error("initial condition is not solenoidal but the equation requires it");
  }

  if (cfg.theorem) validate(*cfg.theorem, cfg.constants);
  if (cfg.sigma_check) {
    if (!cfg.transform) throw config_error("sigma_check requires a transform");
    if (!beta_admissible(v0, *cfg.transform, *cfg.sigma_check)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", *cfg.sigma_check);
      throw config_error("transform beta is not admissible at sigma = " + std::string(buf));
    }
  }

  DiagnosticObserver observer(cfg.transform, cfg.theorem, &cfg.constants);
  RunOutcome out;
  out.series = integrate(v0, cfg.equation, cfg.time, cfg.sobolev_indices, &observer);

  std::filesystem::create_directories(out_dir);
  export_series(out.series, out_dir / cfg.output.series);
  if (!quiet) {
    std::printf("series: %s (%zu samples)\n", (out_dir / cfg.output.series).string().c_str(),
                out.series.samples.size());
  }

  if (cfg.theorem) {
    BoundReport report = certify(out.series, *cfg.theorem, cfg.constants);
    write_report(report, *cfg.theorem, cfg.constants, out_dir / cfg.output.report);
    write_params(*cfg.theorem, cfg.constants, out.series, cfg.output.report,
                 out_dir / cfg.output.params);
    if (!quiet) {
      std::printf("report: %s\n", (out_dir / cfg.output.report).string().c_str());
      print_report_summary(report);
    }
    out.exit_code = exit_code_for(report.verdict);
    out.report = std::move(report);
  } else if (out.series.blew_up) {
    out.exit_code = 3;
    if (!quiet) {
      std::printf("integration failed: non-finite state after t = %.17g\n",
                  out.series.last_valid_time);
    }
  } else if (!quiet) {
    std::printf("integration complete: t = %.17g\n", out.series.last_valid_time);
  }
  return out;
}

int verify_pipeline(const std::filesystem::path& series_path,
                    const std::filesystem::path& params_path,
                    const std::filesystem::path& out_dir, bool quiet) {
  const VerifyInputs inputs = read_params(params_path);
  RunSeries series = import_series(series_path);
  series.blew_up = inputs.blew_up;
  series.last_valid_time = inputs.last_valid_time;

  const BoundReport report = certify(series, inputs.theorem, inputs.constants);
  std::filesystem::create_directories(out_dir);
  write_report(report, inputs.theorem, inputs.constants, out_dir / inputs.report_name);
  if (!quiet) {
    std::printf("report: %s\n", (out_dir / inputs.report_name).string().c_str());
    print_report_summary(report);
  }
  return exit_code_for(report.verdict);
}

}  // namespace gevrey
