#pragma once

#include <filesystem>
#include <optional>

#include "gevrey/bounds.hpp"
#include "gevrey/config.hpp"
#include "gevrey/dynamics.hpp"
#include "gevrey/xform.hpp"

namespace gevrey {

// Fills the diagnostic columns of each sample: psi and the transformed-field
// norm (gevrey column) when a transform is configured, the family functional
// (xi), envelope, and margin when a theorem is configured, and the fitted
// analyticity radius (in memory only, never exported). The envelope anchors
// at the first observed xi; envelope and margin stay NaN at or past the
// horizon. All values are recomputed by certify from the monitored columns,
// so a tampered series cannot inherit a clean margin.
class DiagnosticObserver : public SampleObserver {
 public:
  DiagnosticObserver(std::optional<TransformSpec> transform, std::optional<TheoremSpec> theorem,
                     const BoundConstants* constants);

  void observe(const SpectralField& v, Sample& sample) override;

 private:
  std::optional<TransformSpec> transform_;
  std::optional<TheoremSpec> theorem_;
  const BoundConstants* constants_;
  double w_norm_index_ = 0.0;
  bool first_sample_ = true;
  double xi0_ = 0.0;
  double t_star_ = 0.0;
};

struct RunOutcome {
  RunSeries series;
  std::optional<BoundReport> report;
  int exit_code = 0;
};

// Full pipeline: build lattice and initial state, enforce the configured
// hypotheses (strictly; nothing is clamped), integrate with diagnostics,
// export the series, and when a theorem is configured certify it and write
// the report plus the params sidecar into out_dir. Exit code 0 for
// certified-within-envelope, no-theorem runs, and horizon-exceeded; 2 for
// envelope-violated; 3 when integration blew up. Config, hypothesis, and IO
// failures throw instead (the CLI maps them to exit 1).
RunOutcome run_pipeline(const RunConfig& cfg, const std::filesystem::path& out_dir, bool quiet);

// Re-certifies an exported series against its params sidecar and writes the
// report (named by the sidecar) into out_dir. Byte-identical to the run's
// report for untouched inputs. Returns the same exit-code mapping as run.
int verify_pipeline(const std::filesystem::path& series_path,
                    const std::filesystem::path& params_path,
                    const std::filesystem::path& out_dir, bool quiet);

}  // namespace gevrey
