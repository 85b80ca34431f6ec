#include <cstdint>
#include <cstdio>
#include <exception>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gevrey/bounds.hpp"
#include "gevrey/config.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/ic.hpp"
#include "gevrey/norms.hpp"
#include "gevrey/run.hpp"
#include "gevrey/xform.hpp"

namespace {

int run_psi(const gevrey::RunConfig& cfg, double t) {
  if (!cfg.transform) throw gevrey::config_error("psi needs a transform block in the config");
  auto lattice = std::make_shared<const gevrey::Lattice>(cfg.truncation);
  const gevrey::SpectralField v = gevrey::make_ic(cfg.ic, lattice);
  const gevrey::PsiSolution sol = gevrey::transform_psi(v, *cfg.transform, t);
  std::printf("psi = %.17g\n", sol.psi);
  std::printf("residual = %.17g\n", sol.residual);
  std::printf("iterations = %d\n", sol.iterations);
  return 0;
}

int run_norms(const gevrey::RunConfig& cfg) {
  auto lattice = std::make_shared<const gevrey::Lattice>(cfg.truncation);
  const gevrey::SpectralField v = gevrey::make_ic(cfg.ic, lattice);
  std::printf("energy = %.17g\n", gevrey::conserved_quantity(v, gevrey::Euler{}));
  std::vector<double> indices = cfg.sobolev_indices;
  if (indices.empty()) indices = {0.0, 0.5, 1.0, 1.5, 2.0};
  for (double q : indices) {
    std::printf("sobolev[%.17g] = %.17g\n", q, gevrey::sobolev_norm(v, q));
  }
  try {
    const gevrey::RadiusFit fit = gevrey::fit_analyticity_radius(v);
    std::printf("sigma_fit = %.17g\n", fit.sigma_hat);
    std::printf("fit_r2 = %.17g\n", fit.r2);
  } catch (const gevrey::diagnostic_error& e) {
    std::printf("sigma_fit = nan (%s)\n", e.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin-truncated flows with certified analyticity envelopes"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string series_path;
  std::string params_path;
  std::uint64_t seed = 0;
  bool quiet = false;
  double eval_time = 0.0;
  double cs_index = 0.0;
  double tail_tol = 1e-8;

  CLI::App* run_cmd = app.add_subcommand("run", "integrate a configured flow, export the series, "
                                                "and certify the envelope when a theorem is set");
  run_cmd->add_option("--config", config_path, "JSON run config")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "output directory (default: current)");
  CLI::Option* run_seed = run_cmd->add_option("--seed", seed, "override the random-ic seed");
  run_cmd->add_flag("--quiet", quiet, "suppress the summary on stdout");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "re-certify an exported series against its params sidecar");
  verify_cmd->add_option("--series", series_path, "series file from a previous run")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--params", params_path, "params sidecar from the same run")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--out", out_dir, "output directory (default: current)");
  verify_cmd->add_flag("--quiet", quiet, "suppress the summary on stdout");

  CLI::App* psi_cmd =
      app.add_subcommand("psi", "solve the transform exponent for the configured field");
  psi_cmd->add_option("--config", config_path, "JSON run config with a transform block")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::Option* psi_seed = psi_cmd->add_option("--seed", seed, "override the random-ic seed");
  psi_cmd->add_option("--t", eval_time, "evaluation time for time-linked transforms (default 0)");

  CLI::App* norms_cmd =
      app.add_subcommand("norms", "print the norm table of the configured field");
  norms_cmd->add_option("--config", config_path, "JSON run config")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::Option* norms_seed = norms_cmd->add_option("--seed", seed, "override the random-ic seed");

  CLI::App* cs_cmd = app.add_subcommand("cs", "print the lattice embedding sum at index s");
  cs_cmd->add_option("s", cs_index, "norm index, must be > 0")->required();
  cs_cmd->add_option("--tail-tol", tail_tol, "relative tail tolerance (default 1e-8)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      gevrey::RunConfig cfg = gevrey::load_config(config_path);
      if (run_seed->count() > 0) gevrey::apply_seed_override(cfg, seed);
      return gevrey::run_pipeline(cfg, out_dir, quiet).exit_code;
    }
    if (verify_cmd->parsed()) {
      return gevrey::verify_pipeline(series_path, params_path, out_dir, quiet);
    }
    if (psi_cmd->parsed()) {
      gevrey::RunConfig cfg = gevrey::load_config(config_path);
      if (psi_seed->count() > 0) gevrey::apply_seed_override(cfg, seed);
      return run_psi(cfg, eval_time);
    }
    if (norms_cmd->parsed()) {
      gevrey::RunConfig cfg = gevrey::load_config(config_path);
      if (norms_seed->count() > 0) gevrey::apply_seed_override(cfg, seed);
      return run_norms(cfg);
    }
    if (cs_cmd->parsed()) {
      std::printf("c_s[%.17g] = %.17g\n", cs_index, gevrey::lattice_sum_cs(cs_index, tail_tol));
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
