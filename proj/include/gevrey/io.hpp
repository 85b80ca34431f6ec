#pragma once

#include <filesystem>
#include <string>

#include "gevrey/bounds.hpp"
#include "gevrey/dynamics.hpp"
#include "gevrey/lattice.hpp"

namespace gevrey {

// Field files are JSON: {"schema_version": 1, "truncation": N, "modes":
// [{"n": [n1, n2, n3], "c": [[re, im], [re, im], [re, im]]}, ...]}.
// save_field writes the canonical (first nonzero index positive) half of each
// conjugate pair, skipping exact-zero modes. load_field mirrors any entry
// whose conjugate is absent and then applies enforce_hermitian, so files may
// list either one or both halves of a pair.
SpectralField load_field(const std::filesystem::path& path);
void save_field(const SpectralField& f, const std::filesystem::path& path);

// Series files are space-delimited text with one header line and one row per
// sample. Fixed column order: t, energy, one sobolev[q] column per configured
// index, gevrey, psi, xi, envelope, margin. Values are printed with 17
// significant digits so doubles round-trip exactly; absent diagnostics are
// the literal "nan".
std::string format_series(const RunSeries& run);
void export_series(const RunSeries& run, const std::filesystem::path& path);

// Inverse of export_series. The header is authoritative for the Sobolev
// index list; a malformed header or a short row throws io_error with a
// "report incomplete" message naming what is missing. blew_up and
// last_valid_time are not stored in the series; callers restore them from
// the params file.
RunSeries import_series(const std::filesystem::path& path);

// Certification report as deterministic JSON: verdict, envelope inputs,
// per-sample margin rows, the echoed family parameters, derived constants,
// and every resolved constant with its provenance string. No timestamps or
// absolute paths, so equal inputs give byte-identical files.
std::string render_report(const BoundReport& report, const TheoremSpec& thm,
                          const BoundConstants& consts);
void write_report(const BoundReport& report, const TheoremSpec& thm, const BoundConstants& consts,
                  const std::filesystem::path& path);

// Sidecar written next to the series so a later verify can re-certify it
// without the original config: the theorem parameters, the embedding
// constants actually resolved (lattice sums are recomputed, they are
// deterministic), integrator flags, and the report filename.
void write_params(const TheoremSpec& thm, const BoundConstants& consts, const RunSeries& run,
                  const std::string& report_name, const std::filesystem::path& path);

struct VerifyInputs {
  TheoremSpec theorem;
  BoundConstants constants;
  bool blew_up = false;
  double last_valid_time = 0.0;
  std::string report_name = "report.json";
};

VerifyInputs read_params(const std::filesystem::path& path);

}  // namespace gevrey
