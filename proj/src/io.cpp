#include "gevrey/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gevrey/errors.hpp"

namespace gevrey {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("failed reading " + path.string());
  return std::move(buf).str();
}

// Binary mode: the files are byte-level artifacts, no newline translation.
void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw io_error("failed writing " + path.string());
}

ordered_json parse_json(const std::string& text, const std::string& what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(what + ": " + e.what());
  }
}

void append_value(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, " %.17g", v);
  line += buf;
}

double parse_double_token(const std::string& token, const std::string& where) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw io_error("series value '" + token + "' " + where + " is not a number");
  }
  return v;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

// Family parameters as a flat JSON object, id first. Shared by the report
// and the params sidecar; theorem_from_json inverts it.
ordered_json params_json(const TheoremSpec& thm) {
  ordered_json j;
  if (const auto* p1 = std::get_if<Thm1Params>(&thm)) {
    j["id"] = 1;
    j["s"] = p1->s;
    j["epsilon"] = p1->epsilon;
    j["beta"] = p1->beta;
  } else if (const auto* p2 = std::get_if<Thm2Params>(&thm)) {
    j["id"] = 2;
    j["zeta"] = p2->zeta;
    j["s"] = p2->s;
    j["alpha"] = p2->alpha;
    j["beta"] = p2->beta;
  } else if (const auto* p3 = std::get_if<Thm3Params>(&thm)) {
    j["id"] = 3;
    j["s"] = p3->s;
    j["epsilon"] = p3->epsilon;
    j["alpha"] = p3->alpha;
    j["beta"] = p3->beta;
    j["nu"] = p3->nu;
  } else if (const auto* p4 = std::get_if<Thm4Params>(&thm)) {
    j["id"] = 4;
    j["alpha"] = p4->alpha;
    j["beta"] = p4->beta;
    j["nu"] = p4->nu;
  } else {
    const auto& p5 = std::get<Thm5Params>(thm);
    j["id"] = 5;
    j["s"] = p5.s;
    j["gamma"] = p5.gamma;
    j["alpha"] = p5.alpha;
    j["beta"] = p5.beta;
    j["nu"] = p5.nu;
    j["eta"] = {p5.eta1, p5.eta2, p5.eta3};
  }
  return j;
}

double field_double(const ordered_json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw io_error(ctx + ": missing numeric '" + key + "'");
  }
  return j[key].get<double>();
}

TheoremSpec theorem_from_json(const ordered_json& j) {
  const std::string ctx = "params theorem block";
  if (!j.contains("id") || !j["id"].is_number_integer()) {
    throw io_error(ctx + ": missing integer 'id'");
  }
  const int id = j["id"].get<int>();
  switch (id) {
    case 1:
      return Thm1Params{field_double(j, "s", ctx), field_double(j, "epsilon", ctx),
                        field_double(j, "beta", ctx)};
    case 2:
      return Thm2Params{field_double(j, "zeta", ctx), field_double(j, "s", ctx),
                        field_double(j, "alpha", ctx), field_double(j, "beta", ctx)};
    case 3:
      return Thm3Params{field_double(j, "s", ctx), field_double(j, "epsilon", ctx),
                        field_double(j, "alpha", ctx), field_double(j, "beta", ctx),
                        field_double(j, "nu", ctx)};
    case 4:
      return Thm4Params{field_double(j, "alpha", ctx), field_double(j, "beta", ctx),
                        field_double(j, "nu", ctx)};
    case 5: {
      if (!j.contains("eta") || !j["eta"].is_array() || j["eta"].size() != 3) {
        throw io_error(ctx + ": 'eta' must be an array of three numbers");
      }
      return Thm5Params{field_double(j, "s", ctx),
                        field_double(j, "gamma", ctx),
                        field_double(j, "alpha", ctx),
                        field_double(j, "beta", ctx),
                        field_double(j, "nu", ctx),
                        j["eta"][0].get<double>(),
                        j["eta"][1].get<double>(),
                        j["eta"][2].get<double>()};
    }
    default:
      throw io_error(ctx + ": unknown theorem id " + std::to_string(id));
  }
}

}  // namespace

SpectralField load_field(const std::filesystem::path& path) {
  const ordered_json j = parse_json(read_text(path), "field file " + path.string());
  const std::string ctx = "field file " + path.string();
  if (!j.contains("schema_version") || j["schema_version"] != 1) {
    throw io_error(ctx + ": schema_version must be 1");
  }
  if (!j.contains("truncation") || !j["truncation"].is_number_integer()) {
    throw io_error(ctx + ": missing integer 'truncation'");
  }
  const int trunc = j["truncation"].get<int>();
  if (trunc < 1) throw io_error(ctx + ": truncation must be >= 1");
  auto lattice = std::make_shared<const Lattice>(trunc);
  SpectralField f(lattice);
  if (!j.contains("modes") || !j["modes"].is_array()) {
    throw io_error(ctx + ": missing array 'modes'");
  }
  std::vector<bool> given(lattice->size(), false);
  std::vector<std::size_t> listed;
  for (const auto& entry : j["modes"]) {
    if (!entry.contains("n") || !entry["n"].is_array() || entry["n"].size() != 3 ||
        !entry.contains("c") || !entry["c"].is_array() || entry["c"].size() != 3) {
      throw io_error(ctx + ": each mode needs 'n' (3 ints) and 'c' (3 [re, im] pairs)");
    }
    Mode n;
    for (int d = 0; d < 3; ++d) {
      if (!entry["n"][d].is_number_integer()) throw io_error(ctx + ": mode indices must be integers");
      n[d] = entry["n"][d].get<int>();
    }
    std::size_t idx = 0;
    try {
      idx = lattice->index_of(n);
    } catch (const state_error&) {
      throw io_error(ctx + ": mode [" + std::to_string(n[0]) + ", " + std::to_string(n[1]) +
                     ", " + std::to_string(n[2]) + "] is outside the truncation");
    }
    for (int c = 0; c < 3; ++c) {
      const auto& pair = entry["c"][c];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw io_error(ctx + ": coefficient entries must be [re, im] number pairs");
      }
      f.coeff(idx, c) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    given[idx] = true;
    listed.push_back(idx);
  }
  // Files normally carry only the canonical half of each conjugate pair;
  // mirror those before the symmetry pass so it is a bitwise no-op for them.
  for (std::size_t idx : listed) {
    const std::size_t conj_idx = f.lattice().conjugate_index(idx);
    if (given[conj_idx]) continue;
    for (int c = 0; c < 3; ++c) f.coeff(conj_idx, c) = std::conj(f.coeff(idx, c));
    given[conj_idx] = true;
  }
  return enforce_hermitian(f);
}

void save_field(const SpectralField& f, const std::filesystem::path& path) {
  const Lattice& lat = f.lattice();
  ordered_json j;
  j["schema_version"] = 1;
  j["truncation"] = lat.truncation();
  auto modes = ordered_json::array();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (!lat.is_canonical(i)) continue;
    if (f.coeff_abs2(i) == 0.0) continue;
    const Mode& n = lat.mode(i);
    ordered_json entry;
    entry["n"] = {n[0], n[1], n[2]};
    auto comps = ordered_json::array();
    for (int c = 0; c < 3; ++c) {
      const Complex& z = f.coeff(i, c);
      comps.push_back({z.real(), z.imag()});
    }
    entry["c"] = comps;
    modes.push_back(std::move(entry));
  }
  j["modes"] = std::move(modes);
  write_text(path, j.dump(2) + "\n");
}

std::string format_series(const RunSeries& run) {
  std::string out = "t energy";
  for (double q : run.sobolev_indices) {
    char buf[48];
    std::snprintf(buf, sizeof buf, " sobolev[%.17g]", q);
    out += buf;
  }
  out += " gevrey psi xi envelope margin\n";
  for (const Sample& s : run.samples) {
    std::string line;
    append_value(line, s.t);
    append_value(line, s.energy);
    for (double v : s.sobolev) append_value(line, v);
    append_value(line, s.gevrey);
    append_value(line, s.psi);
    append_value(line, s.xi);
    append_value(line, s.envelope);
    append_value(line, s.margin);
    out += line.substr(1);
    out += '\n';
  }
  return out;
}

void export_series(const RunSeries& run, const std::filesystem::path& path) {
  write_text(path, format_series(run));
}

RunSeries import_series(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw io_error("report incomplete: series file " + path.string() + " is empty");
  }
  const std::vector<std::string> header = split_ws(line);
  static const char* kTail[] = {"gevrey", "psi", "xi", "envelope", "margin"};
  if (header.size() < 7) {
    throw io_error("report incomplete: series header has " + std::to_string(header.size()) +
                   " columns, expected at least 7");
  }
  if (header[0] != "t" || header[1] != "energy") {
    throw io_error("report incomplete: series header must start with 't energy'");
  }
  const std::size_t k = header.size() - 7;
  RunSeries run;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string& name = header[2 + i];
    if (name.rfind("sobolev[", 0) != 0 || name.back() != ']') {
      throw io_error("report incomplete: unexpected series header column '" + name + "'");
    }
    run.sobolev_indices.push_back(
        parse_double_token(name.substr(8, name.size() - 9), "in header column " + name));
  }
  for (std::size_t i = 0; i < 5; ++i) {
    if (header[2 + k + i] != kTail[i]) {
      throw io_error("report incomplete: series header missing column '" + std::string(kTail[i]) +
                     "'");
    }
  }
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::vector<std::string> tokens = split_ws(line);
    if (tokens.size() != header.size()) {
      throw io_error("report incomplete: series row " + std::to_string(row) + " has " +
                     std::to_string(tokens.size()) + " columns, expected " +
                     std::to_string(header.size()));
    }
    const std::string where = "at row " + std::to_string(row);
    Sample s;
    s.t = parse_double_token(tokens[0], where);
    s.energy = parse_double_token(tokens[1], where);
    s.sobolev.reserve(k);
    for (std::size_t i = 0; i < k; ++i) s.sobolev.push_back(parse_double_token(tokens[2 + i], where));
    s.gevrey = parse_double_token(tokens[2 + k], where);
    s.psi = parse_double_token(tokens[3 + k], where);
    s.xi = parse_double_token(tokens[4 + k], where);
    s.envelope = parse_double_token(tokens[5 + k], where);
    s.margin = parse_double_token(tokens[6 + k], where);
    run.samples.push_back(std::move(s));
  }
  run.blew_up = false;
  run.last_valid_time = run.samples.empty() ? 0.0 : run.samples.back().t;
  return run;
}

std::string render_report(const BoundReport& report, const TheoremSpec& thm,
                          const BoundConstants& consts) {
  ordered_json j;
  j["schema_version"] = 1;
  j["theorem"] = report.theorem;
  j["verdict"] = verdict_name(report.verdict);
  j["monitored"] =
      monitored_column(thm) == MonitoredColumn::transformed_norm ? "gevrey" : "xi";
  j["xi0"] = report.xi0;
  j["t_star"] = report.t_star;  // +inf serializes as null: the bound is global
  j["min_margin"] = report.min_margin;
  j["norm_bound_final"] = report.norm_bound_final;
  j["sigma_index_final"] = report.sigma_index_final;
  j["params"] = params_json(thm);
  j["derived"] = derived_constants(thm, consts);
  auto constants = ordered_json::array();
  for (const auto& [name, c] : consts.resolved()) {
    constants.push_back({{"name", name}, {"value", c.value}, {"provenance", c.provenance}});
  }
  j["constants"] = std::move(constants);
  j["notes"] = report.notes;
  auto samples = ordered_json::array();
  for (const ReportRow& r : report.rows) {
    samples.push_back(
        {{"t", r.t}, {"monitored", r.monitored}, {"envelope", r.envelope}, {"margin", r.margin}});
  }
  j["samples"] = std::move(samples);
  return j.dump(2) + "\n";
}

void write_report(const BoundReport& report, const TheoremSpec& thm, const BoundConstants& consts,
                  const std::filesystem::path& path) {
  write_text(path, render_report(report, thm, consts));
}

void write_params(const TheoremSpec& thm, const BoundConstants& consts, const RunSeries& run,
                  const std::string& report_name, const std::filesystem::path& path) {
  ordered_json j;
  j["schema_version"] = 1;
  j["theorem"] = params_json(thm);
  auto embedding = ordered_json::array();
  for (const auto& [name, c] : consts.resolved()) {
    if (name.rfind("C[", 0) != 0) continue;  // lattice sums are recomputed on verify
    embedding.push_back({{"q", std::strtod(name.c_str() + 2, nullptr)},
                         {"value", c.value},
                         {"provenance", c.provenance}});
  }
  j["constants"] = ordered_json{{"embedding", std::move(embedding)}};
  j["run"] = ordered_json{{"blew_up", run.blew_up}, {"last_valid_time", run.last_valid_time}};
  j["output"] = ordered_json{{"report", report_name}};
  write_text(path, j.dump(2) + "\n");
}

VerifyInputs read_params(const std::filesystem::path& path) {
  const std::string ctx = "params file " + path.string();
  const ordered_json j = parse_json(read_text(path), ctx);
  if (!j.contains("schema_version") || j["schema_version"] != 1) {
    throw io_error(ctx + ": schema_version must be 1");
  }
  if (!j.contains("theorem") || !j["theorem"].is_object()) {
    throw io_error(ctx + ": missing object 'theorem'");
  }
  VerifyInputs in{theorem_from_json(j["theorem"]), BoundConstants{}, false, 0.0, "report.json"};
  if (j.contains("constants") && j["constants"].contains("embedding")) {
    for (const auto& entry : j["constants"]["embedding"]) {
      if (!entry.contains("q") || !entry.contains("value") || !entry.contains("provenance")) {
        throw io_error(ctx + ": embedding entries need q, value, provenance");
      }
      in.constants.set_embedding(entry["q"].get<double>(), entry["value"].get<double>(),
                                 entry["provenance"].get<std::string>());
    }
  }
  if (j.contains("run")) {
    const auto& r = j["run"];
    if (r.contains("blew_up")) in.blew_up = r["blew_up"].get<bool>();
    if (r.contains("last_valid_time")) in.last_valid_time = r["last_valid_time"].get<double>();
  }
  if (j.contains("output") && j["output"].contains("report")) {
    in.report_name = j["output"]["report"].get<std::string>();
  }
  return in;
}

}  // namespace gevrey
