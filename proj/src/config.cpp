#include "gevrey/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "gevrey/errors.hpp"

namespace gevrey {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw config_error("config: " + msg); }

void check_keys(const json& j, const std::string& ctx, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown key '" + it.key() + "' in " + ctx);
  }
}

const json& get_member(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key)) fail(ctx + "." + key + " is required");
  return j[key];
}

double get_double(const json& j, const char* key, const std::string& ctx) {
  const json& v = get_member(j, key, ctx);
  if (!v.is_number()) fail(ctx + "." + key + " must be a number");
  return v.get<double>();
}

double get_double_or(const json& j, const char* key, const std::string& ctx, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) fail(ctx + "." + key + " must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const char* key, const std::string& ctx) {
  const json& v = get_member(j, key, ctx);
  if (!v.is_number_integer()) fail(ctx + "." + key + " must be an integer");
  return v.get<int>();
}

bool get_bool_or(const json& j, const char* key, const std::string& ctx, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) fail(ctx + "." + key + " must be a boolean");
  return j[key].get<bool>();
}

std::string get_string(const json& j, const char* key, const std::string& ctx) {
  const json& v = get_member(j, key, ctx);
  if (!v.is_string()) fail(ctx + "." + key + " must be a string");
  return v.get<std::string>();
}

EquationSpec parse_equation(const json& j) {
  if (!j.is_object()) fail("equation must be an object");
  const std::string kind = get_string(j, "kind", "equation");
  if (kind == "euler") {
    check_keys(j, "equation", {"kind"});
    return Euler{};
  }
  if (kind == "burgers") {
    check_keys(j, "equation", {"kind", "projected"});
    return Burgers{get_bool_or(j, "projected", "equation", false)};
  }
  if (kind == "euler_voigt") {
    check_keys(j, "equation", {"kind", "alpha", "s"});
    return EulerVoigt{get_double(j, "alpha", "equation"), get_double(j, "s", "equation")};
  }
  if (kind == "ns_voigt") {
    check_keys(j, "equation", {"kind", "alpha", "s", "nu"});
    return NSVoigt{get_double(j, "alpha", "equation"), get_double(j, "s", "equation"),
                   get_double(j, "nu", "equation")};
  }
  fail("equation.kind '" + kind + "' is not one of euler, burgers, euler_voigt, ns_voigt");
}

TransformSpec parse_transform(const json& j) {
  if (!j.is_object()) fail("transform must be an object");
  const std::string kind = get_string(j, "kind", "transform");
  if (kind == "fixed_sobolev") {
    check_keys(j, "transform", {"kind", "beta", "epsilon", "s"});
    return FixedSobolev{get_double(j, "beta", "transform"), get_double(j, "epsilon", "transform"),
                        get_double(j, "s", "transform")};
  }
  if (kind == "voigt_triple") {
    check_keys(j, "transform", {"kind", "beta", "epsilon", "alpha", "s"});
    return VoigtTriple{get_double(j, "beta", "transform"), get_double(j, "epsilon", "transform"),
                       get_double(j, "alpha", "transform"), get_double(j, "s", "transform")};
  }
  if (kind == "critical_shift") {
    check_keys(j, "transform", {"kind", "beta", "alpha"});
    return CriticalShift{get_double(j, "beta", "transform"), get_double(j, "alpha", "transform")};
  }
  if (kind == "linear_in_time") {
    check_keys(j, "transform", {"kind", "beta"});
    return LinearInTime{get_double(j, "beta", "transform")};
  }
  fail("transform.kind '" + kind +
       "' is not one of fixed_sobolev, voigt_triple, critical_shift, linear_in_time");
}

ICSpec parse_ic(const json& j, const json* top_seed) {
  if (!j.is_object()) fail("ic must be an object");
  const std::string kind = get_string(j, "kind", "ic");
  const double amplitude = get_double_or(j, "amplitude", "ic", 1.0);
  if (kind == "taylor_green") {
    check_keys(j, "ic", {"kind", "amplitude"});
    return TaylorGreenIC{amplitude};
  }
  if (kind == "abc") {
    check_keys(j, "ic", {"kind", "a", "b", "c", "amplitude"});
    return AbcIC{get_double_or(j, "a", "ic", 1.0), get_double_or(j, "b", "ic", 1.0),
                 get_double_or(j, "c", "ic", 1.0), amplitude};
  }
  if (kind == "gevrey_random") {
    check_keys(j, "ic", {"kind", "sigma0", "q0", "seed", "amplitude"});
    const json* seed = j.contains("seed") ? &j["seed"] : top_seed;
    if (seed == nullptr) fail("a gevrey_random ic needs a seed (ic.seed or top-level seed)");
    const bool non_negative_integer =
        seed->is_number_unsigned() ||
        (seed->is_number_integer() && seed->get<long long>() >= 0);
    if (!non_negative_integer) fail("seed must be a non-negative integer");
    return GevreyRandomIC{get_double(j, "sigma0", "ic"), get_double_or(j, "q0", "ic", 0.0),
                          seed->get<std::uint64_t>(), amplitude};
  }
  if (kind == "from_file") {
    check_keys(j, "ic", {"kind", "path", "amplitude"});
    return FromFileIC{get_string(j, "path", "ic"), amplitude};
  }
  fail("ic.kind '" + kind + "' is not one of taylor_green, abc, gevrey_random, from_file");
}

TheoremSpec assemble_theorem(int id, const json& tj, const EquationSpec& eq,
                             const std::optional<TransformSpec>& transform) {
  if (!transform) fail("a theorem block requires a transform");
  switch (id) {
    case 1: {
      const auto* fs = std::get_if<FixedSobolev>(&*transform);
      if (fs == nullptr) fail("theorem 1 pairs with the fixed_sobolev transform");
      if (!std::holds_alternative<Euler>(eq) && !std::holds_alternative<Burgers>(eq)) {
        fail("theorem 1 pairs with the euler or burgers equation");
      }
      return Thm1Params{fs->s, fs->epsilon, fs->beta};
    }
    case 2: {
      const auto* vt = std::get_if<VoigtTriple>(&*transform);
      if (vt == nullptr) fail("theorem 2 pairs with the voigt_triple transform");
      const auto* ev = std::get_if<EulerVoigt>(&eq);
      if (ev == nullptr) fail("theorem 2 pairs with the euler_voigt equation");
      if (vt->alpha != ev->alpha || vt->s != ev->s) {
        fail("theorem 2 needs the transform and equation to share alpha and s");
      }
      return Thm2Params{(2.0 - vt->epsilon) / 6.0, vt->s, vt->alpha, vt->beta};
    }
    case 3: {
      const auto* vt = std::get_if<VoigtTriple>(&*transform);
      if (vt == nullptr) fail("theorem 3 pairs with the voigt_triple transform");
      const auto* ns = std::get_if<NSVoigt>(&eq);
      if (ns == nullptr) fail("theorem 3 pairs with the ns_voigt equation");
      if (vt->alpha != ns->alpha || vt->s != ns->s) {
        fail("theorem 3 needs the transform and equation to share alpha and s");
      }
      return Thm3Params{vt->s, vt->epsilon, vt->alpha, vt->beta, ns->nu};
    }
    case 4: {
      const auto* cs = std::get_if<CriticalShift>(&*transform);
      if (cs == nullptr) fail("theorem 4 pairs with the critical_shift transform");
      const auto* ns = std::get_if<NSVoigt>(&eq);
      if (ns == nullptr) fail("theorem 4 pairs with the ns_voigt equation");
      if (ns->s != 0.5) fail("theorem 4 needs equation.s = 0.5");
      if (cs->alpha != ns->alpha) {
        fail("theorem 4 needs the transform and equation to share alpha");
      }
      return Thm4Params{cs->alpha, cs->beta, ns->nu};
    }
    case 5: {
      const auto* lt = std::get_if<LinearInTime>(&*transform);
      if (lt == nullptr) fail("theorem 5 pairs with the linear_in_time transform");
      const auto* ns = std::get_if<NSVoigt>(&eq);
      if (ns == nullptr) fail("theorem 5 pairs with the ns_voigt equation");
      const double gamma = get_double(tj, "gamma", "theorem");
      const json& eta = get_member(tj, "eta", "theorem");
      if (!eta.is_array() || eta.size() != 3 || !eta[0].is_number() || !eta[1].is_number() ||
          !eta[2].is_number()) {
        fail("theorem.eta must be an array of three numbers");
      }
      return Thm5Params{ns->s,
                        gamma,
                        ns->alpha,
                        lt->beta,
                        ns->nu,
                        eta[0].get<double>(),
                        eta[1].get<double>(),
                        eta[2].get<double>()};
    }
    default:
      fail("theorem.id must be between 1 and 5");
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  check_keys(j, "top level",
             {"schema_version", "equation", "N", "dt", "t_end", "sample_interval", "ic", "seed",
              "sobolev_indices", "transform", "theorem", "constants", "output"});
  if (!j.contains("schema_version") || j["schema_version"] != 1) fail("schema_version must be 1");

  RunConfig cfg;
  cfg.equation = parse_equation(get_member(j, "equation", "config"));
  validate(cfg.equation);
  cfg.truncation = get_int(j, "N", "config");
  if (cfg.truncation < 1) fail("N must be >= 1");
  cfg.time.dt = get_double(j, "dt", "config");
  if (!(cfg.time.dt > 0.0)) fail("dt must be > 0");
  cfg.time.t_end = get_double(j, "t_end", "config");
  if (!(cfg.time.t_end > 0.0)) fail("t_end must be > 0");
  cfg.time.sample_interval = get_double_or(j, "sample_interval", "config", 0.0);
  if (cfg.time.sample_interval < 0.0) fail("sample_interval must be >= 0");

  const json* top_seed = j.contains("seed") ? &j["seed"] : nullptr;
  cfg.ic = parse_ic(get_member(j, "ic", "config"), top_seed);

  if (j.contains("sobolev_indices")) {
    const json& idx = j["sobolev_indices"];
    if (!idx.is_array()) fail("sobolev_indices must be an array of numbers");
    for (const auto& q : idx) {
      if (!q.is_number()) fail("sobolev_indices must be an array of numbers");
      const double qv = q.get<double>();
      if (!std::isfinite(qv)) fail("sobolev_indices entries must be finite");
      cfg.sobolev_indices.push_back(qv);
    }
  }

  if (j.contains("transform")) {
    cfg.transform = parse_transform(j["transform"]);
    validate(*cfg.transform);
  }

  if (j.contains("theorem")) {
    const json& tj = j["theorem"];
    if (!tj.is_object()) fail("theorem must be an object");
    check_keys(tj, "theorem", {"id", "gamma", "eta", "sigma_check"});
    const int id = get_int(tj, "id", "theorem");
    cfg.theorem = assemble_theorem(id, tj, cfg.equation, cfg.transform);
    if (tj.contains("sigma_check")) {
      const double sigma = get_double(tj, "sigma_check", "theorem");
      if (!(sigma > 0.0)) fail("theorem.sigma_check must be > 0");
      cfg.sigma_check = sigma;
    }
  }

  if (j.contains("constants")) {
    const json& cj = j["constants"];
    if (!cj.is_object()) fail("constants must be an object");
    check_keys(cj, "constants", {"embedding"});
    if (cj.contains("embedding")) {
      const json& arr = cj["embedding"];
      if (!arr.is_array()) fail("constants.embedding must be an array");
      for (const auto& entry : arr) {
        if (!entry.is_object()) fail("constants.embedding entries must be objects");
        check_keys(entry, "constants.embedding", {"q", "value", "provenance"});
        cfg.constants.set_embedding(get_double(entry, "q", "constants.embedding"),
                                    get_double(entry, "value", "constants.embedding"),
                                    get_string(entry, "provenance", "constants.embedding"));
      }
    }
  }

  if (j.contains("output")) {
    const json& oj = j["output"];
    if (!oj.is_object()) fail("output must be an object");
    check_keys(oj, "output", {"series", "report", "params"});
    if (oj.contains("series")) cfg.output.series = get_string(oj, "series", "output");
    if (oj.contains("report")) cfg.output.report = get_string(oj, "report", "output");
    if (oj.contains("params")) cfg.output.params = get_string(oj, "params", "output");
    for (const std::string* name : {&cfg.output.series, &cfg.output.report, &cfg.output.params}) {
      if (name->empty()) fail("output filenames must be non-empty");
    }
  }

  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("failed reading " + path.string());
  return parse_config(std::move(buf).str());
}

void apply_seed_override(RunConfig& cfg, std::uint64_t seed) {
  if (auto* gr = std::get_if<GevreyRandomIC>(&cfg.ic)) gr->seed = seed;
}

}  // namespace gevrey
