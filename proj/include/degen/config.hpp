#pragma once

// JSON run configuration. Strictly validated before any computation: unknown
// keys are rejected at every level, axis counts must be >= 1 with min <= max,
// and every expression is parsed against its declared variable slots.
// docs/config_schema.json mirrors these rules.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degen/errors.hpp"
#include "degen/expr.hpp"
#include "degen/frame.hpp"
#include "degen/generators.hpp"
#include "degen/solution.hpp"
#include "degen/verify.hpp"

namespace degen {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

enum class ParticleKind { massive, massless, weyl_plus, weyl_minus };

inline std::string to_string(ParticleKind k) {
  switch (k) {
    case ParticleKind::massive: return "massive";
    case ParticleKind::massless: return "massless";
    case ParticleKind::weyl_plus: return "weyl+";
    default: return "weyl-";
  }
}

struct AxisSpec {
  double min = 0, max = 0;
  int count = 1;

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(count);
    if (count == 1) {
      v.push_back(min);
    } else {
      for (int i = 0; i < count; ++i)
        v.push_back(min + (max - min) * (static_cast<double>(i) / (count - 1)));
    }
    return v;
  }
};

struct RunConfig {
  double phi = 0.5235987755982988;  // pi/6
  ParticleKind kind = ParticleKind::massive;
  double mass = 1.0;
  double charge = 1.0;

  // generators: either the linear family (the default) or explicit
  // expression texts; supplying any explicit text drops the linear default
  std::optional<LinearFamilyInfo> linear = LinearFamilyInfo{0.3, -0.2, 0.7};
  std::string f1I_text = "0", f2R_text = "0", f2I_text = "0";
  std::string h_text = "0";

  Complex k{0.5, 0.0};
  bool envelope_is_expr = false;
  GaussianEnvelope envelope{Complex{1.0, 0.0}, 1.0, 2.0};
  std::string g_text;

  // massless / two-component components: preset coefficients or expressions
  Complex cT{1.0, 0.0}, cR{1.0, 0.0};
  std::string wt_text, wr_text;  // empty means preset

  std::map<std::string, double> constants;

  AxisSpec grid_t{0, 0, 1}, grid_x{-2, 2, 5}, grid_y{-2, 2, 5}, grid_z{-2, 2, 5};
  DiffConfig diff;
  std::vector<std::string> tables{"spinor", "fields", "spin"};
  std::string out_dir = "out";
  std::uint64_t seed = 20240917;

  std::array<double, 4> perturb{0, 0, 0, 0};  // additive potential offsets
};

namespace detail {

inline void require_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + key + "' in " + where);
}

inline double get_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ConfigError(where + "." + key + " must be a number");
  return j.at(key).get<double>();
}

inline Complex get_complex_pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(where + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline AxisSpec get_axis(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number_integer())
    throw ConfigError(where + " must be [min, max, count] with integer count");
  AxisSpec a{j[0].get<double>(), j[1].get<double>(), j[2].get<int>()};
  if (a.count < 1) throw ConfigError(where + " count must be >= 1");
  if (!(a.min <= a.max)) throw ConfigError(where + " requires min <= max");
  return a;
}

}  // namespace detail

/// Parse and validate a configuration document. Structural problems raise
/// ConfigError; expression texts are only syntax-checked later, when the
/// family is built, so malformed expressions surface as parse errors.
inline RunConfig parse_config(const json& j) {
  using detail::get_axis;
  using detail::get_complex_pair;
  using detail::get_number;
  using detail::require_keys;

  require_keys(j, {"frame", "particle", "generators", "solution", "constants", "grid",
                   "diff", "outputs", "seed", "perturb"},
               "config");
  RunConfig cfg;

  if (!j.contains("frame")) throw ConfigError("missing required object 'frame'");
  require_keys(j.at("frame"), {"phi"}, "frame");
  cfg.phi = get_number(j.at("frame"), "phi", "frame");

  if (j.contains("particle")) {
    const json& p = j.at("particle");
    require_keys(p, {"kind", "mass", "charge"}, "particle");
    if (p.contains("kind")) {
      const std::string kind = p.at("kind").is_string() ? p.at("kind").get<std::string>() : "";
      if (kind == "massive") cfg.kind = ParticleKind::massive;
      else if (kind == "massless") cfg.kind = ParticleKind::massless;
      else if (kind == "weyl+") cfg.kind = ParticleKind::weyl_plus;
      else if (kind == "weyl-") cfg.kind = ParticleKind::weyl_minus;
      else throw ConfigError("particle.kind must be massive|massless|weyl+|weyl-");
    }
    if (p.contains("mass")) cfg.mass = get_number(p, "mass", "particle");
    if (p.contains("charge")) cfg.charge = get_number(p, "charge", "particle");
  }

  if (j.contains("generators")) {
    const json& g = j.at("generators");
    require_keys(g, {"linear", "f1I", "f2R", "f2I", "h"}, "generators");
    const bool has_explicit = g.contains("f1I") || g.contains("f2R") || g.contains("f2I");
    if (g.contains("linear")) {
      if (has_explicit)
        throw ConfigError("generators.linear excludes explicit f1I/f2R/f2I");
      const json& l = g.at("linear");
      require_keys(l, {"k1", "k2", "k3", "swap_convention"}, "generators.linear");
      LinearFamilyInfo info;
      info.k1 = l.contains("k1") ? get_number(l, "k1", "generators.linear") : 0.0;
      info.k2 = l.contains("k2") ? get_number(l, "k2", "generators.linear") : 0.0;
      info.k3 = l.contains("k3") ? get_number(l, "k3", "generators.linear") : 0.0;
      if (l.contains("swap_convention")) {
        const std::string c =
            l.at("swap_convention").is_string() ? l.at("swap_convention").get<std::string>() : "";
        if (c == "derived") info.convention = K23Convention::derived;
        else if (c == "printed") info.convention = K23Convention::printed;
        else throw ConfigError("swap_convention must be derived|printed");
      }
      cfg.linear = info;
    } else if (has_explicit) {
      cfg.linear.reset();
      auto text = [&](const char* key, std::string& out) {
        if (!g.contains(key)) return;
        if (!g.at(key).is_string())
          throw ConfigError(std::string("generators.") + key + " must be a string");
        out = g.at(key).get<std::string>();
      };
      text("f1I", cfg.f1I_text);
      text("f2R", cfg.f2R_text);
      text("f2I", cfg.f2I_text);
    }
    if (g.contains("h")) {
      if (!g.at("h").is_string()) throw ConfigError("generators.h must be a string");
      cfg.h_text = g.at("h").get<std::string>();
    }
  }

  if (j.contains("solution")) {
    const json& s = j.at("solution");
    require_keys(s, {"k", "envelope", "g", "cT", "cR", "WT", "WR"}, "solution");
    if (s.contains("k")) cfg.k = get_complex_pair(s.at("k"), "solution.k");
    if (s.contains("envelope") && s.contains("g"))
      throw ConfigError("solution.envelope excludes solution.g");
    if (s.contains("envelope")) {
      const json& env = s.at("envelope");
      require_keys(env, {"c1", "kR", "kI"}, "solution.envelope");
      if (env.contains("c1")) cfg.envelope.c1 = get_complex_pair(env.at("c1"), "envelope.c1");
      if (env.contains("kR")) cfg.envelope.kR = get_number(env, "kR", "envelope");
      if (env.contains("kI")) cfg.envelope.kI = get_number(env, "kI", "envelope");
    }
    if (s.contains("g")) {
      if (!s.at("g").is_string()) throw ConfigError("solution.g must be a string");
      cfg.envelope_is_expr = true;
      cfg.g_text = s.at("g").get<std::string>();
    }
    if (s.contains("cT")) cfg.cT = get_complex_pair(s.at("cT"), "solution.cT");
    if (s.contains("cR")) cfg.cR = get_complex_pair(s.at("cR"), "solution.cR");
    auto text = [&](const char* key, std::string& out) {
      if (!s.contains(key)) return;
      if (!s.at(key).is_string())
        throw ConfigError(std::string("solution.") + key + " must be a string");
      out = s.at(key).get<std::string>();
    };
    text("WT", cfg.wt_text);
    text("WR", cfg.wr_text);
  }

  if (j.contains("constants")) {
    const json& c = j.at("constants");
    if (!c.is_object()) throw ConfigError("constants must be an object");
    static const std::set<std::string> reserved = {"t", "x",  "y",  "z",  "s0", "s1",
                                                   "s2", "s3", "pi", "e",  "m"};
    for (const auto& [name, value] : c.items()) {
      if (reserved.count(name))
        throw ConfigError("constant name '" + name + "' is reserved");
      if (!value.is_number())
        throw ConfigError("constant '" + name + "' must be a number");
      cfg.constants[name] = value.get<double>();
    }
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    require_keys(g, {"t", "x", "y", "z"}, "grid");
    if (g.contains("t")) cfg.grid_t = get_axis(g.at("t"), "grid.t");
    if (g.contains("x")) cfg.grid_x = get_axis(g.at("x"), "grid.x");
    if (g.contains("y")) cfg.grid_y = get_axis(g.at("y"), "grid.y");
    if (g.contains("z")) cfg.grid_z = get_axis(g.at("z"), "grid.z");
  }

  if (j.contains("diff")) {
    const json& d = j.at("diff");
    require_keys(d, {"mode", "step"}, "diff");
    if (d.contains("mode")) {
      const std::string m = d.at("mode").is_string() ? d.at("mode").get<std::string>() : "";
      if (m == "dual") cfg.diff.mode = DerivMode::dual;
      else if (m == "central") cfg.diff.mode = DerivMode::central;
      else throw ConfigError("diff.mode must be dual|central");
    }
    if (d.contains("step")) {
      cfg.diff.step = get_number(d, "step", "diff");
      if (!(cfg.diff.step >= 1e-8 && cfg.diff.step <= 1e-1))
        throw ConfigError("diff.step must lie in [1e-8, 1e-1]");
    }
  }

  // spin tables need the four-component bilinears, so two-component kinds
  // default to spinor+fields and reject an explicit spin request
  const bool two_component =
      cfg.kind == ParticleKind::weyl_plus || cfg.kind == ParticleKind::weyl_minus;
  if (two_component) cfg.tables = {"spinor", "fields"};

  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    require_keys(o, {"tables", "directory"}, "outputs");
    if (o.contains("tables")) {
      if (!o.at("tables").is_array()) throw ConfigError("outputs.tables must be an array");
      cfg.tables.clear();
      for (const auto& t : o.at("tables")) {
        const std::string name = t.is_string() ? t.get<std::string>() : "";
        if (name != "spinor" && name != "fields" && name != "spin")
          throw ConfigError("outputs.tables entries must be spinor|fields|spin");
        if (name == "spin" && two_component)
          throw ConfigError("outputs.tables: spin requires a four-component kind");
        cfg.tables.push_back(name);
      }
    }
    if (o.contains("directory")) {
      if (!o.at("directory").is_string() || o.at("directory").get<std::string>().empty())
        throw ConfigError("outputs.directory must be a nonempty string");
      cfg.out_dir = o.at("directory").get<std::string>();
    }
  }

  if (j.contains("seed")) {
    const json& s = j.at("seed");
    // Parsed documents store nonnegative integers as unsigned; documents built
    // in memory may carry them as signed, so accept both forms.
    const bool ok = s.is_number_unsigned() ||
                    (s.is_number_integer() && s.get<std::int64_t>() >= 0);
    if (!ok) throw ConfigError("seed must be a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  if (j.contains("perturb")) {
    const json& p = j.at("perturb");
    require_keys(p, {"a0", "a1", "a2", "a3"}, "perturb");
    for (int i = 0; i < 4; ++i) {
      const std::string key = "a" + std::to_string(i);
      if (p.contains(key)) cfg.perturb[i] = get_number(p, key, "perturb");
    }
  }

  return cfg;
}

/// A generator set plus the concrete spinor family selected by the config.
struct BuiltFamily {
  Frame frame;
  GeneratorSet gen;
  ParticleKind kind = ParticleKind::massive;
  std::optional<MassiveSpinor> massive;
  std::optional<MasslessSpinor> massless;
  std::optional<WeylSpinor> weyl;
};

/// Turn a validated config into a live family. Expression texts are parsed
/// here, so syntax problems in them surface as expression errors, distinct
/// from structural ConfigError.
inline BuiltFamily build_family(const RunConfig& cfg) {
  BuiltFamily fam;
  fam.kind = cfg.kind;
  fam.frame = make_frame(cfg.phi);

  std::map<std::string, double> consts = cfg.constants;
  consts["m"] = cfg.mass;

  const Expr h = parse(cfg.h_text, {"t", "x", "y", "z"}, consts);
  std::variant<GaussianEnvelope, Expr> envelope = cfg.envelope;
  if (cfg.envelope_is_expr) envelope = parse(cfg.g_text, {"s0"}, consts);

  if (cfg.linear) {
    GaussianEnvelope env = cfg.envelope_is_expr ? GaussianEnvelope{} : cfg.envelope;
    fam.gen = linear_family(cfg.linear->k1, cfg.linear->k2, cfg.linear->k3, h, cfg.phi,
                            cfg.mass, cfg.charge, cfg.k, env, cfg.linear->convention);
    if (cfg.envelope_is_expr) {
      fam.gen.envelope = envelope;
      validate(fam.gen);
    }
  } else {
    GeneratorSet gen;
    gen.phi = cfg.phi;
    gen.mass = cfg.mass;
    gen.charge = cfg.charge;
    gen.k = cfg.k;
    gen.f1I = parse(cfg.f1I_text, {"s0", "s1"}, consts);
    gen.f2R = parse(cfg.f2R_text, {"s0"}, consts);
    gen.f2I = parse(cfg.f2I_text, {"s0"}, consts);
    gen.h = h;
    gen.envelope = envelope;
    validate(gen);
    fam.gen = gen;
  }

  auto wcomp = [&](const std::string& text, Complex coeff, const char* second) {
    if (text.empty())
      return WComponent{WComponent::Preset{
          coeff, cfg.envelope_is_expr ? 0.0 : cfg.envelope.kI}};
    return WComponent{parse(text, {"s0", second}, consts)};
  };

  switch (cfg.kind) {
    case ParticleKind::massive:
      fam.massive = massive_spinor(fam.gen, fam.frame);
      break;
    case ParticleKind::massless:
      fam.massless = massless_spinor(fam.gen, fam.frame, wcomp(cfg.wt_text, cfg.cT, "s2"),
                                     wcomp(cfg.wr_text, cfg.cR, "s3"));
      break;
    case ParticleKind::weyl_plus:
      fam.weyl = weyl_spinor(fam.gen, fam.frame, Helicity::positive,
                             wcomp(cfg.wt_text, cfg.cT, "s2"));
      break;
    case ParticleKind::weyl_minus:
      fam.weyl = weyl_spinor(fam.gen, fam.frame, Helicity::negative,
                             wcomp(cfg.wr_text, cfg.cR, "s3"));
      break;
  }
  return fam;
}

/// Deterministic re-serialization of a config (fixed key order), used for the
/// config echo inside reports.
inline ordered_json config_echo(const RunConfig& cfg) {
  ordered_json j;
  j["frame"] = {{"phi", cfg.phi}};
  j["particle"] = {{"kind", to_string(cfg.kind)}, {"mass", cfg.mass}, {"charge", cfg.charge}};
  ordered_json gens;
  if (cfg.linear) {
    gens["linear"] = {{"k1", cfg.linear->k1},
                      {"k2", cfg.linear->k2},
                      {"k3", cfg.linear->k3},
                      {"swap_convention",
                       cfg.linear->convention == K23Convention::derived ? "derived" : "printed"}};
  } else {
    gens["f1I"] = cfg.f1I_text;
    gens["f2R"] = cfg.f2R_text;
    gens["f2I"] = cfg.f2I_text;
  }
  gens["h"] = cfg.h_text;
  j["generators"] = gens;
  ordered_json sol;
  sol["k"] = {cfg.k.real(), cfg.k.imag()};
  if (cfg.envelope_is_expr) {
    sol["g"] = cfg.g_text;
  } else {
    sol["envelope"] = {{"c1", {cfg.envelope.c1.real(), cfg.envelope.c1.imag()}},
                       {"kR", cfg.envelope.kR},
                       {"kI", cfg.envelope.kI}};
  }
  if (cfg.kind != ParticleKind::massive) {
    if (cfg.wt_text.empty()) sol["cT"] = {cfg.cT.real(), cfg.cT.imag()};
    else sol["WT"] = cfg.wt_text;
    if (cfg.wr_text.empty()) sol["cR"] = {cfg.cR.real(), cfg.cR.imag()};
    else sol["WR"] = cfg.wr_text;
  }
  j["solution"] = sol;
  if (!cfg.constants.empty()) {
    ordered_json c;
    for (const auto& [name, value] : cfg.constants) c[name] = value;
    j["constants"] = c;
  }
  auto axis = [](const AxisSpec& a) { return ordered_json::array({a.min, a.max, a.count}); };
  j["grid"] = {{"t", axis(cfg.grid_t)}, {"x", axis(cfg.grid_x)},
               {"y", axis(cfg.grid_y)}, {"z", axis(cfg.grid_z)}};
  j["diff"] = {{"mode", cfg.diff.mode == DerivMode::dual ? "dual" : "central"},
               {"step", cfg.diff.step}};
  j["outputs"] = {{"tables", cfg.tables}, {"directory", cfg.out_dir}};
  j["seed"] = cfg.seed;
  if (cfg.perturb != std::array<double, 4>{0, 0, 0, 0}) {
    j["perturb"] = {{"a0", cfg.perturb[0]}, {"a1", cfg.perturb[1]},
                    {"a2", cfg.perturb[2]}, {"a3", cfg.perturb[3]}};
  }
  return j;
}

}  // namespace degen
