#include <catch_amalgamated.hpp>

#include "degen/config.hpp"

using namespace degen;

namespace {
json minimal() {
  return json::parse(R"({"frame": {"phi": 0.5235987755982988}})");
}
}  // namespace

TEST_CASE("minimal config inherits the documented defaults") {
  const RunConfig cfg = parse_config(minimal());
  CHECK(cfg.kind == ParticleKind::massive);
  CHECK(cfg.mass == 1.0);
  CHECK(cfg.charge == 1.0);
  REQUIRE(cfg.linear.has_value());
  CHECK(cfg.linear->k1 == 0.3);
  CHECK(cfg.linear->k2 == -0.2);
  CHECK(cfg.linear->k3 == 0.7);
  CHECK(cfg.k == Complex(0.5, 0.0));
  CHECK_FALSE(cfg.envelope_is_expr);
  CHECK(cfg.envelope.kR == 1.0);
  CHECK(cfg.envelope.kI == 2.0);
  CHECK(cfg.grid_x.count == 5);
  CHECK(cfg.diff.mode == DerivMode::dual);
  CHECK(cfg.seed == 20240917u);
  CHECK(cfg.tables == std::vector<std::string>{"spinor", "fields", "spin"});
}

TEST_CASE("frame.phi is required") {
  CHECK_THROWS_AS(parse_config(json::parse("{}")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"frame": {}})")), ConfigError);
}

TEST_CASE("unknown keys are rejected at every level") {
  json j = minimal();
  j["surprise"] = 1;
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = minimal();
  j["frame"]["extra"] = 2;
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = minimal();
  j["particle"] = {{"kind", "massive"}, {"spin", 0.5}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = minimal();
  j["generators"] = {{"linear", {{"k1", 1.0}, {"k9", 2.0}}}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = minimal();
  j["outputs"] = {{"folder", "out"}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("particle kinds parse and gate the table defaults") {
  json j = minimal();
  j["particle"] = {{"kind", "weyl+"}};
  CHECK(parse_config(j).kind == ParticleKind::weyl_plus);
  CHECK(parse_config(j).tables == std::vector<std::string>{"spinor", "fields"});

  j["particle"] = {{"kind", "weyl-"}};
  CHECK(parse_config(j).kind == ParticleKind::weyl_minus);

  j["particle"] = {{"kind", "massless"}};
  CHECK(parse_config(j).kind == ParticleKind::massless);
  CHECK(parse_config(j).tables.size() == 3);

  j["particle"] = {{"kind", "tachyon"}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("spin table for a two-component kind is rejected") {
  json j = minimal();
  j["particle"] = {{"kind", "weyl+"}};
  j["outputs"] = {{"tables", {"spin"}}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("explicit generator expressions replace the linear default") {
  json j = minimal();
  j["generators"] = {{"f1I", "s0*s1"}, {"f2R", "0"}, {"f2I", "sin(s0)"}};
  const RunConfig cfg = parse_config(j);
  CHECK_FALSE(cfg.linear.has_value());
  CHECK(cfg.f1I_text == "s0*s1");
  CHECK(cfg.f2I_text == "sin(s0)");

  j["generators"]["linear"] = {{"k1", 1.0}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);  // both forms at once
}

TEST_CASE("envelope and g expression are mutually exclusive") {
  json j = minimal();
  j["solution"] = {{"g", "1/(1 + s0^2)"}};
  const RunConfig cfg = parse_config(j);
  CHECK(cfg.envelope_is_expr);
  CHECK(cfg.g_text == "1/(1 + s0^2)");

  j["solution"]["envelope"] = {{"kR", 1.0}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("reserved constant names are rejected") {
  json j = minimal();
  j["constants"] = {{"alpha", 0.007297}};
  CHECK_NOTHROW(parse_config(j));
  for (const char* name : {"t", "x", "s0", "pi", "e", "m"}) {
    json bad = minimal();
    bad["constants"] = {{name, 1.0}};
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
  }
}

TEST_CASE("grid axes validate counts and bounds") {
  json j = minimal();
  j["grid"] = {{"x", {0.0, 1.0, 3}}};
  const RunConfig cfg = parse_config(j);
  CHECK(cfg.grid_x.values() == std::vector<double>{0.0, 0.5, 1.0});

  j["grid"] = {{"x", {1.0, 0.0, 3}}};  // min > max
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j["grid"] = {{"x", {0.0, 1.0, 0}}};  // count < 1
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j["grid"] = {{"x", {0.0, 1.0}}};  // wrong arity
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("single-point axes collapse to the minimum") {
  const AxisSpec ax{2.5, 2.5, 1};
  CHECK(ax.values() == std::vector<double>{2.5});
}

TEST_CASE("diff step range is enforced") {
  json j = minimal();
  j["diff"] = {{"mode", "central"}, {"step", 1e-4}};
  CHECK(parse_config(j).diff.step == 1e-4);
  j["diff"]["step"] = 1e-9;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j["diff"] = {{"mode", "upwind"}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("perturb applies named component offsets") {
  json j = minimal();
  j["perturb"] = {{"a2", 0.1}};
  const RunConfig cfg = parse_config(j);
  CHECK(cfg.perturb == std::array<double, 4>{0, 0, 0.1, 0});
  j["perturb"] = {{"a7", 0.1}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("seed must be a nonnegative integer") {
  json j = minimal();
  j["seed"] = 12345;
  CHECK(parse_config(j).seed == 12345u);
  j["seed"] = -3;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j["seed"] = 1.5;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("build_family produces each kind") {
  json j = minimal();
  REQUIRE(build_family(parse_config(j)).massive.has_value());

  j["particle"] = {{"kind", "massless"}};
  REQUIRE(build_family(parse_config(j)).massless.has_value());

  j["particle"] = {{"kind", "weyl+"}};
  const BuiltFamily wf = build_family(parse_config(j));
  REQUIRE(wf.weyl.has_value());
  CHECK(wf.weyl->helicity == Helicity::positive);
}

TEST_CASE("expression slots are parsed with their declared variables") {
  json j = minimal();
  j["generators"] = {{"f1I", "k*s0"}};  // k is not a known name here
  CHECK_THROWS_AS(build_family(parse_config(j)), UnknownIdentifierError);

  j = minimal();
  j["constants"] = {{"kc", 2.0}};
  j["generators"] = {{"f1I", "kc*s0"}};
  CHECK_NOTHROW(build_family(parse_config(j)));

  j = minimal();
  j["generators"] = {{"h", "sin(t"}};
  CHECK_THROWS_AS(build_family(parse_config(j)), SyntaxError);
}

TEST_CASE("config echo is stable and round-trips through the parser") {
  json j = minimal();
  j["particle"] = {{"kind", "massless"}};
  j["solution"] = {{"cT", {1.0, 0.0}}, {"cR", {0.6, 0.8}}};
  j["perturb"] = {{"a0", 0.05}};
  const RunConfig cfg = parse_config(j);
  const ordered_json echo1 = config_echo(cfg);
  const RunConfig cfg2 = parse_config(json::parse(echo1.dump()));
  const ordered_json echo2 = config_echo(cfg2);
  CHECK(echo1.dump() == echo2.dump());
}
