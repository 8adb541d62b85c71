#include <catch_amalgamated.hpp>

#include <cmath>

#include "degen/generators.hpp"

using namespace degen;

namespace {
constexpr double kPhi = 0.5235987755982988;  // pi/6

Expr zero_h() { return parse("0", {"t", "x", "y", "z"}); }
}  // namespace

TEST_CASE("linear family builds the expected shape texts") {
  const GeneratorSet gen = linear_family(0.3, -0.2, 0.7, zero_h(), kPhi);
  CHECK(unparse(gen.f1I) == "(0.3 * s0)");
  // derived convention: f2R carries k3, f2I carries k2
  CHECK(unparse(gen.f2R) == "(0.7 * s0)");
  CHECK(unparse(gen.f2I) == "((-0.2) * s0)");
  REQUIRE(gen.linear.has_value());
  CHECK(gen.linear->k1 == 0.3);
  CHECK(gen.linear->k2 == -0.2);
  CHECK(gen.linear->k3 == 0.7);
  CHECK(gen.linear->convention == K23Convention::derived);
}

TEST_CASE("printed convention swaps the k2 and k3 slots") {
  const GeneratorSet gen = linear_family(0.3, -0.2, 0.7, zero_h(), kPhi, 1.0, 1.0,
                                         Complex(0.5, 0.0), GaussianEnvelope{},
                                         K23Convention::printed);
  CHECK(unparse(gen.f2R) == "((-0.2) * s0)");
  CHECK(unparse(gen.f2I) == "(0.7 * s0)");
}

TEST_CASE("validation rejects bad parameters") {
  const Expr h = zero_h();
  CHECK_THROWS_AS(linear_family(0, 0, 0, h, 1.5707963267948966), NearSingularAngleError);
  CHECK_THROWS_AS(linear_family(0, 0, 0, h, kPhi, -1.0), InvalidGeneratorError);
  CHECK_THROWS_AS(linear_family(0, 0, 0, h, kPhi, 1.0, 0.0), InvalidGeneratorError);
  CHECK_THROWS_AS(linear_family(0, 0, 0, h, kPhi, 1.0, 1.0, Complex(0, 0)),
                  InvalidGeneratorError);
  CHECK_THROWS_AS(linear_family(0, 0, 0, h, kPhi, 1.0, 1.0, Complex(0.5, 0.0),
                                GaussianEnvelope{Complex(1, 0), -1.0, 0.0}),
                  InvalidGeneratorError);
}

TEST_CASE("validation probes functions for real finite values") {
  GeneratorSet gen = linear_family(0.1, 0.2, 0.3, zero_h(), kPhi);
  gen.h = parse("log(x)", {"t", "x", "y", "z"});  // complex for negative x
  CHECK_THROWS_AS(validate(gen), InvalidGeneratorError);
  gen.h = parse("1/(x - x)", {"t", "x", "y", "z"});  // not finite anywhere
  CHECK_THROWS_AS(validate(gen), InvalidGeneratorError);
  gen.h = parse("sin(t)*x*y*z", {"t", "x", "y", "z"});
  CHECK_NOTHROW(validate(gen));
}

TEST_CASE("complexified potential components combine f2R and f2I") {
  const GeneratorSet gen = linear_family(0.3, -0.2, 0.7, zero_h(), kPhi);
  const Complex s0(0.9, 0.0), s1(1.2, 0.0);
  const Complex i(0, 1);
  const Complex a1 = a_tilde(gen, 1, s0, s1);
  const Complex a2 = a_tilde(gen, 2, s0, s1);
  const Complex a3 = a_tilde(gen, 3, s0, s1);
  CHECK(std::abs(a1 - i * (0.3 * 0.9)) < 1e-15);
  CHECK(std::abs(a2 - (Complex(0.7 * 0.9) + i * (-0.2 * 0.9))) < 1e-15);
  CHECK(std::abs(a3 - (Complex(0.7 * 0.9) - i * (-0.2 * 0.9))) < 1e-15);
}

TEST_CASE("gaussian envelope value at a reference point") {
  GeneratorSet gen = linear_family(0, 0, 0, zero_h(), kPhi, 1.0, 1.0, Complex(0.5, 0.0),
                                   GaussianEnvelope{Complex(1, 0), 1.0, 2.0});
  // c1 exp(-kR s0^2) exp(-i kI s0) at s0 = 1
  const Complex g = envelope_g(gen, Complex(1.0, 0.0));
  CHECK_THAT(g.real(), Catch::Matchers::WithinAbs(-0.15309186567422629, 1e-15));
  CHECK_THAT(g.imag(), Catch::Matchers::WithinAbs(-0.33451182923926225, 1e-15));
}

TEST_CASE("expression envelopes evaluate at s0") {
  GeneratorSet gen = linear_family(0, 0, 0, zero_h(), kPhi);
  gen.envelope = parse("1/(1 + s0^2)", {"s0"});
  CHECK_NOTHROW(validate(gen));
  const Complex g = envelope_g(gen, Complex(2.0, 0.0));
  CHECK_THAT(g.real(), Catch::Matchers::WithinAbs(0.2, 1e-15));
}
