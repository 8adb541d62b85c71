#include <catch_amalgamated.hpp>

#include <cmath>

#include "degen/solution.hpp"

using namespace degen;

namespace {
constexpr double kPhi = 0.5235987755982988;  // pi/6

GeneratorSet default_gen() {
  return linear_family(0.3, -0.2, 0.7, parse("sin(t)", {"t", "x", "y", "z"}), kPhi, 1.0,
                       1.0, Complex(0.5, 0.0), GaussianEnvelope{Complex(1, 0), 1.0, 2.0});
}
}  // namespace

TEST_CASE("massive spinor at the origin has the closed combination value") {
  const Frame f = make_frame(kPhi);
  const MassiveSpinor psi = massive_spinor(default_gen(), f);
  // all separable factors are 1 at the origin, so psi = 3i u + v
  const Spinor4 got = psi(Event{0, 0, 0, 0});
  const double c = std::cos(kPhi), s = std::sin(kPhi);
  const Complex i(0, 1);
  const Spinor4 u = base_u(kPhi), v = base_v(kPhi);
  for (int j = 0; j < 4; ++j)
    CHECK(std::abs(got.c[j] - (3.0 * i * u.c[j] + v.c[j])) < 1e-14);
  CHECK_THAT(norm2(got), Catch::Matchers::WithinAbs(24.0, 1e-12));
  CHECK(std::abs(got.c[0] - Complex(-c, 3 * c)) < 1e-14);
  CHECK(std::abs(got.c[1] - Complex(1 + s, 3 * (1 - s))) < 1e-14);
}

TEST_CASE("massive spinor components at a reference event") {
  const Frame f = make_frame(kPhi);
  const MassiveSpinor psi = massive_spinor(default_gen(), f);
  const Spinor4 got = psi(Event{0.3, 0.2, -0.4, 0.1});
  const Complex want[4] = {{-0.99272581228550119, 2.4901274655825818},
                           {1.3813206061119866, 1.5503860754877794},
                           {0.69989582952114821, 2.5877374598373662},
                           {-1.5503860754877792, 1.3813206061119868}};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(got.c[j] - want[j]) < 1e-13);
  CHECK_THAT(norm(got), Catch::Matchers::WithinAbs(4.7954109173589336, 1e-13));
}

TEST_CASE("massless spinor components at a reference event") {
  const Frame f = make_frame(kPhi);
  const WComponent wt{WComponent::Preset{Complex(1, 0), 2.0}};
  const WComponent wr{WComponent::Preset{Complex(0.6, 0.8), 2.0}};
  const MasslessSpinor psi = massless_spinor(default_gen(), f, wt, wr);
  const Spinor4 got = psi(Event{0.3, 0.2, -0.4, 0.1});
  const Complex want[4] = {{0.22172894341645648, -0.74218345148044219},
                           {1.5859839968326529, 0.94056087617480854},
                           {1.4843669029608844, 0.44345788683291295},
                           {-0.60096910066339268, -1.1130301613378825}};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(got.c[j] - want[j]) < 1e-13);
}

TEST_CASE("two-component spinor at a reference event") {
  const Frame f = make_frame(kPhi);
  const WeylSpinor psi = weyl_spinor(default_gen(), f, Helicity::positive,
                                     WComponent{WComponent::Preset{Complex(1, 0), 2.0}});
  const Spinor2 got = psi(Event{0.3, 0.2, -0.4, 0.1});
  const Complex want[2] = {{0.85304792318867043, -0.14936278232376462},
                           {0.49250744808463012, -0.086234642581536988}};
  for (int j = 0; j < 2; ++j) CHECK(std::abs(got.c[j] - want[j]) < 1e-13);
}

TEST_CASE("negative helicity rides on the conjugate base spinor and s3") {
  const Frame f = make_frame(kPhi);
  const WeylSpinor psi = weyl_spinor(default_gen(), f, Helicity::negative,
                                     WComponent{WComponent::Preset{Complex(1, 0), 0.0}});
  const Spinor2 at_origin = psi(Event{0, 0, 0, 0});
  const Spinor2 chi = base_chi_minus(kPhi);
  for (int j = 0; j < 2; ++j) CHECK(std::abs(at_origin.c[j] - chi.c[j]) < 1e-14);
}

TEST_CASE("phase factor has unit modulus on real events where f2 vanish") {
  // with f2R = f2I = 0 the phase reduces to exp(i * integral of f1I), and the
  // integrand is real on the real slice
  GeneratorSet gen = linear_family(0.8, 0.0, 0.0, parse("0", {"t", "x", "y", "z"}), kPhi);
  const Frame f = make_frame(kPhi);
  for (double x : {-1.5, -0.2, 0.4, 2.0}) {
    const auto s = to_s(f, Event{0.7, x, 0.0, 0.3});
    const Complex p = phase_factor(gen, s);
    CHECK_THAT(std::abs(p), Catch::Matchers::WithinAbs(1.0, 1e-13));
  }
}

TEST_CASE("changing the phase integral lower limit rescales by a unit factor") {
  const GeneratorSet gen = default_gen();
  const Frame f = make_frame(kPhi);
  MassiveSpinor a = massive_spinor(gen, f);
  MassiveSpinor b = a;
  b.phase_lower = 0.6;
  // with f1I = 0.3 s0 the removed integral piece is 0.3 * s0 * 0.6, so the
  // field picks up exp(-0.18 i s0): unit modulus, a function of s0 alone
  const Event probes[] = {{0.1, 0.4, -0.2, 0.9}, {1.2, -0.7, 0.3, -0.5}, {0, 1, 1, 1}};
  const Complex i(0, 1);
  for (const Event& e : probes) {
    const Spinor4 va = a(e);
    const Spinor4 vb = b(e);
    const double s0 = to_s(f, e).s0.real();
    const Complex want = std::exp(-i * 0.18 * s0);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(vb.c[j] - want * va.c[j]) < 1e-12);
  }
}

TEST_CASE("preset component equals its defining exponential") {
  const WComponent w{WComponent::Preset{Complex(0.6, 0.8), 2.0}};
  const Complex s0(0.37, 0.0), s2(0.5, -0.25);
  const Complex i(0, 1);
  const Complex want = Complex(0.6, 0.8) * std::exp(-i * 2.0 * s0);
  CHECK(std::abs(w.eval_at(s0, s2) - want) < 1e-15);
}

TEST_CASE("expression components bind s0 and the second coordinate in order") {
  const WComponent w{parse("s0^2 + 3*s2", {"s0", "s2"})};
  const Complex s0(0.5, 0.0), s2(0.2, 0.1);
  CHECK(std::abs(w.eval_at(s0, s2) - (s0 * s0 + 3.0 * s2)) < 1e-15);
}

TEST_CASE("builders reject a frame and generator angle mismatch") {
  const GeneratorSet gen = default_gen();
  const Frame other = make_frame(0.7);
  CHECK_THROWS_AS(massive_spinor(gen, other), InvalidGeneratorError);
  CHECK_THROWS_AS(weyl_spinor(gen, other, Helicity::positive, WComponent{}),
                  InvalidGeneratorError);
}

TEST_CASE("massive builder requires a positive mass") {
  GeneratorSet gen = default_gen();
  gen.mass = 0.0;
  const Frame f = make_frame(kPhi);
  CHECK_THROWS_AS(massive_spinor(gen, f), InvalidGeneratorError);
}
