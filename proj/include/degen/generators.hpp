#pragma once

// A generator set is the free data of one solution family: three real-valued
// shape functions in separable coordinates, one free potential function h in
// event coordinates, an envelope for the separable factor, and the scalar
// parameters (angle, mass, charge, wave number k).
//
//   f1I over (s0, s1)   phase shape integrated along s1
//   f2R, f2I over (s0)  phase shape multiplying s2+s3 and s2-s3
//   h over (t, x, y, z) free additive potential direction; never affects
//                       the spinor, only the potentials
//
// The linear family f1I = k1 s0, f2R = k3 s0, f2I = k2 s0 reproduces the
// closed-form worked example. The alternative index order (k2, k3 swapped)
// is available behind a flag so that reports can show which order is
// consistent with the closed forms.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "degen/dual.hpp"
#include "degen/errors.hpp"
#include "degen/expr.hpp"
#include "degen/frame.hpp"

namespace degen {

struct GaussianEnvelope {
  Complex c1{1.0, 0.0};
  double kR = 1.0;  // gaussian width, must be positive
  double kI = 0.0;  // oscillation wave number
};

enum class K23Convention { derived, printed };

struct LinearFamilyInfo {
  double k1 = 0, k2 = 0, k3 = 0;
  K23Convention convention = K23Convention::derived;
};

struct GeneratorSet {
  double phi = 0;
  double mass = 1.0;
  double charge = 1.0;
  Complex k{0.5, 0.0};

  Expr f1I, f2R, f2I;  // real-valued shapes in separable coordinates
  Expr h;              // free potential shape in event coordinates
  std::variant<GaussianEnvelope, Expr> envelope = GaussianEnvelope{};

  std::optional<LinearFamilyInfo> linear;  // set when built by linear_family
};

namespace detail {

inline void check_on_real_inputs(const Expr& e, const char* label, int arity,
                                 std::uint64_t seed, bool require_real) {
  std::mt19937_64 rng(seed);
  auto next = [&] { return -3.0 + 6.0 * ((rng() >> 11) * 0x1.0p-53); };
  for (int trial = 0; trial < 100; ++trial) {
    Bindings<Complex> b;
    for (int j = 0; j < arity; ++j) b.set(e.vars[j], Complex(next()));
    const Complex v = eval_generic(e, b);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidGeneratorError(std::string(label) + " is not finite on real inputs");
    if (require_real && std::abs(v.imag()) > 1e-12)
      throw InvalidGeneratorError(std::string(label) + " is not real-valued on real inputs");
  }
}

}  // namespace detail

/// Validate shapes and parameters. The reality probe draws 100 deterministic
/// real tuples in [-3, 3] per function.
inline void validate(const GeneratorSet& gen) {
  if (std::abs(std::cos(gen.phi)) < kAngleGuard) throw NearSingularAngleError(gen.phi);
  if (gen.mass < 0) throw InvalidGeneratorError("mass must be nonnegative");
  if (gen.charge == 0) throw InvalidGeneratorError("charge must be nonzero");
  if (std::abs(gen.k) == 0) throw InvalidGeneratorError("wave number k must be nonzero");
  if (const auto* g = std::get_if<GaussianEnvelope>(&gen.envelope)) {
    if (!(g->kR > 0)) throw InvalidGeneratorError("envelope width kR must be positive");
  } else {
    // envelopes may be any finite shape; only the f's and h must be real
    detail::check_on_real_inputs(std::get<Expr>(gen.envelope), "envelope g", 1,
                                 0x9E3779B97F4A7C15ull, false);
  }
  detail::check_on_real_inputs(gen.f1I, "f1I", 2, 0xA5A5A5A51234567ull, true);
  detail::check_on_real_inputs(gen.f2R, "f2R", 1, 0xC3C3C3C3FEDCBA9ull, true);
  detail::check_on_real_inputs(gen.f2I, "f2I", 1, 0x5A5A5A5A9ABCDEFull, true);
  detail::check_on_real_inputs(gen.h, "h", 4, 0x123456789ABCDEFull, true);
}

/// Build the linear family with coefficients (k1, k2, k3) and potential shape
/// h (defaults to zero). `convention` selects which of k2/k3 multiplies the
/// s2+s3 and s2-s3 phase terms; `derived` matches the closed-form example.
inline GeneratorSet linear_family(double k1, double k2, double k3, const Expr& h,
                                  double phi, double mass = 1.0, double charge = 1.0,
                                  Complex k = Complex(0.5, 0.0),
                                  GaussianEnvelope env = GaussianEnvelope{},
                                  K23Convention convention = K23Convention::derived) {
  auto coeff_times = [](double c, const char* var) {
    ExprPtr num = c < 0 ? make_unary_minus(make_number(-c)) : make_number(c);
    return make_binary(BinOp::mul, num, make_variable(var));
  };
  const double f2r = convention == K23Convention::derived ? k3 : k2;
  const double f2i = convention == K23Convention::derived ? k2 : k3;

  GeneratorSet gen;
  gen.phi = phi;
  gen.mass = mass;
  gen.charge = charge;
  gen.k = k;
  gen.f1I = Expr{coeff_times(k1, "s0"), {"s0", "s1"}};
  gen.f2R = Expr{coeff_times(f2r, "s0"), {"s0"}};
  gen.f2I = Expr{coeff_times(f2i, "s0"), {"s0"}};
  gen.h = h ? h : Expr{make_number(0.0), {"t", "x", "y", "z"}};
  gen.envelope = env;
  gen.linear = LinearFamilyInfo{k1, k2, k3, convention};
  validate(gen);
  return gen;
}

/// Complexified potential component in separable coordinates:
/// which = 1 gives i f1I(s0, s1); 2 gives f2R + i f2I; 3 gives f2R - i f2I.
template <class T>
T a_tilde(const GeneratorSet& gen, int which, const T& s0, const T& s1) {
  const Complex i(0, 1);
  if (which == 1) {
    Bindings<T> b{{"s0", s0}, {"s1", s1}};
    return i * eval_generic(gen.f1I, b);
  }
  Bindings<T> b{{"s0", s0}};
  const T re = eval_generic(gen.f2R, b);
  const T im = eval_generic(gen.f2I, b);
  if (which == 2) return re + i * im;
  if (which == 3) return re - i * im;
  throw Error("a_tilde index must be 1, 2 or 3");
}

/// Envelope factor for the separable solution. The gaussian preset is
/// c1 exp(-kR s0^2) exp(-i kI s0); an expression envelope is evaluated at s0.
template <class T>
T envelope_g(const GeneratorSet& gen, const T& s0) {
  if (const auto* g = std::get_if<GaussianEnvelope>(&gen.envelope)) {
    const Complex mi(0, -g->kI);
    using std::exp;
    return g->c1 * exp((-g->kR) * (s0 * s0)) * exp(mi * s0);
  }
  Bindings<T> b{{"s0", s0}};
  return eval_generic(std::get<Expr>(gen.envelope), b);
}

}  // namespace degen
