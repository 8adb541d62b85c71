#pragma once

// Spinor families built from a generator set. Every family shares one
// unit-modulus phase factor
//
//   exp( i Int_{lower}^{s1} f1I(s0, u) du + f2R(s0) (s2+s3) + i f2I(s0) (s2-s3) )
//
// On real events s2+s3 is purely imaginary and s2-s3 real, so a real f2R/f2I
// keeps the whole exponent imaginary. The s1 integral runs from a fixed lower
// limit (default 0); because the reduced system never differentiates along
// s0, any s0-dependent constant of integration still yields a solution, so
// the lower limit is a free choice.
//
// Massive family:   Psi = phase * W * ( i m (1+sin phi)/k * u + v )
//                   W   = g(s0) exp( -(m^2 cos^2 phi / k) s2 + k s3 )
// Massless family:  Psi = phase * ( WT(s0, s2) u + WR(s0, s3) v )
// Two-component:    psi = phase * WT(s0, s2) * chi+   (positive helicity)
//                   psi = phase * WR(s0, s3) * chi-   (negative helicity)

#include <cmath>
#include <complex>
#include <variant>

#include "degen/algebra.hpp"
#include "degen/dual.hpp"
#include "degen/expr.hpp"
#include "degen/frame.hpp"
#include "degen/generators.hpp"

namespace degen {

/// Shared unit-modulus phase; `lower` is the lower limit of the s1 integral.
template <class T>
T phase_factor(const GeneratorSet& gen, const SCoordsT<T>& s, double quad_tol = 1e-12,
               double lower = 0.0) {
  const Complex i(0, 1);
  Bindings<T> fixed{{"s0", s.s0}};
  const T integral = integrate(gen.f1I, "s1", T(Complex(lower)), s.s1, fixed, quad_tol);
  const T f2r = eval_generic(gen.f2R, fixed);
  const T f2i = eval_generic(gen.f2I, fixed);
  using std::exp;
  return exp(i * integral + f2r * (s.s2 + s.s3) + i * (f2i * (s.s2 - s.s3)));
}

/// Separable factor of the massive family.
template <class T>
T separable_w(const GeneratorSet& gen, const SCoordsT<T>& s) {
  const double c = std::cos(gen.phi);
  const Complex coef = -(gen.mass * gen.mass * c * c) / gen.k;
  using std::exp;
  return envelope_g(gen, s.s0) * exp(coef * s.s2 + gen.k * s.s3);
}

struct MassiveSpinor {
  GeneratorSet gen;
  Frame frame;
  double phase_lower = 0.0;  // lower limit of the phase integral
  double quad_tol = 1e-12;
  static constexpr std::size_t ncomp = 4;

  template <class T>
  SpinorT<T, 4> eval_at(const EventT<T>& e) const {
    const auto s = to_s(frame, e);
    const auto phase = phase_factor(gen, s, quad_tol, phase_lower);
    const auto w = separable_w(gen, s);
    const Complex i(0, 1);
    const Complex tcoef = i * gen.mass * (1.0 + frame.sin_phi) / gen.k;
    const Spinor4 u = base_u(gen.phi);
    const Spinor4 v = base_v(gen.phi);
    SpinorT<T, 4> r;
    for (std::size_t j = 0; j < 4; ++j)
      r.c[j] = phase * w * (tcoef * u.c[j] + v.c[j]);
    return r;
  }

  Spinor4 operator()(const Event& e) const {
    return plain_spinor(eval_at(EventT<Complex>{e.t, e.x, e.y, e.z}));
  }
};

/// Massive family; requires a strictly positive mass.
inline MassiveSpinor massive_spinor(const GeneratorSet& gen, const Frame& frame) {
  if (!(gen.mass > 0)) throw InvalidGeneratorError("massive family requires m > 0");
  if (std::abs(gen.phi - frame.phi) > 1e-12)
    throw InvalidGeneratorError("generator angle and frame angle disagree");
  return MassiveSpinor{gen, frame};
}

/// One separable component of the massless/two-component families: either the
/// preset c exp(-i kI s0) or a user expression over (s0, s2) / (s0, s3).
struct WComponent {
  struct Preset {
    Complex c{1.0, 0.0};
    double kI = 0.0;
  };
  std::variant<Preset, Expr> impl = Preset{};

  template <class T>
  T eval_at(const T& s0, const T& s23) const {
    if (const auto* p = std::get_if<Preset>(&impl)) {
      const Complex mi(0, -p->kI);
      using std::exp;
      return p->c * exp(mi * s0);
    }
    const Expr& e = std::get<Expr>(impl);
    Bindings<T> b;
    if (!e.vars.empty()) b.set(e.vars[0], s0);
    if (e.vars.size() > 1) b.set(e.vars[1], s23);
    return eval_generic(e, b);
  }
};

struct MasslessSpinor {
  GeneratorSet gen;
  Frame frame;
  WComponent wt, wr;
  double phase_lower = 0.0;
  double quad_tol = 1e-12;
  static constexpr std::size_t ncomp = 4;

  template <class T>
  SpinorT<T, 4> eval_at(const EventT<T>& e) const {
    const auto s = to_s(frame, e);
    const auto phase = phase_factor(gen, s, quad_tol, phase_lower);
    const auto wtv = wt.eval_at(s.s0, s.s2);
    const auto wrv = wr.eval_at(s.s0, s.s3);
    const Spinor4 u = base_u(gen.phi);
    const Spinor4 v = base_v(gen.phi);
    SpinorT<T, 4> r;
    for (std::size_t j = 0; j < 4; ++j)
      r.c[j] = phase * (wtv * u.c[j] + wrv * v.c[j]);
    return r;
  }

  Spinor4 operator()(const Event& e) const {
    return plain_spinor(eval_at(EventT<Complex>{e.t, e.x, e.y, e.z}));
  }
};

/// Massless family; the mass parameter of `gen` plays no role here.
inline MasslessSpinor massless_spinor(const GeneratorSet& gen, const Frame& frame,
                                      WComponent wt, WComponent wr) {
  if (std::abs(gen.phi - frame.phi) > 1e-12)
    throw InvalidGeneratorError("generator angle and frame angle disagree");
  return MasslessSpinor{gen, frame, std::move(wt), std::move(wr)};
}

enum class Helicity { positive, negative };

struct WeylSpinor {
  GeneratorSet gen;
  Frame frame;
  Helicity helicity = Helicity::positive;
  WComponent w;
  double phase_lower = 0.0;
  double quad_tol = 1e-12;
  static constexpr std::size_t ncomp = 2;

  template <class T>
  SpinorT<T, 2> eval_at(const EventT<T>& e) const {
    const auto s = to_s(frame, e);
    const auto phase = phase_factor(gen, s, quad_tol, phase_lower);
    const bool pos = helicity == Helicity::positive;
    const auto wv = pos ? w.eval_at(s.s0, s.s2) : w.eval_at(s.s0, s.s3);
    const Spinor2 chi = pos ? base_chi_plus(gen.phi) : base_chi_minus(gen.phi);
    SpinorT<T, 2> r;
    for (std::size_t j = 0; j < 2; ++j) r.c[j] = phase * wv * chi.c[j];
    return r;
  }

  Spinor2 operator()(const Event& e) const {
    return plain_spinor(eval_at(EventT<Complex>{e.t, e.x, e.y, e.z}));
  }
};

/// Two-component family of the given helicity; positive rides on chi+ with a
/// (s0, s2) component, negative on chi- with a (s0, s3) component.
inline WeylSpinor weyl_spinor(const GeneratorSet& gen, const Frame& frame,
                              Helicity helicity, WComponent w) {
  if (std::abs(gen.phi - frame.phi) > 1e-12)
    throw InvalidGeneratorError("generator angle and frame angle disagree");
  return WeylSpinor{gen, frame, helicity, std::move(w)};
}

}  // namespace degen
