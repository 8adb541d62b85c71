#pragma once

// Numerical verification: equation residuals, degeneracy checks, spin
// expectations, localization probes.
//
// Residual reports carry both the absolute 2-norm of the residual and a
// relative norm scaled by the largest of the derivative, potential and mass
// term norms, so "small" is meaningful regardless of how the spinor itself is
// normalized. Dual-mode derivatives are exact; central differences exist as
// an independent route with second-order step dependence.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "degen/algebra.hpp"
#include "degen/dual.hpp"
#include "degen/empot.hpp"
#include "degen/errors.hpp"
#include "degen/expr.hpp"
#include "degen/frame.hpp"
#include "degen/generators.hpp"
#include "degen/solution.hpp"

namespace degen {

struct DiffConfig {
  DerivMode mode = DerivMode::dual;
  double step = 1e-5;  // central-difference step, clamped to [1e-8, 1e-1]
};

namespace detail {
inline double checked_step(double step) {
  if (!(step >= 1e-8 && step <= 1e-1))
    throw Error("finite-difference step must lie in [1e-8, 1e-1]");
  return step;
}

inline EventT<CDual> seeded_event(const Event& e, int dir) {
  return {CDual(Complex(e.t), Complex(dir == 0 ? 1 : 0)),
          CDual(Complex(e.x), Complex(dir == 1 ? 1 : 0)),
          CDual(Complex(e.y), Complex(dir == 2 ? 1 : 0)),
          CDual(Complex(e.z), Complex(dir == 3 ? 1 : 0))};
}
}  // namespace detail

/// Partial derivative of a spinor field along direction 0..3 = (t, x, y, z).
template <class Field>
SpinorT<Complex, Field::ncomp> differentiate(const Field& field, const Event& e, int dir,
                                             const DiffConfig& cfg) {
  constexpr std::size_t n = Field::ncomp;
  if (cfg.mode == DerivMode::dual) {
    const auto d = field.eval_at(detail::seeded_event(e, dir));
    SpinorT<Complex, n> r;
    for (std::size_t i = 0; i < n; ++i) r.c[i] = d.c[i].d;
    return r;
  }
  const double h = detail::checked_step(cfg.step);
  Event ep = e, em = e;
  (dir == 0 ? ep.t : dir == 1 ? ep.x : dir == 2 ? ep.y : ep.z) += h;
  (dir == 0 ? em.t : dir == 1 ? em.x : dir == 2 ? em.y : em.z) -= h;
  const auto vp = field(ep);
  const auto vm = field(em);
  SpinorT<Complex, n> r;
  for (std::size_t i = 0; i < n; ++i) r.c[i] = (vp.c[i] - vm.c[i]) / (2 * h);
  return r;
}

struct ResidualReport {
  std::vector<Complex> residual;
  double abs_norm = 0;
  double rel_norm = 0;
  DerivMode mode = DerivMode::dual;
  double step = 0;
};

namespace detail {
template <std::size_t N>
ResidualReport finish_report(const SpinorT<Complex, N>& deriv_term,
                             const SpinorT<Complex, N>& pot_term,
                             const SpinorT<Complex, N>& mass_term, const DiffConfig& cfg) {
  SpinorT<Complex, N> res = deriv_term + pot_term - mass_term;
  ResidualReport rep;
  rep.residual.assign(res.c.begin(), res.c.end());
  rep.abs_norm = norm(res);
  const double scale =
      std::max({norm(deriv_term), norm(pot_term), norm(mass_term), 1e-300});
  rep.rel_norm = rep.abs_norm / scale;
  rep.mode = cfg.mode;
  rep.step = cfg.mode == DerivMode::central ? cfg.step : 0.0;
  return rep;
}
}  // namespace detail

/// Residual of i g^mu d_mu psi + a_mu g^mu psi - m psi at one event.
/// `pot` maps an event to the four real potential components.
template <class Field, class Pot>
ResidualReport dirac_residual(const Field& field, const Pot& pot, double mass,
                              const Event& e, const DiffConfig& cfg = {}) {
  static_assert(Field::ncomp == 4);
  const Complex i(0, 1);
  SpinorT<Complex, 4> deriv_term;
  for (int mu = 0; mu < 4; ++mu) {
    const auto d = differentiate(field, e, mu, cfg);
    deriv_term = deriv_term + i * gamma(mu).apply(d);
  }
  const Spinor4 value = field(e);
  const PotentialSample a = pot(e);
  const SpinorT<Complex, 4> pot_term = slash4(a.as_complex()).apply(value);
  const SpinorT<Complex, 4> mass_term = Complex(mass) * value;
  return detail::finish_report(deriv_term, pot_term, mass_term, cfg);
}

/// Residual of the two-component equation. Positive helicity:
/// i s^mu d_mu psi + a_mu s^mu psi. Negative helicity adds -2i s0 d_t psi
/// - 2 a0 s0 psi to the same expression.
template <class Field, class Pot>
ResidualReport weyl_residual(const Field& field, const Pot& pot, Helicity helicity,
                             const Event& e, const DiffConfig& cfg = {}) {
  static_assert(Field::ncomp == 2);
  const Complex i(0, 1);
  SpinorT<Complex, 2> deriv_term;
  for (int mu = 0; mu < 4; ++mu) {
    const auto d = differentiate(field, e, mu, cfg);
    deriv_term = deriv_term + i * pauli(mu).apply(d);
    if (helicity == Helicity::negative && mu == 0)
      deriv_term = deriv_term + Complex(-2) * (i * d);
  }
  const Spinor2 value = field(e);
  const PotentialSample a = pot(e);
  auto coeffs = a.as_complex();
  if (helicity == Helicity::negative) coeffs[0] = -coeffs[0];
  const SpinorT<Complex, 2> pot_term = slash2(coeffs).apply(value);
  return detail::finish_report(deriv_term, pot_term, SpinorT<Complex, 2>{}, cfg);
}

/// The two defining bilinears: the first must vanish on the degenerate
/// family, the second (the pairing against g2) must not.
struct DegeneracyConditions {
  Complex annihilator;  // psi^dag gamma_tilde psi
  Complex pairing;      // psi^T g2 psi
};

inline DegeneracyConditions degeneracy_conditions(const Spinor4& psi) {
  return {bilinear(psi, gamma_tilde(), psi, BilinearMode::dagger),
          bilinear(psi, gamma(2), psi, BilinearMode::transpose)};
}

struct SpinTriple {
  double sx = 0, sy = 0, sz = 0;
};

/// Spin expectation triple (i/2) psi^dag g^a g^b psi for (ab) = (23), (31),
/// (12). Throws NonRealSpinError if a bilinear picks up a significant
/// imaginary part relative to the spinor norm.
inline SpinTriple spin_expectation(const Spinor4& psi) {
  const Complex i(0, 1);
  const double scale = std::max(norm2(psi), 1e-300);
  auto comp = [&](int a, int b) {
    const Complex v = 0.5 * i * bilinear(psi, gamma(a) * gamma(b), psi, BilinearMode::dagger);
    if (std::abs(v.imag()) > 1e-12 * scale) throw NonRealSpinError(v.imag());
    return v.real();
  };
  return {comp(2, 3), comp(3, 1), comp(1, 2)};
}

/// Closed-form spin of the massive family per unit spinor norm squared:
/// (cos, 0, sin)(phi)/2 times (2 m^2 cos^2 phi - 2k^2)/(2 m^2 cos^2 phi + 2k^2).
/// Real k only.
inline SpinTriple spin_closed_form_massive(double mass, Complex k, double phi) {
  if (std::abs(k.imag()) > 0) throw ComplexKUnsupportedError();
  const double c2 = std::cos(phi) * std::cos(phi);
  const double kk = k.real() * k.real();
  const double ratio = (2 * mass * mass * c2 - 2 * kk) / (2 * mass * mass * c2 + 2 * kk);
  return {0.5 * std::cos(phi) * ratio, 0.0, 0.5 * std::sin(phi) * ratio};
}

/// Closed-form spin of the massless preset family (absolute values; the
/// preset spinor norm is itself constant).
inline SpinTriple spin_closed_form_massless(Complex ct, Complex cr, double phi) {
  const double t2 = std::norm(ct), r2 = std::norm(cr);
  const double common = r2 - t2 + (t2 + r2) * std::sin(phi);
  return {-2 * std::cos(phi) * common, 0.0, -2 * std::sin(phi) * common};
}

/// Residual of the mixed-derivative wave equation satisfied by the separable
/// factor: d2/ds2 ds3 W + m^2 cos^2(phi) W, evaluated with nested duals so
/// the derivative is exact. `s2_coeff_scale` rescales the s2 exponent
/// coefficient; any value other than 1 breaks the product relation between
/// the two exponent slopes and serves as a negative control.
inline Complex separable_wave_residual(const GeneratorSet& gen, const SCoords& s,
                                       double s2_coeff_scale = 1.0) {
  using D2 = Dual<CDual>;
  SCoordsT<D2> sd;
  sd.s0 = D2(CDual(s.s0, Complex(0)), CDual(Complex(0), Complex(0)));
  sd.s1 = D2(CDual(s.s1, Complex(0)), CDual(Complex(0), Complex(0)));
  // outer derivative along s2, inner along s3
  sd.s2 = D2(CDual(s.s2, Complex(0)), CDual(Complex(1), Complex(0)));
  sd.s3 = D2(CDual(s.s3, Complex(1)), CDual(Complex(0), Complex(0)));
  const double c = std::cos(gen.phi);
  D2 w;
  if (s2_coeff_scale == 1.0) {
    w = separable_w(gen, sd);
  } else {
    const Complex coef = -s2_coeff_scale * (gen.mass * gen.mass * c * c) / gen.k;
    using std::exp;
    w = envelope_g(gen, sd.s0) * exp(coef * sd.s2 + gen.k * sd.s3);
  }
  const Complex mixed = w.d.d;  // coefficient of both seeds
  const Complex value = w.v.v;
  return mixed + gen.mass * gen.mass * c * c * value;
}

struct DecayProbe {
  std::string axis;               // "+t", "-x", ...
  std::vector<double> radii;
  std::vector<double> magnitudes; // |psi| at each radius
  double at_origin = 0;
  bool strictly_decreasing = true;
  double final_ratio = 0;         // |psi(r_max)| / |psi(0)|
};

/// Sample |psi| along a coordinate half-axis. axis is one of
/// "+t" "-t" "+x" "-x" "+z" "-z" (the y axis plays no role in the family's
/// localization and is allowed too: "+y" "-y").
template <class Field>
DecayProbe decay_probe(const Field& field, const std::string& axis,
                       const std::vector<double>& radii) {
  const double sign = axis.at(0) == '-' ? -1.0 : 1.0;
  const char ax = axis.at(1);
  auto event_at = [&](double r) {
    Event e{};
    (ax == 't' ? e.t : ax == 'x' ? e.x : ax == 'y' ? e.y : e.z) = sign * r;
    return e;
  };
  DecayProbe probe;
  probe.axis = axis;
  probe.radii = radii;
  probe.at_origin = norm(field(event_at(0.0)));
  double prev = probe.at_origin;
  for (double r : radii) {
    const double m = norm(field(event_at(r)));
    probe.magnitudes.push_back(m);
    if (!(m < prev)) probe.strictly_decreasing = false;
    prev = m;
  }
  probe.final_ratio =
      probe.at_origin > 0 ? probe.magnitudes.back() / probe.at_origin : 0.0;
  return probe;
}

/// log2 ratio of residuals at steps h and h/2; 2.0 means clean second order.
inline double convergence_order(double resid_h, double resid_h2) {
  if (!(resid_h > 1e-14) || !(resid_h2 > 1e-14))
    throw BelowNoiseFloorError(resid_h, resid_h2);
  return std::log2(resid_h / resid_h2);
}

}  // namespace degen
