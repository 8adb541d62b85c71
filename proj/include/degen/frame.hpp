#pragma once

// Angle-parametrized linear coordinate transform between event coordinates
// (t, x, y, z) and the separable coordinates (s0, s1, s2, s3).
//
// The forward map (columns ordered x, y, z, t against rows s1, s2, s3, s0)
// has closed-form rows
//   s1 = sec(phi) x
//   s2 =  x tan(phi)/2 + i y sec(phi)/2 - z/2
//   s3 = -x tan(phi)/2 + i y sec(phi)/2 + z/2
//   s0 = t - x cos(phi) - z sin(phi)
// which are exactly the rows of the cached inverse matrix. s2 and s3 are
// complex conjugates on real events; s0 and s1 stay exactly real.

#include <array>
#include <cmath>
#include <complex>

#include "degen/algebra.hpp"
#include "degen/dual.hpp"
#include "degen/errors.hpp"
#include "degen/expr.hpp"

namespace degen {

inline constexpr double kAngleGuard = 1e-6;       // minimum |cos(phi)|
inline constexpr double kRealEventTol = 1e-10;    // from_s imaginary residue

template <class T>
struct EventT {
  T t{}, x{}, y{}, z{};
};
using Event = EventT<double>;

template <class T>
struct SCoordsT {
  T s0{}, s1{}, s2{}, s3{};
};
using SCoords = SCoordsT<Complex>;

struct Frame {
  double phi = 0;
  double cos_phi = 1, sin_phi = 0, sec_phi = 1, tan_phi = 0;
  Matrix4C pi;       // maps (s1, s2, s3, s0) to (x, y, z, t)
  Matrix4C pi_inv;   // closed-form inverse, consistency-checked at build
};

/// Build the transform for a given angle. Throws NearSingularAngleError when
/// cos(phi) is within the guard of zero, where the map degenerates.
inline Frame make_frame(double phi) {
  const double c = std::cos(phi);
  if (std::abs(c) < kAngleGuard) throw NearSingularAngleError(phi);
  Frame f;
  f.phi = phi;
  f.cos_phi = c;
  f.sin_phi = std::sin(phi);
  f.sec_phi = 1.0 / c;
  f.tan_phi = f.sin_phi / c;

  const Complex i(0, 1);
  Matrix4C& P = f.pi;
  P(0, 0) = c;
  P(1, 1) = -i * c;
  P(1, 2) = -i * c;
  P(2, 0) = f.sin_phi;
  P(2, 1) = -1;
  P(2, 2) = 1;
  P(3, 0) = 1;
  P(3, 1) = -f.sin_phi;
  P(3, 2) = f.sin_phi;
  P(3, 3) = 1;

  Matrix4C& Q = f.pi_inv;
  Q(0, 0) = f.sec_phi;
  Q(1, 0) = 0.5 * f.tan_phi;
  Q(1, 1) = 0.5 * i * f.sec_phi;
  Q(1, 2) = -0.5;
  Q(2, 0) = -0.5 * f.tan_phi;
  Q(2, 1) = 0.5 * i * f.sec_phi;
  Q(2, 2) = 0.5;
  Q(3, 0) = -c;
  Q(3, 2) = -f.sin_phi;
  Q(3, 3) = 1;

  const Matrix4C prod = P * Q;
  const Matrix4C resid = prod - Matrix4C::identity();
  if (resid.max_abs() > 1e-13)
    throw SingularMatrixError("transform inverse inconsistent with forward map");
  const Matrix4C numeric = inverse(P);
  if ((numeric - Q).max_abs() > 1e-12)
    throw SingularMatrixError("closed-form inverse disagrees with numeric inverse");
  return f;
}

/// Forward transform; T may be double, Complex, or a dual scalar.
template <class T>
auto to_s(const Frame& f, const EventT<T>& e) {
  if constexpr (std::is_same_v<T, double>) {
    // promote real events so s2/s3 can carry their imaginary parts
    return to_s(f, EventT<Complex>{Complex(e.t), Complex(e.x), Complex(e.y), Complex(e.z)});
  } else {
    const Complex ihalf_sec(0, 0.5 * f.sec_phi);
    SCoordsT<T> s;
    s.s1 = f.sec_phi * e.x;
    s.s2 = (0.5 * f.tan_phi) * e.x + ihalf_sec * e.y + (-0.5) * e.z;
    s.s3 = (-0.5 * f.tan_phi) * e.x + ihalf_sec * e.y + 0.5 * e.z;
    s.s0 = e.t + (-f.cos_phi) * e.x + (-f.sin_phi) * e.z;
    return s;
  }
}

/// Inverse transform back to a real event. Throws NonRealEventError when the
/// imaginary residue exceeds kRealEventTol.
inline Event from_s(const Frame& f, const SCoords& s) {
  const Complex i(0, 1);
  const Complex x = f.cos_phi * s.s1;
  const Complex y = -i * f.cos_phi * (s.s2 + s.s3);
  const Complex z = f.sin_phi * s.s1 - s.s2 + s.s3;
  const Complex t = s.s1 - f.sin_phi * s.s2 + f.sin_phi * s.s3 + s.s0;
  const double residue = std::max({std::abs(t.imag()), std::abs(x.imag()),
                                   std::abs(y.imag()), std::abs(z.imag())});
  if (residue > kRealEventTol) throw NonRealEventError(residue);
  return Event{t.real(), x.real(), y.real(), z.real()};
}

/// Checks the substitution rule for first derivatives under an invertible
/// linear change of variables x = A s: the directional derivative operator
/// D_i = sum_j (A^T)_ij d/dx_j applied to U equals d/ds_i of U(A s).
/// Both sides are formed by central differences of step `step`; the returned
/// residual is the max component difference, second order in the step.
inline double operator_transform_residual(const Matrix4C& a, const Expr& u,
                                          const std::array<double, 4>& point, double step) {
  if (condition_inf(a) > 1e8)
    throw SingularMatrixError("matrix too ill-conditioned for the substitution check");
  if (u.vars.size() != 4) throw Error("expression must declare exactly 4 variables");

  auto eval_at = [&](const std::array<Complex, 4>& p) {
    Bindings<Complex> b;
    for (std::size_t j = 0; j < 4; ++j) b.set(u.vars[j], p[j]);
    return eval_generic(u, b);
  };

  std::array<Complex, 4> p0;
  for (std::size_t j = 0; j < 4; ++j) p0[j] = point[j];

  // gradient of U in the original coordinates
  std::array<Complex, 4> grad;
  for (std::size_t j = 0; j < 4; ++j) {
    auto pp = p0, pm = p0;
    pp[j] += step;
    pm[j] -= step;
    grad[j] = (eval_at(pp) - eval_at(pm)) / (2.0 * step);
  }

  double worst = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    Complex lhs;
    for (std::size_t j = 0; j < 4; ++j) lhs += a(j, i) * grad[j];
    // d/ds_i of U(A s) via points x +- step * (column i of A)
    std::array<Complex, 4> pp = p0, pm = p0;
    for (std::size_t j = 0; j < 4; ++j) {
      pp[j] += step * a(j, i);
      pm[j] -= step * a(j, i);
    }
    const Complex rhs = (eval_at(pp) - eval_at(pm)) / (2.0 * step);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace degen
