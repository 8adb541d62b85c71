#pragma once

// Forward-mode dual numbers over an arbitrary field scalar.
//
// Dual<T> carries a value and one directional derivative. T is usually
// std::complex<double>; nesting (Dual<Dual<...>>) gives mixed second
// derivatives. Value-slot arithmetic is identical to plain arithmetic on T,
// so dual evaluation of any pipeline reproduces the plain result exactly.

#include <complex>
#include <type_traits>
#include <utility>

namespace degen {

using Complex = std::complex<double>;

template <class T>
struct Dual {
  T v{};  // value
  T d{};  // derivative

  constexpr Dual() = default;
  constexpr Dual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}

  // Promote any scalar T is constructible from (double, Complex, inner Dual).
  template <class U>
    requires(!std::is_same_v<std::remove_cvref_t<U>, Dual> && std::is_constructible_v<T, U>)
  constexpr Dual(U&& value) : v(std::forward<U>(value)), d{} {}
};

using CDual = Dual<Complex>;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<std::remove_cvref_t<T>>::value;

// A scalar that can mix with Dual<T> on one side of an operator.
template <class T, class U>
concept DualCompatible = !is_dual_v<U> && std::is_constructible_v<T, U>;

// ---- arithmetic ----

template <class T>
constexpr Dual<T> operator+(const Dual<T>& a) { return a; }
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }

template <class T>
constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  T q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

template <class T, class U>
  requires DualCompatible<T, U>
constexpr Dual<T> operator+(const Dual<T>& a, const U& b) { return {a.v + T(b), a.d}; }
template <class T, class U>
  requires DualCompatible<T, U>
constexpr Dual<T> operator+(const U& a, const Dual<T>& b) { return {T(a) + b.v, b.d}; }
template <class T, class U>
  requires DualCompatible<T, U>
constexpr Dual<T> operator-(const Dual<T>& a, const U& b) { return {a.v - T(b), a.d}; }
template <class T, class U>
  requires DualCompatible<T, U>
constexpr Dual<T> operator-(const U& a, const Dual<T>& b) { return {T(a) - b.v, -b.d}; }
template <class T, class U>
  requires DualCompatible<T, U>
constexpr Dual<T> operator*(const Dual<T>& a, const U& b) { return {a.v * T(b), a.d * T(b)}; }
template <class T, class U>
  requires DualCompatible<T, U>
constexpr Dual<T> operator*(const U& a, const Dual<T>& b) { return {T(a) * b.v, T(a) * b.d}; }
template <class T, class U>
  requires DualCompatible<T, U>
constexpr Dual<T> operator/(const Dual<T>& a, const U& b) { return {a.v / T(b), a.d / T(b)}; }
template <class T, class U>
  requires DualCompatible<T, U>
constexpr Dual<T> operator/(const U& a, const Dual<T>& b) {
  T q = T(a) / b.v;
  return {q, -q * b.d / b.v};
}

// ---- elementary functions (chain rule) ----

template <class T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.v);
  return {e, a.d * e};
}
template <class T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.v), a.d / a.v};
}
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}
template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.v), a.d * cos(a.v)};
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.v), -a.d * sin(a.v)};
}
template <class T>
Dual<T> tan(const Dual<T>& a) {
  using std::tan;
  T t = tan(a.v);
  return {t, a.d * (1.0 + t * t)};
}
template <class T>
Dual<T> sinh(const Dual<T>& a) {
  using std::cosh;
  using std::sinh;
  return {sinh(a.v), a.d * cosh(a.v)};
}
template <class T>
Dual<T> cosh(const Dual<T>& a) {
  using std::cosh;
  using std::sinh;
  return {cosh(a.v), a.d * sinh(a.v)};
}
template <class T>
Dual<T> tanh(const Dual<T>& a) {
  using std::tanh;
  T t = tanh(a.v);
  return {t, a.d * (1.0 - t * t)};
}
template <class T>
Dual<T> pow(const Dual<T>& a, const Dual<T>& b) {
  using std::exp;
  using std::log;
  // principal branch: a^b = exp(b log a)
  T lv = log(a.v);
  T p = exp(b.v * lv);
  return {p, p * (b.d * lv + b.v * a.d / a.v)};
}

// ---- scalar glue shared by Complex and Dual pipelines ----

/// Magnitude of the value slot; drives convergence tests so that dual and
/// plain evaluation make identical refinement decisions.
inline double value_magnitude(double x) { return x < 0 ? -x : x; }
inline double value_magnitude(const Complex& x) { return std::abs(x); }
template <class T>
double value_magnitude(const Dual<T>& x) { return value_magnitude(x.v); }

/// Strip derivative slots down to the plain complex value.
inline Complex plain_value(const Complex& x) { return x; }
inline Complex plain_value(double x) { return {x, 0.0}; }
template <class T>
Complex plain_value(const Dual<T>& x) { return plain_value(x.v); }

/// Integer power by repeated multiplication; keeps real inputs exactly real.
template <class T>
T ipow(T base, long n) {
  if (n < 0) return T(1.0) / ipow(base, -n);
  T acc(1.0);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

}  // namespace degen
