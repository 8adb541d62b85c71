#pragma once

// Fixed-size complex matrix and spinor value types plus the gamma/Pauli
// constants used throughout. Dimensions are fixed at 2 and 4; no general
// linear-algebra machinery is pulled in.
//
// Representation: g0 = diag(1,1,-1,-1), gi = [[0, si], [-si, 0]] with the
// standard Pauli matrices si. Index convention everywhere is component sums
// a_mu * g^mu with mu = 0..3 mapping to (t, x, y, z); no metric raising.

#include <array>
#include <cmath>
#include <cstddef>

#include "degen/dual.hpp"
#include "degen/errors.hpp"

namespace degen {

template <class T, std::size_t N>
struct SpinorT {
  std::array<T, N> c{};

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }

  friend SpinorT operator+(const SpinorT& a, const SpinorT& b) {
    SpinorT r;
    for (std::size_t i = 0; i < N; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend SpinorT operator-(const SpinorT& a, const SpinorT& b) {
    SpinorT r;
    for (std::size_t i = 0; i < N; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  template <class S>
  friend SpinorT operator*(const S& s, const SpinorT& a) {
    SpinorT r;
    for (std::size_t i = 0; i < N; ++i) r.c[i] = s * a.c[i];
    return r;
  }
};

using Spinor4 = SpinorT<Complex, 4>;
using Spinor2 = SpinorT<Complex, 2>;

template <std::size_t N>
double norm2(const SpinorT<Complex, N>& a) {
  double s = 0;
  for (const auto& ci : a.c) s += std::norm(ci);
  return s;
}

template <std::size_t N>
double norm(const SpinorT<Complex, N>& a) {
  return std::sqrt(norm2(a));
}

/// Keep only value slots of a dual spinor.
template <class T, std::size_t N>
SpinorT<Complex, N> plain_spinor(const SpinorT<T, N>& a) {
  SpinorT<Complex, N> r;
  for (std::size_t i = 0; i < N; ++i) r.c[i] = plain_value(a.c[i]);
  return r;
}

template <std::size_t N>
struct MatrixC {
  std::array<Complex, N * N> e{};

  Complex& operator()(std::size_t i, std::size_t j) { return e[i * N + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return e[i * N + j]; }

  static MatrixC identity() {
    MatrixC m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  friend MatrixC operator+(const MatrixC& a, const MatrixC& b) {
    MatrixC r;
    for (std::size_t i = 0; i < N * N; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
  friend MatrixC operator-(const MatrixC& a, const MatrixC& b) {
    MatrixC r;
    for (std::size_t i = 0; i < N * N; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
  }
  friend MatrixC operator*(const Complex& s, const MatrixC& a) {
    MatrixC r;
    for (std::size_t i = 0; i < N * N; ++i) r.e[i] = s * a.e[i];
    return r;
  }
  friend MatrixC operator*(const MatrixC& a, const MatrixC& b) {
    MatrixC r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  MatrixC transposed() const {
    MatrixC r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Complex trace() const {
    Complex t;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  /// Apply to a spinor over any scalar the entries can multiply.
  template <class T>
  SpinorT<T, N> apply(const SpinorT<T, N>& x) const {
    SpinorT<T, N> r;
    for (std::size_t i = 0; i < N; ++i) {
      T acc{};
      for (std::size_t j = 0; j < N; ++j) acc = acc + (*this)(i, j) * x.c[j];
      r.c[i] = acc;
    }
    return r;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : e) m = std::max(m, std::abs(v));
    return m;
  }
};

using Matrix4C = MatrixC<4>;
using Matrix2C = MatrixC<2>;

inline double norm_inf(const Matrix4C& a) {
  double best = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < 4; ++j) row += std::abs(a(i, j));
    best = std::max(best, row);
  }
  return best;
}

/// Gaussian elimination with partial pivoting. Throws SingularMatrixError on
/// a vanishing pivot.
inline Matrix4C inverse(const Matrix4C& a) {
  Matrix4C m = a;
  Matrix4C inv = Matrix4C::identity();
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 4; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (std::abs(m(piv, col)) < 1e-300)
      throw SingularMatrixError("zero pivot in 4x4 inverse");
    if (piv != col)
      for (std::size_t j = 0; j < 4; ++j) {
        std::swap(m(col, j), m(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    const Complex d = m(col, col);
    for (std::size_t j = 0; j < 4; ++j) {
      m(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col) continue;
      const Complex f = m(r, col);
      if (f == Complex{}) continue;
      for (std::size_t j = 0; j < 4; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

inline double condition_inf(const Matrix4C& a) {
  return norm_inf(a) * norm_inf(inverse(a));
}

// ---- constant matrices ----

namespace detail {
inline Matrix2C pauli_matrix(int mu) {
  Matrix2C m;
  switch (mu) {
    case 0: m(0, 0) = 1; m(1, 1) = 1; break;
    case 1: m(0, 1) = 1; m(1, 0) = 1; break;
    case 2: m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
    default: m(0, 0) = 1; m(1, 1) = -1; break;
  }
  return m;
}

inline Matrix4C dirac_matrix(int mu) {
  Matrix4C g;
  if (mu == 0) {
    g(0, 0) = 1; g(1, 1) = 1; g(2, 2) = -1; g(3, 3) = -1;
    return g;
  }
  const Matrix2C s = pauli_matrix(mu);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      g(i, j + 2) = s(i, j);
      g(i + 2, j) = -s(i, j);
    }
  return g;
}
}  // namespace detail

/// pauli(0) is the 2x2 identity.
inline const Matrix2C& pauli(int mu) {
  static const std::array<Matrix2C, 4> table = {
      detail::pauli_matrix(0), detail::pauli_matrix(1),
      detail::pauli_matrix(2), detail::pauli_matrix(3)};
  return table[mu];
}

inline const Matrix4C& gamma(int mu) {
  static const std::array<Matrix4C, 4> table = {
      detail::dirac_matrix(0), detail::dirac_matrix(1),
      detail::dirac_matrix(2), detail::dirac_matrix(3)};
  return table[mu];
}

/// g0 + i g1 g2 g3; square-zero, trace-zero, blocks [[I, I], [-I, -I]].
inline const Matrix4C& gamma_tilde() {
  static const Matrix4C gt = gamma(0) + Complex(0, 1) * (gamma(1) * gamma(2) * gamma(3));
  return gt;
}

/// Component sum a_mu g^mu.
inline Matrix4C slash4(const std::array<Complex, 4>& a) {
  Matrix4C m;
  for (int mu = 0; mu < 4; ++mu) m = m + a[mu] * gamma(mu);
  return m;
}

/// Component sum a_mu s^mu with s^0 = I.
inline Matrix2C slash2(const std::array<Complex, 4>& a) {
  Matrix2C m;
  for (int mu = 0; mu < 4; ++mu) m = m + a[mu] * pauli(mu);
  return m;
}

/// g0 - cos(phi) g1 - sin(phi) g3. Annihilates the whole degenerate family.
inline Matrix4C kernel_matrix(double phi) {
  return gamma(0) - Complex(std::cos(phi)) * gamma(1) - Complex(std::sin(phi)) * gamma(3);
}

enum class BilinearMode { dagger, transpose };

/// left^dagger M right or left^T M right.
inline Complex bilinear(const Spinor4& left, const Matrix4C& m, const Spinor4& right,
                        BilinearMode mode) {
  const Spinor4 mr = m.apply(right);
  Complex acc;
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex l = mode == BilinearMode::dagger ? std::conj(left.c[i]) : left.c[i];
    acc += l * mr.c[i];
  }
  return acc;
}

// ---- degenerate base spinors ----

/// First base spinor of the two-parameter degenerate family.
inline Spinor4 base_u(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {{Complex(c), Complex(1 - s), Complex(c), Complex(1 - s)}};
}

/// Second base spinor; together with base_u it spans the kernel family.
inline Spinor4 base_v(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {{Complex(-c), Complex(1 + s), Complex(c), Complex(-1 - s)}};
}

/// Two-component analogues used by the single-helicity solutions.
inline Spinor2 base_chi_plus(double phi) {
  return {{Complex(std::cos(phi)), Complex(1 - std::sin(phi))}};
}
inline Spinor2 base_chi_minus(double phi) {
  return {{Complex(-std::cos(phi)), Complex(1 + std::sin(phi))}};
}

}  // namespace degen
