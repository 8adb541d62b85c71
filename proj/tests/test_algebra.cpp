#include <catch_amalgamated.hpp>

#include <cmath>

#include "degen/algebra.hpp"
#include "degen/random.hpp"

using namespace degen;

namespace {
constexpr double kPhi = 0.5235987755982988;  // pi/6
}

TEST_CASE("gamma matrices satisfy the Clifford algebra") {
  const double eta[4] = {1, -1, -1, -1};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Matrix4C anti = gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu);
      Matrix4C want;
      if (mu == nu)
        for (int i = 0; i < 4; ++i) want(i, i) = 2.0 * eta[mu];
      CHECK((anti - want).max_abs() < 1e-15);
    }
}

TEST_CASE("pauli matrices square to identity and anticommute") {
  for (int i = 1; i <= 3; ++i) {
    const Matrix2C sq = pauli(i) * pauli(i);
    CHECK((sq - Matrix2C::identity()).max_abs() < 1e-15);
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      const Matrix2C anti = pauli(i) * pauli(j) + pauli(j) * pauli(i);
      CHECK(anti.max_abs() < 1e-15);
    }
  CHECK((pauli(0) - Matrix2C::identity()).max_abs() == 0.0);
}

TEST_CASE("gamma tilde matches gamma0 + i gamma1 gamma2 gamma3") {
  const Complex i(0, 1);
  const Matrix4C want = gamma(0) + i * (gamma(1) * gamma(2) * gamma(3));
  CHECK((gamma_tilde() - want).max_abs() < 1e-15);
}

TEST_CASE("kernel matrix annihilates both base spinors") {
  for (double phi : {0.0, kPhi, -0.9, 1.2}) {
    const Matrix4C k = kernel_matrix(phi);
    CHECK(norm(k.apply(base_u(phi))) < 1e-15);
    CHECK(norm(k.apply(base_v(phi))) < 1e-15);
  }
}

TEST_CASE("base spinors are dagger-orthogonal") {
  // Note the pair is orthogonal but not equal-norm:
  // |u|^2 = 2cos^2 + 2(1-sin)^2 while |v|^2 = 2cos^2 + 2(1+sin)^2.
  for (double phi : {0.0, kPhi, -0.9, 1.2}) {
    Complex dot;
    const Spinor4 u = base_u(phi), v = base_v(phi);
    for (int j = 0; j < 4; ++j) dot += std::conj(u.c[j]) * v.c[j];
    CHECK(std::abs(dot) < 1e-15);
    const double c = std::cos(phi), s = std::sin(phi);
    CHECK_THAT(norm2(u), Catch::Matchers::WithinRel(2 * c * c + 2 * (1 - s) * (1 - s), 1e-14));
    CHECK_THAT(norm2(v), Catch::Matchers::WithinRel(2 * c * c + 2 * (1 + s) * (1 + s), 1e-14));
  }
}

TEST_CASE("kernel matrix equals the kappa contraction of gammas") {
  // kernel = kappa_mu gamma^mu with the spatial sign flip of the contraction
  for (double phi : {kPhi, -0.4}) {
    const double c = std::cos(phi), s = std::sin(phi);
    const Matrix4C want = gamma(0) - c * gamma(1) - s * gamma(3);
    CHECK((kernel_matrix(phi) - want).max_abs() == 0.0);
  }
}

TEST_CASE("bilinear modes: dagger conjugates, transpose does not") {
  Spinor4 psi{{Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(-1, 1)}};
  const Complex dag = bilinear(psi, Matrix4C::identity(), psi, BilinearMode::dagger);
  CHECK_THAT(dag.real(), Catch::Matchers::WithinAbs(norm2(psi), 1e-13));
  CHECK(std::abs(dag.imag()) < 1e-15);
  Complex plain;
  for (int j = 0; j < 4; ++j) plain += psi.c[j] * psi.c[j];
  const Complex tr = bilinear(psi, Matrix4C::identity(), psi, BilinearMode::transpose);
  CHECK(std::abs(tr - plain) < 1e-15);
}

TEST_CASE("matrix inverse reproduces identity on random well-conditioned input") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix4C a = random_invertible_matrix(rng);
    const Matrix4C prod = a * inverse(a);
    CHECK((prod - Matrix4C::identity()).max_abs() < 1e-12);
  }
}

TEST_CASE("singular matrix is rejected") {
  Matrix4C a;  // rank 1
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(inverse(a), SingularMatrixError);
}

TEST_CASE("spinor arithmetic and norms") {
  Spinor4 a{{Complex(3, 4), Complex(0), Complex(0), Complex(0)}};
  CHECK(norm(a) == 5.0);
  CHECK(norm2(a) == 25.0);
  const Spinor4 b = Complex(2.0) * a;
  CHECK(norm(b) == 10.0);
  const Spinor4 c = a + b;
  CHECK(norm(c) == 15.0);
}

TEST_CASE("slash contractions are plain component sums") {
  const std::array<Complex, 4> a{Complex(2), Complex(3), Complex(5), Complex(7)};
  const Matrix4C want4 = Complex(2) * gamma(0) + Complex(3) * gamma(1) +
                         Complex(5) * gamma(2) + Complex(7) * gamma(3);
  CHECK((slash4(a) - want4).max_abs() == 0.0);
  const Matrix2C want2 = Complex(2) * pauli(0) + Complex(3) * pauli(1) +
                         Complex(5) * pauli(2) + Complex(7) * pauli(3);
  CHECK((slash2(a) - want2).max_abs() == 0.0);
}
