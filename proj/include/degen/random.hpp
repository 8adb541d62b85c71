#pragma once

// Seeded, platform-stable randomness for verification sweeps. Doubles are
// derived from raw mt19937_64 words rather than distribution objects so the
// same seed yields the same stream everywhere.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "degen/algebra.hpp"
#include "degen/expr.hpp"
#include "degen/frame.hpp"

namespace degen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double unit() { return (gen_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::uint64_t integer(std::uint64_t n) { return gen_() % n; }
  Complex complex_in(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }

  Event event_in(double box) {
    return {uniform(-box, box), uniform(-box, box), uniform(-box, box), uniform(-box, box)};
  }

 private:
  std::mt19937_64 gen_;
};

/// A smooth random shift field over (t, x, y, z), built from a small template
/// pool with random coefficients. Parsed text keeps the generator honest: the
/// sweep exercises the parser on every draw.
inline Expr random_shift_expr(Rng& rng) {
  std::array<std::string, 5> c;
  for (auto& s : c) s = std::to_string(rng.uniform(-1.5, 1.5));
  const std::string damp = std::to_string(rng.uniform(-0.4, 0.0));
  std::string text;
  switch (rng.integer(6)) {
    case 0:
      text = c[0] + " + " + c[1] + "*t + " + c[2] + "*x + " + c[3] + "*y + " + c[4] + "*z";
      break;
    case 1: text = c[0] + "*sin(" + c[1] + "*t + " + c[2] + "*z)"; break;
    case 2: text = c[0] + "*x*y + " + c[1] + "*t^2"; break;
    case 3: text = c[0] + "*cos(" + c[1] + "*x) * exp(" + damp + "*z^2)"; break;
    case 4: text = c[0] + "*tanh(" + c[1] + "*t) + " + c[2] + "*z"; break;
    default: text = c[0] + "*exp(" + damp + "*(x^2 + t^2))"; break;
  }
  return parse(text, {"t", "x", "y", "z"});
}

/// Random complex 4x4 matrix, diagonally dominant enough to stay
/// well-conditioned (condition checked by the caller when it matters).
inline Matrix4C random_invertible_matrix(Rng& rng) {
  Matrix4C a;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      a(i, j) = i == j ? Complex(rng.uniform(0.5, 0.9) * (rng.unit() < 0.5 ? -1.0 : 1.0),
                                 rng.uniform(-0.1, 0.1))
                       : rng.complex_in(-0.1, 0.1);
  return a;
}

}  // namespace degen
