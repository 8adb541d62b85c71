#include <catch_amalgamated.hpp>

#include <cmath>

#include "degen/dual.hpp"
#include "degen/expr.hpp"

using namespace degen;

namespace {
// first derivative of expression in x at (x, y) via a seeded dual
Complex ddx(const Expr& e, double x, double y) {
  const Bindings<CDual> b{{"x", CDual(Complex(x), Complex(1))},
                          {"y", CDual(Complex(y), Complex(0))}};
  return eval_dual(e, b).d;
}
}  // namespace

TEST_CASE("dual arithmetic differentiates elementary functions") {
  const double x = 0.7, y = -0.4;
  struct Case {
    const char* text;
    double want;  // analytic d/dx at (0.7, -0.4)
  };
  const Case cases[] = {
      {"sin(x)", std::cos(x)},
      {"cos(x)*y", -std::sin(x) * y},
      {"exp(2*x)", 2 * std::exp(2 * x)},
      {"log(x)", 1 / x},
      {"sqrt(x)", 0.5 / std::sqrt(x)},
      {"tanh(x)", 1 - std::tanh(x) * std::tanh(x)},
      {"sinh(x)", std::cosh(x)},
      {"cosh(x)", std::sinh(x)},
      {"x^3", 3 * x * x},
      {"x^y", y * std::pow(x, y - 1)},
      {"y/x", -y / (x * x)},
      {"tan(x)", 1 / (std::cos(x) * std::cos(x))},
  };
  for (const auto& c : cases) {
    const Expr e = parse(c.text, {"x", "y"});
    const Complex d = ddx(e, x, y);
    INFO(c.text);
    CHECK_THAT(d.real(), Catch::Matchers::WithinAbs(c.want, 1e-14));
    CHECK(std::abs(d.imag()) < 1e-15);
  }
}

TEST_CASE("dual value slot equals plain evaluation exactly") {
  const Expr e = parse("sin(x)*exp(y) + x^2/(1 + y^2)", {"x", "y"});
  const Bindings<Complex> bp{{"x", Complex(0.9)}, {"y", Complex(0.3)}};
  const Bindings<CDual> bd{{"x", CDual(Complex(0.9), Complex(1))},
                           {"y", CDual(Complex(0.3), Complex(0))}};
  CHECK(eval(e, bp) == eval_dual(e, bd).v);
}

TEST_CASE("nested duals give exact mixed partials") {
  // d2/dxdy of sin(x*y) = cos(x*y) - x*y*sin(x*y)
  using D2 = Dual<CDual>;
  const double x = 1.3, y = 0.4;
  const D2 dx(CDual(Complex(x), Complex(1)), CDual(Complex(0), Complex(0)));
  const D2 dy(CDual(Complex(y), Complex(0)), CDual(Complex(1), Complex(0)));
  const D2 r = sin(dx * dy);
  const double want = std::cos(x * y) - x * y * std::sin(x * y);
  CHECK_THAT(r.d.d.real(), Catch::Matchers::WithinAbs(want, 1e-14));
}

TEST_CASE("abs is rejected under dual differentiation") {
  const Expr e = parse("abs(x)", {"x"});
  const Bindings<CDual> b{{"x", CDual(Complex(0.5), Complex(1))}};
  CHECK_THROWS_AS(eval_dual(e, b), NonAnalyticNodeError);
}

TEST_CASE("integer powers avoid the log branch") {
  // x^3 at a negative base differentiates cleanly; pow via exp(log) would not
  const Expr e = parse("x^3", {"x"});
  const Bindings<CDual> b{{"x", CDual(Complex(-2.0), Complex(1))}};
  const CDual r = eval_dual(e, b);
  CHECK_THAT(r.v.real(), Catch::Matchers::WithinAbs(-8.0, 1e-15));
  CHECK_THAT(r.d.real(), Catch::Matchers::WithinAbs(12.0, 1e-14));
}
