#pragma once

// The acceptance suite: thirteen structured checks covering every family
// builder, both differentiation engines, the potential/field routes, the
// degeneracy sweep machinery, and the expression parser. Each check returns
// a CheckResult with the measured worst-case values so callers (the CLI
// `selftest` subcommand and the standalone acceptance binary) can print one
// line per check. Tolerances are pinned here, next to the measurements.
//
// Randomized draws use the seeded generator from random.hpp; the per-check
// stream is derived from the caller's seed so checks stay independent and
// reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "degen/algebra.hpp"
#include "degen/config.hpp"
#include "degen/dual.hpp"
#include "degen/empot.hpp"
#include "degen/errors.hpp"
#include "degen/expr.hpp"
#include "degen/frame.hpp"
#include "degen/generators.hpp"
#include "degen/random.hpp"
#include "degen/solution.hpp"
#include "degen/verify.hpp"

namespace degen::acceptance {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

inline constexpr double kPhiDefault = 3.14159265358979323846 / 6.0;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline Rng check_rng(std::uint64_t seed, int id) {
  return Rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(id + 1)));
}

inline GeneratorSet default_generators(K23Convention conv = K23Convention::derived,
                                       Complex k = Complex(0.5, 0.0)) {
  const Expr h = parse("sin(t)", {"t", "x", "y", "z"});
  return linear_family(0.3, -0.2, 0.7, h, kPhiDefault, 1.0, 1.0, k,
                       GaussianEnvelope{Complex(1.0, 0.0), 1.0, 2.0}, conv);
}

inline WComponent preset_component(Complex c = Complex(1.0, 0.0), double kI = 2.0) {
  return WComponent{WComponent::Preset{c, kI}};
}

template <class Check>
CheckResult guarded(int id, const std::string& name, Check&& body) {
  CheckResult r;
  r.id = id;
  r.name = name;
  try {
    body(r);
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  return r;
}

}  // namespace detail

/// 1. The kernel matrix annihilates every member of the two-parameter family,
/// for random amplitudes, angles and events.
inline CheckResult check_kernel_annihilation(std::uint64_t seed) {
  return detail::guarded(1, "kernel annihilation", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 1);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
      const double phi = rng.uniform(-1.45, 1.45);
      const Event e = rng.event_in(2.0);
      // amplitudes at the event: arbitrary magnitude and phase, modulated so
      // the draw genuinely depends on the event
      const Complex i1(0, 1);
      const Complex tval = std::polar(rng.uniform(0.3, 2.0), rng.uniform(0.0, 6.283185307)) *
                           std::exp(i1 * (0.5 * (e.t - e.x)));
      const Complex rval = std::polar(rng.uniform(0.3, 2.0), rng.uniform(0.0, 6.283185307)) *
                           std::exp(i1 * (0.3 * (e.y + e.z)));
      const Spinor4 psi = tval * base_u(phi) + rval * base_v(phi);
      const Spinor4 image = kernel_matrix(phi).apply(psi);
      worst = std::max(worst, norm(image) / norm(psi));
    }
    r.passed = worst <= 1e-12;
    r.detail = "max |K psi|/|psi| = " + detail::fmt(worst) + " (tol 1e-12)";
  });
}

/// 2. Shifting the potential along the kernel direction by ten random event
/// functions leaves the residual unchanged pointwise on a 5^4 grid, for the
/// massive family and both two-component helicities. At grid events where
/// every equation term vanishes identically the relative norm is 0/0 by
/// construction; invariance is asserted there on the absolute norm scaled by
/// the spinor magnitude, at the same tolerance.
inline CheckResult check_degeneracy_invariance(std::uint64_t seed) {
  return detail::guarded(2, "potential-shift invariance", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 2);
    const GeneratorSet gen = detail::default_generators();
    const Frame frame = make_frame(kPhiDefault);
    const MassiveSpinor mfield = massive_spinor(gen, frame);
    const WeylSpinor wplus =
        weyl_spinor(gen, frame, Helicity::positive, detail::preset_component());
    const WeylSpinor wminus =
        weyl_spinor(gen, frame, Helicity::negative, detail::preset_component());

    std::vector<Expr> shifts;
    for (int i = 0; i < 10; ++i) shifts.push_back(random_shift_expr(rng));

    const auto base_pot = [&](const Event& ev) { return potentials(gen, frame, ev); };

    double worst = 0;
    int ill_scaled = 0;
    auto run_family = [&](auto&& report_at, auto&& norm_at) {
      for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0})
          for (double y : {-2.0, -1.0, 0.0, 1.0, 2.0})
            for (double z : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
              const Event e{t, x, y, z};
              const ResidualReport base = report_at(e, base_pot);
              const double npsi = std::max(norm_at(e), 1e-300);
              const double scale =
                  base.rel_norm > 0 ? base.abs_norm / base.rel_norm : 0.0;
              const bool well_scaled = scale > 1e-8 * npsi;
              if (!well_scaled) ++ill_scaled;
              for (const Expr& s : shifts) {
                const auto shifted_pot = [&](const Event& ev) {
                  return shifted_potentials(gen, frame, s, ev);
                };
                const ResidualReport rep = report_at(e, shifted_pot);
                const double delta = well_scaled
                                         ? std::abs(rep.rel_norm - base.rel_norm)
                                         : std::abs(rep.abs_norm - base.abs_norm) / npsi;
                worst = std::max(worst, delta);
              }
            }
    };

    run_family(
        [&](const Event& e, auto&& pot) { return dirac_residual(mfield, pot, gen.mass, e); },
        [&](const Event& e) { return norm(mfield(e)); });
    run_family(
        [&](const Event& e, auto&& pot) {
          return weyl_residual(wplus, pot, Helicity::positive, e);
        },
        [&](const Event& e) { return norm(wplus(e)); });
    run_family(
        [&](const Event& e, auto&& pot) {
          return weyl_residual(wminus, pot, Helicity::negative, e);
        },
        [&](const Event& e) { return norm(wminus(e)); });

    r.passed = worst <= 1e-13;
    r.detail = "max residual-norm change = " + detail::fmt(worst) + " (tol 1e-13, " +
               std::to_string(ill_scaled) + " ill-scaled events via abs norm)";
  });
}

/// 3. The massive family solves its equation: dual-mode relative residual at
/// 100 random events, plus the central-difference oracle (order-2 convergence
/// toward zero between steps 1e-3 and 5e-4, and the documented tolerance at
/// step 1e-4).
inline CheckResult check_massive_exactness(std::uint64_t seed) {
  return detail::guarded(3, "massive family residuals", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 3);
    const GeneratorSet gen = detail::default_generators();
    const Frame frame = make_frame(kPhiDefault);
    const MassiveSpinor field = massive_spinor(gen, frame);
    const auto pot = [&](const Event& ev) { return potentials(gen, frame, ev); };

    double worst_dual = 0;
    for (int i = 0; i < 100; ++i) {
      const Event e = rng.event_in(2.0);
      worst_dual = std::max(worst_dual, dirac_residual(field, pot, gen.mass, e).rel_norm);
    }

    std::vector<double> orders;
    double worst_central = 0;
    for (int i = 0; i < 10; ++i) {
      const Event e = rng.event_in(2.0);
      const double r1 =
          dirac_residual(field, pot, gen.mass, e, {DerivMode::central, 1e-3}).rel_norm;
      const double r2 =
          dirac_residual(field, pot, gen.mass, e, {DerivMode::central, 5e-4}).rel_norm;
      orders.push_back(convergence_order(r1, r2));
      worst_central = std::max(
          worst_central,
          dirac_residual(field, pot, gen.mass, e, {DerivMode::central, 1e-4}).rel_norm);
    }
    std::nth_element(orders.begin(), orders.begin() + orders.size() / 2, orders.end());
    const double order = orders[orders.size() / 2];

    r.passed = worst_dual <= 1e-10 && order >= 1.8 && order <= 2.2 && worst_central <= 1e-6;
    r.detail = "dual max rel = " + detail::fmt(worst_dual) + " (tol 1e-10), central order = " +
               detail::fmt(order) + " (2.0 +- 0.2), central max rel @1e-4 = " +
               detail::fmt(worst_central) + " (tol 1e-6)";
  });
}

/// 4. Coefficient-assignment conventions: the derived assignment reproduces
/// the closed-form potentials exactly; the alternative assignment quoted in
/// prose (k2 and k3 exchanged in the phase) contradicts those same potentials
/// by a large residual.
inline CheckResult check_worked_example(std::uint64_t seed) {
  return detail::guarded(4, "coefficient-assignment conventions", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 4);
    const Frame frame = make_frame(kPhiDefault);
    const GeneratorSet gen_derived = detail::default_generators(K23Convention::derived);
    const GeneratorSet gen_printed = detail::default_generators(K23Convention::printed);
    const MassiveSpinor f_derived = massive_spinor(gen_derived, frame);
    const MassiveSpinor f_printed = massive_spinor(gen_printed, frame);
    // the reference potentials are those of the derived assignment, which
    // match the worked example's closed forms
    const auto pot = [&](const Event& ev) { return potentials(gen_derived, frame, ev); };

    const Event probe{2.0, 1.0, 1.0, 1.0};
    double derived_max = dirac_residual(f_derived, pot, 1.0, probe).rel_norm;
    double printed_probe = dirac_residual(f_printed, pot, 1.0, probe).rel_norm;
    std::vector<double> printed;
    for (int i = 0; i < 50; ++i) {
      const Event e = rng.event_in(2.0);
      derived_max = std::max(derived_max, dirac_residual(f_derived, pot, 1.0, e).rel_norm);
      printed.push_back(dirac_residual(f_printed, pot, 1.0, e).rel_norm);
    }
    std::nth_element(printed.begin(), printed.begin() + printed.size() / 2, printed.end());
    const double printed_median = printed[printed.size() / 2];

    r.passed = derived_max <= 1e-10 && printed_probe > 1e-3 && printed_median > 1e-3;
    r.detail = "derived max rel = " + detail::fmt(derived_max) +
               " (tol 1e-10), swapped rel at probe = " + detail::fmt(printed_probe) +
               ", median = " + detail::fmt(printed_median) + " (must exceed 1e-3)";
  });
}

/// 5. The massless four-component family and both two-component families
/// solve their equations against the shared potentials; pairing a spinor with
/// the wrong-helicity operator fails loudly.
inline CheckResult check_massless_weyl_exactness(std::uint64_t seed) {
  return detail::guarded(5, "massless and two-component residuals", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 5);
    const GeneratorSet gen = detail::default_generators();
    const Frame frame = make_frame(kPhiDefault);
    const MasslessSpinor massless = massless_spinor(gen, frame, detail::preset_component(),
                                                    detail::preset_component());
    const WeylSpinor wplus =
        weyl_spinor(gen, frame, Helicity::positive, detail::preset_component());
    const WeylSpinor wminus =
        weyl_spinor(gen, frame, Helicity::negative, detail::preset_component());
    const auto pot = [&](const Event& ev) { return potentials(gen, frame, ev); };

    double worst = 0;
    std::vector<double> wrong;
    const Event probe{2.0, 1.0, 1.0, 1.0};
    double wrong_probe = weyl_residual(wplus, pot, Helicity::negative, probe).rel_norm;
    for (int i = 0; i < 100; ++i) {
      const Event e = rng.event_in(2.0);
      worst = std::max({worst, dirac_residual(massless, pot, 0.0, e).rel_norm,
                        weyl_residual(wplus, pot, Helicity::positive, e).rel_norm,
                        weyl_residual(wminus, pot, Helicity::negative, e).rel_norm});
      wrong.push_back(weyl_residual(wplus, pot, Helicity::negative, e).rel_norm);
    }
    std::nth_element(wrong.begin(), wrong.begin() + wrong.size() / 2, wrong.end());
    const double wrong_median = wrong[wrong.size() / 2];

    r.passed = worst <= 1e-10 && wrong_probe > 1e-3 && wrong_median > 1e-3;
    r.detail = "max rel = " + detail::fmt(worst) +
               " (tol 1e-10), wrong-helicity rel at probe = " + detail::fmt(wrong_probe) +
               ", median = " + detail::fmt(wrong_median) + " (must exceed 1e-3)";
  });
}

/// 6. The shift direction recovered from bilinear ratios equals
/// (1, -cos phi, 0, -sin phi) for every builder.
inline CheckResult check_kappa_extraction(std::uint64_t seed) {
  return detail::guarded(6, "shift-direction extraction", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 6);
    const GeneratorSet gen = detail::default_generators();
    const Frame frame = make_frame(kPhiDefault);
    const MassiveSpinor massive = massive_spinor(gen, frame);
    const MasslessSpinor massless = massless_spinor(gen, frame, detail::preset_component(),
                                                    detail::preset_component());
    const WeylSpinor wplus =
        weyl_spinor(gen, frame, Helicity::positive, detail::preset_component());
    const WeylSpinor wminus =
        weyl_spinor(gen, frame, Helicity::negative, detail::preset_component());
    const std::array<double, 4> expected = kappa_direction(frame);

    double worst = 0;
    auto measure = [&](const std::array<Complex, 4>& got) {
      for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(got[i].real() - expected[i]));
        worst = std::max(worst, std::abs(got[i].imag()));
      }
    };
    for (int i = 0; i < 25; ++i) {
      const Event e = rng.event_in(2.0);
      measure(kappa_dirac(massive(e)));
      measure(kappa_dirac(massless(e)));
      measure(kappa_weyl(wplus(e), Helicity::positive));
      measure(kappa_weyl(wminus(e), Helicity::negative));
    }
    r.passed = worst <= 1e-12;
    r.detail = "max deviation from (1, -cos, 0, -sin) = " + detail::fmt(worst) +
               " (tol 1e-12)";
  });
}

/// 7. The two-parameter family obeys both defining bilinear identities: the
/// annihilator bilinear vanishes and the transpose pairing equals
/// 8 i T R cos(phi).
inline CheckResult check_degeneracy_preconditions(std::uint64_t seed) {
  return detail::guarded(7, "family bilinear preconditions", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 7);
    double worst_annihilator = 0, worst_pairing = 0;
    for (int i = 0; i < 1000; ++i) {
      const double phi = rng.uniform(-1.45, 1.45);
      const Complex t = std::polar(rng.uniform(0.3, 2.0), rng.uniform(0.0, 6.283185307));
      const Complex rr = std::polar(rng.uniform(0.3, 2.0), rng.uniform(0.0, 6.283185307));
      const Spinor4 psi = t * base_u(phi) + rr * base_v(phi);
      const DegeneracyConditions c = degeneracy_conditions(psi);
      worst_annihilator =
          std::max(worst_annihilator, std::abs(c.annihilator) / norm2(psi));
      const Complex expected = Complex(0, 8) * t * rr * std::cos(phi);
      worst_pairing =
          std::max(worst_pairing, std::abs(c.pairing - expected) / std::abs(expected));
    }
    r.passed = worst_annihilator <= 1e-12 && worst_pairing <= 1e-10;
    r.detail = "max |annihilator|/|psi|^2 = " + detail::fmt(worst_annihilator) +
               " (tol 1e-12), max pairing rel error = " + detail::fmt(worst_pairing) +
               " (tol 1e-10)";
  });
}

/// 8. The closed-form fields of the linear family agree with both numeric
/// differentiation routes for several potential shapes; a pure-time shape
/// gives zero magnetic field and an electric field parallel to
/// (cos phi, 0, sin phi).
inline CheckResult check_field_routes(std::uint64_t seed) {
  return detail::guarded(8, "field route consistency", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 8);
    const Frame frame = make_frame(kPhiDefault);
    double worst_central = 0, worst_dual = 0;
    for (const char* h_text : {"0", "t^2", "sin(t)*x", "x*y*z"}) {
      const Expr h = parse(h_text, {"t", "x", "y", "z"});
      const GeneratorSet gen = linear_family(0.3, -0.2, 0.7, h, kPhiDefault, 1.0, 1.0,
                                             Complex(0.5, 0.0),
                                             GaussianEnvelope{Complex(1.0, 0.0), 1.0, 2.0});
      for (int i = 0; i < 100; ++i) {
        const Event e = rng.event_in(2.0);
        const EMFields closed = em_fields_linear(gen, frame, e);
        double cmax = 1.0;
        for (int j = 0; j < 3; ++j)
          cmax = std::max({cmax, std::abs(closed.e[j]), std::abs(closed.b[j])});
        auto compare = [&](const EMFields& num, double& worst) {
          for (int j = 0; j < 3; ++j) {
            worst = std::max(worst, std::abs(closed.e[j] - num.e[j]) / cmax);
            worst = std::max(worst, std::abs(closed.b[j] - num.b[j]) / cmax);
          }
        };
        compare(em_fields(gen, frame, e, DerivMode::central, 1e-5), worst_central);
        compare(em_fields(gen, frame, e, DerivMode::dual, 0.0), worst_dual);
      }
    }

    // pure-time potential shape: B = 0 and E parallel to the shift direction
    const Expr h = parse("t^2", {"t", "x", "y", "z"});
    const GeneratorSet quiet = linear_family(0.0, 0.0, 0.0, h, kPhiDefault);
    double worst_b = 0, worst_cross = 0;
    const double cp = std::cos(kPhiDefault), sp = std::sin(kPhiDefault);
    for (int i = 0; i < 50; ++i) {
      const Event e = rng.event_in(2.0);
      const EMFields f = em_fields(quiet, frame, e, DerivMode::dual, 0.0);
      for (int j = 0; j < 3; ++j) worst_b = std::max(worst_b, std::abs(f.b[j]));
      const double cx = f.e[1] * sp - 0.0;
      const double cy = f.e[2] * cp - f.e[0] * sp;
      const double cz = -f.e[1] * cp;
      worst_cross = std::max({worst_cross, std::abs(cx), std::abs(cy), std::abs(cz)});
    }

    r.passed = worst_central <= 1e-8 && worst_dual <= 1e-12 && worst_b <= 1e-12 &&
               worst_cross <= 1e-12;
    r.detail = "central rel = " + detail::fmt(worst_central) + " (tol 1e-8), dual rel = " +
               detail::fmt(worst_dual) + " (tol 1e-12), |B| = " + detail::fmt(worst_b) +
               ", |E x axis| = " + detail::fmt(worst_cross) + " (tol 1e-12)";
  });
}

/// 9. Spin expectations: Sy vanishes, the massive closed form matches the
/// bilinears for real k and collapses to zero at k = m cos(phi), and the
/// massless values match their constants independently of the event.
inline CheckResult check_spin(std::uint64_t seed) {
  return detail::guarded(9, "spin expectations", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 9);
    const Frame frame = make_frame(kPhiDefault);
    const GeneratorSet gen = detail::default_generators();
    const MassiveSpinor massive = massive_spinor(gen, frame);

    double worst_sy = 0, worst_massive = 0;
    const SpinTriple closed = spin_closed_form_massive(gen.mass, gen.k, gen.phi);
    for (int i = 0; i < 50; ++i) {
      const Event e = rng.event_in(2.0);
      const Spinor4 psi = massive(e);
      const SpinTriple s = spin_expectation(psi);
      const double n2 = norm2(psi);
      worst_sy = std::max(worst_sy, std::abs(s.sy) / n2);
      worst_massive = std::max({worst_massive, std::abs(s.sx / n2 - closed.sx),
                                std::abs(s.sz / n2 - closed.sz)});
    }

    // k = m cos(phi) collapses the spin to zero
    const GeneratorSet gen0 =
        detail::default_generators(K23Convention::derived, Complex(std::cos(kPhiDefault), 0));
    const MassiveSpinor zero_spin = massive_spinor(gen0, frame);
    double worst_zero = 0;
    for (int i = 0; i < 10; ++i) {
      const Event e = rng.event_in(2.0);
      const Spinor4 psi = zero_spin(e);
      const SpinTriple s = spin_expectation(psi);
      const double n2 = norm2(psi);
      worst_zero =
          std::max({worst_zero, std::abs(s.sx) / n2, std::abs(s.sy) / n2, std::abs(s.sz) / n2});
    }

    // massless constants, several coefficient pairs, event-independent
    double worst_massless = 0, worst_spread = 0;
    const std::array<std::array<Complex, 2>, 4> pairs = {{{Complex(1, 0), Complex(0, 0)},
                                                          {Complex(0, 0), Complex(1, 0)},
                                                          {Complex(1, 0), Complex(1, 0)},
                                                          {Complex(0.6, 0), Complex(0, 0.8)}}};
    for (const auto& [ct, cr] : pairs) {
      const MasslessSpinor field =
          massless_spinor(gen, frame, detail::preset_component(ct, 2.0),
                          detail::preset_component(cr, 2.0));
      const SpinTriple want = spin_closed_form_massless(ct, cr, kPhiDefault);
      SpinTriple first{};
      for (int i = 0; i < 20; ++i) {
        const Event e = rng.event_in(2.0);
        const SpinTriple s = spin_expectation(field(e));
        if (i == 0) first = s;
        worst_massless = std::max({worst_massless, std::abs(s.sx - want.sx),
                                   std::abs(s.sy - want.sy), std::abs(s.sz - want.sz)});
        worst_spread = std::max({worst_spread, std::abs(s.sx - first.sx),
                                 std::abs(s.sy - first.sy), std::abs(s.sz - first.sz)});
        worst_sy = std::max(worst_sy, std::abs(s.sy) / norm2(field(e)));
      }
    }

    r.passed = worst_sy <= 1e-12 && worst_massive <= 1e-10 && worst_zero <= 1e-12 &&
               worst_massless <= 1e-12 && worst_spread <= 1e-12;
    r.detail = "|Sy| = " + detail::fmt(worst_sy) + ", massive err = " +
               detail::fmt(worst_massive) + " (tol 1e-10), k=m cos spin = " +
               detail::fmt(worst_zero) + ", massless err = " + detail::fmt(worst_massless) +
               ", spread = " + detail::fmt(worst_spread) + " (tol 1e-12)";
  });
}

/// 10. Localization: the massive family decays strictly along all six
/// space/time half-axes with a large final drop; the massless and
/// two-component presets keep constant magnitude along the same rays.
inline CheckResult check_localization(std::uint64_t seed) {
  return detail::guarded(10, "localization profiles", [&](CheckResult& r) {
    (void)seed;  // deterministic by construction
    const GeneratorSet gen = detail::default_generators();
    const Frame frame = make_frame(kPhiDefault);
    const MassiveSpinor massive = massive_spinor(gen, frame);
    const MasslessSpinor massless = massless_spinor(gen, frame, detail::preset_component(),
                                                    detail::preset_component());
    const WeylSpinor wplus =
        weyl_spinor(gen, frame, Helicity::positive, detail::preset_component());
    const WeylSpinor wminus =
        weyl_spinor(gen, frame, Helicity::negative, detail::preset_component());
    const std::vector<double> radii{5, 10, 15, 20};
    const std::vector<std::string> axes{"+t", "-t", "+x", "-x", "+z", "-z"};

    bool decreasing = true;
    double worst_ratio = 0, worst_const = 0;
    for (const auto& axis : axes) {
      const DecayProbe probe = decay_probe(massive, axis, radii);
      decreasing = decreasing && probe.strictly_decreasing;
      worst_ratio = std::max(worst_ratio, probe.final_ratio);

      auto constancy = [&](const auto& field) {
        const DecayProbe p = decay_probe(field, axis, radii);
        for (double m : p.magnitudes)
          worst_const = std::max(worst_const, std::abs(m - p.at_origin) / p.at_origin);
      };
      constancy(massless);
      constancy(wplus);
      constancy(wminus);
    }

    r.passed = decreasing && worst_ratio < 1e-6 && worst_const <= 1e-12;
    r.detail = std::string("strictly decreasing = ") + (decreasing ? "yes" : "no") +
               ", max |psi(20)|/|psi(0)| = " + detail::fmt(worst_ratio) +
               " (tol 1e-6), massless constancy drift = " + detail::fmt(worst_const) +
               " (tol 1e-12)";
  });
}

/// 11. The derivative substitution rule under a linear change of variables
/// holds for random invertible matrices and a fixed analytic corpus, with
/// second-order convergence in the step.
inline CheckResult check_operator_transform(std::uint64_t seed) {
  return detail::guarded(11, "derivative substitution rule", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 11);
    const std::vector<std::string> corpus = {
        "sin(x1)*cos(x2) + x3*x4",
        "exp(x1/2)*x2^2 - x4",
        "x1*x2*x3*x4 + x1^2 - x3",
        "sinh(x3/2) + cos(x1*x4)",
        "tanh(x2/2)*x3 + x2^2",
    };
    std::vector<Expr> exprs;
    for (const auto& text : corpus) exprs.push_back(parse(text, {"x1", "x2", "x3", "x4"}));

    double worst = 0;
    std::vector<double> orders;
    for (int m = 0; m < 20; ++m) {
      const Matrix4C a = random_invertible_matrix(rng);
      for (const Expr& u : exprs) {
        const std::array<double, 4> point = {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                                             rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
        const double r1 = operator_transform_residual(a, u, point, 2e-4);
        const double r2 = operator_transform_residual(a, u, point, 1e-4);
        worst = std::max(worst, r2);
        try {
          orders.push_back(convergence_order(r1, r2));
        } catch (const BelowNoiseFloorError&) {
          // residual already at roundoff level; the bound check still applies
        }
      }
    }
    double order = 2.0;
    if (!orders.empty()) {
      std::nth_element(orders.begin(), orders.begin() + orders.size() / 2, orders.end());
      order = orders[orders.size() / 2];
    }

    r.passed = worst <= 1e-8 && order >= 1.5 && order <= 2.5;
    r.detail = "max residual @1e-4 = " + detail::fmt(worst) +
               " (tol 1e-8), median order = " + detail::fmt(order) + " (2.0 +- 0.5)";
  });
}

/// 12. The separable factor solves the mixed-derivative wave equation at
/// random complex s-points; scaling one exponent slope breaks it.
inline CheckResult check_separable_wave(std::uint64_t seed) {
  return detail::guarded(12, "separable factor wave equation", [&](CheckResult& r) {
    Rng rng = detail::check_rng(seed, 12);
    const GeneratorSet gen = detail::default_generators();
    const double c = std::cos(gen.phi);
    const double m2c2 = gen.mass * gen.mass * c * c;

    double worst = 0, weakest_control = 1e300;
    for (int i = 0; i < 100; ++i) {
      SCoords s;
      s.s0 = Complex(rng.uniform(-2.0, 2.0), 0.0);
      s.s1 = Complex(0.0, 0.0);
      s.s2 = rng.complex_in(-1.5, 1.5);
      s.s3 = rng.complex_in(-1.5, 1.5);
      const Complex w = separable_w(gen, SCoordsT<Complex>{s.s0, s.s1, s.s2, s.s3});
      const double scale = std::max(m2c2 * std::abs(w), 1e-300);
      worst = std::max(worst, std::abs(separable_wave_residual(gen, s)) / scale);
      weakest_control =
          std::min(weakest_control, std::abs(separable_wave_residual(gen, s, 1.1)) / scale);
    }

    r.passed = worst <= 1e-12 && weakest_control > 1e-3;
    r.detail = "max rel residual = " + detail::fmt(worst) +
               " (tol 1e-12), perturbed-factor min rel = " + detail::fmt(weakest_control) +
               " (must exceed 1e-3)";
  });
}

/// 13. Parser golden corpus: fifty expressions survive a parse/unparse/parse
/// round trip structurally and numerically; ten malformed inputs raise the
/// documented error class at the documented byte offset.
inline CheckResult check_parser(std::uint64_t seed) {
  return detail::guarded(13, "expression parser corpus", [&](CheckResult& r) {
    (void)seed;  // fixed corpus
    const std::vector<std::string> corpus = {
        "0", "1", "42", "2.5", "1e3", "2.5e-2", "1.25E+2", "pi", "e", "a",
        "x", "y", "-x", "--x", "x + y", "x - y", "x * y", "x / y", "x ^ 2", "x^-2",
        "-x^2", "(-x)^2", "x + y * 2", "(x + y) * 2", "x - y - 1", "x / y / 2", "x^2^3",
        "sin(x)", "cos(x)", "tan(x)", "exp(x)", "log(x + 1)", "sqrt(x + 2)", "sinh(x)",
        "cosh(x)", "tanh(x)", "abs(x - y)", "sin(cos(x))", "exp(-x^2)", "a * x + y",
        "2 * pi * x", "sin(x)^2 + cos(x)^2", "x^2 * exp(-x) / (1 + y)", "1 / (1 + x^2)",
        "tanh(x / 2) * y", "-(x + y)", "x * -y", "3 + -2", "sqrt(x^2 + y^2 + 1)",
        "log(exp(x)) + abs(-y)",
    };
    const std::map<std::string, double> consts = {{"a", 1.5}};
    const std::vector<std::string> vars = {"x", "y"};

    int round_trips = 0;
    std::string first_failure;
    for (const auto& text : corpus) {
      const Expr e1 = parse(text, vars, consts);
      const Expr e2 = parse(unparse(e1), vars, consts);
      Bindings<Complex> b{{"x", Complex(0.3, 0)}, {"y", Complex(0.8, 0)}};
      const Complex v1 = eval_generic(e1, b);
      const Complex v2 = eval_generic(e2, b);
      const bool ok =
          structurally_equal(e1, e2) && std::abs(v1 - v2) <= 1e-15 * (1.0 + std::abs(v1));
      if (ok) ++round_trips;
      else if (first_failure.empty()) first_failure = text;
    }

    enum class Kind { syntax, unknown, arity };
    struct Malformed {
      const char* text;
      Kind kind;
      std::size_t offset;
    };
    const std::vector<Malformed> malformed = {
        {"", Kind::syntax, 0},          {"x +", Kind::syntax, 3},
        {"(x + y", Kind::syntax, 6},    {"sin()", Kind::syntax, 4},
        {"x *", Kind::syntax, 3},       {"q + 1", Kind::unknown, 0},
        {"foo(x)", Kind::unknown, 0},   {"sin(x, y)", Kind::arity, 0},
        {"x 1", Kind::syntax, 2},       {"1..5", Kind::syntax, 2},
    };
    int diagnosed = 0;
    for (const auto& m : malformed) {
      bool ok = false;
      try {
        (void)parse(m.text, vars, consts);
      } catch (const ArityError& ex) {
        ok = m.kind == Kind::arity && ex.offset == m.offset;
      } catch (const UnknownIdentifierError& ex) {
        ok = m.kind == Kind::unknown && ex.offset == m.offset;
      } catch (const SyntaxError& ex) {
        ok = m.kind == Kind::syntax && ex.offset == m.offset;
      }
      if (ok) ++diagnosed;
      else if (first_failure.empty()) first_failure = m.text;
    }

    r.passed = round_trips == 50 && diagnosed == 10;
    r.detail = std::to_string(round_trips) + "/50 round trips, " + std::to_string(diagnosed) +
               "/10 malformed diagnosed" +
               (first_failure.empty() ? "" : ", first failure: \"" + first_failure + "\"");
  });
}

inline std::vector<CheckResult> run_all(std::uint64_t seed = kDefaultSeed) {
  return {
      check_kernel_annihilation(seed), check_degeneracy_invariance(seed),
      check_massive_exactness(seed),   check_worked_example(seed),
      check_massless_weyl_exactness(seed), check_kappa_extraction(seed),
      check_degeneracy_preconditions(seed), check_field_routes(seed),
      check_spin(seed),                check_localization(seed),
      check_operator_transform(seed),  check_separable_wave(seed),
      check_parser(seed),
  };
}

/// Measured values behind the two documented convention findings, recorded in
/// every verification report.
struct Discrepancies {
  double derived_max_rel = 0;       // residual of the derived assignment
  double swapped_median_rel = 0;    // residual of the prose assignment vs the
                                    // worked-example potentials
  double sign_minus_z = 0;          // |(s2 - s3) - (x tan phi - z)|, max
  double sign_plus_z = 0;           // |(s2 - s3) - (x tan phi + z)|, max
};

inline Discrepancies discrepancy_findings(std::uint64_t seed = kDefaultSeed) {
  Rng rng = detail::check_rng(seed, 99);
  Discrepancies d;
  const Frame frame = make_frame(kPhiDefault);
  const GeneratorSet gen_derived = detail::default_generators(K23Convention::derived);
  const GeneratorSet gen_printed = detail::default_generators(K23Convention::printed);
  const MassiveSpinor f_derived = massive_spinor(gen_derived, frame);
  const MassiveSpinor f_printed = massive_spinor(gen_printed, frame);
  const auto pot = [&](const Event& ev) { return potentials(gen_derived, frame, ev); };

  std::vector<double> swapped;
  const double tan_phi = std::tan(kPhiDefault);
  for (int i = 0; i < 50; ++i) {
    const Event e = rng.event_in(2.0);
    d.derived_max_rel =
        std::max(d.derived_max_rel, dirac_residual(f_derived, pot, 1.0, e).rel_norm);
    swapped.push_back(dirac_residual(f_printed, pot, 1.0, e).rel_norm);
    const SCoords s = to_s(frame, EventT<Complex>{e.t, e.x, e.y, e.z});
    const Complex diff = s.s2 - s.s3;
    d.sign_minus_z = std::max(d.sign_minus_z, std::abs(diff - Complex(e.x * tan_phi - e.z)));
    d.sign_plus_z = std::max(d.sign_plus_z, std::abs(diff - Complex(e.x * tan_phi + e.z)));
  }
  std::nth_element(swapped.begin(), swapped.begin() + swapped.size() / 2, swapped.end());
  d.swapped_median_rel = swapped[swapped.size() / 2];
  return d;
}

}  // namespace degen::acceptance
