#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "rdual/bspline.hpp"
#include "rdual/error.hpp"
#include "rdual/quadrature.hpp"

using namespace rdual;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

Polynomial quad(std::int64_t c2, std::int64_t c1, std::int64_t c0) { return Polynomial({R(c0), R(c1), R(c2)}); }

// Closed-form antiderivative of p/q for deg p <= 2 and q an irreducible
// quadratic: divide, then split the linear remainder into log and arctan parts.
double rational_integral(const Polynomial& p, const Polynomial& q, double lo, double hi) {
  const double a = to_double(q.coefficient(2)), b = to_double(q.coefficient(1)), c = to_double(q.coefficient(0));
  const double s = to_double(p.coefficient(2)) / a;
  const double alpha = to_double(p.coefficient(1)) - s * b;
  const double beta = to_double(p.coefficient(0)) - s * c;
  const double disc = std::sqrt(4 * a * c - b * b);
  auto prim = [&](double x) {
    return s * x + alpha / (2 * a) * std::log(a * x * x + b * x + c) +
           (beta - alpha * b / (2 * a)) * 2.0 / disc * std::atan((2 * a * x + b) / disc);
  };
  return prim(hi) - prim(lo);
}

// Diagonal entry (1/a) int g(x - n/b)^2 / G(x) dx by exact piecewise rational
// integration; independent of the adaptive rule in the library.
double exact_diagonal(std::int64_t n) {
  const PiecewisePoly num = bspline_B2().shifted(R(5 * n, 2)).squared();
  const Periodization g = periodize_square(bspline_B2(), R(1));
  double total = 0.0;
  for (std::int64_t k = 0; k + 1 < static_cast<std::int64_t>(num.breakpoints().size()); ++k) {
    const Rational lo = num.breakpoints()[k], hi = num.breakpoints()[k + 1];
    // Split at integers so the denominator is a single quadratic piece.
    Rational x = lo;
    while (x < hi) {
      Rational next = R(static_cast<std::int64_t>(std::floor(to_double(x)))) + R(1);
      if (hi < next) next = hi;
      const Polynomial p = num.piece_on(x, next);
      if (!p.is_zero()) total += rational_integral(p, g.on_interval(x, next).piece_on(x, next), to_double(x), to_double(next));
      x = next;
    }
  }
  return total;
}

double tanh_sinh_diagonal(std::int64_t n) {
  const PiecewisePoly num = bspline_B2().shifted(R(5 * n, 2)).squared();
  const Periodization g = periodize_square(bspline_B2(), R(1));
  boost::math::quadrature::tanh_sinh<double> rule;
  double total = 0.0;
  for (double lo = to_double(num.support_lo()); lo < to_double(num.support_hi()) - 1e-15; lo += 0.5) {
    const double hi = std::min(lo + 0.5, to_double(num.support_hi()));
    total += rule.integrate([&](double x) { return num(x) / g(x); }, lo, hi);
  }
  return total;
}

}  // namespace

TEST_CASE("polynomial algebra is exact") {
  const Polynomial p = quad(1, -2, 3);
  CHECK(p.degree() == 2);
  CHECK(p(R(2)) == R(3));
  CHECK(p.shifted(R(1)) == quad(1, -4, 6));
  CHECK(p.derivative() == Polynomial::linear(R(2), R(-2)));
  CHECK(p.antiderivative().derivative() == p);
  CHECK((p * p)(R(1, 2)) == p(R(1, 2)) * p(R(1, 2)));
  CHECK((p - p).is_zero());
  CHECK((p + Polynomial::constant(R(-3)))(R(0)) == R(0));
}

TEST_CASE("B2 values and integral") {
  const PiecewisePoly b2 = bspline_B2();
  CHECK(b2(R(0)) == R(1));
  CHECK(b2(R(1)) == R(0));
  CHECK(b2(R(-1)) == R(0));
  CHECK(b2(R(1, 2)) == R(1, 2));
  CHECK(b2(R(5)) == R(0));
  CHECK(b2.integral() == R(1));
  CHECK(b2.is_continuous());
  CHECK(b2.squared().integral() == R(2, 3));
}

TEST_CASE("periodization of B2 squared") {
  const Periodization g = periodize_square(bspline_B2(), R(1));
  for (std::int64_t k = -3; k <= 3; ++k) {
    CHECK(g(R(k)) == R(1));
    CHECK(g(R(2 * k + 1, 2)) == R(1, 2));
  }
  CHECK(g.extremes().min == R(1, 2));
  CHECK(g.extremes().max == R(1));

  // Displayed pieces of G on [1,2], [2,3], [3,4].
  const PiecewisePoly on = g.on_interval(R(1), R(4));
  CHECK(on.piece_on(R(1), R(2)) == quad(2, -6, 5));
  CHECK(on.piece_on(R(2), R(3)) == quad(2, -10, 13));
  CHECK(on.piece_on(R(3), R(4)) == quad(2, -14, 25));
}

TEST_CASE("painless frame bounds") {
  const PainlessBounds pb = painless_frame_bounds(bspline_B2(), R(1), R(2, 5));
  CHECK(pb.lower == R(5, 4));
  CHECK(pb.upper == R(5, 2));
  const PainlessBounds half = painless_frame_bounds(bspline_B2(), R(1), R(1, 2));
  CHECK(half.lower == R(1));
  CHECK(half.upper == R(2));
  try {
    painless_frame_bounds(bspline_B2(), R(1), R(1));
    FAIL("expected PainlessConditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PainlessConditionViolated);
  }
}

TEST_CASE("counterexample integral") {
  const DiagonalEntry d = type_II_criterion_integral(0, 1);
  CHECK(std::abs(d.value - (1.0 + std::numbers::pi / 4 - std::log(2.0))) <= 1e-8);
  CHECK(std::abs(d.value - exact_diagonal(1)) <= 1e-12);
  CHECK(std::abs(d.value - tanh_sinh_diagonal(1)) <= 1e-10);

  const DiagonalEntry d0 = type_II_criterion_integral(0, 0);
  CHECK(std::abs(d0.value - exact_diagonal(0)) <= 1e-12);
  CHECK(std::abs(d0.value - tanh_sinh_diagonal(0)) <= 1e-10);

  for (std::int64_t n = -3; n <= 3; ++n) {
    CHECK(std::abs(type_II_criterion_integral(0, n).value - type_II_criterion_integral(0, n + 2).value) <= 1e-12);
    CHECK(std::abs(type_II_criterion_integral(3, n).value - type_II_criterion_integral(0, n).value) <= 1e-15);
  }

  QuadratureOptions tight;
  tight.abs_tol = 1e-12;
  CHECK(std::abs(type_II_criterion_integral(0, 1, tight).value - counterexample_closed_form()) <= 1e-12);
}

TEST_CASE("type-II verdict") {
  const NotTypeIIReport r = conclude_not_type_II();
  CHECK(r.not_type_II);
  CHECK(r.deviation == r.entry.value - 1.0);
  CHECK(std::abs(r.deviation - 0.0922509828375029) <= 1e-8);

  // Box window with a = b = 1: G is identically 1 and every entry equals 1.
  const PiecewisePoly box({R(0), R(1)}, {Polynomial::constant(R(1))});
  const NotTypeIIReport ctrl = conclude_not_type_II(box, R(1), R(1), 0, 1);
  CHECK_FALSE(ctrl.not_type_II);
  CHECK(std::abs(ctrl.deviation) <= 1e-12);
}

TEST_CASE("adaptive quadrature") {
  const QuadratureResult r = integrate_gauss_kronrod([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(std::abs(r.value - 2.0) < 1e-12);
  const QuadratureResult s = integrate_gauss_kronrod([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  CHECK(std::abs(s.value - 2.0 / 3.0) < 1e-9);
  QuadratureOptions stingy;
  stingy.abs_tol = 1e-14;
  stingy.max_intervals = 2;
  try {
    integrate_gauss_kronrod([](double x) { return 1.0 / std::sqrt(x + 1e-12); }, 0.0, 1.0, stingy);
    FAIL("expected QuadratureNonConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureNonConvergence);
  }
}
