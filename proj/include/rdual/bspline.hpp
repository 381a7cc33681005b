#pragma once

// Exact piecewise polynomials with rational breakpoints and coefficients, the
// periodization G(x) = sum_k |g(x - k a)|^2, and the painless-case Gabor
// frame operator S f = (G / b) f on L^2(R) built from them.

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "rdual/frames.hpp"
#include "rdual/quadrature.hpp"

namespace rdual {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

class Polynomial {
 public:
  Polynomial() = default;
  /// Ascending coefficients: c[0] + c[1] x + ...
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial constant(Rational c) { return Polynomial({c}); }
  /// s x + t
  static Polynomial linear(Rational s, Rational t) { return Polynomial({t, s}); }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  Rational coefficient(int k) const;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  /// x -> p(x - c)
  Polynomial shifted(const Rational& c) const;
  Polynomial derivative() const;
  Polynomial antiderivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Pieces[j] is valid on [breakpoints[j], breakpoints[j+1]]; zero outside
/// [breakpoints.front(), breakpoints.back()].
class PiecewisePoly {
 public:
  PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces);

  const std::vector<Rational>& breakpoints() const noexcept { return breaks_; }
  const std::vector<Polynomial>& pieces() const noexcept { return pieces_; }
  Rational support_lo() const { return breaks_.front(); }
  Rational support_hi() const { return breaks_.back(); }
  Rational support_length() const { return breaks_.back() - breaks_.front(); }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  /// Polynomial valid on all of [lo, hi]; [lo, hi] must not straddle a breakpoint.
  Polynomial piece_on(const Rational& lo, const Rational& hi) const;

  /// x -> g(x - c)
  PiecewisePoly shifted(const Rational& c) const;
  PiecewisePoly squared() const;
  /// Representation on [lo, hi] (pieces outside the support are zero).
  PiecewisePoly restricted(const Rational& lo, const Rational& hi) const;
  Rational integral() const;
  bool is_continuous() const;

  friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);

 private:
  std::vector<Rational> breaks_;
  std::vector<Polynomial> pieces_;
};

/// Linear B-spline: 1 + x on [-1, 0], 1 - x on [0, 1].
PiecewisePoly bspline_B2();

struct Extremes {
  Rational min;
  Rational max;
};

/// Exact extremes over the support; pieces of degree at most 2.
Extremes extremes(const PiecewisePoly& p);

class Periodization {
 public:
  Periodization(PiecewisePoly base, Rational step);

  const PiecewisePoly& base() const noexcept { return base_; }
  const Rational& step() const noexcept { return step_; }
  /// G on one period [0, step].
  const PiecewisePoly& period() const noexcept { return period_; }

  double operator()(double x) const;
  Rational operator()(const Rational& x) const;
  /// Exact G on [lo, hi], split at every shift breakpoint.
  PiecewisePoly on_interval(const Rational& lo, const Rational& hi) const;
  Extremes extremes() const { return rdual::extremes(period_); }

 private:
  PiecewisePoly base_;
  Rational step_;
  PiecewisePoly squared_;
  PiecewisePoly period_;
};

/// G(x) = sum_k |g(x - k a)|^2.
Periodization periodize_square(const PiecewisePoly& g, const Rational& a);

struct PainlessBounds {
  Rational lower;  // min G / b
  Rational upper;  // max G / b
  FrameBounds as_frame_bounds() const { return {to_double(lower), to_double(upper), true}; }
};

/// Optimal frame bounds of {E_{mb} T_{na} g} when the support of g is no
/// longer than 1/b; throws PainlessConditionViolated otherwise.
PainlessBounds painless_frame_bounds(const PiecewisePoly& g, const Rational& a, const Rational& b);

struct DiagonalEntry {
  std::int64_t m = 0;
  std::int64_t n = 0;
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
  int evaluations = 0;
};

/// <S^{-1} w_{m,n}, w_{m,n}> for w_{m,n} = (ab)^{-1/2} E_{m/a} T_{n/b} g in the
/// painless setting, i.e. (1/a) int |g(x - n/b)|^2 / G(x) dx. The modulation
/// has unit modulus, so m does not enter the value.
DiagonalEntry type_II_diagonal_entry(const PiecewisePoly& g, const Rational& a, const Rational& b, std::int64_t m,
                                     std::int64_t n, const QuadratureOptions& opts = {});

/// The B2, a = 1, b = 2/5 instance.
DiagonalEntry type_II_criterion_integral(std::int64_t m, std::int64_t n, const QuadratureOptions& opts = {});

/// 1 + pi/4 - ln 2.
double counterexample_closed_form();

struct NotTypeIIReport {
  DiagonalEntry entry;
  double deviation = 0.0;  // entry.value - 1
  double closed_form_value = 0.0;
  double abs_error = 0.0;  // |entry.value - closed_form_value|
  bool not_type_II = false;
};

/// A diagonal Gram entry of {S^{-1/2} w_{m,n}} different from 1 rules out the
/// type-II relation. `tol` decides when the deviation counts as nonzero.
NotTypeIIReport conclude_not_type_II(const PiecewisePoly& g, const Rational& a, const Rational& b, std::int64_t m,
                                     std::int64_t n, const QuadratureOptions& opts = {}, double tol = 1e-8);
NotTypeIIReport conclude_not_type_II(std::int64_t m = 0, std::int64_t n = 1, const QuadratureOptions& opts = {});

}  // namespace rdual
