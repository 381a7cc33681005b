#include "rdual/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace rdual {
namespace {

std::int64_t floor_div(const Rational& r) {
  const std::int64_t n = r.numerator();
  const std::int64_t d = r.denominator();  // always positive
  return n >= 0 ? n / d : -((-n + d - 1) / d);
}

std::int64_t ceil_div(const Rational& r) { return -floor_div(-r); }

std::string str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Rational(0)) coeffs_.pop_back();
}

Rational Polynomial::coefficient(int k) const {
  return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Rational(0);
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

Polynomial Polynomial::shifted(const Rational& c) const {
  const Polynomial x_minus_c = linear(1, -c);
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x_minus_c + constant(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * static_cast<std::int64_t>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<Rational> a(coeffs_.size() + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<std::int64_t>(k + 1);
  return Polynomial(std::move(a));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + Polynomial::constant(-1) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
    throw Error(ErrorCode::DimensionMismatch, "piecewise polynomial needs k+1 breakpoints for k pieces");
  for (std::size_t j = 1; j < breaks_.size(); ++j)
    if (!(breaks_[j - 1] < breaks_[j]))
      throw Error(ErrorCode::DimensionMismatch, "breakpoints must be strictly increasing");
}

Rational PiecewisePoly::operator()(const Rational& x) const {
  if (x < breaks_.front() || x > breaks_.back()) return 0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t j = static_cast<std::size_t>(it - breaks_.begin());
  j = std::min(j == 0 ? 0 : j - 1, pieces_.size() - 1);
  return pieces_[j](x);
}

double PiecewisePoly::operator()(double x) const {
  if (x < to_double(breaks_.front()) || x > to_double(breaks_.back())) return 0.0;
  std::size_t j = 0;
  while (j + 1 < pieces_.size() && x >= to_double(breaks_[j + 1])) ++j;
  return pieces_[j](x);
}

Polynomial PiecewisePoly::piece_on(const Rational& lo, const Rational& hi) const {
  if (hi <= breaks_.front() || lo >= breaks_.back()) return {};
  for (std::size_t j = 0; j < pieces_.size(); ++j)
    if (breaks_[j] <= lo && hi <= breaks_[j + 1]) return pieces_[j];
  throw Error(ErrorCode::DimensionMismatch, "[" + str(lo) + ", " + str(hi) + "] straddles a breakpoint");
}

PiecewisePoly PiecewisePoly::shifted(const Rational& c) const {
  std::vector<Rational> b = breaks_;
  for (Rational& x : b) x += c;
  std::vector<Polynomial> p;
  for (const Polynomial& q : pieces_) p.push_back(q.shifted(c));
  return {std::move(b), std::move(p)};
}

PiecewisePoly PiecewisePoly::squared() const {
  std::vector<Polynomial> p;
  for (const Polynomial& q : pieces_) p.push_back(q * q);
  return {breaks_, std::move(p)};
}

PiecewisePoly PiecewisePoly::restricted(const Rational& lo, const Rational& hi) const {
  if (!(lo < hi)) throw Error(ErrorCode::DimensionMismatch, "empty restriction interval");
  std::vector<Rational> b{lo};
  for (const Rational& x : breaks_)
    if (lo < x && x < hi) b.push_back(x);
  b.push_back(hi);
  std::vector<Polynomial> p;
  for (std::size_t j = 0; j + 1 < b.size(); ++j) p.push_back(piece_on(b[j], b[j + 1]));
  return {std::move(b), std::move(p)};
}

Rational PiecewisePoly::integral() const {
  Rational total = 0;
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const Polynomial a = pieces_[j].antiderivative();
    total += a(breaks_[j + 1]) - a(breaks_[j]);
  }
  return total;
}

bool PiecewisePoly::is_continuous() const {
  for (std::size_t j = 1; j < pieces_.size(); ++j)
    if (pieces_[j - 1](breaks_[j]) != pieces_[j](breaks_[j])) return false;
  return true;
}

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
  std::set<Rational> pts(a.breaks_.begin(), a.breaks_.end());
  pts.insert(b.breaks_.begin(), b.breaks_.end());
  std::vector<Rational> br(pts.begin(), pts.end());
  std::vector<Polynomial> p;
  for (std::size_t j = 0; j + 1 < br.size(); ++j) p.push_back(a.piece_on(br[j], br[j + 1]) + b.piece_on(br[j], br[j + 1]));
  return {std::move(br), std::move(p)};
}

PiecewisePoly bspline_B2() {
  return {{Rational(-1), Rational(0), Rational(1)}, {Polynomial::linear(1, 1), Polynomial::linear(-1, 1)}};
}

Extremes extremes(const PiecewisePoly& p) {
  const auto& br = p.breakpoints();
  Rational lo = p.pieces().front()(br.front());
  Rational hi = lo;
  auto take = [&](const Rational& v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (std::size_t j = 0; j < p.pieces().size(); ++j) {
    const Polynomial& q = p.pieces()[j];
    if (q.degree() > 2)
      throw Error(ErrorCode::PreconditionFailed, "exact extremes support pieces of degree <= 2 only");
    take(q(br[j]));
    take(q(br[j + 1]));
    if (q.degree() == 2) {
      const Rational vertex = -q.coefficient(1) / (2 * q.coefficient(2));
      if (br[j] < vertex && vertex < br[j + 1]) take(q(vertex));
    }
  }
  return {lo, hi};
}

Periodization::Periodization(PiecewisePoly base, Rational step)
    : base_(std::move(base)), step_(step), squared_(base_.squared()), period_({Rational(0), Rational(1)}, {Polynomial{}}) {
  if (!(step_ > 0)) throw Error(ErrorCode::PreconditionFailed, "period step must be positive");
  period_ = on_interval(0, step_);
}

PiecewisePoly Periodization::on_interval(const Rational& lo, const Rational& hi) const {
  PiecewisePoly acc({lo, hi}, {Polynomial{}});
  const std::int64_t k_lo = ceil_div((lo - squared_.support_hi()) / step_);
  const std::int64_t k_hi = floor_div((hi - squared_.support_lo()) / step_);
  for (std::int64_t k = k_lo; k <= k_hi; ++k) acc = acc + squared_.shifted(step_ * k);
  return acc.restricted(lo, hi);
}

Rational Periodization::operator()(const Rational& x) const {
  const Rational t = x - step_ * floor_div(x / step_);
  return period_(t);
}

double Periodization::operator()(double x) const {
  const double a = to_double(step_);
  return period_(x - a * std::floor(x / a));
}

Periodization periodize_square(const PiecewisePoly& g, const Rational& a) { return Periodization(g, a); }

PainlessBounds painless_frame_bounds(const PiecewisePoly& g, const Rational& a, const Rational& b) {
  if (!(a > 0) || !(b > 0)) throw Error(ErrorCode::PreconditionFailed, "a and b must be positive");
  if (g.support_length() * b > 1)
    throw Error(ErrorCode::PainlessConditionViolated,
                "support length " + str(g.support_length()) + " exceeds 1/b = " + str(1 / b));
  const Extremes ext = periodize_square(g, a).extremes();
  if (!(ext.min > 0)) throw Error(ErrorCode::DegenerateSequence, "G vanishes somewhere; no lower frame bound");
  return {ext.min / b, ext.max / b};
}

DiagonalEntry type_II_diagonal_entry(const PiecewisePoly& g, const Rational& a, const Rational& b, std::int64_t m,
                                     std::int64_t n, const QuadratureOptions& opts) {
  (void)painless_frame_bounds(g, a, b);
  const Periodization big_g = periodize_square(g, a);
  const PiecewisePoly numerator = g.shifted(Rational(n) / b).squared();
  const PiecewisePoly denominator = big_g.on_interval(numerator.support_lo(), numerator.support_hi());

  std::set<Rational> pts(numerator.breakpoints().begin(), numerator.breakpoints().end());
  pts.insert(denominator.breakpoints().begin(), denominator.breakpoints().end());
  const std::vector<Rational> br(pts.begin(), pts.end());

  DiagonalEntry out{m, n, 0.0, 0.0, 0, 0};
  QuadratureOptions piece_opts = opts;
  piece_opts.abs_tol = opts.abs_tol / static_cast<double>(br.size() - 1);
  for (std::size_t j = 0; j + 1 < br.size(); ++j) {
    const Polynomial p = numerator.piece_on(br[j], br[j + 1]);
    if (p.is_zero()) continue;
    const Polynomial q = denominator.piece_on(br[j], br[j + 1]);
    std::vector<double> pc, qc;
    for (const Rational& c : p.coefficients()) pc.push_back(to_double(c));
    for (const Rational& c : q.coefficients()) qc.push_back(to_double(c));
    auto horner = [](const std::vector<double>& c, double x) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
    const auto integrand = [&](double x) { return horner(pc, x) / horner(qc, x); };
    const QuadratureResult r = integrate_gauss_kronrod(integrand, to_double(br[j]), to_double(br[j + 1]), piece_opts);
    out.value += r.value;
    out.error_estimate += r.error_estimate;
    out.intervals += r.intervals;
    out.evaluations += r.evaluations;
  }
  const double inv_a = to_double(1 / a);
  out.value *= inv_a;
  out.error_estimate *= inv_a;
  return out;
}

DiagonalEntry type_II_criterion_integral(std::int64_t m, std::int64_t n, const QuadratureOptions& opts) {
  return type_II_diagonal_entry(bspline_B2(), Rational(1), Rational(2, 5), m, n, opts);
}

double counterexample_closed_form() { return 1.0 + std::numbers::pi / 4.0 - std::log(2.0); }

NotTypeIIReport conclude_not_type_II(const PiecewisePoly& g, const Rational& a, const Rational& b, std::int64_t m,
                                     std::int64_t n, const QuadratureOptions& opts, double tol) {
  NotTypeIIReport r;
  r.entry = type_II_diagonal_entry(g, a, b, m, n, opts);
  r.deviation = r.entry.value - 1.0;
  r.closed_form_value = counterexample_closed_form();
  r.abs_error = std::abs(r.entry.value - r.closed_form_value);
  r.not_type_II = std::abs(r.deviation) > tol;
  return r;
}

NotTypeIIReport conclude_not_type_II(std::int64_t m, std::int64_t n, const QuadratureOptions& opts) {
  return conclude_not_type_II(bspline_B2(), Rational(1), Rational(2, 5), m, n, opts);
}

}  // namespace rdual
