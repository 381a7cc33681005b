#include <doctest.h>

#include <cmath>

#include "rdual/error.hpp"
#include "rdual/operators.hpp"
#include "rdual/random.hpp"

using namespace rdual;

namespace {

OperatorMatrix diag(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Index>(d.size()));
  Index k = 0;
  for (double x : d) v(k++) = x;
  return v.cast<Complex>().asDiagonal();
}

double max_abs(const OperatorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Brute-force extremal gains of q over unit vectors of s.
Gains sampled_gains(const OperatorMatrix& q, const Subspace& s, int samples, Rng& rng) {
  Gains g{std::numeric_limits<double>::infinity(), 0.0};
  for (int t = 0; t < samples; ++t) {
    Vector c = random_vector(s.rank(), rng);
    c.normalize();
    const double n = (q * (s.basis() * c)).norm();
    g.min_gain = std::min(g.min_gain, n);
    g.max_gain = std::max(g.max_gain, n);
  }
  return g;
}

}  // namespace

TEST_CASE("hermitian_eig on identity and diagonal input") {
  const HermitianEig id = hermitian_eig(OperatorMatrix::Identity(3, 3));
  CHECK(id.eigenvalues.isApprox(Eigen::Vector3d::Ones()));
  CHECK(unitarity_defect(id.eigenvectors) < 1e-12);

  const HermitianEig d = hermitian_eig(diag({4, 1}));
  CHECK(d.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(d.eigenvalues(1) == doctest::Approx(4.0));
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const OperatorMatrix h = random_hermitian(6, rng);
    const HermitianEig e = hermitian_eig(h);
    const OperatorMatrix back = e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
    CHECK((back - h).norm() <= 1e-10 * h.norm());
    for (Index k = 1; k < 6; ++k) CHECK(e.eigenvalues(k - 1) <= e.eigenvalues(k));
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input and symmetrizes tiny defects") {
  OperatorMatrix m = diag({1, 2});
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(hermitian_eig(m), Error);
  try {
    hermitian_eig(m);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  OperatorMatrix near = diag({1, 2});
  near(0, 1) = 1e-13;
  CHECK_NOTHROW(hermitian_eig(near));
}

TEST_CASE("operator powers") {
  const OperatorMatrix p = operator_power_on_range(diag({1, 4}), -0.5);
  CHECK(max_abs(p - diag({1, 0.5})) < 1e-14);

  const OperatorMatrix pinv = operator_power_on_range(diag({2, 0}), -1.0);
  CHECK(max_abs(pinv - diag({0.5, 0})) < 1e-14);

  CHECK_THROWS_AS(operator_power_on_range(diag({2, 0}), -1.0, PowerDomain::RequireInvertible), Error);

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const OperatorMatrix g = random_gaussian(5, 3, rng);
    const OperatorMatrix a = g * g.adjoint();  // PSD, rank 3
    const OperatorMatrix r = operator_power_on_range(a, 0.5);
    CHECK((r * r - a).norm() <= 1e-9 * a.norm());
  }
}

TEST_CASE("subspace operations") {
  const Subspace axis(2, OperatorMatrix::Identity(2, 1));
  const Gains g1 = restricted_extremal_gains(diag({1, 3}), axis);
  CHECK(g1.min_gain == doctest::Approx(1.0));
  CHECK(g1.max_gain == doctest::Approx(1.0));
  const Gains g2 = restricted_extremal_gains(diag({1, 3}), Subspace::full(2));
  CHECK(g2.min_gain == doctest::Approx(1.0));
  CHECK(g2.max_gain == doctest::Approx(3.0));

  CHECK_THROWS_AS(restricted_extremal_gains(diag({1, 2, 3}), axis), Error);
  CHECK_THROWS_AS(Subspace(2, OperatorMatrix::Ones(2, 1)), Error);

  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Index n = 2 + rng.integer(0, 6);
    const OperatorMatrix m = random_gaussian(n, n, rng);
    const Index drop = rng.integer(0, n - 1);
    Eigen::JacobiSVD<OperatorMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd s = svd.singularValues();
    for (Index k = n - drop; k < n; ++k) s(k) = 0.0;
    const OperatorMatrix low = svd.matrixU() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
    CHECK(kernel(low).rank() + range(low).rank() == n);
    CHECK(range(low).rank() == n - drop);
    const Subspace r = range(low);
    const Subspace c = orth_complement(r);
    CHECK(r.rank() + c.rank() == n);
    if (c.rank() > 0) CHECK(max_abs(r.basis().adjoint() * c.basis()) < 1e-12);
    const Subspace cj = conjugate_subspace(r);
    CHECK(max_abs(conjugate_subspace(cj).projector() - r.projector()) < 1e-12);
    CHECK(max_abs(cj.projector() - r.projector().conjugate()) < 1e-12);
  }
}

TEST_CASE("restricted gains agree with sampling") {
  Rng rng(17);
  for (int t = 0; t < 5; ++t) {
    const Index n = 4;
    const Index r = 1 + t % 3;
    const OperatorMatrix q = random_gaussian(n, n, rng);
    const Subspace s = range(random_gaussian(n, r, rng) * random_gaussian(r, n, rng));
    const Gains exact = restricted_extremal_gains(q, s);
    const Gains sampled = sampled_gains(q, s, 100000, rng);
    CHECK(sampled.min_gain >= exact.min_gain - 1e-12);
    CHECK(sampled.max_gain <= exact.max_gain + 1e-12);
    CHECK(std::abs(sampled.min_gain - exact.min_gain) <= 1e-3 * exact.max_gain + (r > 2 ? 2e-2 : 1e-3));
    CHECK(std::abs(sampled.max_gain - exact.max_gain) <= 1e-3 * exact.max_gain + (r > 2 ? 2e-2 : 1e-3));
  }
}

TEST_CASE("antiunitary maps") {
  const AntiunitaryMap c = antiunitary_from_basis_pair(OperatorMatrix::Identity(3, 3), OperatorMatrix::Identity(3, 3));
  Vector x(3);
  x << Complex(1, 2), Complex(0, -1), Complex(3, 0);
  CHECK((c.apply(x) - x.conjugate()).norm() < 1e-15);

  OperatorMatrix from(1, 1), to(1, 1);
  from(0, 0) = 1.0;
  to(0, 0) = Complex(0, 1);
  const AntiunitaryMap phase = antiunitary_from_basis_pair(from, to);
  Vector y(1);
  y(0) = Complex(2, 3);
  CHECK(std::abs(phase.apply(y)(0) - Complex(0, 1) * std::conj(y(0))) < 1e-15);
  Vector one = Vector::Ones(1);
  CHECK(std::abs(inner(phase.apply(one), phase.apply(one)) - 1.0) < 1e-15);

  Rng rng(23);
  const OperatorMatrix f = random_unitary(5, rng);
  const OperatorMatrix z = random_unitary(5, rng);
  const AntiunitaryMap g = antiunitary_from_basis_pair(f, z);
  for (Index i = 0; i < 5; ++i) CHECK((g.apply(f.col(i)) - z.col(i)).norm() < 1e-12);
  for (int t = 0; t < 100; ++t) {
    const Vector a = random_vector(5, rng);
    const Vector b = random_vector(5, rng);
    CHECK(std::abs(inner(g.apply(a), g.apply(b)) - inner(b, a)) <= 1e-12 * a.norm() * b.norm());
    CHECK((g.inverse().apply(g.apply(a)) - a).norm() < 1e-12);
  }
  CHECK_THROWS_AS(antiunitary_from_basis_pair(OperatorMatrix::Ones(2, 2), OperatorMatrix::Identity(2, 2)), Error);
}
