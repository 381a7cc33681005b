#include "rdual/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rdual {
namespace {

constexpr double kOrthonormalTolerance = 1e-10;

void require_finite(const OperatorMatrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has non-finite entries");
}

void require_square(const OperatorMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a nonempty square matrix");
}

}  // namespace

double rank_threshold(double largest, Index n) noexcept {
  return kRankFactor * std::max(largest, 0.0) * static_cast<double>(std::max<Index>(n, 1));
}

double hermitian_defect(const OperatorMatrix& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

HermitianEig hermitian_eig(const OperatorMatrix& m) {
  require_square(m, "hermitian_eig input");
  require_finite(m, "hermitian_eig input");
  const double defect = hermitian_defect(m);
  if (defect > kHermitianTolerance)
    throw Error(ErrorCode::NotHermitian, "relative asymmetry " + std::to_string(defect));
  const OperatorMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

OperatorMatrix operator_power_on_range(const OperatorMatrix& m, double p, PowerDomain domain) {
  const HermitianEig eig = hermitian_eig(m);
  const Index n = m.rows();
  const double tau = rank_threshold(eig.eigenvalues.maxCoeff(), n);
  Eigen::VectorXd powered(n);
  Index rank = 0;
  for (Index k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues(k);
    if (lambda > tau) {
      powered(k) = std::pow(lambda, p);
      ++rank;
    } else {
      powered(k) = 0.0;
    }
  }
  if (domain == PowerDomain::RequireInvertible && rank < n)
    throw Error(ErrorCode::SingularOnFullSpace,
                "rank " + std::to_string(rank) + " < " + std::to_string(n));
  return eig.eigenvectors * powered.asDiagonal() * eig.eigenvectors.adjoint();
}

OperatorMatrix range_projector(const OperatorMatrix& m) {
  return operator_power_on_range(m, 0.0);
}

Subspace::Subspace(Index ambient_dim, OperatorMatrix basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_dim_ || basis_.cols() > ambient_dim_)
    throw Error(ErrorCode::DimensionMismatch, "subspace basis shape does not match ambient dimension");
  if (basis_.cols() > 0) {
    const OperatorMatrix gram = basis_.adjoint() * basis_;
    const double defect = (gram - OperatorMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (defect > kOrthonormalTolerance)
      throw Error(ErrorCode::NotOrthonormal, "subspace basis defect " + std::to_string(defect));
  }
}

Subspace Subspace::full(Index n) { return Subspace(n, OperatorMatrix::Identity(n, n)); }

Subspace Subspace::zero(Index n) { return Subspace(n, OperatorMatrix(n, 0)); }

OperatorMatrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

double Subspace::distance(const Vector& x) const {
  if (x.size() != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "vector dimension");
  if (rank() == 0) return x.norm();
  return (x - basis_ * (basis_.adjoint() * x)).norm();
}

namespace {

struct RankSplit {
  Eigen::JacobiSVD<OperatorMatrix> svd;
  Index rank;
};

RankSplit split(const OperatorMatrix& m) {
  require_square(m, "subspace operand");
  require_finite(m, "subspace operand");
  Eigen::JacobiSVD<OperatorMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tau = rank_threshold(sv.size() ? sv(0) : 0.0, m.rows());
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > tau) ++rank;
  return {std::move(svd), rank};
}

}  // namespace

Subspace kernel(const OperatorMatrix& m) {
  const RankSplit s = split(m);
  const Index n = m.cols();
  return Subspace(n, s.svd.matrixV().rightCols(n - s.rank));
}

Subspace range(const OperatorMatrix& m) {
  const RankSplit s = split(m);
  return Subspace(m.rows(), s.svd.matrixU().leftCols(s.rank));
}

Subspace orth_complement(const Subspace& s) {
  const Index n = s.ambient_dim();
  if (s.rank() == 0) return Subspace::full(n);
  if (s.rank() == n) return Subspace::zero(n);
  Eigen::HouseholderQR<OperatorMatrix> qr(s.basis());
  const OperatorMatrix q = qr.householderQ() * OperatorMatrix::Identity(n, n);
  return Subspace(n, q.rightCols(n - s.rank()));
}

Subspace conjugate_subspace(const Subspace& s) {
  return Subspace(s.ambient_dim(), s.basis().conjugate());
}

Subspace unitary_image(const OperatorMatrix& u, const Subspace& s) {
  if (u.rows() != s.ambient_dim() || u.cols() != s.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "unitary_image dimensions");
  if (unitarity_defect(u) > kOrthonormalTolerance)
    throw Error(ErrorCode::NotUnitary, "unitary_image requires a unitary operator");
  return Subspace(s.ambient_dim(), u * s.basis());
}

Gains restricted_extremal_gains(const OperatorMatrix& q, const Subspace& s) {
  if (q.cols() != s.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "restricted_extremal_gains dimensions");
  if (s.rank() == 0) return {};
  const OperatorMatrix restricted = q * s.basis();
  Eigen::JacobiSVD<OperatorMatrix> svd(restricted);
  const Eigen::VectorXd& sv = svd.singularValues();
  // An r-dimensional subspace needs r singular values; a wide Q·B has fewer
  // rows than columns only if Q maps into a smaller space.
  const double min_gain = restricted.rows() < restricted.cols() ? 0.0 : sv(sv.size() - 1);
  return {min_gain, sv(0)};
}

double unitarity_defect(const OperatorMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m.adjoint() * m - OperatorMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

AntiunitaryMap::AntiunitaryMap(OperatorMatrix unitary_part) : unitary_(std::move(unitary_part)) {
  require_square(unitary_, "antiunitary unitary part");
  if (unitarity_defect(unitary_) > kOrthonormalTolerance)
    throw Error(ErrorCode::NotUnitary, "antiunitary map needs a unitary part");
}

AntiunitaryMap AntiunitaryMap::conjugation(Index n) {
  return AntiunitaryMap(OperatorMatrix::Identity(n, n));
}

Vector AntiunitaryMap::apply(const Vector& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "antiunitary_apply dimension");
  return unitary_ * x.conjugate();
}

OperatorMatrix AntiunitaryMap::apply_columns(const OperatorMatrix& x) const {
  if (x.rows() != dim()) throw Error(ErrorCode::DimensionMismatch, "antiunitary_apply dimension");
  return unitary_ * x.conjugate();
}

AntiunitaryMap AntiunitaryMap::inverse() const {
  // G^{-1} y = conj(U^* y) = U^T conj(y)
  return AntiunitaryMap(unitary_.transpose());
}

AntiunitaryMap antiunitary_from_basis_pair(const OperatorMatrix& from, const OperatorMatrix& to) {
  if (from.rows() != from.cols() || to.rows() != to.cols() || from.rows() != to.rows())
    throw Error(ErrorCode::DimensionMismatch, "antiunitary_from_basis_pair needs two bases of the same space");
  if (unitarity_defect(from) > kOrthonormalTolerance || unitarity_defect(to) > kOrthonormalTolerance)
    throw Error(ErrorCode::NotOrthonormal, "antiunitary_from_basis_pair needs orthonormal bases");
  // G x = sum_i <from_i, x> to_i = To · conj(From^* x) = To From^T conj(x)
  return AntiunitaryMap(to * from.transpose());
}

}  // namespace rdual
