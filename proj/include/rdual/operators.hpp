#pragma once

// Dense complex linear algebra used by every other module: Hermitian
// eigendecomposition, spectral powers restricted to the range, subspaces
// with orthonormal bases, and antiunitary maps x -> U conj(x).
//
// Rank policy: an eigenvalue (or singular value) s of an n x n problem is
// treated as nonzero iff s > 1e-12 * s_max * n. Every kernel/range/pseudo
// inverse decision in the library goes through rank_threshold().

#include <complex>

#include <Eigen/Dense>

#include "rdual/error.hpp"

namespace rdual {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using OperatorMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kRankFactor = 1e-12;

double rank_threshold(double largest, Index n) noexcept;

/// max |M - M*| relative to max |M| (0 for the zero matrix).
double hermitian_defect(const OperatorMatrix& m);

struct HermitianEig {
  Eigen::VectorXd eigenvalues;  // ascending
  OperatorMatrix eigenvectors;  // unitary, columns match eigenvalues
};

/// Eigendecomposition of a Hermitian matrix. Asymmetry below
/// kHermitianTolerance is symmetrized away; anything larger throws NotHermitian.
HermitianEig hermitian_eig(const OperatorMatrix& m);

enum class PowerDomain { OnRange, RequireInvertible };

/// M^p for PSD M computed spectrally. Eigenvalues at or below the rank
/// threshold map to 0, so negative p yields the power of the restriction to
/// range(M) (p = -1 is the Moore-Penrose inverse).
OperatorMatrix operator_power_on_range(const OperatorMatrix& m, double p,
                                       PowerDomain domain = PowerDomain::OnRange);

/// Orthogonal projection onto range(M) for PSD M.
OperatorMatrix range_projector(const OperatorMatrix& m);

class Subspace {
 public:
  /// `basis` must have orthonormal columns (checked to 1e-10).
  Subspace(Index ambient_dim, OperatorMatrix basis);

  static Subspace full(Index n);
  static Subspace zero(Index n);

  Index ambient_dim() const noexcept { return ambient_dim_; }
  Index rank() const noexcept { return basis_.cols(); }
  const OperatorMatrix& basis() const noexcept { return basis_; }

  OperatorMatrix projector() const;
  /// ||x - P x|| for the orthogonal projector P onto the subspace.
  double distance(const Vector& x) const;

 private:
  Index ambient_dim_;
  OperatorMatrix basis_;
};

Subspace kernel(const OperatorMatrix& m);
Subspace range(const OperatorMatrix& m);
Subspace orth_complement(const Subspace& s);
Subspace conjugate_subspace(const Subspace& s);
/// U·S for a unitary U.
Subspace unitary_image(const OperatorMatrix& u, const Subspace& s);

struct Gains {
  double min_gain = 0.0;
  double max_gain = 0.0;
};

/// Extremal values of ||Q x|| over unit vectors x in S: the smallest and
/// largest singular values of Q·B, B an orthonormal basis of S.
Gains restricted_extremal_gains(const OperatorMatrix& q, const Subspace& s);

/// Largest |(M*M - I)_{jk}|.
double unitarity_defect(const OperatorMatrix& m);

/// Antiunitary map G x = U conj(x). Every antiunitary transformation of C^N
/// has this form for a unique unitary U.
class AntiunitaryMap {
 public:
  explicit AntiunitaryMap(OperatorMatrix unitary_part);

  static AntiunitaryMap conjugation(Index n);

  Vector apply(const Vector& x) const;
  /// Applies the map to every column.
  OperatorMatrix apply_columns(const OperatorMatrix& x) const;
  AntiunitaryMap inverse() const;
  const OperatorMatrix& unitary_part() const noexcept { return unitary_; }
  Index dim() const noexcept { return unitary_.rows(); }

 private:
  OperatorMatrix unitary_;
};

/// The antiunitary G with G(from_i) = to_i, i.e. G x = sum_i <from_i, x> to_i.
/// Both arguments hold orthonormal bases as columns.
AntiunitaryMap antiunitary_from_basis_pair(const OperatorMatrix& from, const OperatorMatrix& to);

/// <x, y> = sum_k x_k conj(y_k), linear in the first argument.
inline Complex inner(const Vector& x, const Vector& y) { return y.dot(x); }

}  // namespace rdual
