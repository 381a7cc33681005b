#include "rdual/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rdual {

VectorSequence::VectorSequence(OperatorMatrix synthesis) : synthesis_(std::move(synthesis)) {
  if (synthesis_.rows() == 0 || synthesis_.cols() == 0)
    throw Error(ErrorCode::DimensionMismatch, "a sequence needs a positive dimension and count");
  if (!synthesis_.allFinite())
    throw Error(ErrorCode::DimensionMismatch, "sequence has non-finite entries");
}

VectorSequence VectorSequence::standard_basis(Index n) {
  return VectorSequence(OperatorMatrix::Identity(n, n));
}

VectorSequence VectorSequence::from_vectors(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw Error(ErrorCode::DimensionMismatch, "empty sequence");
  OperatorMatrix m(vectors.front().size(), static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != m.rows())
      throw Error(ErrorCode::DimensionMismatch, "vector " + std::to_string(i) + " has the wrong dimension");
    m.col(static_cast<Index>(i)) = vectors[i];
  }
  return VectorSequence(std::move(m));
}

std::string_view sequence_class_name(SequenceClass c) noexcept {
  switch (c) {
    case SequenceClass::OrthonormalBasis: return "OrthonormalBasis";
    case SequenceClass::RieszBasis: return "RieszBasis";
    case SequenceClass::RieszSequenceProper: return "RieszSequenceProper";
    case SequenceClass::FrameForH: return "FrameForH";
    case SequenceClass::FrameSequenceProper: return "FrameSequenceProper";
    case SequenceClass::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

OperatorMatrix frame_operator(const VectorSequence& f) {
  return f.synthesis() * f.synthesis().adjoint();
}

OperatorMatrix gram_matrix(const VectorSequence& f) {
  return f.synthesis().adjoint() * f.synthesis();
}

namespace {

Index rank_scale(const VectorSequence& f) { return std::max(f.dim(), f.count()); }

bool numerically_zero(double lambda_max) {
  return !(lambda_max > std::numeric_limits<double>::min());
}

}  // namespace

SpectralSummary spectral_summary(const VectorSequence& f) {
  const bool use_gram = f.count() <= f.dim();
  const HermitianEig eig = hermitian_eig(use_gram ? gram_matrix(f) : frame_operator(f));
  const Eigen::VectorXd& ev = eig.eigenvalues;
  SpectralSummary out;
  out.lambda_max = std::max(ev(ev.size() - 1), 0.0);
  if (numerically_zero(out.lambda_max)) return SpectralSummary{};
  const double tau = rank_threshold(out.lambda_max, rank_scale(f));
  for (Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > tau) {
      if (out.rank == 0) out.lambda_min_nonzero = ev(k);
      ++out.rank;
    }
  }
  if (use_gram && out.rank == f.count()) out.lambda_min_gram = ev(0);
  return out;
}

Eigen::VectorXd frame_spectrum(const VectorSequence& f) {
  return hermitian_eig(frame_operator(f)).eigenvalues;
}

Classification classify(const VectorSequence& f, double orthonormal_tol) {
  const SpectralSummary spec = spectral_summary(f);
  if (spec.rank == 0) throw Error(ErrorCode::DegenerateSequence, "all vectors are numerically zero");

  Classification c;
  c.span_dim = spec.rank;
  c.count = f.count();
  c.ambient_dim = f.dim();
  c.tolerance = orthonormal_tol;
  c.frame_bounds = {spec.lambda_min_nonzero, spec.lambda_max, true};

  const bool independent = spec.rank == f.count();
  if (independent) c.riesz_bounds = FrameBounds{spec.lambda_min_gram, spec.lambda_max, true};

  if (independent && spec.rank == f.dim()) {
    c.sequence_class = orthonormal_basis_defect(f) <= orthonormal_tol ? SequenceClass::OrthonormalBasis
                                                                      : SequenceClass::RieszBasis;
  } else if (independent) {
    c.sequence_class = SequenceClass::RieszSequenceProper;
  } else if (spec.rank == f.dim()) {
    c.sequence_class = SequenceClass::FrameForH;
  } else {
    c.sequence_class = SequenceClass::FrameSequenceProper;
  }
  return c;
}

VectorSequence canonical_dual(const VectorSequence& f) {
  if (spectral_summary(f).rank == 0) throw Error(ErrorCode::DegenerateSequence, "canonical_dual of a zero sequence");
  return VectorSequence(operator_power_on_range(frame_operator(f), -1.0) * f.synthesis());
}

VectorSequence tighten(const VectorSequence& f) {
  if (spectral_summary(f).rank == 0) throw Error(ErrorCode::DegenerateSequence, "tighten of a zero sequence");
  return VectorSequence(operator_power_on_range(frame_operator(f), -0.5) * f.synthesis());
}

namespace {

struct GramSplit {
  HermitianEig eig;
  Index rank = 0;
};

GramSplit gram_split(const VectorSequence& f) {
  GramSplit s{hermitian_eig(gram_matrix(f)), 0};
  const Eigen::VectorXd& ev = s.eig.eigenvalues;
  const double lambda_max = std::max(ev(ev.size() - 1), 0.0);
  if (numerically_zero(lambda_max)) return s;
  const double tau = rank_threshold(lambda_max, rank_scale(f));
  for (Index k = 0; k < ev.size(); ++k)
    if (ev(k) > tau) ++s.rank;
  return s;
}

}  // namespace

Subspace analysis_range(const VectorSequence& f) {
  const GramSplit s = gram_split(f);
  return Subspace(f.count(), s.eig.eigenvectors.rightCols(s.rank));
}

Subspace synthesis_kernel(const VectorSequence& f) {
  const GramSplit s = gram_split(f);
  return Subspace(f.count(), s.eig.eigenvectors.leftCols(f.count() - s.rank));
}

double orthonormal_basis_defect(const VectorSequence& f) {
  if (f.count() != f.dim()) return std::numeric_limits<double>::infinity();
  return (gram_matrix(f) - OperatorMatrix::Identity(f.count(), f.count())).cwiseAbs().maxCoeff();
}

bool is_orthonormal_basis(const VectorSequence& f, double tol) {
  return orthonormal_basis_defect(f) <= tol;
}

void require_orthonormal_basis(const VectorSequence& f, Index n, std::string_view what) {
  if (f.dim() != n || f.count() != n)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must hold " + std::to_string(n) +
                                                  " vectors in C^" + std::to_string(n));
  const double defect = orthonormal_basis_defect(f);
  if (defect > kOrthonormalityTolerance)
    throw Error(ErrorCode::NotOrthonormal, std::string(what) + " Gram defect " + std::to_string(defect));
}

void require_riesz_basis(const VectorSequence& f, Index n, std::string_view what) {
  if (f.dim() != n || f.count() != n)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must hold " + std::to_string(n) +
                                                  " vectors in C^" + std::to_string(n));
  if (spectral_summary(f).rank != n)
    throw Error(ErrorCode::NotRieszBasis, std::string(what) + " is not a Riesz basis");
}

AntiunitaryMap antiunitary_from_basis_pair(const VectorSequence& from, const VectorSequence& to) {
  return antiunitary_from_basis_pair(from.synthesis(), to.synthesis());
}

}  // namespace rdual
