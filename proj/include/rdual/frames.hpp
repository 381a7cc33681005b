#pragma once

// Finite sequences {f_i} in C^N and their frame theory.
//
// Model: the library works with sequences of exactly N vectors in C^N
// whenever R-duals are involved (orthonormal bases indexed by the same set
// must exist). Redundancy then shows up as a frame *sequence*: N vectors
// spanning an r < N dimensional subspace. "Frame for C^N" is the same as
// "spanning". General counts are accepted by the analysis routines below.

#include <optional>
#include <string_view>
#include <vector>

#include "rdual/operators.hpp"

namespace rdual {

class VectorSequence {
 public:
  /// Columns of `synthesis` are the vectors f_i.
  explicit VectorSequence(OperatorMatrix synthesis);

  static VectorSequence standard_basis(Index n);
  static VectorSequence from_vectors(const std::vector<Vector>& vectors);

  Index dim() const noexcept { return synthesis_.rows(); }
  Index count() const noexcept { return synthesis_.cols(); }
  Vector vector(Index i) const { return synthesis_.col(i); }
  const OperatorMatrix& synthesis() const noexcept { return synthesis_; }

  VectorSequence scaled(double s) const { return VectorSequence(s * synthesis_); }

 private:
  OperatorMatrix synthesis_;
};

enum class SequenceClass {
  OrthonormalBasis,
  RieszBasis,
  RieszSequenceProper,
  FrameForH,
  FrameSequenceProper,
  Degenerate,
};

std::string_view sequence_class_name(SequenceClass c) noexcept;

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool optimal = true;
};

inline constexpr double kOrthonormalityTolerance = 1e-10;

struct Classification {
  SequenceClass sequence_class = SequenceClass::Degenerate;
  Index span_dim = 0;
  Index count = 0;
  Index ambient_dim = 0;
  FrameBounds frame_bounds;                 // optimal frame(-sequence) bounds
  std::optional<FrameBounds> riesz_bounds;  // present iff linearly independent
  double tolerance = kOrthonormalityTolerance;

  bool spans() const noexcept { return span_dim == ambient_dim; }
  bool independent() const noexcept { return riesz_bounds.has_value(); }
  Index kernel_dim() const noexcept { return count - span_dim; }
};

/// S = F F*.
OperatorMatrix frame_operator(const VectorSequence& f);
/// (j,k) entry <f_k, f_j>, i.e. F* F.
OperatorMatrix gram_matrix(const VectorSequence& f);

/// Rank and extremal spectrum, computed on the smaller of F F* and F* F.
/// Never throws for degenerate input; used where verdicts must still be reported.
struct SpectralSummary {
  Index rank = 0;
  double lambda_max = 0.0;
  double lambda_min_nonzero = 0.0;  // 0 when rank == 0
  double lambda_min_gram = 0.0;     // smallest eigenvalue of F* F (0 if dependent)
};
SpectralSummary spectral_summary(const VectorSequence& f);

/// Sorted (ascending) spectrum of the frame operator.
Eigen::VectorXd frame_spectrum(const VectorSequence& f);

/// Throws DegenerateSequence when every vector is numerically zero.
Classification classify(const VectorSequence& f, double orthonormal_tol = kOrthonormalityTolerance);

/// {S^+ f_i}: reconstructs every x in span{f_i} via x = sum <x, S^+ f_i> f_i.
VectorSequence canonical_dual(const VectorSequence& f);
/// {S^{-1/2} f_i} with the power taken on the range; a Parseval frame for the span.
VectorSequence tighten(const VectorSequence& f);

/// R(U) = range(F*) inside C^count.
Subspace analysis_range(const VectorSequence& f);
/// ker T = ker F inside C^count.
Subspace synthesis_kernel(const VectorSequence& f);

/// Max |Gram - I|; infinity when count != dim.
double orthonormal_basis_defect(const VectorSequence& f);
bool is_orthonormal_basis(const VectorSequence& f, double tol = kOrthonormalityTolerance);

void require_orthonormal_basis(const VectorSequence& f, Index n, std::string_view what);
void require_riesz_basis(const VectorSequence& f, Index n, std::string_view what);

AntiunitaryMap antiunitary_from_basis_pair(const VectorSequence& from, const VectorSequence& to);

}  // namespace rdual
