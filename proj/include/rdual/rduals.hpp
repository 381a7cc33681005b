#pragma once

// R-duals of a sequence {f_i} in C^N (N vectors) and the checkers that
// characterize them.
//
//   type I    w_j = sum_i <f_i, e_j> h_i                  e, h orthonormal bases
//   type II   w_j = sum_i <f_i, S^{-1/2} e_j> S^{1/2} h_i f spans C^N
//   type III  w_j = sum_i <S^{-1/2} f_i, e_j> Q h_i       ||Q|| <= sqrt||S||,
//                                                         ||Q^-1|| <= sqrt||S^+||
//   type IV   w_j = sum_i <f_i, e_j> h_i                  e, h Riesz bases
//
// As synthesis matrices every construction is  Omega = H · (E* X)^T  for the
// appropriate X in {F, S^{-1/2} F}, followed by Q or S^{1/2} where present.
// IIIStar denotes the type-III duals whose Q attains both extremal gains on
// the h-image of the conjugated analysis range, which are exactly the type-III
// duals keeping the optimal bounds of f.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdual/frames.hpp"

namespace rdual {

enum class RDualKind : std::uint8_t { I, II, III, IIIStar, IV };

inline constexpr RDualKind kAllKinds[] = {RDualKind::I, RDualKind::II, RDualKind::III, RDualKind::IIIStar,
                                          RDualKind::IV};

std::string_view kind_name(RDualKind k) noexcept;
std::optional<RDualKind> parse_kind(std::string_view s) noexcept;

/// Small set of kinds, iterated in declaration order.
class KindSet {
 public:
  void insert(RDualKind k) noexcept { bits_ |= bit(k); }
  bool contains(RDualKind k) const noexcept { return (bits_ & bit(k)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }
  std::vector<RDualKind> members() const;
  std::string to_string() const;
  friend bool operator==(KindSet, KindSet) = default;

 private:
  static std::uint8_t bit(RDualKind k) noexcept { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); }
  std::uint8_t bits_ = 0;
};

/// I ⊆ IIIStar ⊆ III ⊆ IV and II ⊆ IIIStar.
bool respects_inclusions(KindSet s) noexcept;

struct RDualWitness {
  RDualKind kind = RDualKind::I;
  VectorSequence e;
  VectorSequence h;
  std::optional<OperatorMatrix> q;  // types III and IIIStar
};

inline constexpr double kWitnessNormSlack = 1e-9;
inline constexpr double kEqStarTolerance = 1e-9;
inline constexpr double kMembershipTolerance = 1e-8;
inline constexpr double kResynthesisTolerance = 1e-9;

VectorSequence rdual_type_I(const VectorSequence& f, const VectorSequence& e, const VectorSequence& h);
VectorSequence rdual_type_II(const VectorSequence& f, const VectorSequence& e, const VectorSequence& h);
VectorSequence rdual_type_III(const VectorSequence& f, const VectorSequence& e, const VectorSequence& h,
                              const OperatorMatrix& q);
VectorSequence rdual_type_IV(const VectorSequence& f, const VectorSequence& e, const VectorSequence& h);

/// Dispatch on witness.kind; IIIStar is synthesized as type III.
VectorSequence synthesize(const VectorSequence& f, const RDualWitness& w);

struct QNormCheck {
  double q_norm = 0.0;
  double q_norm_limit = 0.0;    // sqrt ||S||
  double q_inv_norm = 0.0;
  double q_inv_norm_limit = 0.0;  // sqrt ||S^+||
  bool ok() const noexcept;
};

/// ||Q|| and ||Q^{-1}|| against their limits for the base sequence f.
QNormCheck check_q_norms(const VectorSequence& f, const OperatorMatrix& q);

/// Structural validation: dimensions, orthonormality (Riesz-ness for IV), and
/// for III/IIIStar invertibility plus the norm limits. Throws on failure.
void validate_witness(const VectorSequence& f, const RDualWitness& w);

/// dim ker T == dim (span Omega)^perp.
bool check_dim_condition(const VectorSequence& f, const VectorSequence& omega);

/// The antilinear map g -> {<h_i, g>} carries (span Omega)^perp onto ker T.
bool check_kernel_correspondence(const VectorSequence& f, const VectorSequence& omega, const VectorSequence& h);

struct EqStarReport {
  double min_gain = 0.0;
  double max_gain = 0.0;
  double target_min = 0.0;  // 1 / sqrt ||S^+||
  double target_max = 0.0;  // sqrt ||S||
  bool holds = false;
  Index subspace_dim = 0;
  bool min_side_holds() const noexcept;
  bool max_side_holds() const noexcept;
  double tolerance = kEqStarTolerance;
};

/// Gains of Q on H · conj(R(U)) compared with the optimal-bound targets.
EqStarReport check_eqstar(const VectorSequence& f, const RDualWitness& w, double tol = kEqStarTolerance);

/// Max |Gram{S^{-1/2} w_j} - I|, the type-II criterion defect.
double type_II_defect(const VectorSequence& f, const VectorSequence& omega);

/// Membership of Omega in each R-dual class of a Riesz basis f.
KindSet classify_rdual(const VectorSequence& f, const VectorSequence& omega, double tol = kMembershipTolerance);

/// Elementwise relative distance between sorted frame spectra.
double spectrum_distance(const VectorSequence& a, const VectorSequence& b);

/// Explicit antiunitary G with {S^{-1/2} G w_j} an orthonormal basis, built
/// from eigenbases of S and S_Omega. Empty when the spectra differ.
std::optional<AntiunitaryMap> type_I_antiunitary(const VectorSequence& f, const VectorSequence& omega,
                                                 double tol = kMembershipTolerance);

/// Orthonormal bases (e, h) realizing Omega as a type-I dual of a Riesz basis
/// f, when one exists.
std::optional<RDualWitness> realize_type_I(const VectorSequence& f, const VectorSequence& omega,
                                           double tol = kMembershipTolerance);

/// Witness (standard, standard, Q) with Q = S_Omega^{1/2} R exhibiting Omega as
/// a type-III dual with the eqstar property. Requires f spanning and Omega a
/// Riesz basis with the same optimal bounds; throws PreconditionFailed otherwise.
RDualWitness realize_witness(const VectorSequence& f, const VectorSequence& omega,
                             double tol = kMembershipTolerance);

struct BiorthogonalResult {
  VectorSequence omega_tilde;
  VectorSequence f_tilde;  // canonical dual of f
  VectorSequence e;
  VectorSequence z;
  OperatorMatrix v;
  double biorthogonality_defect = 0.0;  // max |<w~_j, w_k> - delta_jk|
  double resynthesis_defect = 0.0;      // relative, for the (e, z, V) synthesis
  EqStarReport v_gains;                 // targets (1/sqrt||S||, sqrt||S^+||)
  QNormCheck v_norms;                   // against the canonical dual of f
};

/// Biorthogonal sequence of a type-III dual, written as a type-III dual of the
/// canonical dual of f with respect to (e, z, V).
BiorthogonalResult biorthogonal_rdual(const VectorSequence& f, const VectorSequence& omega, const RDualWitness& w);

/// V = geometric-mean extension of P^{1/2} off the range for a PSD P.
OperatorMatrix extend_square_root(const OperatorMatrix& p);

struct CounterexampleReport {
  VectorSequence omega;
  double c = 0.0;
  double tight_bound = 0.0;  // c^2
  bool omega_tight = false;
  double type_II_defect = 0.0;
  KindSet memberships;
  EqStarReport eqstar;
};

/// Omega = type III with Q = c·Id. A c^2-tight Riesz basis that is not IIIStar.
CounterexampleReport tight_counterexample(const VectorSequence& f, double c, double tol = kMembershipTolerance);

}  // namespace rdual
