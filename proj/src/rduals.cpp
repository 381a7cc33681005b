#include "rdual/rduals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rdual {

std::string_view kind_name(RDualKind k) noexcept {
  switch (k) {
    case RDualKind::I: return "I";
    case RDualKind::II: return "II";
    case RDualKind::III: return "III";
    case RDualKind::IIIStar: return "IIIStar";
    case RDualKind::IV: return "IV";
  }
  return "?";
}

std::optional<RDualKind> parse_kind(std::string_view s) noexcept {
  if (s == "I" || s == "1") return RDualKind::I;
  if (s == "II" || s == "2") return RDualKind::II;
  if (s == "III" || s == "3") return RDualKind::III;
  if (s == "IIIStar" || s == "3star") return RDualKind::IIIStar;
  if (s == "IV" || s == "4") return RDualKind::IV;
  return std::nullopt;
}

std::vector<RDualKind> KindSet::members() const {
  std::vector<RDualKind> out;
  for (RDualKind k : kAllKinds)
    if (contains(k)) out.push_back(k);
  return out;
}

std::string KindSet::to_string() const {
  std::string out = "{";
  for (RDualKind k : members()) {
    if (out.size() > 1) out += ", ";
    out += kind_name(k);
  }
  return out + "}";
}

bool respects_inclusions(KindSet s) noexcept {
  auto implies = [&](RDualKind a, RDualKind b) { return !s.contains(a) || s.contains(b); };
  return implies(RDualKind::I, RDualKind::IIIStar) && implies(RDualKind::IIIStar, RDualKind::III) &&
         implies(RDualKind::III, RDualKind::IV) && implies(RDualKind::II, RDualKind::IIIStar);
}

namespace {

void require_square_sequence(const VectorSequence& f, std::string_view what) {
  if (f.count() != f.dim())
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must hold exactly N vectors in C^N (got " + std::to_string(f.count()) +
                    " in C^" + std::to_string(f.dim()) + ")");
}

// Omega = H · (E* X)^T: column j is sum_i <x_i, e_j> h_i.
OperatorMatrix coefficient_transfer(const OperatorMatrix& x, const OperatorMatrix& e, const OperatorMatrix& h) {
  return h * (e.adjoint() * x).transpose();
}

double relative_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
  const double scale = std::max(b.norm(), std::numeric_limits<double>::min());
  return (a - b).norm() / scale;
}

bool within_relative(double value, double target, double tol) {
  return std::abs(value - target) <= tol * std::abs(target);
}

OperatorMatrix inverse_sqrt_frame_operator(const VectorSequence& f) {
  return operator_power_on_range(frame_operator(f), -0.5);
}

OperatorMatrix effective_q(const VectorSequence& f, const RDualWitness& w) {
  switch (w.kind) {
    case RDualKind::III:
    case RDualKind::IIIStar:
      if (!w.q) throw Error(ErrorCode::InvalidWitness, "type-III witness without Q");
      return *w.q;
    case RDualKind::II:
      return operator_power_on_range(frame_operator(f), 0.5);
    default:
      throw Error(ErrorCode::InvalidWitness,
                  "witness of kind " + std::string(kind_name(w.kind)) + " has no type-III operator");
  }
}

}  // namespace

VectorSequence rdual_type_I(const VectorSequence& f, const VectorSequence& e, const VectorSequence& h) {
  require_square_sequence(f, "f");
  require_orthonormal_basis(e, f.dim(), "e");
  require_orthonormal_basis(h, f.dim(), "h");
  return VectorSequence(coefficient_transfer(f.synthesis(), e.synthesis(), h.synthesis()));
}

VectorSequence rdual_type_II(const VectorSequence& f, const VectorSequence& e, const VectorSequence& h) {
  require_square_sequence(f, "f");
  require_orthonormal_basis(e, f.dim(), "e");
  require_orthonormal_basis(h, f.dim(), "h");
  const Index rank = spectral_summary(f).rank;
  if (rank < f.dim())
    throw Error(ErrorCode::NotFrameForH, "f spans a " + std::to_string(rank) + "-dimensional subspace");
  const OperatorMatrix s = frame_operator(f);
  const OperatorMatrix s_half = operator_power_on_range(s, 0.5);
  const OperatorMatrix s_inv_half = operator_power_on_range(s, -0.5);
  // <f_i, S^{-1/2} e_j> = <S^{-1/2} f_i, e_j> since S^{-1/2} is self-adjoint
  return VectorSequence(s_half * coefficient_transfer(s_inv_half * f.synthesis(), e.synthesis(), h.synthesis()));
}

bool QNormCheck::ok() const noexcept {
  return q_norm <= q_norm_limit * (1.0 + kWitnessNormSlack) &&
         q_inv_norm <= q_inv_norm_limit * (1.0 + kWitnessNormSlack);
}

QNormCheck check_q_norms(const VectorSequence& f, const OperatorMatrix& q) {
  if (q.rows() != f.dim() || q.cols() != f.dim())
    throw Error(ErrorCode::DimensionMismatch, "Q must be N x N");
  const SpectralSummary spec = spectral_summary(f);
  if (spec.rank == 0) throw Error(ErrorCode::DegenerateSequence, "base sequence is zero");
  Eigen::JacobiSVD<OperatorMatrix> svd(q);
  const Eigen::VectorXd& sv = svd.singularValues();
  QNormCheck out;
  out.q_norm = sv(0);
  const double smallest = sv(sv.size() - 1);
  out.q_inv_norm = smallest > rank_threshold(sv(0), q.rows()) ? 1.0 / smallest
                                                                : std::numeric_limits<double>::infinity();
  out.q_norm_limit = std::sqrt(spec.lambda_max);
  out.q_inv_norm_limit = 1.0 / std::sqrt(spec.lambda_min_nonzero);
  return out;
}

VectorSequence rdual_type_III(const VectorSequence& f, const VectorSequence& e, const VectorSequence& h,
                              const OperatorMatrix& q) {
  require_square_sequence(f, "f");
  require_orthonormal_basis(e, f.dim(), "e");
  require_orthonormal_basis(h, f.dim(), "h");
  const QNormCheck norms = check_q_norms(f, q);
  if (!norms.ok()) {
    std::ostringstream msg;
    msg.precision(12);
    if (!std::isfinite(norms.q_inv_norm)) {
      msg << "Q is not invertible";
    } else {
      if (norms.q_norm > norms.q_norm_limit * (1.0 + kWitnessNormSlack))
        msg << "||Q|| = " << norms.q_norm << " exceeds sqrt||S|| = " << norms.q_norm_limit << " by "
            << norms.q_norm - norms.q_norm_limit << "; ";
      if (norms.q_inv_norm > norms.q_inv_norm_limit * (1.0 + kWitnessNormSlack))
        msg << "||Q^-1|| = " << norms.q_inv_norm << " exceeds sqrt||S^+|| = " << norms.q_inv_norm_limit
            << " by " << norms.q_inv_norm - norms.q_inv_norm_limit;
    }
    throw Error(ErrorCode::QNormViolation, msg.str());
  }
  return VectorSequence(q * coefficient_transfer(inverse_sqrt_frame_operator(f) * f.synthesis(), e.synthesis(),
                                                 h.synthesis()));
}

VectorSequence rdual_type_IV(const VectorSequence& f, const VectorSequence& e, const VectorSequence& h) {
  require_square_sequence(f, "f");
  require_riesz_basis(e, f.dim(), "e");
  require_riesz_basis(h, f.dim(), "h");
  return VectorSequence(coefficient_transfer(f.synthesis(), e.synthesis(), h.synthesis()));
}

VectorSequence synthesize(const VectorSequence& f, const RDualWitness& w) {
  switch (w.kind) {
    case RDualKind::I: return rdual_type_I(f, w.e, w.h);
    case RDualKind::II: return rdual_type_II(f, w.e, w.h);
    case RDualKind::III:
    case RDualKind::IIIStar:
      if (!w.q) throw Error(ErrorCode::InvalidWitness, "type-III witness without Q");
      return rdual_type_III(f, w.e, w.h, *w.q);
    case RDualKind::IV: return rdual_type_IV(f, w.e, w.h);
  }
  throw Error(ErrorCode::InvalidWitness, "unknown witness kind");
}

void validate_witness(const VectorSequence& f, const RDualWitness& w) {
  // Synthesis performs every structural check; the result is discarded.
  (void)synthesize(f, w);
}

bool check_dim_condition(const VectorSequence& f, const VectorSequence& omega) {
  require_square_sequence(f, "f");
  require_square_sequence(omega, "omega");
  if (f.dim() != omega.dim()) throw Error(ErrorCode::DimensionMismatch, "f and omega live in different spaces");
  const Index ker_t = f.count() - spectral_summary(f).rank;
  const Index span_perp = omega.dim() - spectral_summary(omega).rank;
  return ker_t == span_perp;
}

bool check_kernel_correspondence(const VectorSequence& f, const VectorSequence& omega, const VectorSequence& h) {
  require_square_sequence(f, "f");
  require_square_sequence(omega, "omega");
  require_orthonormal_basis(h, f.dim(), "h");
  constexpr double kTol = 1e-9;
  const Subspace perp = orth_complement(range(frame_operator(omega)));
  const Subspace ker_t = synthesis_kernel(f);
  if (perp.rank() != ker_t.rank()) return false;
  if (perp.rank() == 0) return true;
  // g -> {<h_i, g>}_i = conj(H* g)
  const OperatorMatrix mapped = (h.synthesis().adjoint() * perp.basis()).conjugate();
  const Subspace image(f.count(), mapped);
  for (Index k = 0; k < mapped.cols(); ++k)
    if (ker_t.distance(mapped.col(k)) > kTol) return false;
  for (Index k = 0; k < ker_t.rank(); ++k)
    if (image.distance(ker_t.basis().col(k)) > kTol) return false;
  return true;
}

bool EqStarReport::min_side_holds() const noexcept { return within_relative(min_gain, target_min, tolerance); }
bool EqStarReport::max_side_holds() const noexcept { return within_relative(max_gain, target_max, tolerance); }

EqStarReport check_eqstar(const VectorSequence& f, const RDualWitness& w, double tol) {
  require_square_sequence(f, "f");
  OperatorMatrix q;
  try {
    validate_witness(f, w);
    q = effective_q(f, w);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::InvalidWitness) throw;
    throw Error(ErrorCode::InvalidWitness, err.what());
  }
  const SpectralSummary spec = spectral_summary(f);
  const Subspace d = conjugate_subspace(analysis_range(f));
  const Subspace hd = unitary_image(w.h.synthesis(), d);
  const Gains gains = restricted_extremal_gains(q, hd);
  EqStarReport r;
  r.min_gain = gains.min_gain;
  r.max_gain = gains.max_gain;
  r.target_min = std::sqrt(spec.lambda_min_nonzero);
  r.target_max = std::sqrt(spec.lambda_max);
  r.subspace_dim = hd.rank();
  r.tolerance = tol;
  r.holds = r.min_side_holds() && r.max_side_holds();
  return r;
}

double type_II_defect(const VectorSequence& f, const VectorSequence& omega) {
  if (f.dim() != omega.dim()) throw Error(ErrorCode::DimensionMismatch, "f and omega live in different spaces");
  const VectorSequence normalized(inverse_sqrt_frame_operator(f) * omega.synthesis());
  const OperatorMatrix g = gram_matrix(normalized);
  return (g - OperatorMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

double spectrum_distance(const VectorSequence& a, const VectorSequence& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  const Eigen::VectorXd sa = frame_spectrum(a);
  const Eigen::VectorXd sb = frame_spectrum(b);
  const Index n = sa.size();
  const double tau_a = rank_threshold(sa(n - 1), n);
  const double tau_b = rank_threshold(sb(n - 1), n);
  double worst = 0.0;
  for (Index k = 0; k < n; ++k) {
    const double x = sa(k) > tau_a ? sa(k) : 0.0;
    const double y = sb(k) > tau_b ? sb(k) : 0.0;
    const double scale = std::max(std::abs(x), std::abs(y));
    if (scale > 0.0) worst = std::max(worst, std::abs(x - y) / scale);
  }
  return worst;
}

KindSet classify_rdual(const VectorSequence& f, const VectorSequence& omega, double tol) {
  require_square_sequence(f, "f");
  require_riesz_basis(f, f.dim(), "f");
  require_square_sequence(omega, "omega");
  if (omega.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "f and omega live in different spaces");

  KindSet out;
  const SpectralSummary om = spectral_summary(omega);
  if (om.rank < omega.dim()) return out;
  out.insert(RDualKind::IV);

  const SpectralSummary fs = spectral_summary(f);
  const double a = fs.lambda_min_gram;
  const double b = fs.lambda_max;
  const double lo = om.lambda_min_gram;
  const double hi = om.lambda_max;
  if (lo >= a * (1.0 - tol) && hi <= b * (1.0 + tol)) out.insert(RDualKind::III);
  if (within_relative(lo, a, tol) && within_relative(hi, b, tol)) out.insert(RDualKind::IIIStar);
  if (type_II_defect(f, omega) <= tol) out.insert(RDualKind::II);
  if (spectrum_distance(f, omega) <= tol) out.insert(RDualKind::I);
  return out;
}

std::optional<AntiunitaryMap> type_I_antiunitary(const VectorSequence& f, const VectorSequence& omega, double tol) {
  require_square_sequence(f, "f");
  require_square_sequence(omega, "omega");
  if (spectrum_distance(f, omega) > tol) return std::nullopt;
  const HermitianEig sf = hermitian_eig(frame_operator(f));
  const HermitianEig so = hermitian_eig(frame_operator(omega));
  // U conj(S_Omega) U* = S for U = V_S V_Omega^T
  AntiunitaryMap g(sf.eigenvectors * so.eigenvectors.transpose());
  const OperatorMatrix normalized = inverse_sqrt_frame_operator(f) * g.apply_columns(omega.synthesis());
  if (unitarity_defect(normalized) > std::max(tol, 1e-9)) return std::nullopt;
  return g;
}

std::optional<RDualWitness> realize_type_I(const VectorSequence& f, const VectorSequence& omega, double tol) {
  require_riesz_basis(f, f.dim(), "f");
  const std::optional<AntiunitaryMap> g = type_I_antiunitary(f, omega, tol);
  if (!g) return std::nullopt;
  const OperatorMatrix s_inv_half = inverse_sqrt_frame_operator(f);
  const OperatorMatrix z = s_inv_half * f.synthesis();
  RDualWitness w{RDualKind::I, VectorSequence(s_inv_half * g->apply_columns(omega.synthesis())),
                 VectorSequence(g->inverse().apply_columns(z)), std::nullopt};
  return w;
}

RDualWitness realize_witness(const VectorSequence& f, const VectorSequence& omega, double tol) {
  require_square_sequence(f, "f");
  require_square_sequence(omega, "omega");
  const Index n = f.dim();
  if (omega.dim() != n) throw Error(ErrorCode::DimensionMismatch, "f and omega live in different spaces");
  const SpectralSummary fs = spectral_summary(f);
  if (fs.rank < n)
    throw Error(ErrorCode::PreconditionFailed,
                "f is not a frame for C^" + std::to_string(n) + " (rank " + std::to_string(fs.rank) + ")");
  const SpectralSummary os = spectral_summary(omega);
  if (os.rank < n)
    throw Error(ErrorCode::PreconditionFailed, "dimension condition fails: dim ker T = 0, dim (span omega)^perp = " +
                                                   std::to_string(n - os.rank));
  if (!within_relative(os.lambda_min_gram, fs.lambda_min_gram, tol) || !within_relative(os.lambda_max, fs.lambda_max, tol)) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "optimal bounds differ: f has (" << fs.lambda_min_gram << ", " << fs.lambda_max << "), omega has ("
        << os.lambda_min_gram << ", " << os.lambda_max << ")";
    throw Error(ErrorCode::PreconditionFailed, msg.str());
  }

  const OperatorMatrix s_omega = frame_operator(omega);
  const OperatorMatrix m = (inverse_sqrt_frame_operator(f) * f.synthesis()).transpose();  // e = h = standard
  const OperatorMatrix target = operator_power_on_range(s_omega, -0.5) * omega.synthesis();
  const OperatorMatrix r = target * m.adjoint();
  RDualWitness w{RDualKind::IIIStar, VectorSequence::standard_basis(n), VectorSequence::standard_basis(n),
                 operator_power_on_range(s_omega, 0.5) * r};

  const QNormCheck norms = check_q_norms(f, *w.q);
  if (!norms.ok()) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "constructed Q violates the norm limits: ||Q|| = " << norms.q_norm << " vs " << norms.q_norm_limit
        << ", ||Q^-1|| = " << norms.q_inv_norm << " vs " << norms.q_inv_norm_limit;
    throw Error(ErrorCode::PreconditionFailed, msg.str());
  }
  const double residual = relative_difference(synthesize(f, w).synthesis(), omega.synthesis());
  if (residual > kResynthesisTolerance)
    throw Error(ErrorCode::PreconditionFailed, "re-synthesis residual " + std::to_string(residual));
  return w;
}

OperatorMatrix extend_square_root(const OperatorMatrix& p) {
  const HermitianEig eig = hermitian_eig(p);
  const Index n = p.rows();
  const double lambda_max = eig.eigenvalues(n - 1);
  if (!(lambda_max > 0.0)) throw Error(ErrorCode::DegenerateSequence, "square root of a zero operator");
  const double tau = rank_threshold(lambda_max, n);
  double lambda_min = lambda_max;
  for (Index k = 0; k < n; ++k)
    if (eig.eigenvalues(k) > tau) lambda_min = std::min(lambda_min, eig.eigenvalues(k));
  const double fill = std::sqrt(std::sqrt(lambda_max) * std::sqrt(lambda_min));
  Eigen::VectorXd d(n);
  for (Index k = 0; k < n; ++k) d(k) = eig.eigenvalues(k) > tau ? std::sqrt(eig.eigenvalues(k)) : fill;
  return eig.eigenvectors * d.asDiagonal() * eig.eigenvectors.adjoint();
}

BiorthogonalResult biorthogonal_rdual(const VectorSequence& f, const VectorSequence& omega, const RDualWitness& w) {
  require_square_sequence(f, "f");
  const Index n = f.dim();
  if (spectral_summary(f).rank < n) throw Error(ErrorCode::NotFrameForH, "f must span C^" + std::to_string(n));
  const OperatorMatrix q = effective_q(f, w);
  const VectorSequence expected = rdual_type_III(f, w.e, w.h, q);
  const double mismatch = relative_difference(omega.synthesis(), expected.synthesis());
  if (omega.dim() != n || omega.count() != n || mismatch > kResynthesisTolerance)
    throw Error(ErrorCode::WitnessMismatch, "omega differs from the witness synthesis by " + std::to_string(mismatch));

  const VectorSequence omega_tilde = canonical_dual(omega);
  const VectorSequence f_tilde = canonical_dual(f);
  const OperatorMatrix m_e = (w.e.synthesis().adjoint() * inverse_sqrt_frame_operator(f) * f.synthesis()).transpose();
  const OperatorMatrix normalized_omega = operator_power_on_range(frame_operator(omega), -0.5) * omega.synthesis();
  // S_w^{-1/2} w_j = sum_i <S^{-1/2} f_i, e_j> z_i  determines z
  const VectorSequence z(normalized_omega * m_e.adjoint());
  const OperatorMatrix v = extend_square_root(frame_operator(omega_tilde));

  const OperatorMatrix resynth =
      v * coefficient_transfer(inverse_sqrt_frame_operator(f_tilde) * f_tilde.synthesis(), w.e.synthesis(),
                               z.synthesis());

  BiorthogonalResult out{omega_tilde, f_tilde, w.e, z, v, 0.0, 0.0, {}, {}};
  out.biorthogonality_defect =
      (omega.synthesis().adjoint() * omega_tilde.synthesis() - OperatorMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  out.resynthesis_defect = relative_difference(resynth, omega_tilde.synthesis());

  const SpectralSummary fs = spectral_summary(f);
  const Subspace zd = unitary_image(z.synthesis(), conjugate_subspace(analysis_range(f_tilde)));
  const Gains gains = restricted_extremal_gains(v, zd);
  EqStarReport& vg = out.v_gains;
  vg.min_gain = gains.min_gain;
  vg.max_gain = gains.max_gain;
  vg.target_min = 1.0 / std::sqrt(fs.lambda_max);
  vg.target_max = 1.0 / std::sqrt(fs.lambda_min_nonzero);
  vg.subspace_dim = zd.rank();
  vg.tolerance = kMembershipTolerance;
  vg.holds = vg.min_side_holds() && vg.max_side_holds();
  out.v_norms = check_q_norms(f_tilde, v);
  return out;
}

CounterexampleReport tight_counterexample(const VectorSequence& f, double c, double tol) {
  require_square_sequence(f, "f");
  const SpectralSummary fs = spectral_summary(f);
  if (fs.rank == 0) throw Error(ErrorCode::DegenerateSequence, "f is zero");
  const double a = fs.lambda_min_nonzero;
  const double b = fs.lambda_max;
  if (b - a <= tol * b) throw Error(ErrorCode::TightFrame, "f is tight; every type-III dual keeps its bounds");
  if (!(c > std::sqrt(a) && c < std::sqrt(b))) {
    std::ostringstream msg;
    msg << "c = " << c << " must lie strictly inside (" << std::sqrt(a) << ", " << std::sqrt(b) << ")";
    throw Error(ErrorCode::PreconditionFailed, msg.str());
  }
  const Index n = f.dim();
  const RDualWitness w{RDualKind::III, VectorSequence::standard_basis(n), VectorSequence::standard_basis(n),
                       c * OperatorMatrix::Identity(n, n)};
  CounterexampleReport r{synthesize(f, w), c, c * c, false, 0.0, {}, check_eqstar(f, w)};
  const SpectralSummary os = spectral_summary(r.omega);
  r.omega_tight = within_relative(os.lambda_min_nonzero, r.tight_bound, tol) &&
                  within_relative(os.lambda_max, r.tight_bound, tol);
  r.type_II_defect = type_II_defect(f, r.omega);
  if (fs.rank == n) r.memberships = classify_rdual(f, r.omega, tol);
  return r;
}

}  // namespace rdual
