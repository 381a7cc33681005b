#include "rdual/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rdual/gabor.hpp"
#include "rdual/random.hpp"
#include "rdual/rduals.hpp"

namespace rdual {
namespace {

// Bound comparisons for type-I duals are held to this regardless of the
// configured membership tolerance.
constexpr double kBoundEquality = 1e-9;
constexpr double kTypeIIDefect = 1e-10;
constexpr double kBiorthogonality = 1e-10;

struct Check {
  bool ok = true;
  double worst = 0.0;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    } else if (!cond) {
      note += "; " + what;
    }
  }
  void measure(double d) {
    if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
    worst = std::max(worst, d);
  }
};

double rel(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale > 0.0 ? std::abs(x - y) / scale : 0.0;
}

Index pick_dim(const SuiteConfig& cfg, Rng& rng) {
  return cfg.dims[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(cfg.dims.size()) - 1))];
}

SpectrumRegime pick_regime(Rng& rng, bool rank_deficient_allowed) {
  const std::int64_t k = rng.integer(0, rank_deficient_allowed ? 3 : 2);
  return static_cast<SpectrumRegime>(k);
}

// Ascending singular values in [lo, hi]; the extremes are attained when
// `attain` is set and r >= 2.
Eigen::VectorXd gains_between(Index r, double lo, double hi, bool attain, Rng& rng) {
  Eigen::VectorXd s(r);
  for (Index k = 0; k < r; ++k) s(k) = rng.uniform(lo, hi);
  std::sort(s.data(), s.data() + r);
  if (attain) {
    s(0) = lo;
    s(r - 1) = hi;
  }
  return s;
}

// Q = U diag(s_w, s_perp) [B_W, B_perp]^*: gains on W are exactly s_w.
OperatorMatrix operator_with_gains(const Subspace& w, const Eigen::VectorXd& on_w, const Eigen::VectorXd& off_w,
                                   Rng& rng) {
  const Index n = w.ambient_dim();
  OperatorMatrix basis(n, n);
  basis << w.basis(), orth_complement(w).basis();
  Eigen::VectorXd s(n);
  s << on_w, off_w;
  return random_unitary(n, rng) * s.cast<Complex>().asDiagonal() * basis.adjoint();
}

OperatorMatrix admissible_q(const SpectralSummary& spec, Index n, Rng& rng) {
  return matrix_with_singular_values(
      gains_between(n, std::sqrt(spec.lambda_min_nonzero), std::sqrt(spec.lambda_max), false, rng), rng);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

using Trial = std::function<void(Rng&, Index, double, Check&)>;

// Type-I duals: Riesz bounds equal the frame bounds, Riesz-basis verdicts agree.
void trial_type_I_bounds(Rng& rng, Index n, double, Check& c) {
  const VectorSequence f = sequence_with_spectrum(random_spectrum(n, pick_regime(rng, true), rng), rng);
  const VectorSequence e = random_orthonormal_basis(n, rng);
  const VectorSequence h = random_orthonormal_basis(n, rng);
  const VectorSequence omega = rdual_type_I(f, e, h);
  const Classification cf = classify(f);
  const Classification co = classify(omega);
  const bool f_rb = cf.independent() && cf.spans();
  const bool o_rb = co.independent() && co.spans();
  c.require(f_rb == o_rb, "Riesz-basis verdicts differ");
  if (cf.spans()) {
    c.require(co.independent(), "omega is not a Riesz sequence for a spanning f");
    if (co.riesz_bounds) {
      c.measure(rel(co.riesz_bounds->lower, cf.frame_bounds.lower));
      c.measure(rel(co.riesz_bounds->upper, cf.frame_bounds.upper));
    }
  } else {
    c.require(!co.independent(), "omega is a Riesz sequence although f does not span");
  }
  c.measure(rel(co.frame_bounds.lower, cf.frame_bounds.lower));
  c.measure(rel(co.frame_bounds.upper, cf.frame_bounds.upper));
  c.require(c.worst <= kBoundEquality, "bounds differ by " + fmt(c.worst));
}

void trial_characterizations(Rng& rng, Index n, double tol, Check& c) {
  const VectorSequence f = sequence_with_spectrum(random_spectrum(n, pick_regime(rng, true), rng), rng);
  const VectorSequence e = random_orthonormal_basis(n, rng);
  const VectorSequence h = random_orthonormal_basis(n, rng);
  const SpectralSummary fs = spectral_summary(f);

  const VectorSequence w1 = rdual_type_I(f, e, h);
  c.require(check_dim_condition(f, w1), "dimension condition fails for a type-I dual");
  c.require(check_kernel_correspondence(f, w1, h), "kernel correspondence fails");
  if (fs.rank < n) c.require(!check_dim_condition(f, VectorSequence(random_unitary(n, rng))),
                             "dimension condition accepted an ONB against a non-spanning f");

  const VectorSequence w3 = rdual_type_III(f, e, h, admissible_q(fs, n, rng));
  c.require(check_dim_condition(f, w3), "dimension condition fails for a type-III dual");
  const SpectralSummary s3 = spectral_summary(w3);
  c.require(s3.lambda_min_nonzero >= fs.lambda_min_nonzero * (1 - tol) && s3.lambda_max <= fs.lambda_max * (1 + tol),
            "type-III bounds escape [A, B]");
  if (fs.rank < n) return;

  c.require(type_I_antiunitary(f, w1, tol).has_value(), "no antiunitary similarity for a type-I dual");
  const VectorSequence w2 = rdual_type_II(f, e, h);
  const double defect = type_II_defect(f, w2);
  c.measure(defect);
  c.require(defect <= kTypeIIDefect, "type-II dual fails orthonormality by " + fmt(defect));
  c.require(check_dim_condition(f, w2), "dimension condition fails for a type-II dual");
  const SpectralSummary s2 = spectral_summary(w2);
  c.require(s2.lambda_min_gram >= fs.lambda_min_gram * (1 - tol) && s2.lambda_max <= fs.lambda_max * (1 + tol),
            "type-II bounds escape [A, B]");

  if (fs.lambda_max - fs.lambda_min_gram > tol * fs.lambda_max) {
    const double mid = 0.5 * (std::sqrt(fs.lambda_min_gram) + std::sqrt(fs.lambda_max));
    const CounterexampleReport ce = tight_counterexample(f, mid, tol);
    c.require(ce.type_II_defect > kTypeIIDefect, "scalar-Q dual passed the type-II criterion");
  }
}

// Mode 0 builds Q with the eqstar gains; modes 1-3 move the lower, upper or
// both extremal gains strictly inside (sqrt A, sqrt B).
void trial_eqstar_equivalence(Rng& rng, Index n, double tol, Check& c) {
  const SpectrumRegime regime = rng.integer(0, 4) == 0 ? SpectrumRegime::Tight
                                                       : (rng.integer(0, 1) ? SpectrumRegime::Generic
                                                                            : SpectrumRegime::IllConditioned);
  const VectorSequence f = sequence_with_spectrum(random_spectrum(n, regime, rng), rng);
  const VectorSequence e = random_orthonormal_basis(n, rng);
  const VectorSequence h = random_orthonormal_basis(n, rng);
  const SpectralSummary fs = spectral_summary(f);
  const double lo = std::sqrt(fs.lambda_min_gram);
  const double hi = std::sqrt(fs.lambda_max);
  const bool tight = hi - lo <= 1e-12 * hi;
  const std::int64_t mode = tight ? 0 : rng.integer(0, 3);

  Eigen::VectorXd s = gains_between(n, lo, hi, true, rng);
  const double span = hi - lo;
  if (mode == 1 || mode == 3) s(0) = lo + rng.uniform(0.01, 0.45) * span;
  if (mode == 2 || mode == 3) s(n - 1) = hi - rng.uniform(0.01, 0.45) * span;
  std::sort(s.data(), s.data() + n);
  const RDualWitness w{RDualKind::III, e, h, matrix_with_singular_values(s, rng)};
  const VectorSequence omega = synthesize(f, w);
  const EqStarReport star = check_eqstar(f, w);
  const SpectralSummary os = spectral_summary(omega);
  const bool lower_matches = rel(os.lambda_min_gram, fs.lambda_min_gram) <= tol;
  const bool upper_matches = rel(os.lambda_max, fs.lambda_max) <= tol;

  c.require(star.holds == (mode == 0), "eqstar verdict disagrees with the construction");
  c.require(star.holds == (lower_matches && upper_matches), "eqstar and bound preservation disagree");
  c.require(star.min_side_holds() == lower_matches, "min-side eqstar disagrees with the lower bound");
  c.require(star.max_side_holds() == upper_matches, "max-side eqstar disagrees with the upper bound");
  if (star.holds) c.measure(std::max(rel(os.lambda_min_gram, fs.lambda_min_gram), rel(os.lambda_max, fs.lambda_max)));
}

// Eqstar duals of frame sequences (rank may be < N) keep bounds and swap the
// frame / Riesz roles.
void trial_eqstar_roles(Rng& rng, Index n, double tol, Check& c) {
  const VectorSequence f = sequence_with_spectrum(random_spectrum(n, pick_regime(rng, true), rng), rng);
  const VectorSequence e = random_orthonormal_basis(n, rng);
  const VectorSequence h = random_orthonormal_basis(n, rng);
  const SpectralSummary fs = spectral_summary(f);
  const double lo = std::sqrt(fs.lambda_min_nonzero);
  const double hi = std::sqrt(fs.lambda_max);
  const Subspace w = unitary_image(h.synthesis(), conjugate_subspace(analysis_range(f)));
  const Eigen::VectorXd on_w = gains_between(w.rank(), lo, hi, true, rng);
  const Eigen::VectorXd off_w = gains_between(n - w.rank(), lo, hi, false, rng);
  const RDualWitness wit{RDualKind::IIIStar, e, h, operator_with_gains(w, on_w, off_w, rng)};
  const VectorSequence omega = synthesize(f, wit);
  const EqStarReport star = check_eqstar(f, wit);
  c.require(star.holds, "constructed Q does not satisfy eqstar");

  const Classification cf = classify(f);
  const Classification co = classify(omega);
  const double d = std::max(rel(co.frame_bounds.lower, cf.frame_bounds.lower),
                            rel(co.frame_bounds.upper, cf.frame_bounds.upper));
  c.measure(d);
  c.require(d <= kBoundEquality, "optimal bounds differ by " + fmt(d));
  c.require(cf.spans() == co.independent(), "frame for H <=> Riesz sequence fails");
  c.require(cf.independent() == co.spans(), "Riesz sequence <=> frame for H fails");
  c.require((cf.spans() && cf.independent()) == (co.spans() && co.independent()), "Riesz basis <=> Riesz basis fails");
  if (co.riesz_bounds && cf.spans())
    c.require(rel(co.riesz_bounds->lower, cf.frame_bounds.lower) <= tol, "Riesz bound differs");
}

// Matched (mode 0) and interior-perturbed (mode 1) spectra keep the optimal
// bounds and must realize; moving an extreme eigenvalue (mode 2) must not.
void trial_realization(Rng& rng, Index n, double tol, Check& c) {
  const Eigen::VectorXd spec = random_spectrum(n, pick_regime(rng, false), rng);
  const VectorSequence f = sequence_with_spectrum(spec, rng);
  std::int64_t mode = rng.integer(0, 2);
  if (mode == 1 && (n < 3 || spec(n - 1) - spec(0) < 1e-3 * spec(n - 1))) mode = 0;
  Eigen::VectorXd target = spec;
  if (mode == 1) {
    const Index k = rng.integer(1, n - 2);
    target(k) = rng.uniform(spec(0), spec(n - 1));
  } else if (mode == 2) {
    const double delta = rng.uniform(1e-3, 1e-1);
    if (rng.integer(0, 1)) target(n - 1) *= 1.0 + delta;
    else target(0) *= 1.0 - delta;
  }
  const VectorSequence omega = sequence_with_spectrum(target, rng);
  try {
    const RDualWitness w = realize_witness(f, omega, tol);
    c.require(mode != 2, "realize_witness accepted a spectrum with moved extremes");
    const VectorSequence back = synthesize(f, w);
    const double residual = (back.synthesis() - omega.synthesis()).norm() / omega.synthesis().norm();
    c.measure(residual);
    c.require(residual <= kResynthesisTolerance, "re-synthesis residual " + fmt(residual));
    c.require(check_eqstar(f, w).holds, "realized witness violates eqstar");
  } catch (const Error& err) {
    c.require(mode == 2 && err.code() == ErrorCode::PreconditionFailed, std::string("unexpected refusal: ") + err.what());
  }
}

void trial_tight_cases(Rng& rng, Index n, double tol, Check& c) {
  const bool tight = rng.integer(0, 1) == 0;
  const VectorSequence f = sequence_with_spectrum(
      random_spectrum(n, tight ? SpectrumRegime::Tight : pick_regime(rng, false), rng), rng);
  const SpectralSummary fs = spectral_summary(f);
  const double a = fs.lambda_min_gram;
  const double b = fs.lambda_max;

  const VectorSequence w1 = rdual_type_I(f, random_orthonormal_basis(n, rng), random_orthonormal_basis(n, rng));
  c.require(classify_rdual(f, w1, tol).contains(RDualKind::IIIStar), "type-I dual outside IIIStar");

  if (b - a <= tol * b) {
    const VectorSequence cand = rng.integer(0, 1)
                                    ? VectorSequence(std::sqrt(a) * random_unitary(n, rng))
                                    : sequence_with_spectrum(random_spectrum(n, pick_regime(rng, false), rng), rng);
    const KindSet s = classify_rdual(f, cand, tol);
    c.require(s.contains(RDualKind::I) == s.contains(RDualKind::IIIStar), "I and IIIStar differ for tight f");
  } else {
    const double cst = 0.5 * (std::sqrt(a) + std::sqrt(b));
    const CounterexampleReport ce = tight_counterexample(f, cst, tol);
    c.require(ce.omega_tight, "scalar-Q dual is not tight");
    c.require(!ce.memberships.contains(RDualKind::IIIStar), "scalar-Q dual classified IIIStar");
    c.require(ce.memberships.contains(RDualKind::III), "scalar-Q dual not classified III");
    c.measure(rel(ce.tight_bound, cst * cst));
  }
}

void trial_biorthogonal(Rng& rng, Index n, double, Check& c) {
  const VectorSequence f = sequence_with_spectrum(random_spectrum(n, pick_regime(rng, false), rng), rng);
  const VectorSequence e = random_orthonormal_basis(n, rng);
  const VectorSequence h = random_orthonormal_basis(n, rng);
  const SpectralSummary fs = spectral_summary(f);
  const double lo = std::sqrt(fs.lambda_min_gram);
  const double hi = std::sqrt(fs.lambda_max);
  const std::int64_t mode = rng.integer(0, 3);
  std::optional<RDualWitness> w;
  switch (mode) {
    case 0: {
      const VectorSequence target = sequence_with_spectrum(frame_spectrum(f), rng);
      w = realize_witness(f, target);
      break;
    }
    case 1: w = RDualWitness{RDualKind::II, e, h, std::nullopt}; break;
    case 2: w = RDualWitness{RDualKind::IIIStar, e, h, matrix_with_singular_values(gains_between(n, lo, hi, true, rng), rng)}; break;
    default: w = RDualWitness{RDualKind::III, e, h, admissible_q(fs, n, rng)}; break;
  }
  const VectorSequence omega = synthesize(f, *w);
  const bool star = w->kind == RDualKind::II || check_eqstar(f, *w).holds;
  const BiorthogonalResult br = biorthogonal_rdual(f, omega, *w);
  c.measure(br.biorthogonality_defect);
  c.require(br.biorthogonality_defect <= kBiorthogonality, "biorthogonality defect " + fmt(br.biorthogonality_defect));
  c.require(br.resynthesis_defect <= kResynthesisTolerance, "(e, z, V) re-synthesis defect " + fmt(br.resynthesis_defect));
  c.require(unitarity_defect(br.z.synthesis()) <= 1e-10, "z is not orthonormal");
  c.require(br.v_norms.ok(), "V violates the type-III norm limits for the canonical dual");
  if (star) c.require(br.v_gains.holds, "V misses the gain targets");
}

void trial_classification(Rng& rng, Index n, double tol, Check& c) {
  const VectorSequence f = sequence_with_spectrum(random_spectrum(n, pick_regime(rng, false), rng), rng);
  const VectorSequence e = random_orthonormal_basis(n, rng);
  const VectorSequence h = random_orthonormal_basis(n, rng);
  const SpectralSummary fs = spectral_summary(f);
  const double lo = std::sqrt(fs.lambda_min_gram);
  const double hi = std::sqrt(fs.lambda_max);
  const auto kind = static_cast<RDualKind>(rng.integer(0, 4));
  std::optional<VectorSequence> omega;
  switch (kind) {
    case RDualKind::I: omega = rdual_type_I(f, e, h); break;
    case RDualKind::II: omega = rdual_type_II(f, e, h); break;
    case RDualKind::III: omega = rdual_type_III(f, e, h, admissible_q(fs, n, rng)); break;
    case RDualKind::IIIStar:
      omega = rdual_type_III(f, e, h, matrix_with_singular_values(gains_between(n, lo, hi, true, rng), rng));
      break;
    case RDualKind::IV: {
      Eigen::VectorXd s1(n), s2(n);
      for (Index k = 0; k < n; ++k) {
        s1(k) = rng.uniform(0.3, 3.0);
        s2(k) = rng.uniform(0.3, 3.0);
      }
      omega = rdual_type_IV(f, VectorSequence(matrix_with_singular_values(s1, rng)),
                            VectorSequence(matrix_with_singular_values(s2, rng)));
      break;
    }
  }
  const KindSet s = classify_rdual(f, *omega, tol);
  c.require(s.contains(kind), "constructed type " + std::string(kind_name(kind)) + " classified as " + s.to_string());
  c.require(respects_inclusions(s), "inclusion chain violated: " + s.to_string());
  if (s.contains(RDualKind::I)) {
    const std::optional<RDualWitness> w = realize_type_I(f, *omega, tol);
    c.require(w.has_value(), "type-I membership without an antiunitary witness");
    if (w) {
      const double r = (synthesize(f, *w).synthesis() - omega->synthesis()).norm() / omega->synthesis().norm();
      c.measure(r);
      c.require(r <= kResynthesisTolerance, "type-I witness re-synthesis residual " + fmt(r));
    }
  }
}

void trial_gabor(Rng& rng, Index, double tol, Check& c) {
  static const Index kLengths[] = {4, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24, 27, 28, 30, 32, 36, 40, 42, 45, 48, 54, 56, 60, 64};
  const Index length = kLengths[rng.integer(0, std::size(kLengths) - 1)];
  std::vector<std::pair<Index, Index>> lattices;
  for (Index a = 1; a <= length; ++a)
    for (Index b = 1; b <= length; ++b)
      if (length % a == 0 && length % b == 0 && a * b <= length) lattices.emplace_back(a, b);
  const auto [a, b] = lattices[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(lattices.size()) - 1))];
  const DualityReport r = verify_duality({length, a, b, random_vector(length, rng)});
  c.measure(r.max_rel_discrepancy);
  c.require(r.frame && r.adjoint_riesz, "generic window did not give a frame / Riesz pair");
  c.require(r.consistent(tol), "L=" + std::to_string(length) + " a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                   " discrepancy " + fmt(r.max_rel_discrepancy));
}

const std::map<std::string, Trial, std::less<>>& registry() {
  static const std::map<std::string, Trial, std::less<>> r{
      {"thm1_2", trial_type_I_bounds}, {"lem1_3", trial_characterizations}, {"prop3_2", trial_eqstar_equivalence},
      {"thm3_4", trial_eqstar_roles}, {"thm3_5", trial_realization}, {"prop3_6", trial_tight_cases},
      {"prop3_7", trial_biorthogonal}, {"prop4_1", trial_classification}, {"gabor_duality", trial_gabor}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thm1_2", "lem1_3", "prop3_2", "thm3_4", "thm3_5",
                                              "prop3_6", "prop3_7", "prop4_1", "gabor_duality"};
  return names;
}

bool is_suite(std::string_view name) { return registry().count(name) > 0; }

std::string SuiteReport::replay_command(const TrialOutcome& t) const {
  std::ostringstream os;
  os << "rdual prop run --suite " << suite << " --seed " << config.seed << " --trials " << config.trials << " --dims ";
  for (std::size_t k = 0; k < config.dims.size(); ++k) os << (k ? "," : "") << config.dims[k];
  os << " --trial " << t.index;
  return os.str();
}

SuiteReport run_suite(std::string_view name, const SuiteConfig& config) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite " + std::string(name));
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.dims.empty()) throw std::invalid_argument("dims must not be empty");
  for (int d : config.dims)
    if (d < 2) throw std::invalid_argument("dims must be >= 2");

  SuiteReport report{std::string(name), config, 0, 0, 0.0, {}};
  for (int t = 0; t < config.trials; ++t) {
    if (config.only_trial && *config.only_trial != t) continue;
    TrialOutcome out;
    out.index = t;
    out.seed = derive_seed(config.seed, static_cast<std::uint64_t>(t));
    Rng rng(out.seed);
    Check check;
    try {
      const Index n = pick_dim(config, rng);
      it->second(rng, n, config.tolerance, check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    out.passed = check.ok;
    out.discrepancy = check.worst;
    out.note = check.note;
    report.worst_discrepancy = std::max(report.worst_discrepancy, check.worst);
    if (out.passed) {
      ++report.passed;
    } else {
      ++report.failed;
      report.failures.push_back(std::move(out));
    }
  }
  return report;
}

nlohmann::json suite_report_to_json(const SuiteReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const TrialOutcome& t : r.failures)
    failures.push_back({{"trial", t.index},
                        {"seed", t.seed},
                        {"discrepancy", t.discrepancy},
                        {"note", t.note},
                        {"replay", r.replay_command(t)}});
  nlohmann::json out{{"suite", r.suite},
                     {"seed", r.config.seed},
                     {"trials", r.config.trials},
                     {"dims", r.config.dims},
                     {"tolerance", r.config.tolerance},
                     {"passed", r.passed},
                     {"failed", r.failed},
                     {"worst_discrepancy", r.worst_discrepancy},
                     {"failures", failures}};
  if (r.config.only_trial) out["only_trial"] = *r.config.only_trial;
  return out;
}

std::string suite_reports_to_csv(const std::vector<SuiteReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "suite,seed,trials,dims,tolerance,passed,failed,worst_discrepancy,failing_trials\n";
  for (const SuiteReport& r : reports) {
    os << r.suite << ',' << r.config.seed << ',' << r.config.trials << ',';
    for (std::size_t k = 0; k < r.config.dims.size(); ++k) os << (k ? ";" : "") << r.config.dims[k];
    os << ',' << r.config.tolerance << ',' << r.passed << ',' << r.failed << ',' << r.worst_discrepancy << ',';
    for (std::size_t k = 0; k < r.failures.size(); ++k) os << (k ? ";" : "") << r.failures[k].index;
    os << '\n';
  }
  return os.str();
}

}  // namespace rdual
