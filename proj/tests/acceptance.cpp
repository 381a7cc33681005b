// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rdual/bspline.hpp"
#include "rdual/error.hpp"
#include "rdual/gabor.hpp"
#include "rdual/random.hpp"
#include "rdual/rduals.hpp"
#include "rdual/suites.hpp"

using namespace rdual;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Verdict suite_verdict(const std::string& name, int trials, std::vector<int> dims) {
  SuiteConfig cfg;
  cfg.seed = 20261014;
  cfg.trials = trials;
  cfg.dims = std::move(dims);
  const SuiteReport r = run_suite(name, cfg);
  std::string d = name + " " + std::to_string(r.passed) + "/" + std::to_string(r.passed + r.failed) +
                  fmt(", worst discrepancy %.2e", r.worst_discrepancy);
  if (!r.failures.empty()) d += "; first failure: " + r.failures.front().note + " [" + r.replay_command(r.failures.front()) + "]";
  return {r.all_passed(), d};
}

const std::vector<int> kDims2to10{2, 3, 4, 5, 6, 7, 8, 9, 10};

Verdict c1_bspline() {
  const auto t0 = std::chrono::steady_clock::now();
  const NotTypeIIReport r = conclude_not_type_II();
  const double secs = seconds_since(t0);
  const double err = std::abs(r.entry.value - (1.0 + M_PI / 4.0 - std::log(2.0)));
  return {err <= 1e-8 && r.not_type_II && secs < 5.0,
          fmt("integral %.15f, |err| %.2e (tol 1e-8), %.3f s (limit 5 s)", r.entry.value, err, secs)};
}

Verdict c2_painless() {
  const PainlessBounds pb = painless_frame_bounds(bspline_B2(), Rational(1), Rational(2, 5));
  const double lo = to_double(pb.lower), hi = to_double(pb.upper);
  const double err = std::max(std::abs(lo - 1.25), std::abs(hi - 2.5));
  return {err <= 1e-12, fmt("bounds (%.15g, %.15g), |err| %.2e (tol 1e-12)", lo, hi, err)};
}

Verdict c3_thm1_2() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v = suite_verdict("thm1_2", 500, kDims2to10);
  const double secs = seconds_since(t0);
  v.pass = v.pass && secs < 30.0;
  v.detail += fmt(" (tol 1e-9 relative), %.2f s (limit 30 s)", secs);
  return v;
}

Verdict c4_type_II() {
  Rng rng(derive_seed(4, 0));
  double worst_ok = 0.0;
  double least_bad = std::numeric_limits<double>::infinity();
  int built = 0, rejected = 0;
  for (int t = 0; t < 500; ++t) {
    const Index n = 2 + rng.integer(0, 8);
    const auto regime = static_cast<SpectrumRegime>(rng.integer(0, 2));
    const VectorSequence f = sequence_with_spectrum(random_spectrum(n, regime, rng), rng);
    const VectorSequence w = rdual_type_II(f, random_orthonormal_basis(n, rng), random_orthonormal_basis(n, rng));
    worst_ok = std::max(worst_ok, type_II_defect(f, w));
    ++built;

    const VectorSequence g =
        sequence_with_spectrum(random_spectrum(n, rng.integer(0, 1) ? SpectrumRegime::Generic : SpectrumRegime::IllConditioned, rng), rng);
    const SpectralSummary s = spectral_summary(g);
    if (s.lambda_max - s.lambda_min_nonzero <= 1e-8 * s.lambda_max) continue;
    const double c = rng.uniform(std::sqrt(s.lambda_min_nonzero), std::sqrt(s.lambda_max));
    const CounterexampleReport ce = tight_counterexample(g, c);
    least_bad = std::min(least_bad, ce.type_II_defect);
    ++rejected;
  }
  return {worst_ok <= 1e-10 && least_bad > 1e-10 && rejected >= 400,
          fmt("%g type-II duals, worst Gram deviation %.2e (tol 1e-10); ", built, worst_ok) +
              fmt("%g scalar-Q duals, smallest deviation %.2e (must exceed 1e-10)", rejected, least_bad)};
}

Verdict c5_prop3_2() {
  Verdict v = suite_verdict("prop3_2", 400, kDims2to10);
  v.detail += " (tol 1e-8)";
  return v;
}

Verdict c6_thm3_5() {
  Rng rng(derive_seed(6, 0));
  int realized = 0, refused = 0, wrong = 0;
  double worst = 0.0;
  for (int t = 0; t < 250; ++t) {
    const Index n = 2 + rng.integer(0, 8);
    const Eigen::VectorXd spec = random_spectrum(n, static_cast<SpectrumRegime>(rng.integer(0, 2)), rng);
    const VectorSequence f = sequence_with_spectrum(spec, rng);
    const VectorSequence omega = sequence_with_spectrum(spec, rng);
    try {
      const RDualWitness w = realize_witness(f, omega);
      const double res = (synthesize(f, w).synthesis() - omega.synthesis()).norm() / omega.synthesis().norm();
      worst = std::max(worst, res);
      if (res <= 1e-9) ++realized;
      else ++wrong;
    } catch (const Error&) {
      ++wrong;
    }

    Eigen::VectorXd moved = spec;
    const double delta = rng.uniform(1e-3, 1e-1);
    if (rng.integer(0, 1)) moved(n - 1) *= 1.0 + delta;
    else moved(0) *= 1.0 - delta;
    try {
      realize_witness(f, sequence_with_spectrum(moved, rng));
      ++wrong;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PreconditionFailed) ++refused;
      else ++wrong;
    }
  }
  Verdict suite = suite_verdict("thm3_5", 300, kDims2to10);
  return {wrong == 0 && realized == 250 && refused == 250 && suite.pass,
          fmt("%g matched pairs realized, worst residual %.2e (tol 1e-9); ", realized, worst) +
              fmt("%g perturbed pairs refused, %g mismatches; ", refused, wrong) + suite.detail};
}

Verdict c7_prop3_7() {
  Verdict v = suite_verdict("prop3_7", 300, kDims2to10);
  v.detail += " (biorthogonality 1e-10, re-synthesis 1e-9, V gains 1e-8)";
  return v;
}

Verdict c8_prop4_1() {
  Verdict v = suite_verdict("prop4_1", 400, kDims2to10);
  v.detail += " (membership tol 1e-8)";
  return v;
}

Verdict c9_duality() {
  Vector g(4);
  g << 1.0, 1.0, 0.0, 0.0;
  const DualityReport a = verify_duality({4, 2, 1, g});
  const DualityReport b = verify_duality({4, 2, 2, g});
  auto near = [](const FrameBounds& fb, double x) { return std::abs(fb.lower - x) <= 1e-9 && std::abs(fb.upper - x) <= 1e-9; };
  const bool exact = a.max_rel_discrepancy <= 1e-9 && b.max_rel_discrepancy <= 1e-9 && near(a.frame_bounds, 4.0) &&
                     near(a.adjoint_bounds, 4.0) && near(b.frame_bounds, 2.0) && near(b.adjoint_bounds, 2.0);
  Verdict sweep = suite_verdict("gabor_duality", 100, {2});
  return {exact && sweep.pass,
          fmt("exact cases discrepancy %.2e, %.2e (tol 1e-9); ", a.max_rel_discrepancy, b.max_rel_discrepancy) +
              sweep.detail + " (tol 1e-8)"};
}

Verdict c10_determinism() {
  SuiteConfig cfg;
  cfg.seed = 77;
  cfg.trials = 30;
  std::string first, second;
  for (const std::string& name : suite_names()) first += suite_report_to_json(run_suite(name, cfg)).dump(2);
  for (const std::string& name : suite_names()) second += suite_report_to_json(run_suite(name, cfg)).dump(2);
  std::vector<SuiteReport> reports;
  for (const std::string& name : suite_names()) reports.push_back(run_suite(name, cfg));
  const std::string csv1 = suite_reports_to_csv(reports);
  reports.clear();
  for (const std::string& name : suite_names()) reports.push_back(run_suite(name, cfg));
  const bool same = first == second && csv1 == suite_reports_to_csv(reports);
  return {same, fmt("%g bytes of JSON compared across two runs of all suites", static_cast<double>(first.size()))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"B-spline counterexample", c1_bspline},
      {"painless bounds", c2_painless},
      {"type-I bound preservation suite", c3_thm1_2},
      {"type-II criterion", c4_type_II},
      {"eqstar equivalence suite", c5_prop3_2},
      {"witness realization round-trip", c6_thm3_5},
      {"biorthogonal duals", c7_prop3_7},
      {"R-dual classification", c8_prop4_1},
      {"discrete duality principle", c9_duality},
      {"determinism", c10_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("[%s] %zu. %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), v.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
