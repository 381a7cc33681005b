// rdual: command-line front end.
//
// Exit codes: 0 success, 2 the checked statement is false, 1 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdual/bspline.hpp"
#include "rdual/error.hpp"
#include "rdual/gabor.hpp"
#include "rdual/io.hpp"
#include "rdual/random.hpp"
#include "rdual/rduals.hpp"
#include "rdual/suites.hpp"

namespace {

using namespace rdual;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFalse = 2;

double default_tolerance() {
  if (const char* env = std::getenv("RDUAL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    std::cerr << "warning: ignoring RDUAL_TOL=" << env << "\n";
  }
  return kMembershipTolerance;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + out_path);
  out << text;
}

void emit(const json& j, const std::string& out_path) { emit(io::dump(j), out_path); }

VectorSequence load_frame(const std::string& path) { return io::frame_from_json(io::read_json_file(path)); }

RDualKind kind_from_flag(const std::string& flag) {
  const auto k = parse_kind(flag);
  if (!k) throw Error(ErrorCode::ParseError, "unknown --type " + flag);
  return *k;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string frame;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const Classification c = classify(load_frame(a.frame));
  emit(io::classification_to_json(c), a.out);
  return kExitOk;
}

// ---- rdual ----------------------------------------------------------------

struct RDualArgs {
  std::string action;
  std::string frame;
  std::string omega;
  std::string witness;
  std::string type = "1";
  std::string out;
  double tol = kMembershipTolerance;
};

RDualWitness load_or_default_witness(const RDualArgs& a, const VectorSequence& f) {
  if (!a.witness.empty()) {
    RDualWitness w = io::witness_from_json(io::read_json_file(a.witness));
    return w;
  }
  const RDualKind kind = kind_from_flag(a.type);
  if (kind == RDualKind::III || kind == RDualKind::IIIStar)
    throw Error(ErrorCode::InvalidWitness, "type " + std::string(kind_name(kind)) + " needs --witness with a q matrix");
  const VectorSequence std_basis = VectorSequence::standard_basis(f.count());
  const VectorSequence h_basis = VectorSequence::standard_basis(f.dim());
  return RDualWitness{kind, std_basis, h_basis, std::nullopt};
}

VectorSequence require_omega(const RDualArgs& a) {
  if (a.omega.empty()) throw Error(ErrorCode::ParseError, a.action + " needs an omega file");
  return load_frame(a.omega);
}

int cmd_rdual(const RDualArgs& a) {
  const VectorSequence f = load_frame(a.frame);

  if (a.action == "make") {
    RDualWitness w = load_or_default_witness(a, f);
    if (!a.witness.empty() && a.type != "1") {
      const RDualKind requested = kind_from_flag(a.type);
      if (requested != w.kind)
        throw Error(ErrorCode::WitnessMismatch, "--type " + a.type + " disagrees with witness kind " +
                                                    std::string(kind_name(w.kind)));
    }
    emit(io::frame_to_json(synthesize(f, w)), a.out);
    return kExitOk;
  }

  if (a.action == "check") {
    const VectorSequence omega = require_omega(a);
    const RDualWitness w = load_or_default_witness(a, f);
    validate_witness(f, w);
    const VectorSequence built = synthesize(f, w);
    if (built.dim() != omega.dim() || built.count() != omega.count())
      throw Error(ErrorCode::DimensionMismatch, "omega shape differs from the synthesized dual");
    const double residual = (built.synthesis() - omega.synthesis()).norm() / std::max(1.0, omega.synthesis().norm());
    json report{{"kind", kind_name(w.kind)}, {"residual", residual}, {"tolerance", kResynthesisTolerance}};
    bool ok = residual <= kResynthesisTolerance;
    if (w.kind == RDualKind::III || w.kind == RDualKind::IIIStar) {
      const EqStarReport star = check_eqstar(f, w);
      report["eqstar"] = io::eqstar_to_json(star);
      if (w.kind == RDualKind::IIIStar) ok = ok && star.holds;
    }
    report["dim_condition"] = check_dim_condition(f, omega);
    report["holds"] = ok;
    emit(report, a.out);
    return ok ? kExitOk : kExitFalse;
  }

  if (a.action == "classify") {
    const VectorSequence omega = require_omega(a);
    const KindSet s = classify_rdual(f, omega, a.tol);
    json kinds = json::array();
    for (RDualKind k : s.members()) kinds.push_back(kind_name(k));
    emit(json{{"kinds", kinds}, {"tolerance", a.tol}, {"spectrum_distance", spectrum_distance(f, omega)}}, a.out);
    return kinds.empty() ? kExitFalse : kExitOk;
  }

  if (a.action == "realize") {
    const VectorSequence omega = require_omega(a);
    try {
      emit(io::witness_to_json(realize_witness(f, omega, a.tol)), a.out);
      return kExitOk;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PreconditionFailed) throw;
      std::cerr << e.what() << "\n";
      return kExitFalse;
    }
  }

  if (a.action == "biorth") {
    const VectorSequence omega = require_omega(a);
    const RDualWitness w = load_or_default_witness(a, f);
    const BiorthogonalResult r = biorthogonal_rdual(f, omega, w);
    const bool ok = r.biorthogonality_defect <= 1e-10 && r.resynthesis_defect <= kResynthesisTolerance;
    emit(json{{"omega_tilde", io::frame_to_json(r.omega_tilde)},
              {"e", io::frame_to_json(r.e)},
              {"z", io::frame_to_json(r.z)},
              {"v", io::matrix_rows_to_json(r.v)},
              {"biorthogonality_defect", r.biorthogonality_defect},
              {"resynthesis_defect", r.resynthesis_defect},
              {"v_gains", io::eqstar_to_json(r.v_gains)},
              {"v_norms", {{"v_norm", r.v_norms.q_norm},
                           {"v_norm_limit", r.v_norms.q_norm_limit},
                           {"v_inv_norm", r.v_norms.q_inv_norm},
                           {"v_inv_norm_limit", r.v_norms.q_inv_norm_limit},
                           {"ok", r.v_norms.ok()}}}},
         a.out);
    return ok ? kExitOk : kExitFalse;
  }

  throw Error(ErrorCode::ParseError, "unknown rdual action " + a.action);
}

// ---- gabor ----------------------------------------------------------------

struct GaborArgs {
  Index length = 4;
  Index a = 2;
  Index b = 1;
  std::string window = "ones";
  Index width = 0;
  double scale = 2.0;
  std::uint64_t seed = 1;
  std::string out;
};

Vector build_window(const GaborArgs& g) {
  const std::string& w = g.window;
  if (w.rfind("file:", 0) == 0) return io::window_from_json(io::read_json_file(w.substr(5)));
  if (g.length < 1) throw Error(ErrorCode::BadLattice, "L must be positive");
  if (w == "bspline2") return sampled_bspline_window(g.length, g.scale);
  if (w == "delta") {
    Vector v = Vector::Zero(g.length);
    v(0) = 1.0;
    return v;
  }
  if (w == "ones") {
    const Index width = g.width > 0 ? std::min(g.width, g.length) : g.a;
    Vector v = Vector::Zero(g.length);
    v.head(std::min(width, g.length)).setOnes();
    return v;
  }
  if (w == "random") {
    Rng rng(g.seed);
    return random_vector(g.length, rng);
  }
  throw Error(ErrorCode::ParseError, "unknown --window " + w);
}

int cmd_gabor(const GaborArgs& g) {
  const DualityReport r = verify_duality({g.length, g.a, g.b, build_window(g)});
  emit(io::duality_to_json(r), g.out);
  return r.consistent(1e-8) ? kExitOk : kExitFalse;
}

// ---- bspline --------------------------------------------------------------

struct BsplineArgs {
  double tol = 1e-10;
  std::vector<std::int64_t> mn{0, 1};
  std::string out;
};

int cmd_bspline(const BsplineArgs& b) {
  QuadratureOptions opts;
  opts.abs_tol = b.tol;
  const NotTypeIIReport r = conclude_not_type_II(bspline_B2(), Rational(1), Rational(2, 5), b.mn[0], b.mn[1], opts);
  emit(io::bspline_report_to_json(r), b.out);
  return r.not_type_II ? kExitOk : kExitFalse;
}

// ---- prop -----------------------------------------------------------------

struct PropArgs {
  std::string suite = "all";
  int trials = 100;
  std::uint64_t seed = 1;
  std::vector<int> dims{2, 3, 4, 5, 6, 7, 8};
  std::string format = "json";
  std::string out;
  std::optional<int> trial;
  double tol = kMembershipTolerance;
};

int cmd_prop(const PropArgs& p) {
  std::vector<std::string> names;
  if (p.suite == "all") names = suite_names();
  else names.push_back(p.suite);

  SuiteConfig cfg;
  cfg.seed = p.seed;
  cfg.trials = p.trials;
  cfg.dims = p.dims;
  cfg.tolerance = p.tol;
  cfg.only_trial = p.trial;

  std::vector<SuiteReport> reports;
  for (const std::string& name : names) {
    if (!is_suite(name)) throw Error(ErrorCode::ParseError, "unknown suite " + name);
    reports.push_back(run_suite(name, cfg));
  }

  bool all = true;
  for (const SuiteReport& r : reports) {
    all = all && r.all_passed();
    std::cerr << r.suite << ": " << r.passed << "/" << (r.passed + r.failed) << " passed, worst discrepancy "
              << r.worst_discrepancy << "\n";
    for (const TrialOutcome& t : r.failures) std::cerr << "  replay: " << r.replay_command(t) << "  (" << t.note << ")\n";
  }

  if (p.format == "csv") {
    emit(suite_reports_to_csv(reports), p.out);
  } else {
    json arr = json::array();
    for (const SuiteReport& r : reports) arr.push_back(suite_report_to_json(r));
    emit(json{{"suites", arr}, {"all_passed", all}}, p.out);
  }
  return all ? kExitOk : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"R-duals of frame sequences: construction, classification and Gabor checks"};
  app.require_subcommand(1);
  const double tol0 = default_tolerance();

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "classify a sequence and report its bounds");
  an->add_option("frame", analyze.frame, "frame JSON file")->required();
  an->add_option("-o,--out", analyze.out, "output file (default stdout)");

  RDualArgs rd;
  rd.tol = tol0;
  auto* rs = app.add_subcommand("rdual", "construct, check, classify, realize or invert R-duals");
  rs->add_option("action", rd.action, "make | check | classify | realize | biorth")
      ->required()
      ->check(CLI::IsMember({"make", "check", "classify", "realize", "biorth"}));
  rs->add_option("frame", rd.frame, "base sequence f")->required();
  rs->add_option("omega", rd.omega, "candidate dual (check, classify, realize, biorth)");
  rs->add_option("-w,--witness", rd.witness, "witness JSON (e, h, optional q)");
  rs->add_option("-t,--type", rd.type, "R-dual type")->check(CLI::IsMember({"1", "2", "3", "3star", "4", "I", "II", "III", "IIIStar", "IV"}));
  rs->add_option("--tol", rd.tol, "membership tolerance (env RDUAL_TOL)");
  rs->add_option("-o,--out", rd.out, "output file (default stdout)");

  GaborArgs gb;
  auto* gs = app.add_subcommand("gabor", "discrete Gabor checks");
  std::string gabor_action;
  gs->add_option("action", gabor_action, "duality")->required()->check(CLI::IsMember({"duality"}));
  gs->add_option("--L", gb.length, "signal length")->required();
  gs->add_option("--a", gb.a, "translation step")->required();
  gs->add_option("--b", gb.b, "modulation step")->required();
  gs->add_option("--window", gb.window, "file:PATH | bspline2 | delta | ones | random");
  gs->add_option("--width", gb.width, "support length for the ones window (default a)");
  gs->add_option("--scale", gb.scale, "half-length of the bspline2 sampling interval");
  gs->add_option("--seed", gb.seed, "seed for the random window");
  gs->add_option("-o,--out", gb.out, "output file (default stdout)");

  BsplineArgs bs;
  auto* bsc = app.add_subcommand("bspline", "B-spline Gabor counterexample");
  std::string bspline_action;
  bsc->add_option("action", bspline_action, "counterexample")->required()->check(CLI::IsMember({"counterexample"}));
  bsc->add_option("--tol", bs.tol, "absolute quadrature tolerance");
  bsc->add_option("--mn", bs.mn, "indices m n")->expected(2);
  bsc->add_option("-o,--out", bs.out, "output file (default stdout)");

  PropArgs pr;
  pr.tol = tol0;
  auto* ps = app.add_subcommand("prop", "randomized property suites");
  std::string prop_action;
  ps->add_option("action", prop_action, "run")->required()->check(CLI::IsMember({"run"}));
  ps->add_option("--suite", pr.suite, "suite name or all");
  ps->add_option("--trials", pr.trials, "trials per suite")->check(CLI::PositiveNumber);
  ps->add_option("--seed", pr.seed, "base seed");
  ps->add_option("--dims", pr.dims, "dimensions to draw from")->delimiter(',');
  ps->add_option("--format", pr.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  ps->add_option("--trial", pr.trial, "replay one trial index");
  ps->add_option("--tol", pr.tol, "membership tolerance (env RDUAL_TOL)");
  ps->add_option("-o,--out", pr.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*an) return cmd_analyze(analyze);
    if (*rs) return cmd_rdual(rd);
    if (*gs) return cmd_gabor(gb);
    if (*bsc) return cmd_bspline(bs);
    if (*ps) return cmd_prop(pr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
