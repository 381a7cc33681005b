#include "rdual/io.hpp"

#include <fstream>
#include <sstream>

namespace rdual::io {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_error("complex entries are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(json::array({v(k).real(), v(k).imag()}));
  return out;
}

Vector vector_from_json(const json& j, Index expected_dim) {
  if (!j.is_array() || j.empty()) parse_error("vectors are nonempty arrays of [re, im] pairs");
  if (expected_dim >= 0 && static_cast<Index>(j.size()) != expected_dim)
    parse_error("vector of length " + std::to_string(j.size()) + ", expected " + std::to_string(expected_dim));
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Index>(k)) = complex_from_json(j[k]);
  return v;
}

json matrix_rows_to_json(const OperatorMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r).transpose()));
  return rows;
}

OperatorMatrix matrix_rows_from_json(const json& j) {
  if (!j.is_array() || j.empty()) parse_error("matrix must be a nonempty array of rows");
  const Index n = static_cast<Index>(j.size());
  OperatorMatrix m(n, n);
  for (Index r = 0; r < n; ++r) m.row(r) = vector_from_json(j[static_cast<std::size_t>(r)], n).transpose();
  return m;
}

json frame_to_json(const VectorSequence& f) {
  json vectors = json::array();
  for (Index i = 0; i < f.count(); ++i) vectors.push_back(vector_to_json(f.vector(i)));
  return json{{"dim", f.dim()}, {"vectors", vectors}};
}

VectorSequence frame_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("vectors")) parse_error("frame needs \"dim\" and \"vectors\"");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) parse_error("\"dim\" must be a positive integer");
  const Index dim = j["dim"].get<Index>();
  const json& vs = j["vectors"];
  if (!vs.is_array() || vs.empty()) parse_error("\"vectors\" must be a nonempty array");
  std::vector<Vector> vectors;
  for (const json& v : vs) vectors.push_back(vector_from_json(v, dim));
  return VectorSequence::from_vectors(vectors);
}

json witness_to_json(const RDualWitness& w) {
  json out{{"kind", std::string(kind_name(w.kind))}, {"e", frame_to_json(w.e)}, {"h", frame_to_json(w.h)}};
  if (w.q) out["q"] = matrix_rows_to_json(*w.q);
  return out;
}

RDualWitness witness_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) parse_error("witness needs a \"kind\" string");
  const auto kind = parse_kind(j["kind"].get<std::string>());
  if (!kind) parse_error("unknown witness kind \"" + j["kind"].get<std::string>() + "\"");
  if (!j.contains("e") || !j.contains("h")) parse_error("witness needs \"e\" and \"h\"");
  RDualWitness w{*kind, frame_from_json(j["e"]), frame_from_json(j["h"]), std::nullopt};
  if (j.contains("q") && !j["q"].is_null()) w.q = matrix_rows_from_json(j["q"]);
  return w;
}

Vector window_from_json(const json& j) {
  if (!j.is_object() || !j.contains("window")) parse_error("window file needs \"window\"");
  return vector_from_json(j["window"]);
}

json classification_to_json(const Classification& c) {
  json out{{"class", std::string(sequence_class_name(c.sequence_class))},
           {"dim", c.ambient_dim},
           {"count", c.count},
           {"span_dim", c.span_dim},
           {"ker_dim", c.kernel_dim()},
           {"frame_bounds", {c.frame_bounds.lower, c.frame_bounds.upper}},
           {"tolerance", c.tolerance}};
  out["riesz_bounds"] = c.riesz_bounds ? json{c.riesz_bounds->lower, c.riesz_bounds->upper} : json(nullptr);
  return out;
}

json eqstar_to_json(const EqStarReport& r) {
  return json{{"min_gain", r.min_gain},     {"max_gain", r.max_gain},         {"target_min", r.target_min},
              {"target_max", r.target_max}, {"holds", r.holds},               {"subspace_dim", r.subspace_dim},
              {"tolerance", r.tolerance}};
}

json duality_to_json(const DualityReport& r) {
  return json{{"L", r.length},
              {"a", r.translation},
              {"b", r.modulation},
              {"frame", r.frame},
              {"frame_bounds", {r.frame_bounds.lower, r.frame_bounds.upper}},
              {"adjoint_riesz", r.adjoint_riesz},
              {"adjoint_bounds", {r.adjoint_bounds.lower, r.adjoint_bounds.upper}},
              {"scale", r.scale},
              {"max_rel_discrepancy", r.max_rel_discrepancy}};
}

json bspline_report_to_json(const NotTypeIIReport& r) {
  return json{{"m", r.entry.m},
              {"n", r.entry.n},
              {"integral", r.entry.value},
              {"closed_form", "1+pi/4-ln2"},
              {"closed_form_value", r.closed_form_value},
              {"abs_error", r.abs_error},
              {"deviation", r.deviation},
              {"error_estimate", r.entry.error_estimate},
              {"verdict", r.not_type_II ? "not type II" : "type-II criterion not violated"}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << dump(j);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace rdual::io
