#pragma once

// JSON file formats.
//
//   frame:    {"dim": N, "vectors": [[[re, im], ... N], ... count]}
//   witness:  {"kind": "I"|"II"|"III"|"IIIStar"|"IV", "e": frame, "h": frame,
//              "q": [[[re, im], ... N], ... N rows]}   (q optional)
//   window:   {"window": [[re, im], ... L]}
//
// Parse failures throw Error(ParseError).

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rdual/bspline.hpp"
#include "rdual/gabor.hpp"
#include "rdual/rduals.hpp"

namespace rdual::io {

using nlohmann::json;

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j, Index expected_dim = -1);

json matrix_rows_to_json(const OperatorMatrix& m);
OperatorMatrix matrix_rows_from_json(const json& j);

json frame_to_json(const VectorSequence& f);
VectorSequence frame_from_json(const json& j);

json witness_to_json(const RDualWitness& w);
RDualWitness witness_from_json(const json& j);

Vector window_from_json(const json& j);

json classification_to_json(const Classification& c);
json eqstar_to_json(const EqStarReport& r);
json duality_to_json(const DualityReport& r);
json bspline_report_to_json(const NotTypeIIReport& r);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const json& j);

}  // namespace rdual::io
