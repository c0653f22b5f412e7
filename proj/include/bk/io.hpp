#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bk/bertrand.hpp"
#include "bk/cartan_frame.hpp"
#include "bk/curve.hpp"

namespace bk {

using OrderedJson = nlohmann::ordered_json;

/// Curve-definition document:
///   {
///     "name": "spacelike-helix",
///     "components": ["0.6*sinh(t)", "0.6*cosh(t)", "0.8*cos(d*t)", "0.8*sin(d*t)"],
///     "domain": [0.0, 6.283185307179586],
///     "character": "spacelike",          // optional: spacelike|timelike|null
///     "surface": "de_sitter",            // optional
///     "constants": {"d": 1.4577379737113252}  // optional, substituted before parsing
///   }
/// Unknown fields are rejected.
CurveDef curve_from_json(const OrderedJson& doc);
CurveDef curve_from_json_text(const std::string& text);
CurveDef load_curve_file(const std::filesystem::path& path);

OrderedJson to_json(const ValidationReport& r);
OrderedJson to_json(const SphereTestReport& r);
OrderedJson to_json(const BertrandReport& r);
OrderedJson error_json(const error& e);

/// CSV with a mandatory header row, ',' delimiter, '.' decimal separator,
/// shortest round-trip float formatting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string csv_to_string(const CsvTable& t);
void write_text_file(const std::filesystem::path& path, const std::string& body);
std::string read_text_file(const std::filesystem::path& path);

/// Reads a curve sample table (header t,x1,x2,x3,x4 or s/u in place of t).
struct CurveSamples {
  std::vector<double> params;
  std::vector<Vec4> positions;
};
CurveSamples read_curve_csv(const std::filesystem::path& path);

}  // namespace bk
