#include "bk/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace bk {

namespace {

void set_opt(OrderedJson& j, const char* key, const std::optional<double>& v) {
  if (v && std::isfinite(*v))
    j[key] = *v;
  else
    j[key] = nullptr;
}

CausalCharacter character_from_string(const std::string& s) {
  if (s == "spacelike") return CausalCharacter::Spacelike;
  if (s == "timelike") return CausalCharacter::Timelike;
  if (s == "null" || s == "lightlike") return CausalCharacter::Lightlike;
  throw error(errc::bad_config,
              "unknown character '" + s + "' (expected spacelike, timelike or null)");
}

}  // namespace

CurveDef curve_from_json(const OrderedJson& doc) {
  if (!doc.is_object())
    throw error(errc::parse_error, "curve document must be a JSON object");
  static const std::vector<std::string> allowed = {
      "name", "components", "domain", "character", "surface", "constants"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw error(errc::bad_config, "unknown field '" + it.key() + "'");
  }
  if (!doc.contains("name") || !doc["name"].is_string())
    throw error(errc::bad_config, "curve document needs a string 'name'");
  if (!doc.contains("components") || !doc["components"].is_array() ||
      doc["components"].size() != 4)
    throw error(errc::bad_config, "'components' must be an array of 4 strings");
  if (!doc.contains("domain") || !doc["domain"].is_array() ||
      doc["domain"].size() != 2)
    throw error(errc::bad_config, "'domain' must be [t_lo, t_hi]");

  std::map<std::string, double> constants;
  if (doc.contains("constants")) {
    if (!doc["constants"].is_object())
      throw error(errc::bad_config, "'constants' must be a name->number map");
    for (auto it = doc["constants"].begin(); it != doc["constants"].end(); ++it) {
      if (!it.value().is_number())
        throw error(errc::bad_config,
                    "constant '" + it.key() + "' must be a number");
      constants[it.key()] = it.value().get<double>();
    }
  }

  std::array<Expr, 4> comps;
  for (int i = 0; i < 4; ++i) {
    if (!doc["components"][static_cast<std::size_t>(i)].is_string())
      throw error(errc::bad_config, "'components' must be an array of 4 strings");
    const std::string text =
        doc["components"][static_cast<std::size_t>(i)].get<std::string>();
    try {
      comps[static_cast<std::size_t>(i)] = parse_expr(text, &constants);
    } catch (const parse_error& e) {
      throw parse_error(e.offset(), e.expected(),
                        "component " + std::to_string(i + 1) + ": " + e.what());
    } catch (const error& e) {
      throw error(e.code(),
                  "component " + std::to_string(i + 1) + ": " + e.what());
    }
  }

  std::optional<CausalCharacter> declared;
  if (doc.contains("character")) {
    if (!doc["character"].is_string())
      throw error(errc::bad_config, "'character' must be a string");
    declared = character_from_string(doc["character"].get<std::string>());
  }
  bool de_sitter = false;
  if (doc.contains("surface")) {
    if (!doc["surface"].is_string() ||
        doc["surface"].get<std::string>() != "de_sitter")
      throw error(errc::bad_config, "'surface' must be \"de_sitter\"");
    de_sitter = true;
  }
  if (!doc["domain"][0].is_number() || !doc["domain"][1].is_number())
    throw error(errc::bad_config, "'domain' must be [t_lo, t_hi]");
  return CurveDef(doc["name"].get<std::string>(), comps,
                  doc["domain"][0].get<double>(), doc["domain"][1].get<double>(),
                  declared, de_sitter);
}

CurveDef curve_from_json_text(const std::string& text) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("malformed JSON: ") + e.what());
  }
  return curve_from_json(doc);
}

CurveDef load_curve_file(const std::filesystem::path& path) {
  return curve_from_json_text(read_text_file(path));
}

OrderedJson to_json(const ValidationReport& r) {
  OrderedJson j;
  j["pass"] = r.pass;
  j["samples"] = r.samples;
  j["character_checked"] = r.character_checked;
  if (r.character_checked) {
    j["declared_character"] = r.declared_character;
    j["character_ok"] = r.character_ok;
    j["worst_speed_margin"] = r.worst_speed_margin;
  }
  j["surface_checked"] = r.surface_checked;
  if (r.surface_checked) {
    j["surface_ok"] = r.surface_ok;
    j["worst_surface_residual"] = r.worst_surface_residual;
  }
  if (r.first_offending_t)
    j["first_offending_t"] = *r.first_offending_t;
  else
    j["first_offending_t"] = nullptr;
  j["message"] = r.message;
  return j;
}

OrderedJson to_json(const SphereTestReport& r) {
  OrderedJson j;
  j["samples"] = r.samples;
  j["k2_mean"] = r.k2_mean;
  j["k2_max_deviation"] = r.k2_max_deviation;
  j["k2_min_abs"] = r.k2_min_abs;
  j["k2_constant_nonzero"] = r.k2_constant_nonzero;
  j["fit_indeterminate"] = r.fit_indeterminate;
  j["fitted_point"] = {r.fitted_point.x1, r.fitted_point.x2, r.fitted_point.x3,
                       r.fitted_point.x4};
  set_opt(j, "fit_residual", r.fit_residual);
  j["fixed_point_ok"] = r.fixed_point_ok;
  j["verdict"] = r.verdict;
  return j;
}

OrderedJson to_json(const BertrandReport& r) {
  OrderedJson j;
  j["speed_sq"] = r.speed_sq;
  set_opt(j, "speed_sq_predicted", r.speed_sq_predicted);
  j["speed_sq_max_deviation"] = r.speed_sq_max_deviation;
  j["character"] = r.character;
  j["kappa_samples"] = r.kappa_samples;
  j["tau_samples"] = r.tau_samples;
  set_opt(j, "kappa_closed", r.kappa_closed);
  set_opt(j, "tau_closed", r.tau_closed);
  j["alpha_fit"] = r.alpha_fit;
  j["beta_fit"] = r.beta_fit;
  j["fit_residual"] = r.fit_residual;
  set_opt(j, "alpha_paper", r.alpha_paper);
  set_opt(j, "beta_paper", r.beta_paper);
  set_opt(j, "paper_identity_value", r.paper_identity_value);
  j["degenerate_fit"] = r.degenerate_fit;
  j["kappa_rel_stdev"] = r.kappa_rel_stdev;
  j["tau_rel_stdev"] = r.tau_rel_stdev;
  set_opt(j, "normalized_identity_value", r.normalized_identity_value);
  return j;
}

OrderedJson error_json(const error& e) {
  OrderedJson j;
  OrderedJson inner;
  inner["code"] = errc_name(e.code());
  inner["message"] = e.what();
  if (e.at())
    inner["t"] = *e.at();
  else
    inner["t"] = nullptr;
  j["error"] = inner;
  return j;
}

std::string csv_to_string(const CsvTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out.push_back(',');
    out += t.header[i];
  }
  out.push_back('\n');
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += format_double(row[i]);
    }
    out.push_back('\n');
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw error(errc::io_error, "cannot open for writing: " + path.string());
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw error(errc::io_error, "write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw error(errc::io_error, "cannot open: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CurveSamples read_curve_csv(const std::filesystem::path& path) {
  const std::string body = read_text_file(path);
  std::istringstream in(body);
  std::string line;
  if (!std::getline(in, line))
    throw error(errc::parse_error, "empty CSV: " + path.string());
  CurveSamples out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> cells;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      double v = 0.0;
      auto res = std::from_chars(line.data() + start, line.data() + comma, v);
      if (res.ec != std::errc() || res.ptr != line.data() + comma)
        throw error(errc::parse_error,
                    "bad CSV number at line " + std::to_string(lineno) + " in " +
                        path.string());
      cells.push_back(v);
      start = comma + 1;
      if (comma == line.size()) break;
    }
    if (cells.size() < 5)
      throw error(errc::parse_error,
                  "curve CSV needs at least 5 columns (param, x1..x4)");
    out.params.push_back(cells[0]);
    out.positions.push_back(
        Vec4{cells[1], cells[2], cells[3], cells[4]});
  }
  return out;
}

}  // namespace bk
