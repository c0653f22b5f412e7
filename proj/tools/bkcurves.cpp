// bkcurves: geometry of spacelike and null curves on the unit pseudo-sphere
// of Minkowski 4-space. Subcommands validate curve files, emit frame and
// curvature tables, test pseudo-sphericity, reparametrize, and run the two
// offset-integral constructions with their Bertrand verification.
//
// Exit codes: 0 success, 1 usage/IO/parse, 2 validation or precondition
// failure, 3 tolerance breach.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "bk/bertrand.hpp"
#include "bk/cartan_frame.hpp"
#include "bk/io.hpp"
#include "bk/reparam.hpp"
#include "bk/spacelike_frame.hpp"

namespace fs = std::filesystem;
using bk::OrderedJson;

namespace {

struct RunConfig {
  int samples = 200;
  int panels = 256;
  double frame_tol = 1e-7;
  double causal_tol = 1e-9;
  double fit_tol = 1e-6;
  std::string out_dir = ".";
  std::string format = "csv";
};

int exit_class(bk::errc c) {
  switch (c) {
    case bk::errc::parse_error:
    case bk::errc::unknown_identifier:
    case bk::errc::io_error:
    case bk::errc::bad_config:
      return 1;
    case bk::errc::tolerance_breach:
    case bk::errc::kappa_underdetermined:
      return 3;
    default:
      return 2;
  }
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'
                      ? c
                      : '_');
  return out.empty() ? std::string("curve") : out;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> ts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    ts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return ts;
}

fs::path table_path(const RunConfig& cfg, const std::string& stem) {
  return fs::path(cfg.out_dir) / (stem + (cfg.format == "json" ? ".json" : ".csv"));
}

void write_table(const RunConfig& cfg, const fs::path& path,
                 const bk::CsvTable& table) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  if (cfg.format == "json") {
    OrderedJson j;
    j["columns"] = table.header;
    j["rows"] = table.rows;
    bk::write_text_file(path, j.dump(2) + "\n");
  } else {
    bk::write_text_file(path, bk::csv_to_string(table));
  }
}

void print_json(const OrderedJson& j) { std::cout << j.dump(2) << "\n"; }

bool is_unit_speed(const bk::CurveDef& c, double tol) {
  for (int i = 0; i <= 32; ++i) {
    const double t = c.t_lo() + (c.t_hi() - c.t_lo()) * i / 32.0;
    const bk::Vec4 d1 = c.derivative(t, 1);
    if (std::fabs(bk::minkowski_dot(d1, d1) - 1.0) > tol) return false;
  }
  return true;
}

bool is_pseudo_arc(const bk::CurveDef& c, double tol) {
  for (int i = 0; i <= 32; ++i) {
    const double t = c.t_lo() + (c.t_hi() - c.t_lo()) * i / 32.0;
    const bk::Vec4 d2 = c.derivative(t, 2);
    if (std::fabs(bk::minkowski_dot(d2, d2) - 1.0) > tol) return false;
  }
  return true;
}

// Unit-speed view of a spacelike source, reparametrizing when needed.
bk::CurveView spacelike_view(const bk::CurveDef& c, const RunConfig& cfg,
                             bool& reparametrized) {
  reparametrized = !is_unit_speed(c, cfg.frame_tol);
  if (!reparametrized) return bk::view_of(c);
  auto [curve, map] = bk::arclength_reparam(c, cfg.panels);
  return bk::view_of(curve);
}

bk::CurveView pseudo_arc_view(const bk::CurveDef& c, const RunConfig& cfg,
                              bool& reparametrized) {
  reparametrized = !is_pseudo_arc(c, cfg.frame_tol);
  if (!reparametrized) return bk::view_of(c);
  auto [curve, map] = bk::pseudo_arc_reparam(c, cfg.panels);
  return bk::view_of(curve);
}

// --- subcommand bodies ------------------------------------------------------

int cmd_validate(const std::string& file, const RunConfig& cfg) {
  const bk::CurveDef c = bk::load_curve_file(file);
  const auto rep = bk::validate_declared(c, cfg.samples, cfg.causal_tol);
  OrderedJson j = bk::to_json(rep);
  j["curve"] = c.name();
  print_json(j);
  return rep.pass ? 0 : 2;
}

int cmd_frame(const std::string& file, const RunConfig& cfg) {
  const bk::CurveDef c = bk::load_curve_file(file);
  bool reparametrized = false;
  const bk::CurveView view = spacelike_view(c, cfg, reparametrized);
  const auto ts = uniform_grid(view.lo, view.hi, cfg.samples);

  bk::CsvTable table;
  table.header = {"s",  "kappa_g", "tau_g", "delta", "r1", "r2", "r3",
                  "gamma1", "gamma2", "gamma3", "gamma4",
                  "t1", "t2", "t3", "t4",
                  "n1", "n2", "n3", "n4",
                  "e1", "e2", "e3", "e4"};
  table.rows.assign(ts.size(), {});
  bk::parallel_for(ts.size(), [&](std::size_t i) {
    const bk::Jet j = view.jets(ts[i], 3);
    const auto ap = bk::spacelike_apparatus(j, cfg.frame_tol);
    const auto r = bk::frenet_residuals(j, cfg.frame_tol);
    auto& row = table.rows[i];
    row = {ts[i], ap.kappa_g, ap.tau_g, static_cast<double>(ap.delta),
           r.r1, r.r2, r.r3};
    for (const bk::Vec4* v : {&ap.gamma, &ap.t, &ap.n, &ap.e})
      for (int k = 0; k < 4; ++k) row.push_back((*v)[k]);
  });
  double worst = 0.0;
  for (const auto& row : table.rows)
    worst = std::max({worst, row[4], row[5], row[6]});

  const fs::path path = table_path(cfg, sanitize(c.name()) + "_frame");
  write_table(cfg, path, table);
  OrderedJson j;
  j["curve"] = c.name();
  j["reparametrized"] = reparametrized;
  j["samples"] = cfg.samples;
  j["max_residual"] = worst;
  j["artifact"] = path.string();
  print_json(j);
  return worst <= cfg.frame_tol ? 0 : 3;
}

int cmd_cartan(const std::string& file, const RunConfig& cfg) {
  const bk::CurveDef c = bk::load_curve_file(file);
  bool reparametrized = false;
  const bk::CurveView view = pseudo_arc_view(c, cfg, reparametrized);
  const auto ts = uniform_grid(view.lo, view.hi, cfg.samples);

  bk::CsvTable table;
  table.header = {"t", "k1_frame", "k1_closed", "k2_frame", "k2_closed",
                  "gram_residual", "r_L", "r_W1", "r_N", "r_W2",
                  "position_in_frame"};
  table.rows.assign(ts.size(), {});
  bk::parallel_for(ts.size(), [&](std::size_t i) {
    const bk::Jet j = view.jets(ts[i], 4);
    const auto ap = bk::cartan_apparatus(j, cfg.frame_tol);
    const auto closed = bk::cartan_curvatures_closed_form(j);
    const auto r = bk::cartan_residuals(j, cfg.frame_tol);
    table.rows[i] = {ts[i], ap.k1, closed.k1, ap.k2, closed.k2,
                     ap.gram_residual, r.r_L, r.r_W1, r.r_N, r.r_W2,
                     r.position_in_frame};
  });
  double worst = 0.0;
  for (const auto& row : table.rows)
    worst = std::max({worst, row[5], row[6], row[7], row[8], row[9]});

  const fs::path path = table_path(cfg, sanitize(c.name()) + "_cartan");
  write_table(cfg, path, table);
  OrderedJson j;
  j["curve"] = c.name();
  j["reparametrized"] = reparametrized;
  j["samples"] = cfg.samples;
  j["max_residual"] = worst;
  j["artifact"] = path.string();
  print_json(j);
  return worst <= cfg.frame_tol ? 0 : 3;
}

int cmd_sphere_test(const std::string& file, const RunConfig& cfg) {
  const bk::CurveDef c = bk::load_curve_file(file);
  bool reparametrized = false;
  const bk::CurveView view = pseudo_arc_view(c, cfg, reparametrized);
  const auto rep = bk::pseudo_spherical_test(view, cfg.samples, cfg.fit_tol);
  OrderedJson j = bk::to_json(rep);
  j["curve"] = c.name();
  j["reparametrized"] = reparametrized;
  fs::create_directories(cfg.out_dir);
  const fs::path path =
      fs::path(cfg.out_dir) / (sanitize(c.name()) + "_sphere_test.json");
  bk::write_text_file(path, j.dump(2) + "\n");
  print_json(j);
  return rep.verdict ? 0 : 3;
}

int cmd_reparam(const std::string& file, const RunConfig& cfg,
                const std::string& mode) {
  const bk::CurveDef c = bk::load_curve_file(file);
  bk::ReparamKind kind;
  if (mode == "arclength") {
    kind = bk::ReparamKind::Arclength;
  } else if (mode == "pseudo-arc") {
    kind = bk::ReparamKind::PseudoArc;
  } else {
    const auto cc = bk::causal_character(
        c.derivative(0.5 * (c.t_lo() + c.t_hi()), 1), cfg.causal_tol);
    if (cc == bk::CausalCharacter::Spacelike)
      kind = bk::ReparamKind::Arclength;
    else if (cc == bk::CausalCharacter::Lightlike)
      kind = bk::ReparamKind::PseudoArc;
    else
      throw bk::error(bk::errc::causal_mismatch,
                      "timelike curves have no reparametrization here; the "
                      "curve must be spacelike or null");
  }
  const bool arc = kind == bk::ReparamKind::Arclength;
  auto [curve, map] = arc ? bk::arclength_reparam(c, cfg.panels)
                          : bk::pseudo_arc_reparam(c, cfg.panels);

  bk::CsvTable table;
  table.header = {"t", arc ? "s" : "u", "x1", "x2", "x3", "x4"};
  const auto& tk = map.t_knots();
  const auto& uk = map.u_knots();
  for (std::size_t i = 0; i < tk.size(); ++i) {
    const bk::Vec4 p = c.position(tk[i]);
    table.rows.push_back({tk[i], uk[i], p.x1, p.x2, p.x3, p.x4});
  }
  const fs::path path = table_path(cfg, sanitize(c.name()) + "_reparam");
  write_table(cfg, path, table);
  OrderedJson j;
  j["curve"] = c.name();
  j["mode"] = arc ? "arclength" : "pseudo-arc";
  j["length"] = map.u_max() - map.u_min();
  j["quadrature_error_estimate"] = map.quadrature_error_estimate();
  j["artifact"] = path.string();
  print_json(j);
  return 0;
}

bk::Vec4 parse_offset(const std::string& text) {
  bk::Vec4 c;
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t comma = text.find(',', start);
    const bool last = comma == std::string::npos;
    if (last != (i == 3))
      throw bk::error(bk::errc::bad_config,
                      "--c expects four comma-separated numbers");
    const std::string cell =
        text.substr(start, last ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      c[i] = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw bk::error(bk::errc::bad_config,
                      "--c expects four comma-separated numbers");
    }
    start = comma + 1;
  }
  return c;
}

int cmd_construct(const std::string& file, const RunConfig& cfg,
                  const std::string& theorem, double a, double theta,
                  const std::string& offset) {
  const bk::CurveDef c = bk::load_curve_file(file);
  bk::BertrandParams params;
  params.scale_a = a;
  params.theta = theta;
  if (!offset.empty()) params.c = parse_offset(offset);

  bool reparametrized = false;
  bk::BertrandConstruction built;
  if (theorem == "2.1") {
    const bk::CurveView view = spacelike_view(c, cfg, reparametrized);
    built = bk::construct_from_spacelike(view, params, cfg.panels);
  } else if (theorem == "3.1") {
    const bk::CurveView view = pseudo_arc_view(c, cfg, reparametrized);
    built = bk::construct_from_null_helix(view, params, cfg.panels);
  } else {
    throw bk::error(bk::errc::bad_config,
                    "--theorem must be 2.1 (spacelike source) or 3.1 (null "
                    "helix source)");
  }

  bk::CsvTable table;
  table.header = {"t", "x1", "x2", "x3", "x4"};
  const auto& knots = built.curve.params();
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const bk::Vec4& p = built.curve.positions()[i];
    table.rows.push_back({knots[i], p.x1, p.x2, p.x3, p.x4});
  }
  const fs::path curve_path = table_path(cfg, sanitize(c.name()) + "_bertrand");
  write_table(cfg, curve_path, table);

  const double lo = built.curve.u_min(), hi = built.curve.u_max();
  const auto ts = uniform_grid(lo, hi, std::max(cfg.samples, 16));
  const auto rep =
      bk::verify_bertrand(bk::view_of(built.curve), ts, 1e-9, &built);
  OrderedJson j = bk::to_json(rep);
  j["curve"] = c.name();
  j["theorem"] = theorem;
  j["reparametrized"] = reparametrized;
  j["artifact_curve"] = curve_path.string();
  fs::create_directories(cfg.out_dir);
  const fs::path rep_path =
      fs::path(cfg.out_dir) / (sanitize(c.name()) + "_bertrand_report.json");
  bk::write_text_file(rep_path, j.dump(2) + "\n");
  print_json(j);
  return rep.fit_residual <= cfg.fit_tol ? 0 : 3;
}

int cmd_verify(const std::string& file, const RunConfig& cfg) {
  const auto samples = bk::read_curve_csv(file);
  const bk::NumericCurve curve = bk::NumericCurve::from_samples(
      samples.params, samples.positions, 6, 8);
  // Interior knots only: one-sided windows at the edges degrade the
  // fourth-derivative estimates.
  std::vector<double> ts;
  for (std::size_t i = 3; i + 3 < samples.params.size(); ++i)
    ts.push_back(samples.params[i]);
  if (ts.size() < 8)
    throw bk::error(bk::errc::bad_config,
                    "verification needs at least 14 samples for interior "
                    "windows");
  const auto rep = bk::verify_bertrand(bk::view_of(curve), ts, 1e-9, nullptr);
  OrderedJson j = bk::to_json(rep);
  j["source_csv"] = file;
  fs::create_directories(cfg.out_dir);
  const fs::path rep_path =
      fs::path(cfg.out_dir) /
      (sanitize(fs::path(file).stem().string()) + "_verify_report.json");
  bk::write_text_file(rep_path, j.dump(2) + "\n");
  print_json(j);
  return rep.fit_residual <= cfg.fit_tol ? 0 : 3;
}

// Bundled demo curves; the same definitions ship under data/.
const char* kSpacelikeHelixJson = R"json({
  "name": "spacelike-helix",
  "components": [
    "0.6*sinh(t)",
    "0.6*cosh(t)",
    "0.8*cos(sqrt(2.125)*t)",
    "0.8*sin(sqrt(2.125)*t)"
  ],
  "domain": [0.0, 6.283185307179586],
  "character": "spacelike",
  "surface": "de_sitter"
})json";

const char* kNullHelixJson = R"json({
  "name": "null-helix",
  "components": [
    "(4/sqrt(17))*sinh(0.5*t)",
    "(4/sqrt(17))*cosh(0.5*t)",
    "(1/sqrt(17))*cos(2*t)",
    "(1/sqrt(17))*sin(2*t)"
  ],
  "domain": [0.0, 6.283185307179586],
  "character": "null",
  "surface": "de_sitter"
})json";

const char* kDriftedNullHelixJson = R"json({
  "name": "drifted-null-helix",
  "components": [
    "t",
    "0.5*cos(sqrt(2)*t)",
    "0.5*sin(sqrt(2)*t)",
    "t/sqrt(2)"
  ],
  "domain": [0.0, 6.283185307179586],
  "character": "null"
})json";

int cmd_demo(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  auto stage = [&](const char* text, const std::string& name) {
    const fs::path p = dir / (name + ".json");
    bk::write_text_file(p, std::string(text) + "\n");
    return p.string();
  };
  const std::string sp_file = stage(kSpacelikeHelixJson, "spacelike_helix");
  const std::string nh_file = stage(kNullHelixJson, "null_helix");
  const std::string dh_file = stage(kDriftedNullHelixJson, "drifted_null_helix");

  OrderedJson summary;
  summary["out_dir"] = cfg.out_dir;
  int worst_exit = 0;
  auto run = [&](const char* key, int code, int expectation) {
    OrderedJson entry;
    entry["exit"] = code;
    entry["expected_exit"] = expectation;
    summary[key] = entry;
    if (code != expectation) worst_exit = 3;
  };

  run("validate_spacelike", cmd_validate(sp_file, cfg), 0);
  run("validate_null", cmd_validate(nh_file, cfg), 0);
  run("frame_spacelike", cmd_frame(sp_file, cfg), 0);
  run("cartan_null", cmd_cartan(nh_file, cfg), 0);
  // the bundled helix lies on the pseudo-sphere, the drifted one does not
  run("sphere_test_null", cmd_sphere_test(nh_file, cfg), 0);
  run("sphere_test_drifted", cmd_sphere_test(dh_file, cfg), 3);
  run("construct_spacelike_source",
      cmd_construct(sp_file, cfg, "2.1", 1.0, 1.0, ""), 0);
  run("construct_null_source",
      cmd_construct(nh_file, cfg, "3.1", 1.0, 1.0, ""), 0);

  summary["pass"] = worst_exit == 0;
  print_json(summary);
  return worst_exit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bkcurves: spacelike and null curve geometry on the unit pseudo-sphere "
      "of Minkowski 4-space, with offset-integral Bertrand constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read defaults from an INI file");

  RunConfig cfg;
  app.add_option("--samples", cfg.samples, "Sample count for tables and checks")
      ->check(CLI::Range(16, 1000000))
      ->capture_default_str();
  app.add_option("--panels", cfg.panels, "Quadrature panels")
      ->check(CLI::Range(8, 1000000))
      ->capture_default_str();
  app.add_option("--tol-frame", cfg.frame_tol, "Frame residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol-causal", cfg.causal_tol, "Causal classification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol-fit", cfg.fit_tol, "Bertrand fit residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", cfg.out_dir, "Output directory for artifacts")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Sample table format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  std::string file, mode = "auto", theorem, offset;
  double a = 1.0, theta = 1.0;

  auto* validate = app.add_subcommand(
      "validate", "Check declared causal character and surface membership");
  validate->add_option("curve_file", file)->required();

  auto* frame = app.add_subcommand(
      "frame", "Moving frame, curvatures and residuals of a spacelike curve");
  frame->add_option("curve_file", file)->required();

  auto* cartan =
      app.add_subcommand("cartan", "Cartan frame and curvatures of a null curve");
  cartan->add_option("curve_file", file)->required();

  auto* sphere = app.add_subcommand(
      "sphere-test", "Pseudo-sphere criteria for a null Cartan curve");
  sphere->add_option("curve_file", file)->required();

  auto* reparam = app.add_subcommand(
      "reparam", "Arclength or pseudo-arc reparametrization table");
  reparam->add_option("curve_file", file)->required();
  reparam->add_option("--mode", mode, "arclength | pseudo-arc | auto")
      ->check(CLI::IsMember({"arclength", "pseudo-arc", "auto"}))
      ->capture_default_str();

  auto* construct = app.add_subcommand(
      "construct",
      "Offset-integral Bertrand construction from a constant-curvature source");
  construct->add_option("curve_file", file)->required();
  construct
      ->add_option("--theorem", theorem,
                   "2.1 (spacelike source) | 3.1 (null helix source)")
      ->required();
  construct->add_option("--a", a, "Scale constant a (nonzero)")
      ->capture_default_str();
  construct->add_option("--theta", theta, "Angle constant theta (nonzero)")
      ->capture_default_str();
  construct->add_option("--c", offset, "Constant offset vector x1,x2,x3,x4");

  auto* verify =
      app.add_subcommand("verify", "Bertrand verification of a sampled curve CSV");
  verify->add_option("curve_csv", file)->required();

  auto* demo = app.add_subcommand(
      "demo", "Run both construction pipelines on the bundled curves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, cfg);
    if (frame->parsed()) return cmd_frame(file, cfg);
    if (cartan->parsed()) return cmd_cartan(file, cfg);
    if (sphere->parsed()) return cmd_sphere_test(file, cfg);
    if (reparam->parsed()) return cmd_reparam(file, cfg, mode);
    if (construct->parsed())
      return cmd_construct(file, cfg, theorem, a, theta, offset);
    if (verify->parsed()) return cmd_verify(file, cfg);
    if (demo->parsed()) return cmd_demo(cfg);
  } catch (const bk::error& e) {
    print_json(bk::error_json(e));
    return exit_class(e.code());
  } catch (const std::exception& e) {
    OrderedJson j;
    j["error"] = OrderedJson{{"code", "internal"}, {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
    return 1;
  }
  return 1;
}
