#include "mobius/cli.hpp"

#include "mobius/config_io.hpp"
#include "mobius/error.hpp"
#include "mobius/generate.hpp"
#include "mobius/kernels.hpp"
#include "mobius/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace mobius::cli {

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInput = 2;
constexpr int kRefused = 4;

// Largest ball count for which verify enumerates every side assignment.
constexpr std::size_t kMaxEnumerated = 16;

struct Globals {
  std::optional<double> tol;
  bool json = false;
  std::uint64_t seed = 0;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch: return kInput;
    case ErrorCode::DuplicatePoints: return 3;
    default: return kRefused;
  }
}

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

void print_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Index r = 0; r < m.rows(); ++r) {
    out << " ";
    for (Index c = 0; c < m.cols(); ++c) out << " " << std::setw(16) << num(m(r, c));
    out << "\n";
  }
}

void print_table(std::ostream& out, const std::vector<std::string>& labels, const Eigen::MatrixXd& m) {
  std::size_t w = 8;
  for (const auto& l : labels) w = std::max(w, l.size() + 1);
  out << std::setw(static_cast<int>(w)) << "";
  for (const auto& l : labels) out << " " << std::setw(16) << l;
  out << "\n";
  for (Index r = 0; r < m.rows(); ++r) {
    out << std::setw(static_cast<int>(w)) << labels[static_cast<std::size_t>(r)];
    for (Index c = 0; c < m.cols(); ++c) out << " " << std::setw(16) << num(m(r, c));
    out << "\n";
  }
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json point_json(const ExtendedPoint& p) {
  if (p.is_infinite()) return "infinity";
  json a = json::array();
  for (Index i = 0; i < p.dim(); ++i) a.push_back(p.coords()[i]);
  return a;
}

std::string point_text(const ExtendedPoint& p) {
  if (p.is_infinite()) return "infinity";
  std::string s = "(";
  for (Index i = 0; i < p.dim(); ++i) s += (i ? ", " : "") + num(p.coords()[i]);
  return s + ")";
}

std::string ball_text(const OrientedBall& b) {
  std::string s;
  if (b.is_sphere()) {
    const auto& sp = b.as_sphere();
    s = "sphere center " + point_text(ExtendedPoint::finite(sp.center)) + " radius " + num(sp.radius);
  } else {
    const auto& h = b.as_half_space();
    s = "halfspace normal " + point_text(ExtendedPoint::finite(h.normal)) + " offset " + num(h.offset);
  }
  return s;
}

json ball_json(const OrientedBall& b) {
  const Configuration one = Configuration::balls(b.dim(), {"witness"}, {b});
  return io::configuration_to_json(one)["items"][0];
}

void report_error(const Globals& g, std::ostream& out, const Error& e) {
  if (g.json) {
    out << io::dump(json{{"status", "refused"}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}});
  } else {
    out << "refused: " << e.what() << "\n";
  }
}

// -- subcommands ----------------------------------------------------------------

int cmd_gram(const Globals& g, const std::string& path, std::ostream& out) {
  const Configuration conf = io::load_configuration(path);
  const Eigen::MatrixXd gram = kernels::gram(conf.packed_lifts());
  const std::string what = conf.kind() == ConfigKind::Balls ? "signed inversive distances" : "light-ray products";
  if (g.json) {
    out << io::dump(json{{"kind", std::string(to_string(conf.kind()))},
                         {"labels", conf.labels()},
                         {"matrix", matrix_json(gram)}});
  } else {
    out << what << "\n";
    print_table(out, conf.labels(), gram);
  }
  return kOk;
}

int cmd_solve(const Globals& g, const std::string& kind, const std::string& pa, const std::string& pb,
              const std::string& map_out, std::ostream& out, std::ostream& err) {
  const Configuration a = io::load_configuration(pa);
  const Configuration b = io::load_configuration(pb);
  if (std::string(to_string(a.kind())) != kind || std::string(to_string(b.kind())) != kind) {
    err << "error: both files must hold " << kind << " configurations\n";
    return kInput;
  }
  if (a.dim() != b.dim()) {
    err << "error: dimension mismatch (" << a.dim() << " vs " << b.dim() << ")\n";
    return kInput;
  }
  if (a.size() != b.size()) {
    err << "error: configurations have " << a.size() << " and " << b.size() << " items\n";
    return kInput;
  }
  if (a.labels() != b.labels()) {
    err << "warning: labels differ; items are matched by position\n";
  }
  SolveOptions opts;
  if (g.tol) opts.gram_tol = *g.tol;
  const SolveOutcome s = solve(a, b, opts);
  if (!map_out.empty()) io::save_map(s.map, map_out);
  if (g.json) {
    out << io::dump(json{{"status", "ok"},
                         {"mode", std::string(to_string(s.mode))},
                         {"uniqueness", std::string(to_string(s.uniqueness))},
                         {"residual_gram", s.residual_gram},
                         {"residual_match", s.residual_match},
                         {"map", io::map_to_json(s.map)}});
  } else {
    out << "mode: " << to_string(s.mode) << "\n";
    out << "uniqueness: " << to_string(s.uniqueness) << "\n";
    out << "residual_gram: " << num(s.residual_gram) << "\n";
    out << "residual_match: " << num(s.residual_match) << "\n";
    out << "matrix:\n";
    print_matrix(out, s.map.matrix());
  }
  return kOk;
}

int cmd_classify(const Globals& g, const std::string& path, std::ostream& out) {
  const Configuration conf = io::load_configuration(path);
  const UniquenessReport u = classify_uniqueness(conf);
  std::optional<CommonBoundaryReport> common;
  if (conf.kind() == ConfigKind::Balls) common = detect_common_boundary(conf);

  if (g.json) {
    json j{{"kind", std::string(to_string(conf.kind()))},
           {"span", {{"kind", std::string(to_string(u.span.kind))}, {"dim", u.span.dim}}},
           {"uniqueness", std::string(to_string(u.uniqueness))}};
    if (common) {
      j["common_boundary_point"] = common->common_point;
      if (common->witness) j["common_point"] = point_json(*common->witness);
    }
    if (u.witness) j["witness"] = ball_json(*u.witness);
    out << io::dump(j);
    return kOk;
  }
  out << "span: " << to_string(u.span.kind) << ", dim " << u.span.dim << " of " << conf.dim() + 2 << "\n";
  if (common) {
    out << "common boundary point: " << (common->common_point ? "yes" : "no");
    if (common->witness) out << " " << point_text(*common->witness);
    out << "\n";
  }
  out << "uniqueness: " << to_string(u.uniqueness) << "\n";
  if (u.witness) {
    out << (conf.kind() == ConfigKind::Balls ? "orthogonal sphere: " : "common sphere: ") << ball_text(*u.witness)
        << "\n";
  }
  return kOk;
}

int cmd_apply(const std::string& map_path, const std::string& path, std::ostream& out, std::ostream& err) {
  const LorentzMap map = io::load_map(map_path, &err);
  const Configuration conf = io::load_configuration(path);
  if (map.dim() != conf.dim() + 2) {
    err << "error: map acts on R^" << map.dim() - 2 << ", configuration lives in R^" << conf.dim() << "\n";
    return kInput;
  }
  if (!map.positive()) {
    err << "refused: NotPositive: map exchanges the two sheets of the light cone\n";
    return kRefused;
  }
  out << io::dump(io::configuration_to_json(apply_to_configuration(map, conf)));
  return kOk;
}

struct Assignment {
  std::uint64_t flips;
  double max_difference;
};

int verify_invariants_balls(const Globals& g, const Configuration& a, const Configuration& b, std::ostream& out) {
  const double rel = g.tol.value_or(1e-8);
  const Eigen::MatrixXd ga = kernels::gram(a.packed_lifts());
  const Eigen::MatrixXd gb = kernels::gram(b.packed_lifts());
  const double scale = 1.0 + std::max(ga.cwiseAbs().maxCoeff(), gb.cwiseAbs().maxCoeff());
  const double threshold = rel * scale;
  const kernels::GramComparison signed_cmp = kernels::compare_grams(a.packed_lifts(), b.packed_lifts());
  const bool signed_ok = signed_cmp.max_difference <= threshold;
  const double unsigned_diff = (ga.cwiseAbs() - gb.cwiseAbs()).cwiseAbs().maxCoeff();
  const bool unsigned_ok = unsigned_diff <= threshold;

  std::vector<Assignment> assignments;
  const std::size_t m = a.size();
  const bool enumerate = !signed_ok && unsigned_ok && m <= kMaxEnumerated;
  if (enumerate) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      double worst = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const double s = (((mask >> i) ^ (mask >> j)) & 1U) ? -1.0 : 1.0;
          worst = std::max(worst, std::abs(ga(static_cast<Index>(i), static_cast<Index>(j)) -
                                           s * gb(static_cast<Index>(i), static_cast<Index>(j))));
        }
      }
      assignments.push_back({mask, worst});
    }
  }
  const bool any_assignment =
      std::any_of(assignments.begin(), assignments.end(), [&](const Assignment& x) { return x.max_difference <= threshold; });

  const auto side_string = [&](std::uint64_t mask) {
    std::string s;
    for (std::size_t i = 0; i < m; ++i) s += ((mask >> i) & 1U) ? '-' : '+';
    return s;
  };

  if (g.json) {
    json j{{"kind", "balls"},
           {"pass", signed_ok},
           {"signed_max_difference", signed_cmp.max_difference},
           {"unsigned_max_difference", unsigned_diff},
           {"threshold", threshold}};
    if (!signed_ok) {
      j["witness"] = {a.labels()[static_cast<std::size_t>(signed_cmp.row)],
                      a.labels()[static_cast<std::size_t>(signed_cmp.col)]};
    }
    if (enumerate) {
      json list = json::array();
      for (const auto& x : assignments) {
        list.push_back({{"sides", side_string(x.flips)}, {"max_difference", x.max_difference}});
      }
      j["side_assignments"] = std::move(list);
      j["some_assignment_matches"] = any_assignment;
    }
    out << io::dump(j);
  } else {
    out << "signed Gram max difference: " << num(signed_cmp.max_difference) << " (threshold " << num(threshold)
        << ")\n";
    out << "unsigned Gram max difference: " << num(unsigned_diff) << "\n";
    if (!signed_ok) {
      out << "witness: (" << a.labels()[static_cast<std::size_t>(signed_cmp.row)] << ", "
          << a.labels()[static_cast<std::size_t>(signed_cmp.col)] << ")\n";
    }
    if (enumerate) {
      out << "side assignments of B (+ keep, - complement):\n";
      for (const auto& x : assignments) {
        out << "  " << side_string(x.flips) << "  max difference " << num(x.max_difference)
            << (x.max_difference <= threshold ? "  match" : "") << "\n";
      }
      out << (any_assignment ? "some side assignment matches\n" : "no side assignment matches\n");
    }
    out << (signed_ok ? "PASS" : "FAIL") << "\n";
  }
  return signed_ok ? kOk : kRefused;
}

int verify_invariants_points(const Globals& g, const Configuration& a, const Configuration& b, bool full,
                             std::ostream& out) {
  const double rel = g.tol.value_or(1e-8);
  bool pass = true;
  json j{{"kind", "points"}};
  std::ostringstream text;

  if (a.size() >= 3) {
    try {
      const auto [va, vb] = anchored_point_lifts(a, b);
      const kernels::GramComparison cmp = kernels::compare_grams(va, vb);
      const double threshold = rel * (1.0 + cmp.max_entry);
      const bool ok = cmp.max_difference <= threshold;
      pass = pass && ok;
      j["anchored_gram_max_difference"] = cmp.max_difference;
      j["threshold"] = threshold;
      text << "anchored Gram max difference: " << num(cmp.max_difference) << " (threshold " << num(threshold)
           << ")\n";
      if (!ok) {
        const std::string wa = a.labels()[static_cast<std::size_t>(cmp.row)];
        const std::string wb = a.labels()[static_cast<std::size_t>(cmp.col)];
        j["witness"] = {wa, wb};
        text << "witness: (" << wa << ", " << wb << ")\n";
      }
    } catch (const Error& e) {
      pass = false;
      j["error"] = e.what();
      text << "anchoring failed: " << e.what() << "\n";
    }
  } else {
    text << "fewer than three points: any two such configurations are Mobius equivalent\n";
  }

  if (full) {
    const CrossRatioReport r = full_cross_ratio_check(a, b, rel);
    pass = pass && r.pass;
    json tuple = json::array();
    std::string tt;
    for (auto i : r.witness) {
      tuple.push_back(a.labels()[i]);
      tt += (tt.empty() ? "" : ", ") + a.labels()[i];
    }
    j["cross_ratio"] = {{"max_discrepancy", r.max_discrepancy}, {"tuples", r.tuples}, {"witness", tuple}};
    text << "cross-ratio tuples checked: " << r.tuples << "\n";
    text << "max cross-ratio discrepancy: " << num(r.max_discrepancy) << " at (" << tt << ")\n";
  }
  j["pass"] = pass;
  if (g.json) {
    out << io::dump(j);
  } else {
    out << text.str() << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kOk : kRefused;
}

int cmd_verify(const Globals& g, const std::string& pa, const std::string& pb, const std::string& map_path, bool full,
               std::ostream& out, std::ostream& err) {
  const Configuration a = io::load_configuration(pa);
  const Configuration b = io::load_configuration(pb);
  if (a.kind() != b.kind() || a.dim() != b.dim() || a.size() != b.size()) {
    err << "error: configurations differ in kind, dimension or size\n";
    return kInput;
  }
  if (full && a.kind() != ConfigKind::Points) {
    err << "error: --full-cross-ratios applies to point configurations\n";
    return kInput;
  }
  if (full && a.size() < 4) {
    err << "error: --full-cross-ratios needs at least four points\n";
    return kInput;
  }

  if (map_path.empty()) {
    return a.kind() == ConfigKind::Balls ? verify_invariants_balls(g, a, b, out)
                                         : verify_invariants_points(g, a, b, full, out);
  }

  const LorentzMap map = io::load_map(map_path, &err);
  if (map.dim() != a.dim() + 2) {
    err << "error: map dimension does not match the configurations\n";
    return kInput;
  }
  const double tol = g.tol.value_or(a.kind() == ConfigKind::Balls ? 1e-6 : 1e-7);
  const CorrespondenceReport r = verify_correspondence(a, b, map, tol);
  std::size_t worst = 0;
  if (!r.item_errors.empty()) {
    worst = static_cast<std::size_t>(std::max_element(r.item_errors.begin(), r.item_errors.end()) -
                                     r.item_errors.begin());
  }
  bool pass = r.pass;
  std::optional<CrossRatioReport> cr;
  if (full) {
    cr = full_cross_ratio_check(a, b, g.tol.value_or(1e-8));
    pass = pass && cr->pass;
  }
  if (g.json) {
    json j{{"pass", pass},
           {"max_error", r.max_error},
           {"mode", std::string(to_string(r.mode))},
           {"gram_residual", r.gram_residual},
           {"tolerance", tol},
           {"item_errors", r.item_errors}};
    if (!r.item_errors.empty()) j["witness"] = a.labels()[worst];
    if (!r.note.empty()) j["note"] = r.note;
    if (cr) j["cross_ratio"] = {{"max_discrepancy", cr->max_discrepancy}, {"tuples", cr->tuples}};
    out << io::dump(j);
  } else {
    if (!r.note.empty()) out << "note: " << r.note << "\n";
    out << "mode: " << to_string(r.mode) << "\n";
    out << "max error: " << num(r.max_error) << " (tolerance " << num(tol) << ")";
    if (!r.item_errors.empty()) out << " at " << a.labels()[worst];
    out << "\n";
    out << "gram residual: " << num(r.gram_residual) << "\n";
    if (cr) out << "max cross-ratio discrepancy: " << num(cr->max_discrepancy) << "\n";
    out << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kOk : kRefused;
}

int cmd_generate(const Globals& g, const std::string& kind, int n, int dim, const std::string& structure,
                 const std::string& dir, std::ostream& out, std::ostream& err) {
  const auto st = parse_structure(structure);
  if (!st) {
    err << "error: unknown structure '" << structure << "'\n";
    return kInput;
  }
  const ConfigKind k = kind == "balls" ? ConfigKind::Balls : ConfigKind::Points;
  const GeneratedInstance inst = generate_instance(k, n, dim, g.seed, *st);
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  io::save_configuration(inst.a, root / "A.json");
  io::save_configuration(inst.b, root / "B.json");
  io::save_map(inst.map, root / "map.json");
  if (g.json) {
    out << io::dump(json{{"a", (root / "A.json").string()},
                         {"b", (root / "B.json").string()},
                         {"map", (root / "map.json").string()}});
  } else {
    out << "wrote " << (root / "A.json").string() << ", " << (root / "B.json").string() << ", "
        << (root / "map.json").string() << "\n";
  }
  return kOk;
}

int cmd_render(const std::string& path, const std::string& target, std::ostream& out, std::ostream& err) {
  const Configuration conf = io::load_configuration(path);
  if (conf.dim() != 2) {
    err << "error: rendering needs dim = 2, got " << conf.dim() << "\n";
    return kInput;
  }
  const std::string svg = render_svg(conf);
  if (target == "-") {
    out << svg;
    return kOk;
  }
  std::ofstream f(target, std::ios::binary);
  if (!f) {
    err << "error: cannot write '" << target << "'\n";
    return kInput;
  }
  f << svg;
  return kOk;
}

int cmd_hyperboloid(const Globals& g, const std::vector<double>& coords, std::ostream& out) {
  Eigen::VectorXd x(static_cast<Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) x[static_cast<Index>(i)] = coords[i];
  const MinkVector v = ball_model_to_hyperboloid(x);
  if (g.json) {
    json a = json::array();
    for (Index i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    out << io::dump(json{{"hyperboloid", a}});
  } else {
    for (Index i = 0; i < v.dim(); ++i) out << (i ? " " : "") << num(v[i]);
    out << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mobius invariants and rigidity of ball and point configurations", "mobius"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  double tol = 0.0;
  app.add_option("--tol", tol, "Tolerance (meaning depends on the subcommand)")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.seed, "Seed for generate");

  std::string a_path, b_path, map_path, out_path, out_dir = ".", kind, structure = "full";
  int n = 0, dim = 0;
  bool full_cr = false;
  std::vector<double> coords;

  auto* gram = app.add_subcommand("gram", "Pairwise invariant table of a configuration");
  gram->add_option("config", a_path)->required()->check(CLI::ExistingFile);

  auto* solve_cmd = app.add_subcommand("solve", "Solve for the map taking configuration A to B");
  solve_cmd->add_option("kind", kind)->required()->check(CLI::IsMember({"balls", "points"}));
  solve_cmd->add_option("a", a_path)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("b", b_path)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("-o,--out", out_path, "Write the map to this file");

  auto* classify = app.add_subcommand("classify", "Span class, degeneracy and uniqueness of a configuration");
  classify->add_option("config", a_path)->required()->check(CLI::ExistingFile);

  auto* apply = app.add_subcommand("apply", "Apply a map file to a configuration");
  apply->add_option("map", map_path)->required()->check(CLI::ExistingFile);
  apply->add_option("config", a_path)->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "Compare two configurations, optionally through a map");
  verify->add_option("a", a_path)->required()->check(CLI::ExistingFile);
  verify->add_option("b", b_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--map", map_path)->check(CLI::ExistingFile);
  verify->add_flag("--full-cross-ratios", full_cr, "Compare every ordered 4-tuple of points");

  auto* generate = app.add_subcommand("generate", "Write a random configuration A, a map g and B = g A");
  generate->add_option("--kind", kind)->required()->check(CLI::IsMember({"balls", "points"}));
  generate->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  generate->add_option("--dim", dim)->required()->check(CLI::PositiveNumber);
  generate->add_option("--structure", structure)
      ->check(CLI::IsMember({"full", "strongly-symmetric", "common-sphere", "common-point"}));
  generate->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* render = app.add_subcommand("render", "SVG drawing of a planar configuration");
  render->add_option("config", a_path)->required()->check(CLI::ExistingFile);
  render->add_option("-o,--out", out_path, "Output file ('-' for standard output)")->required();

  auto* hyper = app.add_subcommand("hyperboloid", "Ball-model point to the hyperboloid");
  hyper->add_option("coords", coords)->required()->expected(1, -1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }
  if (app.count("--tol") > 0) g.tol = tol;

  try {
    if (*gram) return cmd_gram(g, a_path, out);
    if (*solve_cmd) return cmd_solve(g, kind, a_path, b_path, out_path, out, err);
    if (*classify) return cmd_classify(g, a_path, out);
    if (*apply) return cmd_apply(map_path, a_path, out, err);
    if (*verify) return cmd_verify(g, a_path, b_path, map_path, full_cr, out, err);
    if (*generate) return cmd_generate(g, kind, n, dim, structure, out_dir, out, err);
    if (*render) return cmd_render(a_path, out_path, out, err);
    if (*hyper) return cmd_hyperboloid(g, coords, out);
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    if (code == kRefused) {
      report_error(g, out, e);
    } else {
      err << "error: " << e.what() << "\n";
    }
    return code;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}

}  // namespace mobius::cli
