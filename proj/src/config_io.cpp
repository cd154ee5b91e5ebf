#include "mobius/config_io.hpp"

#include "mobius/error.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace mobius::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw InputError(InputError::Kind::Parse, msg); }
[[noreturn]] void semantic_fail(const std::string& msg) { throw InputError(InputError::Kind::Semantic, msg); }

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where + ": missing field '" + key + "'");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(where + ": non-finite number");
  return x;
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) parse_fail(where + ": expected a string");
  return v.get<std::string>();
}

Eigen::VectorXd vector_of(const json& v, Index dim, const std::string& where) {
  if (!v.is_array()) parse_fail(where + ": expected an array");
  if (static_cast<Index>(v.size()) != dim) {
    semantic_fail(where + ": expected " + std::to_string(dim) + " coordinates, got " + std::to_string(v.size()));
  }
  Eigen::VectorXd out(dim);
  for (Index i = 0; i < dim; ++i) out[i] = number(v[static_cast<std::size_t>(i)], where);
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

void check_version(const json& j) {
  const json& v = field(j, "version", "file");
  if (!v.is_number_integer() || v.get<long long>() != 1) parse_fail("unsupported version (expected 1)");
}

Index read_dim(const json& j) {
  const json& d = field(j, "dim", "file");
  if (!d.is_number_integer()) parse_fail("dim must be an integer");
  const long long dim = d.get<long long>();
  if (dim < 1) semantic_fail("dim must be at least 1");
  return static_cast<Index>(dim);
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

void write_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) parse_fail("cannot write '" + path.string() + "'");
  out << dump(j);
}

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Configuration configuration_from_json(const json& j) {
  if (!j.is_object()) parse_fail("configuration must be a JSON object");
  check_version(j);
  const Index dim = read_dim(j);
  const std::string kind = text(field(j, "kind", "file"), "kind");
  if (kind != "balls" && kind != "points") parse_fail("kind must be \"balls\" or \"points\"");
  const json& items = field(j, "items", "file");
  if (!items.is_array()) parse_fail("items must be an array");
  if (items.empty()) semantic_fail("empty configuration");

  std::vector<std::string> labels;
  std::set<std::string> seen;
  std::vector<OrientedBall> balls;
  std::vector<ExtendedPoint> points;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const json& it = items[i];
    if (!it.is_object()) parse_fail("item " + std::to_string(i) + " is not an object");
    const std::string label = text(field(it, "label", "item " + std::to_string(i)), "label");
    const std::string where = "item '" + label + "'";
    if (!seen.insert(label).second) semantic_fail(where + ": duplicate label");
    labels.push_back(label);
    const std::string type = text(field(it, "type", where), where + " type");

    try {
      if (kind == "balls") {
        if (type == "sphere") {
          const Eigen::VectorXd c = vector_of(field(it, "center", where), dim, where + " center");
          const double r = number(field(it, "radius", where), where + " radius");
          Side side = Side::Inside;
          if (auto s = it.find("side"); s != it.end()) {
            const std::string sv = text(*s, where + " side");
            if (sv == "outside") {
              side = Side::Outside;
            } else if (sv != "inside") {
              parse_fail(where + ": side must be \"inside\" or \"outside\"");
            }
          }
          if (!(r > 0.0)) semantic_fail(where + ": radius must be positive");
          balls.push_back(OrientedBall::sphere(c, r, side));
        } else if (type == "halfspace") {
          const Eigen::VectorXd n = vector_of(field(it, "normal", where), dim, where + " normal");
          const double d = number(field(it, "offset", where), where + " offset");
          if (std::abs(n.norm() - 1.0) > 1e-12) semantic_fail(where + ": normal must have unit length");
          balls.push_back(OrientedBall::half_space(n, d));
        } else {
          parse_fail(where + ": unknown ball type '" + type + "'");
        }
      } else {
        if (type == "finite") {
          points.push_back(ExtendedPoint::finite(vector_of(field(it, "coords", where), dim, where + " coords")));
        } else if (type == "infinity") {
          points.push_back(ExtendedPoint::infinity(dim));
        } else {
          parse_fail(where + ": unknown point type '" + type + "'");
        }
      }
    } catch (const Error& e) {
      semantic_fail(where + ": " + e.what());
    }
  }

  try {
    if (kind == "balls") return Configuration::balls(dim, labels, std::move(balls));
    return Configuration::points(dim, labels, std::move(points));
  } catch (const Error& e) {
    semantic_fail(e.what());
  }
}

json configuration_to_json(const Configuration& conf) {
  json items = json::array();
  for (std::size_t i = 0; i < conf.size(); ++i) {
    json it;
    it["label"] = conf.labels()[i];
    if (conf.kind() == ConfigKind::Balls) {
      const OrientedBall& b = conf.balls()[i];
      if (b.is_sphere()) {
        it["type"] = "sphere";
        it["center"] = vector_json(b.as_sphere().center);
        it["radius"] = b.as_sphere().radius;
        it["side"] = b.as_sphere().side == Side::Inside ? "inside" : "outside";
      } else {
        it["type"] = "halfspace";
        it["normal"] = vector_json(b.as_half_space().normal);
        it["offset"] = b.as_half_space().offset;
      }
    } else {
      const ExtendedPoint& p = conf.points()[i];
      if (p.is_infinite()) {
        it["type"] = "infinity";
      } else {
        it["type"] = "finite";
        it["coords"] = vector_json(p.coords());
      }
    }
    items.push_back(std::move(it));
  }
  return json{{"version", 1}, {"dim", conf.dim()}, {"kind", std::string(to_string(conf.kind()))},
              {"items", std::move(items)}};
}

Configuration load_configuration(const std::filesystem::path& path) {
  return configuration_from_json(read_file(path));
}

void save_configuration(const Configuration& conf, const std::filesystem::path& path) {
  write_file(configuration_to_json(conf), path);
}

LorentzMap map_from_json(const json& j, std::ostream* warn) {
  if (!j.is_object()) parse_fail("map must be a JSON object");
  check_version(j);
  const Index dim = read_dim(j);
  const Index m = dim + 2;
  const json& rows = field(j, "matrix", "map");
  if (!rows.is_array() || static_cast<Index>(rows.size()) != m) {
    parse_fail("map matrix must have " + std::to_string(m) + " rows");
  }
  Eigen::MatrixXd g(m, m);
  for (Index r = 0; r < m; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != m) {
      parse_fail("map matrix row " + std::to_string(r) + " must have " + std::to_string(m) + " entries");
    }
    for (Index c = 0; c < m; ++c) g(r, c) = number(row[static_cast<std::size_t>(c)], "map entry");
  }
  const LorentzReport rep = validate_lorentz(g);
  if (!(rep.residual <= 1e-6)) {
    std::ostringstream msg;
    msg << "map is not Lorentz: |G^T J G - J| = " << rep.residual;
    semantic_fail(msg.str());
  }
  if (rep.residual > 1e-9 && warn != nullptr) {
    *warn << "warning: map Lorentz residual " << rep.residual << " exceeds 1e-9\n";
  }
  return LorentzMap(g, 1e-6);
}

json map_to_json(const LorentzMap& g) {
  json rows = json::array();
  for (Index r = 0; r < g.dim(); ++r) {
    json row = json::array();
    for (Index c = 0; c < g.dim(); ++c) row.push_back(g.matrix()(r, c));
    rows.push_back(std::move(row));
  }
  return json{{"version", 1}, {"dim", g.dim() - 2}, {"matrix", std::move(rows)}};
}

LorentzMap load_map(const std::filesystem::path& path, std::ostream* warn) {
  return map_from_json(read_file(path), warn);
}

void save_map(const LorentzMap& g, const std::filesystem::path& path) { write_file(map_to_json(g), path); }

}  // namespace mobius::io
