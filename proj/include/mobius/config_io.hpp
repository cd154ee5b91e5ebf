#pragma once

// JSON files for configurations and maps.
//
//   {"version": 1, "dim": N, "kind": "balls",
//    "items": [{"label": "B1", "type": "sphere", "center": [...], "radius": r, "side": "inside"},
//              {"label": "B2", "type": "halfspace", "normal": [...], "offset": d}]}
//   {"version": 1, "dim": N, "kind": "points",
//    "items": [{"label": "p1", "type": "finite", "coords": [...]}, {"label": "p2", "type": "infinity"}]}
//   {"version": 1, "dim": N, "matrix": [[...], ...]}   (N+2) x (N+2), row-major

#include "mobius/rigidity.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace mobius::io {

/// Malformed input (exit code 2) or a well-formed file that violates an
/// invariant of the data it describes (exit code 3).
class InputError : public std::runtime_error {
 public:
  enum class Kind { Parse, Semantic };
  InputError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return kind_ == Kind::Parse ? 2 : 3; }

 private:
  Kind kind_;
};

Configuration configuration_from_json(const nlohmann::json& j);
nlohmann::json configuration_to_json(const Configuration& conf);
Configuration load_configuration(const std::filesystem::path& path);
void save_configuration(const Configuration& conf, const std::filesystem::path& path);

/// Rejects residuals above 1e-6; writes a warning to `warn` above 1e-9.
LorentzMap map_from_json(const nlohmann::json& j, std::ostream* warn = nullptr);
nlohmann::json map_to_json(const LorentzMap& g);
LorentzMap load_map(const std::filesystem::path& path, std::ostream* warn = nullptr);
void save_map(const LorentzMap& g, const std::filesystem::path& path);

/// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace mobius::io
