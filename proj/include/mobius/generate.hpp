#pragma once

// Seeded random instances: a configuration A, a random positive map g and the
// image B = g A.

#include "mobius/rigidity.hpp"

#include <cstdint>
#include <random>
#include <optional>
#include <string_view>

namespace mobius {

enum class Structure {
  Full,               // generic items
  StronglySymmetric,  // balls orthogonal to a common sphere
  CommonSphere,       // points on a common sphere
  CommonPoint,        // ball boundaries through a common point
};

std::string_view to_string(Structure s);
std::optional<Structure> parse_structure(std::string_view s);

struct GeneratedInstance {
  Configuration a;
  Configuration b;
  LorentzMap map;
};

/// Deterministic in `seed`. Throws InvalidArgument for n < 1, dim < 1, a
/// structure that does not apply to `kind`, or too few items to realize it
/// (strongly-symmetric needs n >= dim + 1; common-sphere with dim = 1 allows
/// at most two points).
GeneratedInstance generate_instance(ConfigKind kind, int n, Index dim, std::uint64_t seed,
                                    Structure structure = Structure::Full);

/// Uniform random point of the unit sphere S^{dim-1}.
Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, Index dim);

}  // namespace mobius
