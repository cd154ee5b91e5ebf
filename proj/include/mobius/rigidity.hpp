#pragma once

// Solving for the Möbius transformation that identifies two configurations of
// balls (signed inversive distances) or points (absolute cross-ratios).

#include "mobius/inversive.hpp"

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <string>
#include <variant>
#include <vector>

namespace mobius {

enum class ConfigKind { Balls, Points };
std::string_view to_string(ConfigKind k);

class Configuration {
 public:
  /// Throws InvalidArgument on empty input, duplicate labels or items of the
  /// wrong dimension; DuplicatePoints if two points coincide.
  static Configuration balls(Index dim, std::vector<std::string> labels, std::vector<OrientedBall> items);
  static Configuration points(Index dim, std::vector<std::string> labels, std::vector<ExtendedPoint> items);

  Index dim() const { return dim_; }
  ConfigKind kind() const { return kind_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<OrientedBall>& balls() const { return std::get<std::vector<OrientedBall>>(items_); }
  const std::vector<ExtendedPoint>& points() const { return std::get<std::vector<ExtendedPoint>>(items_); }

  /// lift_ball or lift_point of every item, in order.
  std::vector<MinkVector> lifts() const;
  Eigen::MatrixXd packed_lifts() const;

  /// Every ball replaced by its complement. Throws for point configurations.
  Configuration complemented() const;
  /// Items reordered by `order` (a permutation of 0..size-1).
  Configuration permuted(const std::vector<std::size_t>& order) const;

 private:
  Configuration(Index dim, ConfigKind kind, std::vector<std::string> labels,
                std::variant<std::vector<OrientedBall>, std::vector<ExtendedPoint>> items)
      : dim_(dim), kind_(kind), labels_(std::move(labels)), items_(std::move(items)) {}

  Index dim_;
  ConfigKind kind_;
  std::vector<std::string> labels_;
  std::variant<std::vector<OrientedBall>, std::vector<ExtendedPoint>> items_;
};

/// Image of a configuration under a positive map, labels unchanged.
Configuration apply_to_configuration(const LorentzMap& g, const Configuration& conf);

enum class MatchMode { Direct, ComplementSwapped };
enum class Uniqueness {
  Unique,
  StronglySymmetric,
  FixedHyperbolicPoint,
  PointsOnCommonSphere,
  /// Ball boundaries share a point; pairwise invariants do not determine the map.
  Undetermined,
};
std::string_view to_string(MatchMode m);
std::string_view to_string(Uniqueness u);

struct SolveOptions {
  /// Gram entries must agree to gram_tol * (1 + max |Gram entry|).
  double gram_tol = 1e-8;
  /// Parameter error accepted when re-applying the map to the balls.
  double ball_tol = 1e-6;
  /// Chordal error accepted when re-applying the map to the points.
  double point_tol = 1e-7;
};

struct SolveOutcome {
  LorentzMap map;
  MatchMode mode;
  Uniqueness uniqueness;
  double residual_gram;
  double residual_match;
};

/// A Lorentz map (not necessarily positive) with phi(vs[i]) = targets[i].
/// Gram entries must agree to rel_tol * (1 + max|G|); the span of vs must be
/// time-like or space-like. Throws GramMismatch, DegenerateSpan, RankAmbiguous.
LorentzMap match_frames(std::span<const MinkVector> vs, std::span<const MinkVector> targets,
                        double rel_tol = 1e-8);

struct CommonBoundaryReport {
  bool common_point;
  SubspaceClass span;
  /// A point on every boundary sphere, when one exists.
  std::optional<ExtendedPoint> witness;
};

CommonBoundaryReport detect_common_boundary(const Configuration& conf);

/// Throws GramMismatch, CommonBoundaryPoint, RankAmbiguous, VerificationFailed.
SolveOutcome solve_balls(const Configuration& a, const Configuration& b, const SolveOptions& opts = {});
/// Throws DuplicatePoints, CrossRatioMismatch, RankAmbiguous, VerificationFailed.
SolveOutcome solve_points(const Configuration& a, const Configuration& b, const SolveOptions& opts = {});
/// Dispatches on the configuration kind.
SolveOutcome solve(const Configuration& a, const Configuration& b, const SolveOptions& opts = {});

struct UniquenessReport {
  Uniqueness uniqueness;
  SubspaceClass span;
  /// Orthogonal sphere (strongly symmetric balls) or common sphere (points).
  std::optional<OrientedBall> witness;
};

UniquenessReport classify_uniqueness(const Configuration& conf);

/// A Lorentz map other than the identity that fixes every lift of `conf`.
/// Positive when the complement of the lift span contains a space-like
/// vector; for FixedHyperbolicPoint configurations it is the time reflection
/// of that complement and is not positive. Throws InvalidArgument when the
/// lifts span R^M.
LorentzMap nontrivial_stabilizer(const Configuration& conf);

struct CorrespondenceReport {
  std::vector<double> item_errors;
  double max_error = 0.0;
  MatchMode mode = MatchMode::Direct;
  double gram_residual = 0.0;
  bool pass = false;
  std::string note;
};

/// Never throws on mathematical failure; reports it.
CorrespondenceReport verify_correspondence(const Configuration& a, const Configuration& b, const LorentzMap& g,
                                           double tolerance);

struct CrossRatioReport {
  double max_discrepancy = 0.0;
  std::array<std::size_t, 4> witness{};
  long long tuples = 0;
  bool pass = true;
};

/// Compares the absolute cross-ratios of all ordered 4-tuples of distinct
/// indices. Throws InvalidArgument when m < 4, DuplicatePoints.
CrossRatioReport full_cross_ratio_check(const Configuration& a, const Configuration& b, double tolerance);

/// Light-ray lifts of both point configurations rescaled so their Grams agree
/// whenever the cross-ratios do (anchor triple = first three points).
/// Requires at least three points on each side.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> anchored_point_lifts(const Configuration& a, const Configuration& b);

}  // namespace mobius
