#pragma once

// Balls and points of R^N ∪ {∞} and their lifts to Minkowski space R^{N+2}.
//
// Lift conventions (M = N + 2, last coordinate time-like):
//   Sphere(c, r, Inside)  -> (c/r, (A-1)/(2r), (A+1)/(2r)),  A = |c|^2 - r^2
//   Sphere(c, r, Outside) -> the negation
//   HalfSpace(n, d)       -> (n, d, d)            region {x : n.x > d}
//   Finite(p)             -> (p, (|p|^2-1)/2, (|p|^2+1)/2)
//   Infinity              -> (0, ..., 0, 1, 1)
// Ball lifts are space-like unit vectors, point lifts positive light-like, and
// p lies in the ball b iff <lift_ball(b), lift_point(p)> > 0.

#include "mobius/minkowski.hpp"

#include <optional>
#include <string_view>
#include <variant>

namespace mobius {

class ExtendedPoint {
 public:
  static ExtendedPoint finite(Eigen::VectorXd coords);
  static ExtendedPoint infinity(Index dim);

  Index dim() const { return dim_; }
  bool is_infinite() const { return infinite_; }
  /// Throws InvalidArgument for the point at infinity.
  const Eigen::VectorXd& coords() const;

 private:
  ExtendedPoint(Eigen::VectorXd coords, Index dim, bool infinite)
      : coords_(std::move(coords)), dim_(dim), infinite_(infinite) {}

  Eigen::VectorXd coords_;
  Index dim_;
  bool infinite_;
};

enum class Side { Inside, Outside };
std::string_view to_string(Side s);

struct Sphere {
  Eigen::VectorXd center;
  double radius;
  Side side;
};

/// The open region {x : normal . x > offset}, |normal| = 1.
struct HalfSpace {
  Eigen::VectorXd normal;
  double offset;
};

class OrientedBall {
 public:
  /// Throws InvalidArgument unless radius > 0 and all entries are finite.
  static OrientedBall sphere(Eigen::VectorXd center, double radius, Side side = Side::Inside);
  /// Throws InvalidArgument unless |normal| = 1 within 1e-12.
  static OrientedBall half_space(Eigen::VectorXd normal, double offset);

  Index dim() const;
  bool is_sphere() const { return std::holds_alternative<Sphere>(shape_); }
  const Sphere& as_sphere() const { return std::get<Sphere>(shape_); }
  const HalfSpace& as_half_space() const { return std::get<HalfSpace>(shape_); }

  /// The other open ball bounded by the same sphere.
  OrientedBall complement() const;

 private:
  explicit OrientedBall(std::variant<Sphere, HalfSpace> shape) : shape_(std::move(shape)) {}

  std::variant<Sphere, HalfSpace> shape_;
};

/// A positive light-like vector standing for the ray through it.
class LightRay {
 public:
  /// Throws NotLightLike or NotPositive.
  explicit LightRay(MinkVector v, double tolerance = 1e-12);

  const MinkVector& vector() const { return v_; }

 private:
  MinkVector v_;
};

MinkVector lift_ball(const OrientedBall& b);
/// Throws NotSpaceLike.
OrientedBall unlift_ball(const MinkVector& v);

LightRay lift_point(const ExtendedPoint& p);
/// Scale-invariant. Throws NotLightLike or NotPositive.
ExtendedPoint unlift_point(const MinkVector& w);

/// True iff p lies in the open ball b.
bool contains(const OrientedBall& b, const ExtendedPoint& p);

/// Chordal distance on the sphere obtained by inverse stereographic projection.
double chordal_distance(const ExtendedPoint& p, const ExtendedPoint& q);

double signed_inversive_distance(const OrientedBall& b1, const OrientedBall& b2);
double unsigned_inversive_distance(const OrientedBall& b1, const OrientedBall& b2);

/// Throws DuplicatePoints unless the four points are pairwise distinct.
double absolute_cross_ratio(const ExtendedPoint& a, const ExtendedPoint& b, const ExtendedPoint& c,
                            const ExtendedPoint& d);
/// (<v1,v2><v3,v4>) / (<v1,v3><v2,v4>). Throws DuplicateRays.
double lightray_cross_ratio(const LightRay& l1, const LightRay& l2, const LightRay& l3, const LightRay& l4);

struct BallRelation {
  enum class Kind { BoundariesDisjoint, Tangent, Intersecting };
  Kind kind;
  double inversive_distance;
  /// Hyperbolic distance between the planes (disjoint), dihedral angle
  /// arccos(inversive_distance) (intersecting), 0 for tangent.
  double measure;
};

std::string_view to_string(BallRelation::Kind k);

/// Throws SameBoundary when the two balls share their boundary sphere.
BallRelation relation_of_balls(const OrientedBall& b1, const OrientedBall& b2);

/// Throws NotPositive.
ExtendedPoint apply_to_point(const LorentzMap& g, const ExtendedPoint& p);
OrientedBall apply_to_ball(const LorentzMap& g, const OrientedBall& b);

/// Ball model of hyperbolic (M-1)-space onto the hyperboloid sheet in R^M.
/// Throws OnOrOutsideBoundary unless |x| < 1.
MinkVector ball_model_to_hyperboloid(const Eigen::VectorXd& x);

/// Error between two balls: relative parameter error for same-kind balls,
/// relative lift distance when one is a sphere and the other a half-space.
double ball_parameter_error(const OrientedBall& got, const OrientedBall& want);

}  // namespace mobius
