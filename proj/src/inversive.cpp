#include "mobius/inversive.hpp"

#include "mobius/error.hpp"
#include "mobius/tolerances.hpp"

#include <cmath>
#include <sstream>

namespace mobius {

namespace {

void require_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw Error(ErrorCode::InvalidArgument, std::string("non-finite ") + what);
}

void require_same_dim(Index a, Index b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "objects of dimension " + std::to_string(a) + " and " + std::to_string(b));
  }
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

// -- ExtendedPoint ------------------------------------------------------------

ExtendedPoint ExtendedPoint::finite(Eigen::VectorXd coords) {
  if (coords.size() < 1) throw Error(ErrorCode::InvalidArgument, "points need at least one coordinate");
  require_finite(coords, "point coordinate");
  const Index dim = coords.size();
  return ExtendedPoint(std::move(coords), dim, false);
}

ExtendedPoint ExtendedPoint::infinity(Index dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  return ExtendedPoint(Eigen::VectorXd(), dim, true);
}

const Eigen::VectorXd& ExtendedPoint::coords() const {
  if (infinite_) throw Error(ErrorCode::InvalidArgument, "the point at infinity has no coordinates");
  return coords_;
}

// -- OrientedBall -------------------------------------------------------------

std::string_view to_string(Side s) { return s == Side::Inside ? "inside" : "outside"; }

OrientedBall OrientedBall::sphere(Eigen::VectorXd center, double radius, Side side) {
  if (center.size() < 1) throw Error(ErrorCode::InvalidArgument, "center needs at least one coordinate");
  require_finite(center, "center coordinate");
  if (!std::isfinite(radius) || radius <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  }
  return OrientedBall(Sphere{std::move(center), radius, side});
}

OrientedBall OrientedBall::half_space(Eigen::VectorXd normal, double offset) {
  if (normal.size() < 1) throw Error(ErrorCode::InvalidArgument, "normal needs at least one coordinate");
  require_finite(normal, "normal coordinate");
  if (!std::isfinite(offset)) throw Error(ErrorCode::InvalidArgument, "non-finite offset");
  if (std::abs(normal.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "half-space normal must have unit length");
  }
  return OrientedBall(HalfSpace{std::move(normal), offset});
}

Index OrientedBall::dim() const {
  return is_sphere() ? as_sphere().center.size() : as_half_space().normal.size();
}

OrientedBall OrientedBall::complement() const {
  if (is_sphere()) {
    const Sphere& s = as_sphere();
    return OrientedBall(Sphere{s.center, s.radius, s.side == Side::Inside ? Side::Outside : Side::Inside});
  }
  const HalfSpace& h = as_half_space();
  return OrientedBall(HalfSpace{-h.normal, -h.offset});
}

// -- LightRay -----------------------------------------------------------------

LightRay::LightRay(MinkVector v, double tolerance) : v_(std::move(v)) {
  const double n = v_.euclidean_norm();
  if (n <= tol::zero || std::abs(lorentz_norm2(v_)) > tolerance * n * n) {
    throw Error(ErrorCode::NotLightLike, "vector is not light-like");
  }
  if (v_.time() <= 0.0) throw Error(ErrorCode::NotPositive, "light-like vector is not positive");
}

// -- lifts --------------------------------------------------------------------

MinkVector lift_ball(const OrientedBall& b) {
  const Index n = b.dim();
  Eigen::VectorXd v(n + 2);
  if (b.is_sphere()) {
    const Sphere& s = b.as_sphere();
    const double a = s.center.squaredNorm() - s.radius * s.radius;
    v.head(n) = s.center / s.radius;
    v[n] = (a - 1.0) / (2.0 * s.radius);
    v[n + 1] = (a + 1.0) / (2.0 * s.radius);
    if (s.side == Side::Outside) v = -v;
  } else {
    const HalfSpace& h = b.as_half_space();
    v.head(n) = h.normal;
    v[n] = h.offset;
    v[n + 1] = h.offset;
  }
  return MinkVector(std::move(v));
}

OrientedBall unlift_ball(const MinkVector& v) {
  if (causal_class(v) != CausalClass::SpaceLike) {
    throw Error(ErrorCode::NotSpaceLike, "ball lifts must be space-like");
  }
  const Index n = v.dim() - 2;
  const Eigen::VectorXd u = v.coords() / std::sqrt(lorentz_norm2(v));
  const double kappa = u[n + 1] - u[n];
  if (std::abs(kappa) > tol::plane * std::max(1.0, inf_norm(u))) {
    return OrientedBall::sphere(u.head(n) / kappa, 1.0 / std::abs(kappa),
                                kappa > 0.0 ? Side::Inside : Side::Outside);
  }
  const Eigen::VectorXd spatial = u.head(n);
  const double len = spatial.norm();
  return OrientedBall::half_space(spatial / len, 0.5 * (u[n] + u[n + 1]) / len);
}

LightRay lift_point(const ExtendedPoint& p) {
  const Index n = p.dim();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 2);
  if (p.is_infinite()) {
    w[n] = 1.0;
    w[n + 1] = 1.0;
  } else {
    const double q = p.coords().squaredNorm();
    w.head(n) = p.coords();
    w[n] = 0.5 * (q - 1.0);
    w[n + 1] = 0.5 * (q + 1.0);
  }
  return LightRay(MinkVector(std::move(w)));
}

ExtendedPoint unlift_point(const MinkVector& w) {
  const double norm = w.euclidean_norm();
  if (norm <= tol::zero || std::abs(lorentz_norm2(w)) > tol::light_cone * norm * norm) {
    throw Error(ErrorCode::NotLightLike, "vector is not light-like");
  }
  if (w.time() <= 0.0) throw Error(ErrorCode::NotPositive, "light-like vector is not positive");
  const Index n = w.dim() - 2;
  const double kappa = w[n + 1] - w[n];
  if (std::abs(kappa) <= tol::point_infinity * norm) return ExtendedPoint::infinity(n);
  return ExtendedPoint::finite(Eigen::VectorXd(w.coords().head(n) / kappa));
}

bool contains(const OrientedBall& b, const ExtendedPoint& p) {
  return lorentz_inner(lift_ball(b), lift_point(p).vector()) > 0.0;
}

double chordal_distance(const ExtendedPoint& p, const ExtendedPoint& q) {
  require_same_dim(p.dim(), q.dim());
  if (p.is_infinite() && q.is_infinite()) return 0.0;
  if (p.is_infinite()) return 2.0 / std::sqrt(1.0 + q.coords().squaredNorm());
  if (q.is_infinite()) return 2.0 / std::sqrt(1.0 + p.coords().squaredNorm());
  return 2.0 * (p.coords() - q.coords()).norm() /
         std::sqrt((1.0 + p.coords().squaredNorm()) * (1.0 + q.coords().squaredNorm()));
}

// -- invariants ---------------------------------------------------------------

double signed_inversive_distance(const OrientedBall& b1, const OrientedBall& b2) {
  require_same_dim(b1.dim(), b2.dim());
  return lorentz_inner(lift_ball(b1), lift_ball(b2));
}

double unsigned_inversive_distance(const OrientedBall& b1, const OrientedBall& b2) {
  return std::abs(signed_inversive_distance(b1, b2));
}

double absolute_cross_ratio(const ExtendedPoint& a, const ExtendedPoint& b, const ExtendedPoint& c,
                            const ExtendedPoint& d) {
  const ExtendedPoint* pts[4] = {&a, &b, &c, &d};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (chordal_distance(*pts[i], *pts[j]) <= tol::zero) {
        throw Error(ErrorCode::DuplicatePoints, "cross-ratio needs four distinct points");
      }
    }
  }
  const MinkVector u1 = lift_point(a).vector();
  const MinkVector u2 = lift_point(b).vector();
  const MinkVector u3 = lift_point(c).vector();
  const MinkVector u4 = lift_point(d).vector();
  return std::sqrt((lorentz_inner(u1, u2) * lorentz_inner(u3, u4)) /
                   (lorentz_inner(u1, u3) * lorentz_inner(u2, u4)));
}

double lightray_cross_ratio(const LightRay& l1, const LightRay& l2, const LightRay& l3, const LightRay& l4) {
  const MinkVector* v[4] = {&l1.vector(), &l2.vector(), &l3.vector(), &l4.vector()};
  double g[4][4];
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      g[i][j] = lorentz_inner(*v[i], *v[j]);
      const double scale = v[i]->euclidean_norm() * v[j]->euclidean_norm();
      if (std::abs(g[i][j]) <= tol::zero * scale) {
        throw Error(ErrorCode::DuplicateRays, "cross-ratio needs four distinct light rays");
      }
    }
  }
  return (g[0][1] * g[2][3]) / (g[0][2] * g[1][3]);
}

std::string_view to_string(BallRelation::Kind k) {
  switch (k) {
    case BallRelation::Kind::BoundariesDisjoint: return "BoundariesDisjoint";
    case BallRelation::Kind::Tangent: return "Tangent";
    case BallRelation::Kind::Intersecting: return "Intersecting";
  }
  return "?";
}

BallRelation relation_of_balls(const OrientedBall& b1, const OrientedBall& b2) {
  require_same_dim(b1.dim(), b2.dim());
  const MinkVector v1 = lift_ball(b1);
  const MinkVector v2 = lift_ball(b2);
  const double scale = std::max({1.0, v1.euclidean_norm(), v2.euclidean_norm()});
  const double parallel =
      std::min((v1.coords() - v2.coords()).norm(), (v1.coords() + v2.coords()).norm());
  if (parallel <= tol::relation * scale) {
    throw Error(ErrorCode::SameBoundary, "the two balls share their boundary sphere");
  }
  const double lambda = lorentz_inner(v1, v2);
  if (std::abs(lambda - 1.0) <= tol::relation || std::abs(lambda + 1.0) <= tol::relation) {
    return {BallRelation::Kind::Tangent, lambda, 0.0};
  }
  if (std::abs(lambda) > 1.0) {
    return {BallRelation::Kind::BoundariesDisjoint, lambda, std::acosh(std::abs(lambda))};
  }
  return {BallRelation::Kind::Intersecting, lambda, std::acos(lambda)};
}

// -- Möbius action ------------------------------------------------------------

ExtendedPoint apply_to_point(const LorentzMap& g, const ExtendedPoint& p) {
  require_same_dim(g.dim(), p.dim() + 2);
  if (!g.positive()) throw Error(ErrorCode::NotPositive, "map does not preserve the upper sheet");
  return unlift_point(g(lift_point(p).vector()));
}

OrientedBall apply_to_ball(const LorentzMap& g, const OrientedBall& b) {
  require_same_dim(g.dim(), b.dim() + 2);
  if (!g.positive()) throw Error(ErrorCode::NotPositive, "map does not preserve the upper sheet");
  return unlift_ball(g(lift_ball(b)));
}

MinkVector ball_model_to_hyperboloid(const Eigen::VectorXd& x) {
  require_finite(x, "ball-model coordinate");
  const double q = x.squaredNorm();
  if (std::sqrt(q) >= 1.0 - tol::zero) {
    throw Error(ErrorCode::OnOrOutsideBoundary, "point is not inside the unit ball");
  }
  Eigen::VectorXd v(x.size() + 1);
  v.head(x.size()) = 2.0 * x / (1.0 - q);
  v[x.size()] = (1.0 + q) / (1.0 - q);
  return MinkVector(std::move(v));
}

double ball_parameter_error(const OrientedBall& got, const OrientedBall& want) {
  require_same_dim(got.dim(), want.dim());
  if (got.is_sphere() && want.is_sphere() && got.as_sphere().side == want.as_sphere().side) {
    const Sphere& a = got.as_sphere();
    const Sphere& b = want.as_sphere();
    const double scale = std::max({1.0, inf_norm(b.center), b.radius});
    return std::max(inf_norm(a.center - b.center), std::abs(a.radius - b.radius)) / scale;
  }
  if (!got.is_sphere() && !want.is_sphere()) {
    const HalfSpace& a = got.as_half_space();
    const HalfSpace& b = want.as_half_space();
    return std::max(inf_norm(a.normal - b.normal),
                    std::abs(a.offset - b.offset) / std::max(1.0, std::abs(b.offset)));
  }
  const Eigen::VectorXd va = lift_ball(got).coords();
  const Eigen::VectorXd vb = lift_ball(want).coords();
  return inf_norm(va - vb) / std::max(1.0, inf_norm(vb));
}

}  // namespace mobius
