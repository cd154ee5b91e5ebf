#include "mobius/generate.hpp"

#include "mobius/error.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <string>

namespace mobius {

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::Full: return "full";
    case Structure::StronglySymmetric: return "strongly-symmetric";
    case Structure::CommonSphere: return "common-sphere";
    case Structure::CommonPoint: return "common-point";
  }
  return "?";
}

std::optional<Structure> parse_structure(std::string_view s) {
  for (Structure k : {Structure::Full, Structure::StronglySymmetric, Structure::CommonSphere,
                      Structure::CommonPoint}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(dim);
  do {
    for (Index i = 0; i < dim; ++i) v[i] = gauss(rng);
  } while (v.norm() < 1e-3);
  return v / v.norm();
}

namespace {

Eigen::VectorXd uniform_box(std::mt19937_64& rng, Index dim, double half) {
  std::uniform_real_distribution<double> u(-half, half);
  Eigen::VectorXd v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = u(rng);
  return v;
}

Side random_side(std::mt19937_64& rng) {
  return std::bernoulli_distribution(0.5)(rng) ? Side::Inside : Side::Outside;
}

OrientedBall generic_ball(std::mt19937_64& rng, Index dim) {
  if (std::bernoulli_distribution(0.75)(rng)) {
    const double r = std::uniform_real_distribution<double>(0.25, 2.0)(rng);
    return OrientedBall::sphere(uniform_box(rng, dim, 2.0), r, random_side(rng));
  }
  const double d = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  return OrientedBall::half_space(random_unit_vector(rng, dim), d);
}

// Orthogonal to the unit sphere: |c|^2 = 1 + r^2, or a half-space through 0.
OrientedBall orthogonal_ball(std::mt19937_64& rng, Index dim) {
  if (std::bernoulli_distribution(0.8)(rng)) {
    const double len = std::uniform_real_distribution<double>(1.2, 3.0)(rng);
    const Eigen::VectorXd c = len * random_unit_vector(rng, dim);
    return OrientedBall::sphere(c, std::sqrt(len * len - 1.0), random_side(rng));
  }
  return OrientedBall::half_space(random_unit_vector(rng, dim), 0.0);
}

// Redraws until cond(g) = |g|_2^2 stays at most max_cond.
LorentzMap conditioned_lorentz(std::mt19937_64& rng, Index dim, double max_cond) {
  for (;;) {
    LorentzMap g = random_lorentz(rng(), dim);
    const double s = Eigen::JacobiSVD<Eigen::MatrixXd>(g.matrix()).singularValues()[0];
    if (s * s <= max_cond) return g;
  }
}

}  // namespace

GeneratedInstance generate_instance(ConfigKind kind, int n, Index dim, std::uint64_t seed, Structure structure) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be at least 1");
  const bool balls = kind == ConfigKind::Balls;
  if (balls && structure == Structure::CommonSphere) {
    throw Error(ErrorCode::InvalidArgument, "common-sphere applies to points");
  }
  if (!balls && (structure == Structure::StronglySymmetric || structure == Structure::CommonPoint)) {
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(structure)) + " applies to balls");
  }
  if (structure == Structure::StronglySymmetric && n < dim + 1) {
    throw Error(ErrorCode::InvalidArgument, "strongly-symmetric needs n >= dim + 1");
  }
  if (structure == Structure::CommonSphere && dim == 1 && n > 2) {
    throw Error(ErrorCode::InvalidArgument, "the unit sphere of R^1 has only two points");
  }

  std::mt19937_64 rng(seed);
  const LorentzMap g = conditioned_lorentz(rng, dim + 2, 1e4);
  // a second random map moves the structured configurations off the unit sphere;
  // their stabilizers are conjugated by it, hence the tighter bound
  const LorentzMap h = conditioned_lorentz(rng, dim + 2, 1e2);

  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back((balls ? "B" : "p") + std::to_string(i + 1));

  if (balls) {
    std::vector<OrientedBall> items;
    for (int i = 0; i < n; ++i) {
      switch (structure) {
        case Structure::StronglySymmetric: items.push_back(orthogonal_ball(rng, dim)); break;
        case Structure::CommonPoint:
          items.push_back(OrientedBall::half_space(random_unit_vector(rng, dim),
                                                   std::uniform_real_distribution<double>(-1.0, 1.0)(rng)));
          break;
        default: items.push_back(generic_ball(rng, dim)); break;
      }
    }
    Configuration a = Configuration::balls(dim, labels, std::move(items));
    if (structure != Structure::Full) a = apply_to_configuration(h, a);
    Configuration b = apply_to_configuration(g, a);
    return {std::move(a), std::move(b), g};
  }

  std::vector<ExtendedPoint> items;
  if (structure == Structure::CommonSphere && dim == 1) {
    const double s = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    items.push_back(ExtendedPoint::finite(Eigen::VectorXd::Constant(1, s)));
    if (n == 2) items.push_back(ExtendedPoint::finite(Eigen::VectorXd::Constant(1, -s)));
  } else {
    const bool with_infinity = structure == Structure::Full && std::bernoulli_distribution(0.25)(rng);
    for (int i = 0; i < n; ++i) {
      if (with_infinity && i == n - 1) {
        items.push_back(ExtendedPoint::infinity(dim));
      } else if (structure == Structure::CommonSphere) {
        items.push_back(ExtendedPoint::finite(random_unit_vector(rng, dim)));
      } else {
        items.push_back(ExtendedPoint::finite(uniform_box(rng, dim, 2.0)));
      }
    }
  }
  Configuration a = Configuration::points(dim, labels, std::move(items));
  if (structure != Structure::Full) a = apply_to_configuration(h, a);
  Configuration b = apply_to_configuration(g, a);
  return {std::move(a), std::move(b), g};
}

}  // namespace mobius
