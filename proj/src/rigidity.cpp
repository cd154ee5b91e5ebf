#include "mobius/rigidity.hpp"

#include "mobius/error.hpp"
#include "mobius/kernels.hpp"
#include "mobius/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace mobius {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// minimum chordal gap between a padding point and the given points
constexpr double kAugmentClearance = 1e-3;

void require_compatible(const Configuration& a, const Configuration& b, ConfigKind kind) {
  if (a.kind() != kind || b.kind() != kind) {
    throw Error(ErrorCode::InvalidArgument, std::string("expected two ") + std::string(to_string(kind)) +
                                                " configurations");
  }
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "configurations live in R^" + std::to_string(a.dim()) +
                                                  " and R^" + std::to_string(b.dim()));
  }
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "configurations have " + std::to_string(a.size()) + " and " +
                                                std::to_string(b.size()) + " items");
  }
}

double gram_threshold(double rel_tol, const kernels::GramComparison& cmp) {
  return rel_tol * (1.0 + cmp.max_entry);
}

std::vector<MinkVector> select(std::span<const MinkVector> vs, const std::vector<Index>& idx) {
  std::vector<MinkVector> out;
  out.reserve(idx.size());
  for (Index i : idx) out.push_back(vs[static_cast<std::size_t>(i)]);
  return out;
}

struct ComplementSpectrum {
  Eigen::MatrixXd basis;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // coefficients on `basis`
  double threshold;
};

ComplementSpectrum complement_spectrum(std::span<const MinkVector> vs) {
  ComplementSpectrum out;
  out.basis = pack_columns(lorentz_complement(vs));
  if (out.basis.cols() == 0) {
    out.threshold = 0.0;
    return out;
  }
  const Eigen::MatrixXd h = out.basis.transpose() * lorentz_metric(out.basis.rows()) * out.basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  out.eigenvalues = eig.eigenvalues();
  out.eigenvectors = eig.eigenvectors();
  out.threshold = tol::rank * std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
  return out;
}

/// Unit space-like vector of the complement with the largest self-product.
std::optional<MinkVector> spacelike_complement_vector(const ComplementSpectrum& cs) {
  if (cs.basis.cols() == 0) return std::nullopt;
  const Index last = cs.eigenvalues.size() - 1;
  const double lambda = cs.eigenvalues[last];
  if (lambda <= cs.threshold) return std::nullopt;
  return MinkVector(Eigen::VectorXd(cs.basis * cs.eigenvectors.col(last) / std::sqrt(lambda)));
}

/// Positive light-like vector of the complement, if any.
std::optional<MinkVector> lightlike_complement_vector(const ComplementSpectrum& cs) {
  if (cs.basis.cols() == 0) return std::nullopt;
  const Index n = cs.eigenvalues.size();
  Eigen::VectorXd w;
  if (cs.eigenvalues[0] < -cs.threshold) {
    if (cs.eigenvalues[n - 1] <= cs.threshold) return std::nullopt;
    w = cs.basis * (cs.eigenvectors.col(0) / std::sqrt(-cs.eigenvalues[0]) +
                    cs.eigenvectors.col(n - 1) / std::sqrt(cs.eigenvalues[n - 1]));
  } else {
    Index best = 0;
    cs.eigenvalues.cwiseAbs().minCoeff(&best);
    if (std::abs(cs.eigenvalues[best]) > cs.threshold) return std::nullopt;
    w = cs.basis * cs.eigenvectors.col(best);
  }
  if (w[w.size() - 1] < 0.0) w = -w;
  return MinkVector(std::move(w));
}

std::string pair_witness(const Configuration& a, Index i, Index j) {
  return "(" + a.labels()[static_cast<std::size_t>(i)] + ", " + a.labels()[static_cast<std::size_t>(j)] + ")";
}

/// Pads both point configurations to three points with the same new points.
std::pair<Configuration, Configuration> augment_to_three(const Configuration& a, const Configuration& b) {
  const Index n = a.dim();
  std::vector<ExtendedPoint> candidates;
  candidates.push_back(ExtendedPoint::finite(Eigen::VectorXd::Zero(n)));
  candidates.push_back(ExtendedPoint::infinity(n));
  for (double x : {1.0, -1.0, 2.0, -2.0}) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[0] = x;
    candidates.push_back(ExtendedPoint::finite(std::move(e)));
  }

  std::vector<std::string> labels = a.labels();
  std::vector<ExtendedPoint> pa = a.points();
  std::vector<ExtendedPoint> pb = b.points();
  const std::set<std::string> taken(labels.begin(), labels.end());
  int serial = 0;
  for (const auto& c : candidates) {
    if (pa.size() >= 3) break;
    const auto clear = [&](const std::vector<ExtendedPoint>& pts) {
      return std::all_of(pts.begin(), pts.end(),
                         [&](const ExtendedPoint& p) { return chordal_distance(p, c) > kAugmentClearance; });
    };
    if (!clear(pa) || !clear(pb)) continue;
    std::string label;
    do {
      label = "__augment" + std::to_string(serial++);
    } while (taken.count(label) != 0);
    labels.push_back(label);
    pa.push_back(c);
    pb.push_back(c);
  }
  return {Configuration::points(n, labels, std::move(pa)), Configuration::points(n, labels, std::move(pb))};
}

}  // namespace

// -- Configuration ------------------------------------------------------------

std::string_view to_string(ConfigKind k) { return k == ConfigKind::Balls ? "balls" : "points"; }

std::string_view to_string(MatchMode m) { return m == MatchMode::Direct ? "Direct" : "ComplementSwapped"; }

std::string_view to_string(Uniqueness u) {
  switch (u) {
    case Uniqueness::Unique: return "Unique";
    case Uniqueness::StronglySymmetric: return "StronglySymmetric";
    case Uniqueness::FixedHyperbolicPoint: return "FixedHyperbolicPoint";
    case Uniqueness::PointsOnCommonSphere: return "PointsOnCommonSphere";
    case Uniqueness::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

void check_labels(const std::vector<std::string>& labels, std::size_t items) {
  if (labels.empty()) throw Error(ErrorCode::InvalidArgument, "empty configuration");
  if (labels.size() != items) throw Error(ErrorCode::InvalidArgument, "label count differs from item count");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw Error(ErrorCode::InvalidArgument, "duplicate label '" + l + "'");
  }
}

}  // namespace

Configuration Configuration::balls(Index dim, std::vector<std::string> labels, std::vector<OrientedBall> items) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  check_labels(labels, items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "item '" + labels[i] + "' has the wrong dimension");
    }
  }
  return Configuration(dim, ConfigKind::Balls, std::move(labels), std::move(items));
}

Configuration Configuration::points(Index dim, std::vector<std::string> labels, std::vector<ExtendedPoint> items) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  check_labels(labels, items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "item '" + labels[i] + "' has the wrong dimension");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (chordal_distance(items[i], items[j]) <= tol::zero) {
        throw Error(ErrorCode::DuplicatePoints, "items '" + labels[j] + "' and '" + labels[i] + "' coincide");
      }
    }
  }
  return Configuration(dim, ConfigKind::Points, std::move(labels), std::move(items));
}

std::vector<MinkVector> Configuration::lifts() const {
  std::vector<MinkVector> out;
  out.reserve(size());
  if (kind_ == ConfigKind::Balls) {
    for (const auto& b : balls()) out.push_back(lift_ball(b));
  } else {
    for (const auto& p : points()) out.push_back(lift_point(p).vector());
  }
  return out;
}

Eigen::MatrixXd Configuration::packed_lifts() const { return pack_columns(lifts()); }

Configuration Configuration::complemented() const {
  std::vector<OrientedBall> items;
  items.reserve(size());
  for (const auto& b : balls()) items.push_back(b.complement());
  return Configuration(dim_, kind_, labels_, std::move(items));
}

Configuration Configuration::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != size()) throw Error(ErrorCode::InvalidArgument, "permutation has the wrong length");
  std::vector<std::string> labels;
  for (auto i : order) labels.push_back(labels_.at(i));
  if (kind_ == ConfigKind::Balls) {
    std::vector<OrientedBall> items;
    for (auto i : order) items.push_back(balls().at(i));
    return balls(dim_, std::move(labels), std::move(items));
  }
  std::vector<ExtendedPoint> items;
  for (auto i : order) items.push_back(points().at(i));
  return points(dim_, std::move(labels), std::move(items));
}

Configuration apply_to_configuration(const LorentzMap& g, const Configuration& conf) {
  if (conf.kind() == ConfigKind::Balls) {
    std::vector<OrientedBall> items;
    items.reserve(conf.size());
    for (const auto& b : conf.balls()) items.push_back(apply_to_ball(g, b));
    return Configuration::balls(conf.dim(), conf.labels(), std::move(items));
  }
  std::vector<ExtendedPoint> items;
  items.reserve(conf.size());
  for (const auto& p : conf.points()) items.push_back(apply_to_point(g, p));
  return Configuration::points(conf.dim(), conf.labels(), std::move(items));
}

// -- frame matching -----------------------------------------------------------

LorentzMap match_frames(std::span<const MinkVector> vs, std::span<const MinkVector> targets, double rel_tol) {
  if (vs.size() != targets.size()) {
    throw Error(ErrorCode::InvalidArgument, "frames have different lengths");
  }
  const Eigen::MatrixXd a = pack_columns(vs);
  const Eigen::MatrixXd b = pack_columns(targets);
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "frames live in different dimensions");
  const Index dim = a.rows();

  const kernels::GramComparison cmp = kernels::compare_grams(a, b);
  const double threshold = gram_threshold(rel_tol, cmp);
  if (cmp.max_difference > threshold) {
    std::ostringstream msg;
    msg << "Gram entries (" << cmp.row << ", " << cmp.col << ") differ by " << cmp.max_difference;
    throw Error(ErrorCode::GramMismatch, msg.str());
  }

  const SpanAnalysis an = analyze_span(vs);
  if (an.cls.kind == SubspaceKind::LightLike) {
    throw Error(ErrorCode::DegenerateSpan, "span of the source frame is light-like");
  }
  const std::vector<MinkVector> src = select(vs, an.pivots);
  const std::vector<MinkVector> dst = select(targets, an.pivots);

  const SubspaceClass dst_cls = classify_span(dst);
  if (dst_cls != an.cls) {
    if (dst_cls.kind == SubspaceKind::LightLike) {
      throw Error(ErrorCode::DegenerateSpan, "span of the target frame is light-like");
    }
    throw Error(ErrorCode::GramMismatch, "mirrored target vectors are not independent");
  }

  const std::vector<MinkVector> src_fill = complete_to_lorentz_basis(src);
  const std::vector<MinkVector> dst_fill = complete_to_lorentz_basis(dst);
  for (std::size_t i = 0; i < src_fill.size(); ++i) {
    if ((lorentz_norm2(src_fill[i]) < 0.0) != (lorentz_norm2(dst_fill[i]) < 0.0)) {
      throw Error(ErrorCode::GramMismatch, "source and target spans have different signatures");
    }
  }

  Eigen::MatrixXd frame(dim, dim);
  Eigen::MatrixXd image(dim, dim);
  Index col = 0;
  for (std::size_t i = 0; i < src.size(); ++i, ++col) {
    frame.col(col) = src[i].coords();
    image.col(col) = dst[i].coords();
  }
  for (std::size_t i = 0; i < src_fill.size(); ++i, ++col) {
    frame.col(col) = src_fill[i].coords();
    image.col(col) = dst_fill[i].coords();
  }
  // phi * frame = image
  Eigen::MatrixXd phi = frame.transpose().partialPivLu().solve(image.transpose()).transpose();
  double scale = 1.0;
  for (Index i = 0; i < b.cols(); ++i) scale = std::max(scale, b.col(i).norm());
  const double allowed = 10.0 * threshold * scale;
  {
    // keep the Lorentz-polished matrix when it still reproduces the frame
    const Eigen::MatrixXd polished = lorentz_polish(phi);
    if (kernels::max_column_distance(polished * a, b).max_distance <= allowed) phi = polished;
  }
  const kernels::ColumnDistance res = kernels::max_column_distance(phi * a, b);
  if (!(res.max_distance <= allowed)) {
    std::ostringstream msg;
    msg << "vector " << res.column << " is mapped with residual " << res.max_distance;
    throw Error(ErrorCode::GramMismatch, msg.str());
  }
  try {
    return LorentzMap(phi, std::max(tol::lorentz, 10.0 * rel_tol));
  } catch (const Error& e) {
    throw Error(ErrorCode::GramMismatch, std::string("matched frame is not Lorentz: ") + e.what());
  }
}

namespace {

// Point lifts rescaled to time component 1, i.e. (inverse stereographic image, 1).
// Avoids the cancellation in <lift(p), lift(q)> when |p| is large.
std::vector<MinkVector> working_lifts(const Configuration& conf) {
  if (conf.kind() == ConfigKind::Balls) return conf.lifts();
  std::vector<MinkVector> out;
  out.reserve(conf.size());
  const Index n = conf.dim();
  for (const auto& p : conf.points()) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 2);
    w[n + 1] = 1.0;
    if (p.is_infinite()) {
      w[n] = 1.0;
    } else {
      const double q = p.coords().squaredNorm();
      w.head(n) = 2.0 * p.coords() / (1.0 + q);
      w[n] = (q - 1.0) / (q + 1.0);
    }
    out.emplace_back(std::move(w));
  }
  return out;
}

}  // namespace

// -- degeneracy and uniqueness ------------------------------------------------

CommonBoundaryReport detect_common_boundary(const Configuration& conf) {
  if (conf.kind() != ConfigKind::Balls) {
    throw Error(ErrorCode::InvalidArgument, "common boundary points are defined for balls");
  }
  const std::vector<MinkVector> lifts = conf.lifts();
  const SubspaceClass cls = classify_span(lifts);
  const Index full = conf.dim() + 2;
  CommonBoundaryReport out{false, cls, std::nullopt};
  out.common_point = cls.kind == SubspaceKind::LightLike ||
                     (cls.kind == SubspaceKind::SpaceLike && cls.dim < full - 1);
  if (out.common_point) {
    if (auto w = lightlike_complement_vector(complement_spectrum(lifts))) {
      out.witness = unlift_point(*w);
    }
  }
  return out;
}

UniquenessReport classify_uniqueness(const Configuration& conf) {
  const std::vector<MinkVector> lifts = working_lifts(conf);
  const SubspaceClass cls = classify_span(lifts);
  const Index full = conf.dim() + 2;
  UniquenessReport out{Uniqueness::Unique, cls, std::nullopt};
  if (cls.dim == full) return out;

  if (conf.kind() == ConfigKind::Balls) {
    if (cls.kind == SubspaceKind::SpaceLike && cls.dim == full - 1) {
      out.uniqueness = Uniqueness::FixedHyperbolicPoint;
    } else if (cls.kind == SubspaceKind::TimeLike) {
      out.uniqueness = Uniqueness::StronglySymmetric;
    } else {
      out.uniqueness = Uniqueness::Undetermined;
      return out;
    }
  } else {
    out.uniqueness = Uniqueness::PointsOnCommonSphere;
  }
  if (out.uniqueness != Uniqueness::FixedHyperbolicPoint) {
    if (auto w = spacelike_complement_vector(complement_spectrum(lifts))) out.witness = unlift_ball(*w);
  }
  return out;
}

LorentzMap nontrivial_stabilizer(const Configuration& conf) {
  const std::vector<MinkVector> lifts = working_lifts(conf);
  const ComplementSpectrum cs = complement_spectrum(lifts);
  if (cs.basis.cols() == 0) throw Error(ErrorCode::InvalidArgument, "lifts span R^M; only the identity fixes them");
  const Index dim = cs.basis.rows();
  const Eigen::MatrixXd j = lorentz_metric(dim);
  if (auto w = spacelike_complement_vector(cs)) {
    const Eigen::VectorXd v = w->coords() / std::sqrt(lorentz_norm2(*w));
    return LorentzMap(Eigen::MatrixXd(Eigen::MatrixXd::Identity(dim, dim) - 2.0 * v * v.transpose() * j));
  }
  if (cs.eigenvalues[0] < -cs.threshold) {
    Eigen::VectorXd v = cs.basis * cs.eigenvectors.col(0);
    v /= std::sqrt(-lorentz_norm2(MinkVector(v)));
    return LorentzMap(Eigen::MatrixXd(Eigen::MatrixXd::Identity(dim, dim) + 2.0 * v * v.transpose() * j));
  }
  throw Error(ErrorCode::DegenerateSpan, "light-like complement admits no reflection");
}

// -- solvers ------------------------------------------------------------------

SolveOutcome solve_balls(const Configuration& a, const Configuration& b, const SolveOptions& opts) {
  require_compatible(a, b, ConfigKind::Balls);
  const std::vector<MinkVector> la = a.lifts();
  const std::vector<MinkVector> lb = b.lifts();
  const Eigen::MatrixXd pa = pack_columns(la);
  const Eigen::MatrixXd pb = pack_columns(lb);

  const kernels::GramComparison cmp = kernels::compare_grams(pa, pb);
  if (cmp.max_difference > gram_threshold(opts.gram_tol, cmp)) {
    std::ostringstream msg;
    msg << "signed inversive distances of " << pair_witness(a, cmp.row, cmp.col) << " differ by "
        << cmp.max_difference;
    throw Error(ErrorCode::GramMismatch, msg.str());
  }

  const CommonBoundaryReport common = detect_common_boundary(a);
  if (common.common_point) {
    std::ostringstream msg;
    msg << "all boundary spheres share a point (lift span " << to_string(common.span.kind) << ", dim "
        << common.span.dim << ")";
    if (common.witness) {
      if (common.witness->is_infinite()) {
        msg << "; common point: infinity";
      } else {
        msg << "; common point: (" << common.witness->coords().transpose() << ")";
      }
    }
    throw Error(ErrorCode::CommonBoundaryPoint, msg.str());
  }

  LorentzMap phi = match_frames(la, lb, opts.gram_tol);
  MatchMode mode = MatchMode::Direct;
  if (!phi.positive()) {
    phi = -phi;
    mode = MatchMode::ComplementSwapped;
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const OrientedBall& ball = a.balls()[i];
    const OrientedBall img = apply_to_ball(phi, mode == MatchMode::Direct ? ball : ball.complement());
    worst = std::max(worst, ball_parameter_error(img, b.balls()[i]));
  }
  if (!(worst <= opts.ball_tol)) {
    std::ostringstream msg;
    msg << "recovered map reproduces the target balls only to " << worst;
    throw Error(ErrorCode::VerificationFailed, msg.str());
  }

  return SolveOutcome{phi, mode, classify_uniqueness(a).uniqueness, cmp.max_difference, worst};
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> anchored_point_lifts(const Configuration& a, const Configuration& b) {
  require_compatible(a, b, ConfigKind::Points);
  if (a.size() < 3) throw Error(ErrorCode::InvalidArgument, "anchoring needs at least three points");
  Eigen::MatrixXd va = pack_columns(working_lifts(a));
  Eigen::MatrixXd vb = pack_columns(working_lifts(b));
  const Index dim = va.rows();
  const Index m = va.cols();
  auto dot = [dim](const Eigen::MatrixXd& v, Index i, Index j) {
    return kernels::lorentz_dot(v.col(i).data(), v.col(j).data(), dim);
  };

  const double a01 = dot(va, 0, 1), a02 = dot(va, 0, 2), a12 = dot(va, 1, 2);
  const double b01 = dot(vb, 0, 1), b02 = dot(vb, 0, 2), b12 = dot(vb, 1, 2);
  const double sq = (b01 * b02 * a12) / (a01 * a02 * b12);
  if (!(sq > 0.0) || !std::isfinite(sq)) {
    throw Error(ErrorCode::CrossRatioMismatch, "anchor triple admits no positive rescaling");
  }
  const double l0 = std::sqrt(sq);
  const double l1 = b01 / (l0 * a01);
  const double l2 = b02 / (l0 * a02);
  va.col(0) *= l0;
  va.col(1) *= l1;
  va.col(2) *= l2;

  // Every other lift is scaled so that its product with one anchor is -1 on
  // both sides; the anchor farthest from it (on the worse side) is used.
  for (Index k = 3; k < m; ++k) {
    Index best = 0;
    double best_gap = -1.0;
    for (Index j = 0; j < 3; ++j) {
      const double ga = std::abs(dot(va, k, j)) / (va.col(k).norm() * va.col(j).norm());
      const double gb = std::abs(dot(vb, k, j)) / (vb.col(k).norm() * vb.col(j).norm());
      if (std::min(ga, gb) > best_gap) {
        best_gap = std::min(ga, gb);
        best = j;
      }
    }
    const double sa = -1.0 / dot(va, k, best);
    const double sb = -1.0 / dot(vb, k, best);
    if (!(sa > 0.0) || !(sb > 0.0)) {
      throw Error(ErrorCode::CrossRatioMismatch, "light-ray products have the wrong sign");
    }
    va.col(k) *= sa;
    vb.col(k) *= sb;
  }
  return {std::move(va), std::move(vb)};
}

namespace {

SolveOutcome solve_points_core(const Configuration& a, const Configuration& b, const SolveOptions& opts) {
  const auto [va, vb] = anchored_point_lifts(a, b);
  const kernels::GramComparison cmp = kernels::compare_grams(va, vb);
  if (cmp.max_difference > gram_threshold(opts.gram_tol, cmp)) {
    std::ostringstream msg;
    msg << "cross-ratios disagree; rescaled light-ray products of " << pair_witness(a, cmp.row, cmp.col)
        << " differ by " << cmp.max_difference;
    throw Error(ErrorCode::CrossRatioMismatch, msg.str());
  }
  const std::vector<MinkVector> src = unpack_columns(va);
  const std::vector<MinkVector> dst = unpack_columns(vb);
  LorentzMap psi = LorentzMap::identity(va.rows());
  try {
    psi = match_frames(src, dst, opts.gram_tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::GramMismatch) throw Error(ErrorCode::CrossRatioMismatch, e.what());
    throw;
  }
  if (!psi.positive()) psi = -psi;
  return SolveOutcome{psi, MatchMode::Direct, Uniqueness::Unique, cmp.max_difference, 0.0};
}

}  // namespace

SolveOutcome solve_points(const Configuration& a, const Configuration& b, const SolveOptions& opts) {
  require_compatible(a, b, ConfigKind::Points);
  SolveOutcome out = [&] {
    if (a.size() >= 3) return solve_points_core(a, b, opts);
    const auto [aa, bb] = augment_to_three(a, b);
    return solve_points_core(aa, bb, opts);
  }();

  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, chordal_distance(apply_to_point(out.map, a.points()[i]), b.points()[i]));
  }
  if (!(worst <= opts.point_tol)) {
    std::ostringstream msg;
    msg << "recovered map reproduces the target points only to " << worst << " (chordal)";
    throw Error(ErrorCode::VerificationFailed, msg.str());
  }
  out.residual_match = worst;
  out.uniqueness = classify_uniqueness(a).uniqueness;
  return out;
}

SolveOutcome solve(const Configuration& a, const Configuration& b, const SolveOptions& opts) {
  return a.kind() == ConfigKind::Balls ? solve_balls(a, b, opts) : solve_points(a, b, opts);
}

// -- checking -----------------------------------------------------------------

CorrespondenceReport verify_correspondence(const Configuration& a, const Configuration& b, const LorentzMap& g,
                                           double tolerance) {
  CorrespondenceReport out;
  if (a.kind() != b.kind() || a.dim() != b.dim() || a.size() != b.size()) {
    out.max_error = kInf;
    out.note = "configurations are not comparable (kind, dimension or size differ)";
    return out;
  }
  if (g.dim() != a.dim() + 2) {
    out.max_error = kInf;
    out.note = "map dimension does not match the configurations";
    return out;
  }
  if (!g.positive()) {
    out.max_error = kInf;
    out.note = "map is not positive";
    return out;
  }

  if (a.kind() == ConfigKind::Balls) {
    std::vector<double> direct(a.size()), swapped(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const OrientedBall& ball = a.balls()[i];
      direct[i] = ball_parameter_error(apply_to_ball(g, ball), b.balls()[i]);
      swapped[i] = ball_parameter_error(apply_to_ball(g, ball.complement()), b.balls()[i]);
    }
    const double md = *std::max_element(direct.begin(), direct.end());
    const double ms = *std::max_element(swapped.begin(), swapped.end());
    if (ms < md) {
      out.item_errors = std::move(swapped);
      out.max_error = ms;
      out.mode = MatchMode::ComplementSwapped;
    } else {
      out.item_errors = std::move(direct);
      out.max_error = md;
    }
    out.gram_residual = kernels::compare_grams(a.packed_lifts(), b.packed_lifts()).max_difference;
  } else {
    out.item_errors.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.item_errors[i] = chordal_distance(apply_to_point(g, a.points()[i]), b.points()[i]);
    }
    out.max_error = *std::max_element(out.item_errors.begin(), out.item_errors.end());
    if (a.size() >= 3) {
      try {
        const auto [va, vb] = anchored_point_lifts(a, b);
        out.gram_residual = kernels::compare_grams(va, vb).max_difference;
      } catch (const Error&) {
        out.gram_residual = kInf;
      }
    }
  }
  out.pass = out.max_error <= tolerance;
  return out;
}

CrossRatioReport full_cross_ratio_check(const Configuration& a, const Configuration& b, double tolerance) {
  require_compatible(a, b, ConfigKind::Points);
  if (a.size() < 4) throw Error(ErrorCode::InvalidArgument, "cross-ratio check needs at least four points");
  const kernels::TupleDiscrepancy scan =
      kernels::cross_ratio_scan(kernels::gram(pack_columns(working_lifts(a))),
                               kernels::gram(pack_columns(working_lifts(b))));
  CrossRatioReport out;
  out.max_discrepancy = scan.value;
  for (int k = 0; k < 4; ++k) out.witness[static_cast<std::size_t>(k)] = static_cast<std::size_t>(scan.tuple[k]);
  out.tuples = scan.tuples;
  out.pass = scan.value <= tolerance;
  return out;
}

}  // namespace mobius
