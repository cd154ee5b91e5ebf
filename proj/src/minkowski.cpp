#include "mobius/minkowski.hpp"

#include "mobius/error.hpp"
#include "mobius/kernels.hpp"
#include "mobius/tolerances.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace mobius {

namespace {

void require_same_dim(Index a, Index b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "vectors of dimension " + std::to_string(a) + " and " + std::to_string(b));
  }
}

Index common_dim(std::span<const MinkVector> vs) {
  if (vs.empty()) throw Error(ErrorCode::AllZero, "no vectors given");
  const Index dim = vs.front().dim();
  for (const auto& v : vs) require_same_dim(dim, v.dim());
  return dim;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Orthonormal completion: the full Q of a Householder QR of `cols`.
Eigen::MatrixXd full_q(const Eigen::MatrixXd& cols, Index rows) {
  if (cols.cols() == 0) return Eigen::MatrixXd::Identity(rows, rows);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
  return qr.householderQ() * Eigen::MatrixXd::Identity(rows, rows);
}

/// Scale the eigenvectors of the restricted Gram so that the result is
/// Lorentz-orthonormal. Eigenvalues come out ascending, so negatives lead.
std::vector<MinkVector> orthonormalize_on(const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd j = lorentz_metric(basis.rows());
  const Eigen::MatrixXd h = basis.transpose() * j * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double scale = std::max(1e-300, lambda.cwiseAbs().maxCoeff());
  std::vector<MinkVector> out;
  out.reserve(static_cast<std::size_t>(basis.cols()));
  for (Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda[i]) <= tol::rank * scale) {
      throw Error(ErrorCode::DegenerateSpan, "restricted Gram is singular (light-like span)");
    }
    out.emplace_back(Eigen::VectorXd(basis * eig.eigenvectors().col(i) / std::sqrt(std::abs(lambda[i]))));
  }
  return out;
}

Eigen::MatrixXd complement_basis(const SpanAnalysis& an) {
  const Index dim = an.basis.rows();
  const Index p = an.cls.dim;
  if (p == dim) return Eigen::MatrixXd(dim, 0);
  const Eigen::MatrixXd jq = lorentz_metric(dim) * an.basis;
  return full_q(jq, dim).rightCols(dim - p);
}

}  // namespace

// -- MinkVector ---------------------------------------------------------------

MinkVector::MinkVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "Minkowski vectors need at least 3 coordinates");
  }
  if (!coords_.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
}

MinkVector::MinkVector(std::initializer_list<double> coords)
    : MinkVector(Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(coords.begin(),
                                                                   static_cast<Index>(coords.size())))) {}

MinkVector MinkVector::basis(Index dim, Index i) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
  c[i] = 1.0;
  return MinkVector(std::move(c));
}

MinkVector MinkVector::zero(Index dim) { return MinkVector(Eigen::VectorXd(Eigen::VectorXd::Zero(dim))); }

MinkVector MinkVector::operator+(const MinkVector& other) const {
  require_same_dim(dim(), other.dim());
  return MinkVector(Eigen::VectorXd(coords_ + other.coords_));
}

MinkVector MinkVector::operator-(const MinkVector& other) const {
  require_same_dim(dim(), other.dim());
  return MinkVector(Eigen::VectorXd(coords_ - other.coords_));
}

MinkVector MinkVector::operator*(double s) const { return MinkVector(Eigen::VectorXd(coords_ * s)); }

// -- classification -----------------------------------------------------------

std::string_view to_string(CausalClass c) {
  switch (c) {
    case CausalClass::SpaceLike: return "SpaceLike";
    case CausalClass::TimeLike: return "TimeLike";
    case CausalClass::LightLike: return "LightLike";
    case CausalClass::Zero: return "Zero";
  }
  return "?";
}

std::string_view to_string(SubspaceKind k) {
  switch (k) {
    case SubspaceKind::SpaceLike: return "SpaceLike";
    case SubspaceKind::TimeLike: return "TimeLike";
    case SubspaceKind::LightLike: return "LightLike";
  }
  return "?";
}

std::string_view to_string(CanonicalKind k) {
  switch (k) {
    case CanonicalKind::T: return "T";
    case CanonicalKind::S: return "S";
    case CanonicalKind::L: return "L";
  }
  return "?";
}

Eigen::MatrixXd lorentz_metric(Index dim) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(dim, dim);
  j(dim - 1, dim - 1) = -1.0;
  return j;
}

double lorentz_inner(const MinkVector& u, const MinkVector& v) {
  require_same_dim(u.dim(), v.dim());
  return kernels::lorentz_dot(u.coords().data(), v.coords().data(), u.dim());
}

CausalClass causal_class(const MinkVector& v) {
  const double n = v.euclidean_norm();
  if (n <= tol::zero) return CausalClass::Zero;
  const double q = lorentz_norm2(v);
  if (std::abs(q) <= tol::zero * n * n) return CausalClass::LightLike;
  return q > 0.0 ? CausalClass::SpaceLike : CausalClass::TimeLike;
}

Eigen::MatrixXd pack_columns(std::span<const MinkVector> vs) {
  if (vs.empty()) return {};
  const Index dim = common_dim(vs);
  Eigen::MatrixXd cols(dim, static_cast<Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) cols.col(static_cast<Index>(i)) = vs[i].coords();
  return cols;
}

std::vector<MinkVector> unpack_columns(const Eigen::MatrixXd& cols) {
  std::vector<MinkVector> out;
  out.reserve(static_cast<std::size_t>(cols.cols()));
  for (Index i = 0; i < cols.cols(); ++i) out.emplace_back(Eigen::VectorXd(cols.col(i)));
  return out;
}

Eigen::MatrixXd gram_matrix(std::span<const MinkVector> vs) {
  if (vs.empty()) return {};
  return kernels::gram(pack_columns(vs));
}

SpanAnalysis analyze_span(std::span<const MinkVector> vs) {
  const Index dim = common_dim(vs);
  Eigen::MatrixXd cols = pack_columns(vs);
  bool any_nonzero = false;
  for (Index i = 0; i < cols.cols(); ++i) {
    const double n = cols.col(i).norm();
    if (n > tol::zero) {
      cols.col(i) /= n;
      any_nonzero = true;
    } else {
      cols.col(i).setZero();
    }
  }
  if (!any_nonzero) throw Error(ErrorCode::AllZero, "every vector is zero");

  SpanAnalysis out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  out.singular_values = svd.singularValues();
  const double smax = out.singular_values[0];
  const double cut = tol::rank * smax;
  Index rank = 0;
  for (Index i = 0; i < out.singular_values.size(); ++i) {
    const double s = out.singular_values[i];
    if (s > cut * tol::rank_band) {
      ++rank;
    } else if (s > cut) {
      std::ostringstream msg;
      msg << "singular value " << s / smax << " (relative) lies in the ambiguity band ("
          << tol::rank << ", " << tol::rank * tol::rank_band << ")";
      throw Error(ErrorCode::RankAmbiguous, msg.str());
    }
  }
  out.basis = svd.matrixU().leftCols(rank);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(cols);
  const auto& perm = qr.colsPermutation().indices();
  for (Index i = 0; i < rank; ++i) out.pivots.push_back(perm[i]);

  const Eigen::MatrixXd h = out.basis.transpose() * lorentz_metric(dim) * out.basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h, Eigen::EigenvaluesOnly);
  out.gram_eigenvalues = eig.eigenvalues();
  // basis is Euclidean-orthonormal, so |eigenvalues| <= 1 and the cut is absolute.
  const double gmin = out.gram_eigenvalues.cwiseAbs().minCoeff();
  SubspaceKind kind;
  if (gmin <= tol::rank) {
    kind = SubspaceKind::LightLike;
  } else if (out.gram_eigenvalues[0] < 0.0) {
    kind = SubspaceKind::TimeLike;
  } else {
    kind = SubspaceKind::SpaceLike;
  }
  out.cls = SubspaceClass{kind, rank};
  return out;
}

SubspaceClass classify_span(std::span<const MinkVector> vs) { return analyze_span(vs).cls; }

std::vector<MinkVector> lorentz_complement(std::span<const MinkVector> vs) {
  return unpack_columns(complement_basis(analyze_span(vs)));
}

std::vector<MinkVector> lorentz_orthonormalize(std::span<const MinkVector> vs) {
  const SpanAnalysis an = analyze_span(vs);
  if (an.cls.kind == SubspaceKind::LightLike) {
    throw Error(ErrorCode::DegenerateSpan, "span is light-like");
  }
  return orthonormalize_on(an.basis);
}

std::vector<MinkVector> complete_to_lorentz_basis(std::span<const MinkVector> vs) {
  const SpanAnalysis an = analyze_span(vs);
  if (an.cls.kind == SubspaceKind::LightLike) {
    throw Error(ErrorCode::DegenerateSpan, "span is light-like");
  }
  const Eigen::MatrixXd c = complement_basis(an);
  if (c.cols() == 0) return {};
  return orthonormalize_on(c);
}

// -- canonical forms ----------------------------------------------------------

bool in_canonical_subspace(const MinkVector& v, const CanonicalForm& form, double tolerance) {
  const Index dim = v.dim();
  const Index p = form.dim;
  const double bound = tolerance * std::max(1.0, v.euclidean_norm());
  auto zero_range = [&](Index first, Index last) {
    for (Index i = first; i < last; ++i) {
      if (std::abs(v[i]) > bound) return false;
    }
    return true;
  };
  switch (form.kind) {
    case CanonicalKind::S:
      return zero_range(p, dim);
    case CanonicalKind::T:
      return zero_range(p - 1, dim - 1);
    case CanonicalKind::L:
      return zero_range(p, dim - 1) && std::abs(v[p - 1] - v[dim - 1]) <= bound;
  }
  return false;
}

std::pair<LorentzMap, CanonicalForm> canonicalize_subspace(std::span<const MinkVector> vs) {
  const SpanAnalysis an = analyze_span(vs);
  const Index dim = an.basis.rows();
  const Index p = an.cls.dim;
  if (p == dim) throw Error(ErrorCode::FullSpace, "span is all of R^M; no proper canonical form");

  const Eigen::MatrixXd& q = an.basis;
  const Eigen::VectorXd t = q.row(dim - 1).transpose();
  // dim(V ∩ R^{M-1}) is p when no basis vector has a time component, else p - 1.
  const Index k = t.norm() <= tol::rank ? p : p - 1;

  Eigen::MatrixXd coeffs;
  if (k == p) {
    coeffs = Eigen::MatrixXd::Identity(p, p);
  } else {
    coeffs = full_q(t, p).rightCols(p - 1);
  }
  Eigen::MatrixXd spatial_part = (q * coeffs).topRows(dim - 1);

  // alpha: orthogonal on R^{M-1}, fixes e_M, sends V ∩ R^{M-1} onto R^k.
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Identity(dim, dim);
  alpha.topLeftCorner(dim - 1, dim - 1) = full_q(spatial_part, dim - 1).transpose();

  if (k == p) {
    return {LorentzMap(alpha), CanonicalForm{CanonicalKind::S, p}};
  }

  // u in alpha(V) \ R^{M-1}, oriented so that u_M > 0.
  Eigen::VectorXd u = alpha * (q * (t / t.norm()));
  if (u[dim - 1] < 0.0) u = -u;

  // beta: orthogonal on span(e_p, ..., e_{M-1}) sending (u_p, ..., u_{M-1}) to a
  // non-negative multiple of e_p. Coordinates p-1 .. M-2 in 0-based indexing.
  const Index block = dim - p;
  const Eigen::VectorXd s = u.segment(p - 1, block);
  const double s_norm = s.norm();
  Eigen::MatrixXd beta = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd h = s;
  h[0] -= s_norm;
  if (h.norm() > tol::zero * std::max(1.0, s_norm)) {
    beta.block(p - 1, p - 1, block, block) -= 2.0 * h * h.transpose() / h.squaredNorm();
  }
  const double w_p = s_norm;
  const double w_t = u[dim - 1];

  const Index axis = p - 1;
  const double defect = w_p * w_p - w_t * w_t;
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Identity(dim, dim);
  CanonicalKind kind;
  switch (an.cls.kind) {
    case SubspaceKind::LightLike:
      // u_M > 0 forces w_p = w_M, so gamma is the identity.
      kind = CanonicalKind::L;
      break;
    case SubspaceKind::SpaceLike: {
      if (defect <= 0.0) throw Error(ErrorCode::RankAmbiguous, "space-like span with non-space-like w");
      const double ell = std::sqrt(std::abs(defect));
      gamma = hyperbolic_rotation(dim, axis, w_p / ell, -w_t / ell).matrix();
      kind = CanonicalKind::S;
      break;
    }
    case SubspaceKind::TimeLike: {
      if (defect >= 0.0) throw Error(ErrorCode::RankAmbiguous, "time-like span with non-time-like w");
      const double ell = std::sqrt(std::abs(defect));
      gamma = hyperbolic_rotation(dim, axis, w_t / ell, -w_p / ell).matrix();
      kind = CanonicalKind::T;
      break;
    }
  }
  return {LorentzMap(Eigen::MatrixXd(gamma * beta * alpha)), CanonicalForm{kind, p}};
}

// -- Lorentz maps -------------------------------------------------------------

LorentzReport validate_lorentz(const Eigen::MatrixXd& m) {
  LorentzReport r{};
  if (m.rows() != m.cols() || m.rows() < 3) {
    r.residual = std::numeric_limits<double>::infinity();
    r.time_entry = 0.0;
    r.positive = false;
    return r;
  }
  const Eigen::MatrixXd j = lorentz_metric(m.rows());
  r.residual = max_abs(m.transpose() * j * m - j);
  r.time_entry = m(m.rows() - 1, m.cols() - 1);
  r.positive = r.time_entry > 0.0;
  return r;
}

LorentzMap::LorentzMap(Eigen::MatrixXd matrix, double tolerance) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 3) {
    throw Error(ErrorCode::DimensionMismatch, "Lorentz maps are square of size at least 3");
  }
  if (!matrix_.allFinite()) throw Error(ErrorCode::NotLorentz, "non-finite matrix entry");
  const LorentzReport r = validate_lorentz(matrix_);
  const double scale = std::max(1.0, max_abs(matrix_));
  if (r.residual > tolerance * scale * scale) {
    std::ostringstream msg;
    msg << "|G^T J G - J| = " << r.residual << " exceeds tolerance";
    throw Error(ErrorCode::NotLorentz, msg.str());
  }
}

LorentzMap LorentzMap::identity(Index dim) {
  return LorentzMap(Eigen::MatrixXd(Eigen::MatrixXd::Identity(dim, dim)), Unchecked{});
}

MinkVector LorentzMap::operator()(const MinkVector& v) const {
  require_same_dim(dim(), v.dim());
  return MinkVector(Eigen::VectorXd(matrix_ * v.coords()));
}

LorentzMap LorentzMap::operator*(const LorentzMap& other) const {
  require_same_dim(dim(), other.dim());
  return LorentzMap(Eigen::MatrixXd(matrix_ * other.matrix_), Unchecked{});
}

LorentzMap LorentzMap::operator-() const { return LorentzMap(Eigen::MatrixXd(-matrix_), Unchecked{}); }

LorentzMap LorentzMap::inverse() const {
  const Eigen::MatrixXd j = lorentz_metric(dim());
  return LorentzMap(Eigen::MatrixXd(j * matrix_.transpose() * j), Unchecked{});
}

LorentzMap hyperbolic_rotation(Index dim, Index axis, double a, double b) {
  if (axis < 0 || axis >= dim - 1) throw Error(ErrorCode::InvalidArgument, "axis must be spatial");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim);
  m(axis, axis) = a;
  m(dim - 1, dim - 1) = a;
  m(axis, dim - 1) = b;
  m(dim - 1, axis) = b;
  return LorentzMap(std::move(m));
}

LorentzMap spatial_rotation(Index dim, Index i, Index j, double angle) {
  if (i == j || i < 0 || j < 0 || i >= dim - 1 || j >= dim - 1) {
    throw Error(ErrorCode::InvalidArgument, "rotation plane must be two distinct spatial axes");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  m(i, i) = c;
  m(j, j) = c;
  m(i, j) = -s;
  m(j, i) = s;
  return LorentzMap(std::move(m));
}

LorentzMap time_reflection(Index dim) { return LorentzMap(lorentz_metric(dim)); }

double hyperbolic_distance(const MinkVector& x, const MinkVector& y) {
  require_same_dim(x.dim(), y.dim());
  for (const MinkVector* v : {&x, &y}) {
    const double n2 = v->coords().squaredNorm();
    if (std::abs(lorentz_norm2(*v) + 1.0) > 4.0 * tol::zero * (1.0 + n2) || v->time() <= 0.0) {
      throw Error(ErrorCode::NotOnSheet, "vector is not on the upper hyperboloid sheet");
    }
  }
  return std::acosh(std::max(1.0, -lorentz_inner(x, y)));
}

Eigen::MatrixXd lorentz_polish(const Eigen::MatrixXd& m) {
  const Index dim = m.rows();
  const Eigen::MatrixXd j = lorentz_metric(dim);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd x = m;
  double res = max_abs(x.transpose() * j * x - j);
  for (int it = 0; it < 6 && res > 0.0; ++it) {
    const Eigen::MatrixXd s = j * x.transpose() * j * x;
    const Eigen::MatrixXd next = 0.5 * x * (3.0 * id - s);
    const double r = max_abs(next.transpose() * j * next - j);
    if (!(r < res)) break;
    x = next;
    res = r;
  }
  return x;
}

LorentzMap random_lorentz(std::uint64_t seed, Index dim) {
  if (dim < 3) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 3");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<Index> axis(0, dim - 2);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> rapidity(-2.0, 2.0);

  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim);
  for (Index step = 0; step < 2 * dim; ++step) {
    Eigen::MatrixXd gen;
    if (coin(rng) == 0 && dim - 1 >= 2) {
      const Index i = axis(rng);
      Index j = axis(rng);
      while (j == i) j = axis(rng);
      gen = spatial_rotation(dim, i, j, angle(rng)).matrix();
    } else {
      const Index i = axis(rng);
      const double t = rapidity(rng);
      gen = hyperbolic_rotation(dim, i, std::cosh(t), std::sinh(t)).matrix();
    }
    g = gen * g;
  }
  return LorentzMap(lorentz_polish(g));
}

}  // namespace mobius
