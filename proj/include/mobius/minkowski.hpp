#pragma once

// Lorentz (indefinite) linear algebra on R^M with signature (M-1, 1).
// Coordinates are 0-based; the time-like coordinate is the last one, M-1.

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace mobius {

using Index = Eigen::Index;

class MinkVector {
 public:
  /// Throws InvalidArgument unless coords has at least 3 finite entries.
  explicit MinkVector(Eigen::VectorXd coords);
  MinkVector(std::initializer_list<double> coords);

  static MinkVector basis(Index dim, Index i);
  static MinkVector zero(Index dim);

  Index dim() const { return coords_.size(); }
  double operator[](Index i) const { return coords_[i]; }
  double time() const { return coords_[coords_.size() - 1]; }
  const Eigen::VectorXd& coords() const { return coords_; }
  /// First M-1 coordinates.
  Eigen::VectorXd spatial() const { return coords_.head(coords_.size() - 1); }
  double euclidean_norm() const { return coords_.norm(); }

  MinkVector operator-() const { return MinkVector(Eigen::VectorXd(-coords_)); }
  MinkVector operator+(const MinkVector& other) const;
  MinkVector operator-(const MinkVector& other) const;
  MinkVector operator*(double s) const;
  friend MinkVector operator*(double s, const MinkVector& v) { return v * s; }

 private:
  Eigen::VectorXd coords_;
};

enum class CausalClass { SpaceLike, TimeLike, LightLike, Zero };
enum class SubspaceKind { SpaceLike, TimeLike, LightLike };

std::string_view to_string(CausalClass c);
std::string_view to_string(SubspaceKind k);

struct SubspaceClass {
  SubspaceKind kind;
  Index dim;

  bool operator==(const SubspaceClass&) const = default;
};

/// Diagonal metric diag(1, ..., 1, -1).
Eigen::MatrixXd lorentz_metric(Index dim);

double lorentz_inner(const MinkVector& u, const MinkVector& v);
inline double lorentz_norm2(const MinkVector& v) { return lorentz_inner(v, v); }

CausalClass causal_class(const MinkVector& v);

/// Columns of the result are the given vectors.
Eigen::MatrixXd pack_columns(std::span<const MinkVector> vs);
std::vector<MinkVector> unpack_columns(const Eigen::MatrixXd& cols);

/// Exactly symmetric table of pairwise Lorentz products.
Eigen::MatrixXd gram_matrix(std::span<const MinkVector> vs);

/// Rank/signature analysis of span(vs).
struct SpanAnalysis {
  SubspaceClass cls;
  /// Euclidean-orthonormal basis of the span, one column per dimension.
  Eigen::MatrixXd basis;
  /// Indices of a maximal linearly independent subset of the inputs.
  std::vector<Index> pivots;
  /// Singular values of the column-normalised coordinate matrix, descending.
  Eigen::VectorXd singular_values;
  /// Eigenvalues of the restricted Gram on `basis`, ascending.
  Eigen::VectorXd gram_eigenvalues;
};

/// Throws AllZero or RankAmbiguous.
SpanAnalysis analyze_span(std::span<const MinkVector> vs);
SubspaceClass classify_span(std::span<const MinkVector> vs);

/// Basis of {y : <x, y> = 0 for all x in span(vs)}, Euclidean-orthonormal.
std::vector<MinkVector> lorentz_complement(std::span<const MinkVector> vs);

class LorentzMap;

enum class CanonicalKind { T, S, L };
std::string_view to_string(CanonicalKind k);

struct CanonicalForm {
  CanonicalKind kind;
  Index dim;

  bool operator==(const CanonicalForm&) const = default;
};

/// True iff v lies (to `tolerance` relative to |v|) in the canonical subspace.
bool in_canonical_subspace(const MinkVector& v, const CanonicalForm& form, double tolerance);

/// Returns phi with phi(span(vs)) equal to T_p, S_p or L_p.
/// Throws FullSpace when span(vs) = R^M.
std::pair<LorentzMap, CanonicalForm> canonicalize_subspace(std::span<const MinkVector> vs);

/// Lorentz-orthonormal basis of a non-degenerate span: <w_i, w_j> = +-delta_ij,
/// negative vectors first. Throws DegenerateSpan for light-like spans.
std::vector<MinkVector> lorentz_orthonormalize(std::span<const MinkVector> vs);

/// Lorentz-orthonormal basis of the complement of a non-degenerate span,
/// negative vectors first. Throws DegenerateSpan for light-like spans.
std::vector<MinkVector> complete_to_lorentz_basis(std::span<const MinkVector> vs);

struct LorentzReport {
  /// max |G^T J G - J|
  double residual;
  double time_entry;
  bool positive;
};

LorentzReport validate_lorentz(const Eigen::MatrixXd& m);

/// A matrix preserving the Lorentz form. Positive iff entry (M-1, M-1) > 0.
class LorentzMap {
 public:
  /// Throws NotLorentz if the residual of G^T J G - J exceeds
  /// tolerance * max(1, max|G|^2).
  explicit LorentzMap(Eigen::MatrixXd matrix, double tolerance = 1e-9);

  static LorentzMap identity(Index dim);

  Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  bool positive() const { return matrix_(dim() - 1, dim() - 1) > 0.0; }
  LorentzReport report() const { return validate_lorentz(matrix_); }

  MinkVector operator()(const MinkVector& v) const;
  LorentzMap operator*(const LorentzMap& other) const;
  LorentzMap operator-() const;
  /// J G^T J
  LorentzMap inverse() const;

 private:
  struct Unchecked {};
  LorentzMap(Eigen::MatrixXd matrix, Unchecked) : matrix_(std::move(matrix)) {}

  Eigen::MatrixXd matrix_;
};

/// Nearby Lorentz matrix by Newton-Schulz steps X <- X (3I - J X^T J X) / 2,
/// stopping once the residual stops shrinking. Input must be close to Lorentz.
Eigen::MatrixXd lorentz_polish(const Eigen::MatrixXd& m);

/// The matrix A[a, b]: identity except entries (axis, axis) = (M-1, M-1) = a
/// and (axis, M-1) = (M-1, axis) = b. Requires a^2 - b^2 = 1.
LorentzMap hyperbolic_rotation(Index dim, Index axis, double a, double b);

/// Euclidean rotation by `angle` in the spatial coordinate plane (i, j).
LorentzMap spatial_rotation(Index dim, Index i, Index j, double angle);

/// Time reflection diag(1, ..., 1, -1).
LorentzMap time_reflection(Index dim);

/// Distance on the sheet {<x,x> = -1, x_M > 0}. Throws NotOnSheet.
double hyperbolic_distance(const MinkVector& x, const MinkVector& y);

/// Deterministic positive Lorentz map: a product of 2*dim random spatial
/// rotations and hyperbolic rotations with rapidity in [-2, 2].
LorentzMap random_lorentz(std::uint64_t seed, Index dim);

}  // namespace mobius
