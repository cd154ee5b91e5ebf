#include "mobius/error.hpp"
#include "mobius/inversive.hpp"
#include "mobius/minkowski.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mobius;

namespace {

MinkVector e(Index dim, Index i) { return MinkVector::basis(dim, i); }

std::vector<MinkVector> square_lifts() {
  return {lift_ball(OrientedBall::half_space(Eigen::Vector2d(1, 0), 0)),
          lift_ball(OrientedBall::half_space(Eigen::Vector2d(-1, 0), -1)),
          lift_ball(OrientedBall::half_space(Eigen::Vector2d(0, 1), 0)),
          lift_ball(OrientedBall::half_space(Eigen::Vector2d(0, -1), -1))};
}

void expect_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), code) << err.what();
  }
}

}  // namespace

TEST(MinkVector, RejectsShortOrNonFinite) {
  expect_code(ErrorCode::InvalidArgument, [] { MinkVector({1.0, 2.0}); });
  expect_code(ErrorCode::InvalidArgument, [] { MinkVector({1.0, std::nan(""), 0.0}); });
}

TEST(LorentzInner, BasisVectors) {
  const Index m = 5;
  EXPECT_EQ(lorentz_inner(e(m, 0), e(m, 0)), 1.0);
  EXPECT_EQ(lorentz_inner(e(m, m - 1), e(m, m - 1)), -1.0);
  const MinkVector l = e(m, 0) + e(m, m - 1);
  EXPECT_EQ(lorentz_norm2(l), 0.0);
}

TEST(CausalClass, Basic) {
  EXPECT_EQ(causal_class(e(4, 3)), CausalClass::TimeLike);
  EXPECT_EQ(causal_class(e(4, 0)), CausalClass::SpaceLike);
  EXPECT_EQ(causal_class(e(4, 0) + e(4, 3)), CausalClass::LightLike);
  EXPECT_EQ(causal_class(MinkVector::zero(4)), CausalClass::Zero);
}

TEST(GramMatrix, SmallCases) {
  const std::vector<MinkVector> a{e(3, 0), e(3, 2)};
  const Eigen::MatrixXd g = gram_matrix(a);
  EXPECT_EQ(g(0, 0), 1.0);
  EXPECT_EQ(g(1, 1), -1.0);
  EXPECT_EQ(g(0, 1), 0.0);
  const std::vector<MinkVector> b{e(3, 0) + e(3, 2), e(3, 0) - e(3, 2)};
  const Eigen::MatrixXd h = gram_matrix(b);
  EXPECT_EQ(h(0, 0), 0.0);
  EXPECT_EQ(h(0, 1), 2.0);
  EXPECT_EQ(h(1, 0), 2.0);
}

TEST(GramMatrix, SquareSides) {
  const Eigen::MatrixXd g = gram_matrix(square_lifts());
  const Eigen::Matrix4d want{{1, -1, 0, 0}, {-1, 1, 0, 0}, {0, 0, 1, -1}, {0, 0, -1, 1}};
  EXPECT_LE((g - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ClassifySpan, Examples) {
  EXPECT_EQ(classify_span(std::vector<MinkVector>{e(4, 0), e(4, 1)}), (SubspaceClass{SubspaceKind::SpaceLike, 2}));
  EXPECT_EQ(classify_span(std::vector<MinkVector>{e(4, 0), e(4, 3)}), (SubspaceClass{SubspaceKind::TimeLike, 2}));
}

TEST(ClassifySpan, SquareSidesAreLightLike) {
  const auto lifts = square_lifts();
  EXPECT_EQ(classify_span(lifts), (SubspaceClass{SubspaceKind::LightLike, 3}));
  EXPECT_EQ(oracle::rank(pack_columns(lifts)), 3);
  // restricted Gram on an explicit basis of {(a, b, l, l)} has a zero eigenvalue
  Eigen::MatrixXd basis(4, 3);
  basis << 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1;
  const Eigen::MatrixXd h = basis.transpose() * lorentz_metric(4) * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  EXPECT_NEAR(es.eigenvalues().cwiseAbs().minCoeff(), 0.0, 1e-15);
}

TEST(ClassifySpan, AgreesWithBruteForceRank) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = 3 + trial % 4;
    const int k = 1 + trial % static_cast<int>(m);
    Eigen::MatrixXd gen = Eigen::MatrixXd::Random(m, k);
    std::vector<MinkVector> vs;
    for (int j = 0; j < k + 2; ++j) {
      Eigen::VectorXd c = gen * oracle::random_point(rng, k, 1.0);
      vs.emplace_back(c);
    }
    EXPECT_EQ(classify_span(vs).dim, oracle::rank(pack_columns(vs)));
  }
}

TEST(ClassifySpan, Errors) {
  expect_code(ErrorCode::AllZero, [] { classify_span(std::vector<MinkVector>{MinkVector::zero(3)}); });
  const MinkVector a{1.0, 0.0, 0.0};
  const MinkVector b{1.0, 3e-9, 0.0};
  expect_code(ErrorCode::RankAmbiguous, [&] { classify_span(std::vector<MinkVector>{a, b}); });
}

TEST(LorentzComplement, Examples) {
  auto c1 = lorentz_complement(std::vector<MinkVector>{e(3, 0)});
  ASSERT_EQ(c1.size(), 2u);
  for (const auto& v : c1) EXPECT_NEAR(v[0], 0.0, 1e-15);

  const MinkVector l = e(4, 0) + e(4, 3);
  const auto c2 = lorentz_complement(std::vector<MinkVector>{l});
  ASSERT_EQ(c2.size(), 3u);
  // l itself lies in its complement
  Eigen::MatrixXd basis = pack_columns(c2);
  const Eigen::VectorXd coeff = basis.colPivHouseholderQr().solve(l.coords());
  EXPECT_LE((basis * coeff - l.coords()).norm(), 1e-12);

  const auto rays = std::vector<MinkVector>{lift_point(ExtendedPoint::finite(Eigen::Vector2d::Zero())).vector(),
                                            lift_point(ExtendedPoint::infinity(2)).vector()};
  const auto c3 = lorentz_complement(rays);
  ASSERT_EQ(c3.size(), 2u);
  for (const auto& v : c3) {
    EXPECT_NEAR(v[2], 0.0, 1e-14);
    EXPECT_NEAR(v[3], 0.0, 1e-14);
  }
  EXPECT_EQ(classify_span(c3), (SubspaceClass{SubspaceKind::SpaceLike, 2}));
}

TEST(Canonicalize, SpaceLikeAndLightLikeLines) {
  const auto [phi, form] = canonicalize_subspace(std::vector<MinkVector>{e(4, 0)});
  EXPECT_EQ(form, (CanonicalForm{CanonicalKind::S, 1}));
  EXPECT_LE((phi.matrix().cwiseAbs() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);

  const auto [psi, lform] = canonicalize_subspace(std::vector<MinkVector>{e(4, 0) + e(4, 3)});
  EXPECT_EQ(lform, (CanonicalForm{CanonicalKind::L, 1}));
  EXPECT_TRUE(in_canonical_subspace(psi(e(4, 0) + e(4, 3)), lform, 1e-12));
}

TEST(Canonicalize, TimeLikeLine) {
  for (Index m : {3, 4, 6}) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    w[m - 2] = 3;
    w[m - 1] = 5;
    const MinkVector v(w);
    const auto [phi, form] = canonicalize_subspace(std::vector<MinkVector>{v});
    EXPECT_EQ(form, (CanonicalForm{CanonicalKind::T, 1}));
    const MinkVector img = phi(v);
    EXPECT_LE(img.spatial().norm(), 1e-12 * 5);
    EXPECT_NEAR(std::abs(img.time()), 4.0, 1e-12);
  }
}

TEST(Canonicalize, RandomSubspaces) {
  std::mt19937_64 rng(5);
  int seen[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    const Index m = 3 + trial % 4;
    const int k = 1 + trial % static_cast<int>(m - 1);
    std::vector<MinkVector> vs;
    const int mode = trial % 3;
    for (int j = 0; j < k; ++j) {
      Eigen::VectorXd c = oracle::random_point(rng, m, 1.0);
      if (mode == 0) c[m - 1] = 0.0;  // space-like spans
      vs.emplace_back(c);
    }
    if (mode == 2) {
      // force a light-like span: vectors orthogonal to a light ray l, l included
      Eigen::VectorXd l = Eigen::VectorXd::Zero(m);
      l.head(m - 1) = oracle::random_unit(rng, m - 1);
      l[m - 1] = 1.0;
      const MinkVector lv(l);
      std::vector<MinkVector> proj{lv};
      for (int j = 1; j < k; ++j) {
        Eigen::VectorXd c = oracle::random_point(rng, m, 1.0);
        // remove the component along a vector dual to l so that <c, l> = 0
        Eigen::VectorXd dual = l;
        dual.head(m - 1) *= -1.0;  // <dual, l> = -2
        const MinkVector cv(c);
        c += lorentz_inner(cv, lv) / 2.0 * dual;
        proj.emplace_back(c);
      }
      vs = proj;
    }
    const auto [phi, form] = canonicalize_subspace(vs);
    ++seen[static_cast<int>(form.kind)];
    EXPECT_EQ(form.dim, classify_span(vs).dim);
    EXPECT_TRUE(phi.positive());
    for (const auto& v : vs) EXPECT_TRUE(in_canonical_subspace(phi(v), form, 1e-9)) << "trial " << trial;
  }
  EXPECT_GT(seen[0], 0);
  EXPECT_GT(seen[1], 0);
  EXPECT_GT(seen[2], 0);
}

TEST(Canonicalize, FullSpaceRefused) {
  expect_code(ErrorCode::FullSpace,
              [] { canonicalize_subspace(std::vector<MinkVector>{e(3, 0), e(3, 1), e(3, 2)}); });
}

TEST(CompleteToLorentzBasis, Examples) {
  auto c = complete_to_lorentz_basis(std::vector<MinkVector>{e(3, 0)});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(lorentz_norm2(c[0]), -1.0, 1e-14);
  EXPECT_NEAR(lorentz_norm2(c[1]), 1.0, 1e-14);

  auto t = complete_to_lorentz_basis(std::vector<MinkVector>{e(5, 4)});
  ASSERT_EQ(t.size(), 4u);
  for (const auto& v : t) EXPECT_NEAR(lorentz_norm2(v), 1.0, 1e-14);

  const std::vector<MinkVector> circles{lift_ball(OrientedBall::sphere(Eigen::Vector2d::Zero(), 1.0)),
                                        lift_ball(OrientedBall::sphere(Eigen::Vector2d::Zero(), 2.0))};
  const auto s = complete_to_lorentz_basis(circles);
  ASSERT_EQ(s.size(), 2u);
  for (const auto& v : s) {
    EXPECT_NEAR(lorentz_norm2(v), 1.0, 1e-14);
    EXPECT_NEAR(v[2], 0.0, 1e-14);
    EXPECT_NEAR(v[3], 0.0, 1e-14);
  }
  EXPECT_NEAR(lorentz_inner(s[0], s[1]), 0.0, 1e-14);
  expect_code(ErrorCode::DegenerateSpan, [] { complete_to_lorentz_basis(std::vector<MinkVector>{e(3, 0) + e(3, 2)}); });
}

TEST(ValidateLorentz, Examples) {
  const auto id = validate_lorentz(Eigen::MatrixXd::Identity(4, 4));
  EXPECT_EQ(id.residual, 0.0);
  EXPECT_TRUE(id.positive);
  const auto tr = validate_lorentz(time_reflection(4).matrix());
  EXPECT_EQ(tr.residual, 0.0);
  EXPECT_FALSE(tr.positive);
  const auto boost = validate_lorentz(hyperbolic_rotation(4, 0, 1.25, 0.75).matrix());
  EXPECT_LE(boost.residual, 1e-15);
  EXPECT_TRUE(boost.positive);
}

TEST(LorentzMap, RejectsNonLorentz) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(0, 0) = 1.1;
  expect_code(ErrorCode::NotLorentz, [&] { LorentzMap g(m); });
  expect_code(ErrorCode::DimensionMismatch, [] { LorentzMap g(Eigen::MatrixXd::Identity(2, 2)); });
}

TEST(LorentzMap, InverseAndComposition) {
  const LorentzMap g = random_lorentz(3, 5);
  const LorentzMap h = g * g.inverse();
  EXPECT_LE((h.matrix() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_FALSE((-g).positive());
}

TEST(HyperbolicRotation, IsDilationOnTheBoundary) {
  // the boost in the (N+1, N+2) plane acts on R^N as x -> e^t x
  const double t = 0.7;
  const LorentzMap g = hyperbolic_rotation(4, 2, std::cosh(t), std::sinh(t));
  const Eigen::Vector2d p(0.3, -1.1);
  const ExtendedPoint img = apply_to_point(g, ExtendedPoint::finite(p));
  const double s = (img.coords() - std::exp(t) * p).norm() < (img.coords() - std::exp(-t) * p).norm() ? std::exp(t)
                                                                                                        : std::exp(-t);
  EXPECT_LE((img.coords() - s * p).norm(), 1e-12);
}

TEST(HyperbolicRotation, MovesOriginAlongTheAxis) {
  // N = 1: A[5/4, 3/4] in the (x, t) block sends 0 to tanh(t/2) = 1/3
  const LorentzMap g = hyperbolic_rotation(3, 0, 1.25, 0.75);
  const ExtendedPoint img = apply_to_point(g, ExtendedPoint::finite(Eigen::VectorXd::Zero(1)));
  EXPECT_NEAR(img.coords()[0], std::tanh(std::acosh(1.25) / 2), 1e-15);
  EXPECT_NEAR(img.coords()[0], 1.0 / 3.0, 1e-15);
}

TEST(HyperbolicDistance, Examples) {
  const MinkVector o = e(3, 2);
  EXPECT_EQ(hyperbolic_distance(o, o), 0.0);
  EXPECT_NEAR(hyperbolic_distance(o, MinkVector{0.0, std::sinh(1.0), std::cosh(1.0)}), 1.0, 1e-12);
  EXPECT_NEAR(hyperbolic_distance(o, ball_model_to_hyperboloid(Eigen::Vector2d(0.5, 0.0))), std::acosh(5.0 / 3.0),
              1e-12);
  expect_code(ErrorCode::NotOnSheet, [&] { hyperbolic_distance(o, e(3, 0)); });
}

TEST(RandomLorentz, DeterministicLorentzPositive) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index m = 3 + static_cast<Index>(seed % 4);
    const LorentzMap a = random_lorentz(seed, m);
    const LorentzMap b = random_lorentz(seed, m);
    EXPECT_EQ(a.matrix(), b.matrix());
    EXPECT_LE(a.report().residual, 1e-10);
    EXPECT_TRUE(a.positive());
    const MinkVector img = a(e(m, m - 1));
    EXPECT_LT(lorentz_norm2(img), 0.0);
    EXPECT_GT(img.time(), 0.0);
  }
}
