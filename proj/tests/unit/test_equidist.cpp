#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include "sgn/equidist.hpp"
#include "sgn/errors.hpp"

using namespace sgn;
namespace mp = boost::multiprecision;

namespace {

constexpr double kPi = std::numbers::pi;

GammaNet horizontal(const Surface& torus, double y) { return torus_line(torus, {0.0, y}, {1, 0}, 64); }

}  // namespace

TEST(Plateau, ProfileAndPeriodicWrap) {
  EXPECT_EQ(plateau(0.5, 0.3, 0.7, 0.1), 1.0);
  EXPECT_EQ(plateau(0.85, 0.3, 0.7, 0.1), 0.0);
  EXPECT_NEAR(plateau(0.75, 0.3, 0.7, 0.1), 0.5, 1e-15);
  EXPECT_NEAR(plateau(0.95, 0.0, 0.2, 0.1, 1.0), plateau(-0.05, 0.0, 0.2, 0.1), 1e-15);
}

TEST(Partition, TorusGridAndUnity) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const BumpSystem bs = build_partition(g, 0.3, 4);
  EXPECT_EQ(bs.size(), 25);
  EXPECT_LE(bs.max_cell_diameter(), 0.3);
  EXPECT_LE(bs.max_enlarged_radius(), 0.3);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const SurfacePoint p = torus->from_param({u(rng), u(rng)});
    const Eigen::VectorXd psi = bs.psi_all(p);
    ASSERT_NEAR(psi.sum(), 1.0, 1e-12);
    ASSERT_GE(psi.minCoeff(), 0.0);
    ASSERT_GT(psi[bs.cell_of(p)], 0.0);
  }
}

TEST(Partition, SphereCellsRespectBallBound) {
  auto sphere = make_round_sphere();
  const Metric g(sphere);
  const BumpSystem bs = build_partition(g, 1.0, 4);
  EXPECT_GE(bs.size(), 4);
  EXPECT_LT(bs.max_cell_diameter(), 2.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const SurfacePoint p = sphere->from_param({kPi * u(rng), 2 * kPi * u(rng)});
    ASSERT_NEAR(bs.psi_all(p).sum(), 1.0, 1e-12);
  }
}

TEST(Partition, RejectsScaleAboveInjectivity) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  EXPECT_THROW(build_partition(g, 10.0, 4), DomainError);
}

TEST(Discrepancy, FineHorizontalFamilyIsEquidistributed) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const BumpSystem bs = build_partition(g, 0.3, 16);
  WeightedNetFamily fam;
  const int n = 40;
  for (int i = 0; i < n; ++i) {
    fam.nets.push_back(horizontal(*torus, (i + 0.5) / n));
    fam.alpha.push_back(1.0 / n);
  }
  const DiscrepancyReport rep = discrepancy(fam, g, bs);
  EXPECT_LE(rep.max, 0.01);
  EXPECT_NEAR(rep.threshold, 0.3 / bs.size(), 1e-15);
}

TEST(Discrepancy, SingleCircleMissesMostBumps) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const BumpSystem bs = build_partition(g, 0.3, 4);
  WeightedNetFamily fam;
  fam.nets = {horizontal(*torus, 0.1)};
  fam.alpha = {1.0};
  const DiscrepancyReport rep = discrepancy(fam, g, bs);
  EXPECT_FALSE(rep.pass);
  // Bumps away from the circle see only their volume share.
  double far = 0.0;
  for (int k = 0; k < bs.size(); ++k) {
    const SurfacePoint c = bs.cells()[k].centre;
    if (std::abs(torus->param(c)[1] - 0.6) < 0.15) far = std::max(far, rep.D[k]);
  }
  EXPECT_GT(far, 0.01);
}

TEST(Discrepancy, MalformedWeights) {
  auto torus = make_flat_torus();
  WeightedNetFamily fam;
  fam.nets = {horizontal(*torus, 0.1)};
  fam.alpha = {0.5, 0.5};
  EXPECT_THROW(fam.validate(), StructuralError);
}

TEST(Discrepancy, BoundHoldsForSmoothTestFunction) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const BumpSystem bs = build_partition(g, 0.3, 4);
  WeightedNetFamily fam;
  fam.nets = {horizontal(*torus, 0.1), torus_line(*torus, {0.2, 0.0}, {0, 1}, 64)};
  fam.alpha = {0.5, 0.5};
  const ScalarField f = [&](const SurfacePoint& p) {
    const Vec2 u = torus->param(p);
    return std::sin(2 * kPi * u[0]) * std::cos(2 * kPi * u[1]);
  };
  const BoundCheck bc = discrepancy_bound_check(fam, g, bs, f, 1.0, 2 * kPi * std::sqrt(2.0));
  EXPECT_TRUE(bc.holds);
  EXPECT_LE(bc.lhs, bc.rhs);
  // avg_M f = 0; the horizontal circle averages sin(2 pi x) to zero and the
  // vertical one averages cos(2 pi y) to zero.
  EXPECT_NEAR(bc.lhs, 0.0, 1e-10);
}

TEST(MinNorm, SegmentAndTriangle) {
  Eigen::MatrixXd seg(2, 2);
  seg << 1, 1, 1, -1;
  const MinNormPoint a = min_norm_point(seg);
  EXPECT_NEAR(a.point[0], 1.0, 1e-12);
  EXPECT_NEAR(a.point[1], 0.0, 1e-12);

  Eigen::MatrixXd tri(2, 3);
  tri << 1, 0, -1, 0, 1, -1;
  const MinNormPoint b = min_norm_point(tri);
  EXPECT_LE(b.point.norm(), 1e-10);
  ASSERT_EQ(b.weights.size(), 3u);
  for (double w : b.weights) EXPECT_NEAR(w, 1.0 / 3.0, 1e-10);
}

TEST(GradientSearch, ZigzagFindsHullConstantFails) {
  for (int N = 1; N <= 3; ++N) {
    std::vector<GradientSample> zig;
    std::vector<GradientSample> flat;
    for (int i = 0; i < 40; ++i) {
      const Eigen::VectorXd x = Eigen::VectorXd::Constant(N, 0.01 * i);
      Eigen::VectorXd gr = Eigen::VectorXd::Zero(N);
      gr[i % N] = (i / N) % 2 ? 1.0 : -1.0;
      zig.push_back({x, gr});
      flat.push_back({x, Eigen::VectorXd::Ones(N)});
    }
    const ConvexSearchResult r = convex_gradient_search(zig, 0.05);
    ASSERT_TRUE(r.found) << "N=" << N;
    EXPECT_EQ(r.indices.size(), static_cast<std::size_t>(N + 1));
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(N);
    double wsum = 0.0;
    for (std::size_t j = 0; j < r.indices.size(); ++j) {
      sum += r.weights[j] * zig[r.indices[j]].gradient;
      wsum += r.weights[j];
    }
    EXPECT_NEAR(wsum, 1.0, 1e-12);
    EXPECT_LT(sum.norm(), 0.05);
    EXPECT_FALSE(convex_gradient_search(flat, 0.05).found);
  }
}

TEST(GradientSearch, TriangleBarycentre) {
  const std::vector<GradientSample> s{
      {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(2.0, 0.0)},
      {Eigen::Vector2d(0.01, 0.0), Eigen::Vector2d(0.0, 3.0)},
      {Eigen::Vector2d(0.0, 0.01), Eigen::Vector2d(-1.0, -1.0)},
  };
  const ConvexSearchResult r = convex_gradient_search(s, 1e-8);
  ASSERT_TRUE(r.found);
  double w[3] = {0, 0, 0};
  for (std::size_t j = 0; j < r.indices.size(); ++j) w[r.indices[j]] = r.weights[j];
  // Barycentric solve of a (2,0) + b (0,3) + c (-1,-1) = 0, a + b + c = 1.
  Eigen::Matrix3d A;
  A << 2, 0, -1, 0, 3, -1, 1, 1, 1;
  const Eigen::Vector3d bary = A.fullPivLu().solve(Eigen::Vector3d(0, 0, 1));
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(w[j], bary[j], 1e-10);
}

TEST(Rationalize, SmallExamples) {
  const RationalWeights a = rationalize_weights({1.0}, {2.0}, 1);
  EXPECT_EQ(a.d, 2);
  EXPECT_EQ(a.c[0], 1);

  const RationalWeights b = rationalize_weights({0.5, 0.5}, {1.0, 1.0}, 10);
  EXPECT_EQ(b.d, 2);
  EXPECT_EQ(b.c, (std::vector<std::int64_t>{1, 1}));

  const RationalWeights c = rationalize_weights({1.0}, {std::sqrt(2.0)}, 50);
  EXPECT_TRUE(verify_rational_weights({1.0}, {std::sqrt(2.0)}, 50, c));
  EXPECT_LT(std::abs(1.0 / std::sqrt(2.0) - double(c.c[0]) / double(c.d)), 1.0 / (50 * std::sqrt(2.0)));

  EXPECT_THROW(rationalize_weights({0.3, 0.7}, {1.0, std::sqrt(2.0)}, 100, 3), ApproximationFailure);
}

TEST(Rationalize, RandomInstancesVerifiedExactly) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> J_dist(1, 5);
  std::uniform_int_distribution<int> m_dist(1, 100);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_real_distribution<double> len(0.5, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int J = J_dist(rng);
    const int m = m_dist(rng);
    std::vector<double> alpha(J);
    std::vector<double> L(J);
    double s = 0.0;
    for (int j = 0; j < J; ++j) {
      alpha[j] = u(rng);
      s += alpha[j];
      L[j] = len(rng);
    }
    for (auto& a : alpha) a /= s;
    const RationalWeights w = rationalize_weights(alpha, L, m);
    // Independent exact check: |a d - c L| m J < d in rationals.
    for (int j = 0; j < J; ++j) {
      const mp::cpp_rational lhs = mp::abs(mp::cpp_rational(alpha[j]) * w.d - mp::cpp_rational(w.c[j]) * mp::cpp_rational(L[j])) *
                                   m * J;
      ASSERT_LT(lhs, mp::cpp_rational(w.d)) << "trial " << trial;
    }
  }
}

TEST(Merge, SingleBlock) {
  const MergedSequence s = merge_sequences({{1, {1.0, 2.0}, {2, 1}}});
  ASSERT_EQ(s.repeats.size(), 1u);
  EXPECT_EQ(s.repeats[0], 1);
  EXPECT_EQ(s.size(), 3);
  const auto items = s.expand(10);
  ASSERT_EQ(items.size(), 3u);
  EXPECT_EQ(items[0], std::make_pair(0, 0));
  EXPECT_EQ(items[1], std::make_pair(0, 0));
  EXPECT_EQ(items[2], std::make_pair(0, 1));
}

TEST(Merge, SecondBlockDominates) {
  // Block 1 emits length 3; block 2 (T = 1) needs R with R >= 2 * 3.
  const MergedSequence s = merge_sequences({{1, {1.0, 2.0}, {1, 1}}, {2, {1.0}, {1}}});
  EXPECT_EQ(s.repeats[1], 6);
  EXPECT_EQ(s.size(), 8);
  EXPECT_EQ(s.index_at(1), std::make_pair(0, 1));
  EXPECT_EQ(s.index_at(2), std::make_pair(1, 0));
  EXPECT_EQ(s.index_at(7), std::make_pair(1, 0));
  EXPECT_THROW(merge_sequences({{1, {}, {}}}), StructuralError);
}

TEST(Merge, EnvelopeForSyntheticRatios) {
  const double alpha = 0.37;
  for (double D : {0.1, 0.5, 2.0}) {
    std::vector<MergeBlock> blocks;
    std::vector<std::vector<double>> integrals;
    for (int m = 1; m <= 20; ++m) {
      blocks.push_back({m, {1.0, 0.5 + 0.1 * m}, {1, 2}});
      const double r = alpha + D / m;
      integrals.push_back({r * 1.0, r * (0.5 + 0.1 * m)});
    }
    const MergedSequence s = merge_sequences(blocks);
    const auto ratios = merged_block_ratios(s, integrals);
    for (int M = 1; M <= 20; ++M) EXPECT_LE(std::abs(ratios[M - 1] - alpha), 2 * D / M + 1e-12) << "D=" << D << " M=" << M;
  }
}

TEST(RunningRatio, ConstantModeAndBump) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  std::vector<GammaNet> seq;
  for (int k = 1; k <= 12; ++k) seq.push_back(torus_line(*torus, {0.0, 0.0}, {double(k), 1.0}, std::max(64, 8 * k)));
  for (double r : running_ratio(seq, [](const SurfacePoint&) { return 3.5; }, g)) EXPECT_NEAR(r, 3.5, 1e-12);

  const ScalarField mode = [&](const SurfacePoint& p) {
    const Vec2 u = torus->param(p);
    return std::sin(2 * kPi * u[0]) * std::sin(2 * kPi * u[1]);
  };
  for (int k = 1; k <= 12; ++k) {
    // Independent closed form: x = k s, y = s on [0, 1], dL = sqrt(k^2 + 1) ds;
    // int sin(2 pi k s) sin(2 pi s) ds is 1/2 for k = 1 and 0 otherwise.
    const double expect = (k == 1 ? 0.5 : 0.0) * std::sqrt(k * k + 1.0);
    EXPECT_NEAR(torus_mode_line_integral(k), expect, 1e-14);
    EXPECT_NEAR(integrate(seq[k - 1], mode, g), expect, 1e-10);
  }
}
