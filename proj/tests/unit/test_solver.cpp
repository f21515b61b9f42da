#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sgn/catalog.hpp"
#include "sgn/certificate.hpp"
#include "sgn/errors.hpp"
#include "sgn/solver.hpp"
#include "sgn/spectrum.hpp"

using namespace sgn;

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 rot(const Vec2& v, double a) { return {std::cos(a) * v[0] - std::sin(a) * v[1], std::sin(a) * v[0] + std::cos(a) * v[1]}; }

// Theta net on the flat torus whose third edge leaves v0 along a direction
// rotated by `angle` before bending back onto the straight edge.
GammaNet kinked_theta(const Surface& torus, double angle) {
  GammaNet net = torus_theta(torus, 32);
  if (angle == 0.0) return net;
  auto& line = net.curves()[2];
  const Vec2 d = line[1].x - line[0].x;
  line[1].x = line[0].x + rot(d, angle);
  return net;
}

double angle_deg(const GammaNet& net, const Metric& g, EdgeEnd a, EdgeEnd b) {
  return std::acos(std::clamp(f2_value(net, g, a, b), -1.0, 1.0)) * 180.0 / kPi;
}

}  // namespace

TEST(Stationarity, StraightTorusGeodesic) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const StationarityReport r = stationarity_residual(torus_line(*torus, {0.2, 0.1}, {2, 1}, 40), g);
  EXPECT_LE(r.edge_residual, 1e-12);
  EXPECT_LE(r.vertex_residual, 1e-12);
  EXPECT_LE(r.total_first_variation_norm, 1e-12);
}

TEST(Stationarity, TripodBalanceAndRotatedLeg) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  EXPECT_LE(stationarity_residual(kinked_theta(*torus, 0.0), g).vertex_residual, 1e-12);
  // Planar sum of three unit vectors at 120 degrees with one turned by 10 degrees.
  const double a = 10.0 * kPi / 180.0;
  const double expect = std::hypot(std::cos(a) - 1.0, std::sin(a));
  EXPECT_NEAR(stationarity_residual(kinked_theta(*torus, a), g).vertex_residual, expect, 1e-6);
}

TEST(Stationarity, ZeroLengthEdgeThrows) {
  auto torus = make_flat_torus();
  WeightedMultigraph gr(1);
  gr.add_edge(0, 0);
  const SurfacePoint p{0, {0.5, 0.5}};
  EXPECT_THROW(stationarity_residual(GammaNet(gr, {p}, {Polyline{p, p}}), Metric(torus)), DegenerateNet);
}

TEST(Solver, TorusCircleFromPerturbedStart) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const GammaNet init =
      param_loop(*torus, [](double t) { return Vec2(t, 0.4 + 0.03 * std::sin(2 * kPi * t) + 0.01 * std::cos(6 * kPi * t)); }, 48);
  const SolveResult r = solve_stationary(init, g);
  EXPECT_EQ(r.status, SolverStatus::Converged);
  EXPECT_NEAR(r.report.length, 1.0, 1e-7);
  EXPECT_TRUE(r.monotone);
}

TEST(Solver, RejectsBadGraphs) {
  auto torus = make_flat_torus();
  WeightedMultigraph gr(2);
  gr.add_edge(0, 1);
  const Polyline line = sample_edge(*torus, [](double s) { return SurfacePoint{0, {0.1 + 0.3 * s, 0.2}}; }, 8);
  const GammaNet seg(gr, {line.front(), line.back()}, {line});
  EXPECT_THROW(solve_stationary(seg, Metric(torus)), PreconditionError);
}

TEST(Solver, ThetaJunctionsAreBalanced) {
  auto torus = make_flat_torus();
  const Metric g = Metric(torus).with_conformal(
      [](const SurfacePoint& p) { return 0.1 * std::cos(2 * kPi * p.x[1]) + 0.05 * std::sin(2 * kPi * p.x[0]); });
  SolverOptions o;
  o.tolerance = 1e-9;
  o.mode = SolverMode::Critical;
  o.detect_degenerate_family = false;
  const SolveResult r = solve_stationary(torus_theta(*torus, 32), g, o);
  ASSERT_EQ(r.status, SolverStatus::Converged);
  for (int v = 0; v < 2; ++v) {
    const auto inc = r.net.graph().incidences(v);
    ASSERT_EQ(inc.size(), 3u);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        EXPECT_NEAR(angle_deg(r.net, g, {inc[a][0], inc[a][1]}, {inc[b][0], inc[b][1]}), 120.0, 0.1);
  }
}

TEST(Spectrum, TorusAndSphereGeodesicsAreDegenerate) {
  auto torus = make_flat_torus();
  EXPECT_FALSE(is_nondegenerate(torus_line(*torus, {0.0, 0.3}, {1, 0}, 32), Metric(torus)));
  auto sphere = make_round_sphere();
  EXPECT_FALSE(is_nondegenerate(parallel_loop(*sphere, kPi / 2, 64), Metric(sphere)));
}

TEST(Spectrum, DumbbellNeckIsStableAndNondegenerate) {
  auto db = make_dumbbell();
  const auto& prof = dynamic_cast<const DumbbellProfile&>(db->profile());
  const Metric g(db);
  const GammaNet neck = parallel_loop(*db, prof.neck_position(), 64);
  EXPECT_TRUE(is_nondegenerate(neck, g));
  EXPECT_EQ(morse_index(neck, g), 0);
  // Independent sweep of translated parallels: the neck is a strict local
  // minimum of length, consistent with a positive translation eigenvalue.
  const double l0 = length(neck, g);
  for (double ds : {-0.05, -0.01, 0.01, 0.05})
    EXPECT_GT(length(parallel_loop(*db, prof.neck_position() + ds, 64), g), l0);
}

TEST(Spectrum, RequiresStationarity) {
  auto torus = make_flat_torus();
  const GammaNet wiggly =
      param_loop(*torus, [](double t) { return Vec2(t, 0.4 + 0.05 * std::sin(2 * kPi * t)); }, 32);
  EXPECT_THROW(second_variation_spectrum(wiggly, Metric(torus), 3), PreconditionError);
}

TEST(Certificate, EmbeddedTorusCircle) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const EmbeddednessCertificate c = embeddedness_certificate(torus_line(*torus, {0.0, 0.5}, {1, 0}, 32), g, 10);
  EXPECT_NEAR(c.F1, 1.0, 1e-12);
  EXPECT_TRUE(c.F2_values.empty());
  ASSERT_EQ(c.dE_min.size(), 1u);
  EXPECT_GE(c.dE_min[0], 0.1);
  EXPECT_TRUE(c.edge_injective_ok);
  EXPECT_TRUE(c.tangents_ok);
}

TEST(Certificate, TripodF2IsMinusHalf) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const EmbeddednessCertificate c = embeddedness_certificate(torus_theta(*torus, 32), g, 10);
  ASSERT_EQ(c.F2_values.size(), 6u);
  for (const auto& [k, v] : c.F2_values) EXPECT_NEAR(v, -0.5, 1e-9);
  EXPECT_TRUE(c.tangents_ok);
}

TEST(Certificate, DoubledBackEdgeFailsTangentCondition) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  WeightedMultigraph gr(2);
  std::vector<Polyline> curves;
  const Vec2 a(0.2, 0.2);
  for (int i = 0; i < 3; ++i) {
    gr.add_edge(0, 1);
    // Edges 0 and 1 coincide.
    const Vec2 d = i < 2 ? Vec2(0.3, 0.0) : Vec2(-0.7, 0.0);
    curves.push_back(sample_edge(*torus, [&](double s) { return SurfacePoint{0, a + s * d}; }, 8));
  }
  const GammaNet net(gr, {SurfacePoint{0, a}, SurfacePoint{0, a + Vec2(0.3, 0.0)}}, curves);
  EXPECT_NEAR(f2_value(net, g, {0, 0}, {1, 0}), 1.0, 1e-12);
  EXPECT_FALSE(embeddedness_certificate(net, g, 10).tangents_ok);
}

namespace {

// Two loops through a common vertex at (0, 0.5): a horizontal circle and a
// second loop given by its y-offset along the way.
GammaNet two_loops(const Surface& torus, const std::function<Vec2(double)>& second) {
  WeightedMultigraph gr(1);
  gr.add_edge(0, 0);
  gr.add_edge(0, 0);
  const Vec2 o(0.0, 0.5);
  std::vector<Polyline> curves{
      sample_edge(torus, [&](double s) { return SurfacePoint{0, o + Vec2(s, 0.0)}; }, 32),
      sample_edge(torus, [&](double s) { return SurfacePoint{0, o + second(s)}; }, 32),
  };
  // Close both loops exactly on the shared vertex.
  curves[0].back() = SurfacePoint{0, o + Vec2(1.0, 0.0)};
  curves[1].back() = SurfacePoint{0, o + second(1.0)};
  return GammaNet(gr, {SurfacePoint{0, o}}, curves);
}

}  // namespace

TEST(ClosedGeodesic, FigureEightCrossing) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const GammaNet net = two_loops(*torus, [](double s) { return Vec2(0.0, s); });
  EXPECT_NEAR(angle_deg(net, g, {0, 0}, {1, 0}), 90.0, 1e-9);
  const ClosedGeodesicResult r = closed_geodesic_certificate(net, g, {{{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}});
  EXPECT_TRUE(r.ok) << r.reason;
  EXPECT_EQ(r.circles.size(), 2u);
}

TEST(ClosedGeodesic, TripodCannotPair) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const ClosedGeodesicResult r = closed_geodesic_certificate(torus_theta(*torus, 16), g, {{{0, 0}, {1, 0}}});
  EXPECT_FALSE(r.ok);
}

TEST(ClosedGeodesic, TangentCirclesAreNotTransverse) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const GammaNet net = two_loops(*torus, [](double s) { return Vec2(s, 0.1 * std::pow(std::sin(kPi * s), 2)); });
  const ClosedGeodesicResult r = closed_geodesic_certificate(net, g, {{{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}}, 1e-3);
  EXPECT_FALSE(r.ok);
}

TEST(ClosedGeodesic, MalformedRelationsThrow) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const GammaNet net = two_loops(*torus, [](double s) { return Vec2(0.0, s); });
  EXPECT_THROW(closed_geodesic_certificate(net, g, {{{0, 0}, {0, 0}}}), StructuralError);
  EXPECT_THROW(closed_geodesic_certificate(net, g, {{{0, 0}, {5, 1}}}), StructuralError);
  EXPECT_THROW(closed_geodesic_certificate(net, g, {{{0, 0}, {0, 1}}, {{0, 0}, {1, 1}}}), StructuralError);
}
