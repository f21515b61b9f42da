#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sgn/catalog.hpp"
#include "sgn/errors.hpp"
#include "sgn/net.hpp"
#include "sgn/net_io.hpp"

using namespace sgn;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Graph, Goodness) {
  WeightedMultigraph loop(1);
  loop.add_edge(0, 0, 4);
  EXPECT_TRUE(loop.all_good());

  WeightedMultigraph theta(2);
  for (int i = 0; i < 3; ++i) theta.add_edge(0, 1);
  EXPECT_TRUE(theta.all_good());

  WeightedMultigraph segment(2);
  segment.add_edge(0, 1);
  EXPECT_FALSE(segment.all_good());
}

TEST(Graph, DegreeCountsLoopsTwice) {
  WeightedMultigraph g(2);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  EXPECT_EQ(g.degree(0), 3);
  EXPECT_EQ(g.degree(1), 1);
  EXPECT_EQ(g.components().size(), 1u);
}

TEST(Length, TorusGeodesics) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  EXPECT_NEAR(length(torus_line(*torus, {0.0, 0.3}, {1, 0}, 20), g), 1.0, 1e-9);
  EXPECT_NEAR(length(torus_line(*torus, {0.0, 0.3}, {1, 0}, 20, 3), g), 3.0, 1e-9);
  // Straight representative of (3, 4): sqrt(9 + 16).
  EXPECT_NEAR(length(torus_line(*torus, {0.1, 0.2}, {3, 4}, 50), g), std::hypot(3.0, 4.0), 1e-8);
}

TEST(Length, ZeroLengthEdgeIsFlagged) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  WeightedMultigraph gr(1);
  gr.add_edge(0, 0);
  const SurfacePoint p{0, {0.2, 0.2}};
  const GammaNet net(gr, {p}, {Polyline{p, p}});
  const LengthReport rep = length_report(net, g);
  EXPECT_EQ(rep.total, 0.0);
  ASSERT_EQ(rep.degenerate_edges.size(), 1u);
  EXPECT_THROW(average_integral(net, [](const SurfacePoint&) { return 1.0; }, g), DegenerateNet);
}

TEST(Integrate, AveragesAndClosedForms) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const double y0 = 0.13;
  const GammaNet c = torus_line(*torus, {0.0, y0}, {1, 0}, 64);
  EXPECT_DOUBLE_EQ(average_integral(c, [](const SurfacePoint&) { return 2.5; }, g), 2.5);
  EXPECT_NEAR(integrate(c, [](const SurfacePoint& p) { return std::sin(2 * kPi * p.x[0]); }, g), 0.0, 1e-10);
  EXPECT_NEAR(integrate(c, [](const SurfacePoint& p) { return std::cos(2 * kPi * p.x[1]); }, g),
              std::cos(2 * kPi * y0), 1e-9);
}

TEST(Trace, UnitAndConformalAndCoordinate) {
  auto sphere = make_round_sphere();
  const Metric gs(sphere);
  const GammaNet eq = parallel_loop(*sphere, kPi / 2, 48);
  for (const auto& row : trace_along(eq, [&](const SurfacePoint& p) { return gs.tensor(p); }, gs))
    for (double v : row) EXPECT_NEAR(v, 1.0, 1e-12);

  auto psi = [sphere](const SurfacePoint& p) { return 0.5 + sphere->embed(p)[0]; };
  const auto tr = trace_along(eq, conformal_tensor(gs, psi, 2.0), gs);
  for (std::size_t i = 0; i < tr[0].size(); ++i) EXPECT_NEAR(tr[0][i], 2.0 * psi(eq.curve(0)[i]), 1e-12);

  auto torus = make_flat_torus();
  const Metric gt(torus);
  const GammaNet line = torus_line(*torus, {0.0, 0.4}, {1, 0}, 16);
  Mat2 dxdx = Mat2::Zero();
  dxdx(0, 0) = 1.0;
  const auto along = trace_along(line, [dxdx](const SurfacePoint&) { return dxdx; }, gt);
  for (double v : along[0]) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(Resample, UniformSpacingKeepsLengthOfStraightLines) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const GammaNet warped = param_loop(
      *torus, [](double t) { return Vec2(2 * (t + 0.05 * std::sin(2 * kPi * t)), 0.3 + (t + 0.05 * std::sin(2 * kPi * t))); },
      40);
  const GammaNet uni = resample_uniform(warped, g, 25);
  EXPECT_NEAR(length(uni, g), std::sqrt(5.0), 1e-12);
  EXPECT_EQ(uni.curve(0).size(), 26u);
  double lo = 1e9;
  double hi = 0.0;
  for (std::size_t i = 0; i + 1 < uni.curve(0).size(); ++i) {
    const double s = segment_length(g, uni.curve(0)[i], uni.curve(0)[i + 1]);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  EXPECT_NEAR(hi - lo, 0.0, 1e-12);
}

TEST(NetIo, RoundTrip) {
  auto sphere = make_round_sphere();
  const GammaNet net = sphere_theta(*sphere, 12);
  const GammaNet back = parse_net(dump_net(net));
  ASSERT_EQ(back.edge_count(), 3);
  EXPECT_EQ(back.graph().vertex_count(), 2);
  for (int e = 0; e < 3; ++e) {
    ASSERT_EQ(back.curve(e).size(), net.curve(e).size());
    for (std::size_t i = 0; i < net.curve(e).size(); ++i) {
      EXPECT_EQ(back.curve(e)[i].chart, net.curve(e)[i].chart);
      EXPECT_EQ(back.curve(e)[i].x, net.curve(e)[i].x);
    }
  }
  const Metric g(sphere);
  EXPECT_EQ(length(back, g), length(net, g));
}

TEST(NetIo, MalformedInputIsRejected) {
  EXPECT_ANY_THROW(parse_net("{\"format\": \"nope\"}"));
  EXPECT_ANY_THROW(parse_net("not json"));
}

TEST(Validate, MismatchedEndpointThrows) {
  auto torus = make_flat_torus();
  GammaNet net = torus_line(*torus, {0.0, 0.3}, {1, 0}, 16);
  net.vertices()[0] = SurfacePoint{0, {0.5, 0.5}};
  EXPECT_THROW(net.validate(*torus), StructuralError);
}
