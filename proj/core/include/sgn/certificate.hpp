#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sgn/net.hpp"

namespace sgn {

// (edge, end) with end 0 or 1.
using EdgeEnd = std::pair<int, int>;
using EndPair = std::pair<EdgeEnd, EdgeEnd>;

struct EmbeddednessCertificate {
  double F1 = 0.0;
  std::map<EndPair, double> F2_values;  // keys ordered with first < second
  std::vector<double> dE_min;           // per edge, +inf when no admissible pair
  std::map<std::pair<int, int>, double> dEE_min;
  double C3_norm = 0.0;
  int M_bound = 1;
  // individual embeddedness conditions
  bool c3_norm_ok = false;
  bool immersion_ok = false;
  bool tangents_ok = false;
  bool edge_injective_ok = false;
  bool edges_disjoint_ok = false;

  bool satisfied() const {
    return c3_norm_ok && immersion_ok && tangents_ok && edge_injective_ok && edges_disjoint_ok;
  }
};

// g-unit inward tangent at an edge end, in the chart of the end sample.
Vec2 inward_tangent(const GammaNet& net, const Metric& metric, int edge, int end);
// F2 for two ends at a common vertex: g(u1, u2) of the inward unit tangents.
double f2_value(const GammaNet& net, const Metric& metric, const EdgeEnd& a, const EdgeEnd& b);
// ||f||_0 + ||f'||_0 + ||f''||_0 + ||f'''||_0 of the embedded edges with
// constant-speed parameter on [0, 1]; derivatives from local quartic fits.
double c3_norm(const GammaNet& net, const Metric& metric);

EmbeddednessCertificate embeddedness_certificate(const GammaNet& net, const Metric& metric, int M_bound);

struct ClosedGeodesicResult {
  bool ok = false;
  std::string reason;
  double max_mismatch = 0.0;
  // Each circle as (edge, forward) steps.
  std::vector<std::vector<std::pair<int, bool>>> circles;
};

// Checks that the relation set r glues the edges into immersed closed
// geodesics (matched tangents within tol) with transverse self-intersections.
// Throws StructuralError for malformed r; incomplete pairings return false.
ClosedGeodesicResult closed_geodesic_certificate(const GammaNet& net, const Metric& metric,
                                                 const std::vector<EndPair>& r, double tol = 1e-6);

}  // namespace sgn
