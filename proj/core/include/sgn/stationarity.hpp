#pragma once

#include "sgn/net.hpp"

namespace sgn {

struct StationarityReport {
  // Max discrete geodesic curvature over interior samples (1 / length).
  double edge_residual = 0.0;
  // Max over vertices of |sum n(E) inward unit tangent|_g; degree-2 vertices
  // contribute only the normal part (the tangential part is reparametrization).
  double vertex_residual = 0.0;
  // Euclidean norm of the reduced length gradient.
  double total_first_variation_norm = 0.0;
  // Christoffel second-difference defect of the edge samples, for diagnostics.
  double geodesic_defect = 0.0;
  double length = 0.0;
  double min_edge_length = 0.0;
};

// Throws DegenerateNet when an edge has zero length.
StationarityReport stationarity_residual(const GammaNet& net, const Metric& metric);

}  // namespace sgn
