#pragma once

#include "sgn/metric.hpp"

namespace sgn {

struct DistanceResult {
  double value = 0.0;
  double mesh_value = 0.0;  // shortest path on the parameter mesh
  bool exact = false;       // closed form used
  bool converged = true;    // path relaxation converged
};

struct DistanceOptions {
  int mesh = 64;            // parameter grid per side
  int path_samples = 32;
  int max_sweeps = 4000;
  double tolerance = 1e-12;
};

// Riemannian distance. Closed form on the flat torus and the round sphere
// (up to a constant conformal factor); otherwise mesh shortest path followed
// by midpoint relaxation of the path with fixed ends. When the relaxation
// does not converge, value falls back to the mesh value and converged=false.
DistanceResult geodesic_distance(const Metric& metric, const SurfacePoint& p, const SurfacePoint& q,
                                 const DistanceOptions& opts = {});

// Cheap certified-style lower bound used by certificates: base distance bound
// times sqrt of the smallest sampled eigenvalue ratio between g and the base
// tensor.
class DistanceBound {
 public:
  explicit DistanceBound(const Metric& metric, int resolution = 48);
  double operator()(const SurfacePoint& p, const SurfacePoint& q) const;
  double factor() const { return factor_; }

 private:
  const Metric* metric_;
  double factor_ = 1.0;
};

}  // namespace sgn
