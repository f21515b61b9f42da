#pragma once

#include "sgn/metric.hpp"

namespace sgn {

// Partition-of-unity midpoint quadrature; resolution <= 0 uses the metric's
// configured resolution.
double volume(const Metric& metric, int resolution = 0);
double integrate_surface(const Metric& metric, const ScalarField& f, int resolution = 0);
// Volume average of f.
double surface_average(const Metric& metric, const ScalarField& f, int resolution = 0);

}  // namespace sgn
