#include "sgn/quadrature.hpp"

#include <cmath>

#include "sgn/parallel.hpp"

namespace sgn {
namespace {

int pick(const Metric& metric, int resolution) {
  return resolution > 0 ? resolution : metric.quadrature_resolution();
}

}  // namespace

double integrate_surface(const Metric& metric, const ScalarField& f, int resolution) {
  const auto nodes = metric.surface().quadrature(pick(metric, resolution));
  return parallel_sum(nodes.size(), [&](std::size_t i) {
    const auto& n = nodes[i];
    return n.weight * std::sqrt(metric.tensor(n.p).determinant()) * f(n.p);
  });
}

double volume(const Metric& metric, int resolution) {
  const auto nodes = metric.surface().quadrature(pick(metric, resolution));
  return parallel_sum(nodes.size(), [&](std::size_t i) {
    const auto& n = nodes[i];
    return n.weight * std::sqrt(metric.tensor(n.p).determinant());
  });
}

double surface_average(const Metric& metric, const ScalarField& f, int resolution) {
  return integrate_surface(metric, f, resolution) / volume(metric, resolution);
}

}  // namespace sgn
