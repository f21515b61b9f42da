#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sgn/errors.hpp"
#include "sgn/minmax.hpp"
#include "sgn/parallel.hpp"

namespace sgn {

std::string to_string(SweepoutRecipe r) {
  switch (r) {
    case SweepoutRecipe::TorusXLevels: return "x-levels";
    case SweepoutRecipe::TorusProduct: return "xy-product";
    case SweepoutRecipe::SphereLatitudes: return "latitudes";
    case SweepoutRecipe::DumbbellParallels: return "parallels";
  }
  return "unknown";
}

SweepoutRecipe parse_recipe(const std::string& name) {
  for (auto r : {SweepoutRecipe::TorusXLevels, SweepoutRecipe::TorusProduct, SweepoutRecipe::SphereLatitudes,
                 SweepoutRecipe::DumbbellParallels})
    if (to_string(r) == name) return r;
  throw DomainError("unknown sweepout recipe: " + name);
}

namespace {

// Parallel levels s in [0, L]: uniform nodes plus the critical levels of the
// profile, so that the longest parallel is sampled exactly.
std::vector<double> parallel_levels(const RevolutionSurface& surface, int n) {
  const Profile& prof = surface.profile();
  const double total = prof.length();
  std::vector<double> s;
  for (int i = 0; i < n; ++i) s.push_back(total * i / (n - 1));
  if (const auto* d = dynamic_cast<const DumbbellProfile*>(&prof)) {
    s.push_back(d->equator_a());
    s.push_back(d->equator_b());
    s.push_back(d->neck_position());
  } else {
    s.push_back(0.5 * total);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end(), [&](double a, double b) { return std::abs(a - b) < 1e-12 * total; }),
          s.end());
  return s;
}

}  // namespace

Sweepout build_sweepout(std::shared_ptr<const Surface> surface, int p, SweepoutRecipe recipe, int resolution,
                        int samples) {
  if (p < 1) throw DomainError("sweepout needs p >= 1");
  if (resolution < 2) throw DomainError("sweepout needs at least two grid points");
  Sweepout sw;
  sw.p = p;
  sw.recipe = recipe;
  const SurfaceKind kind = surface->kind();

  switch (recipe) {
    case SweepoutRecipe::TorusXLevels: {
      if (kind != SurfaceKind::FlatTorus) throw DomainError("x-levels need a flat torus");
      const Vec2 ext = surface->param_extent();
      const int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p)) - 1e-12));
      sw.description = std::to_string(k) + " equispaced vertical circles";
      // The family is periodic in the shift, so no boundary face is sampled.
      for (int i = 0; i < resolution; ++i) {
        const double c = ext[0] / k * i / resolution;
        std::vector<GammaNet> parts;
        for (int j = 0; j < k; ++j)
          parts.push_back(torus_line(*surface, {c + ext[0] * j / k, 0.0}, {0.0, ext[1]}, samples));
        sw.grid.push_back(Eigen::VectorXd::Constant(1, c));
        sw.cycles.push_back(disjoint_union(parts));
      }
      break;
    }
    case SweepoutRecipe::TorusProduct: {
      if (kind != SurfaceKind::FlatTorus) throw DomainError("xy-product needs a flat torus");
      if (p != 2) throw DomainError("xy-product is a two-parameter family");
      const Vec2 ext = surface->param_extent();
      sw.description = "vertical circle union horizontal circle";
      for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j) {
          const double a = ext[0] * i / resolution;
          const double b = ext[1] * j / resolution;
          sw.grid.push_back(Eigen::Vector2d(a, b));
          sw.cycles.push_back(disjoint_union({torus_line(*surface, {a, 0.0}, {0.0, ext[1]}, samples),
                                              torus_line(*surface, {0.0, b}, {ext[0], 0.0}, samples)}));
        }
      break;
    }
    case SweepoutRecipe::SphereLatitudes:
    case SweepoutRecipe::DumbbellParallels: {
      const auto rev = std::dynamic_pointer_cast<const RevolutionSurface>(surface);
      const bool want_sphere = recipe == SweepoutRecipe::SphereLatitudes;
      if (!rev || (want_sphere ? kind != SurfaceKind::RoundSphere : kind != SurfaceKind::Dumbbell))
        throw DomainError(to_string(recipe) + " does not fit a " + to_string(kind));
      if (p != 1) throw DomainError(to_string(recipe) + " is a one-parameter family");
      sw.description = "parallels from pole to pole";
      const auto levels = parallel_levels(*rev, resolution);
      const double total = rev->profile().length();
      for (double s : levels) {
        sw.grid.push_back(Eigen::VectorXd::Constant(1, s));
        if (s <= 0.0 || s >= total) sw.cycles.emplace_back();  // degenerate boundary face
        else sw.cycles.push_back(parallel_loop(*rev, s, samples));
      }
      break;
    }
  }
  return sw;
}

WidthEstimate minmax_upper_bound(const Sweepout& sweepout, const Metric& metric, bool shorten,
                                 const ShortenOptions& opts) {
  WidthEstimate est;
  est.p = sweepout.p;
  const std::size_t n = sweepout.cycles.size();
  std::vector<double> lens(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    lens[i] = sweepout.cycles[i].empty() ? 0.0 : length(sweepout.cycles[i], metric);
  });
  if (n == 0) return est;
  const auto it = std::max_element(lens.begin(), lens.end());
  est.argmax = static_cast<int>(it - lens.begin());
  est.upper_bound = *it;
  est.parameter = sweepout.grid[est.argmax];
  est.critical_net = sweepout.cycles[est.argmax];
  est.shortened_length = est.upper_bound;
  if (shorten && !est.critical_net.empty()) {
    const ShortenResult r = birkhoff_shorten(est.critical_net, metric, opts);
    est.critical_net = r.net;
    est.shortened_length = r.length;
    est.collapsed = r.collapsed;
  }
  return est;
}

}  // namespace sgn
