#include <cmath>
#include <numbers>

#include "sgn/minmax.hpp"
#include "sgn/parallel.hpp"

namespace sgn {

std::string to_string(DumbbellSide s) {
  switch (s) {
    case DumbbellSide::A: return "A";
    case DumbbellSide::B: return "B";
    case DumbbellSide::Both: return "both";
  }
  return "unknown";
}

double dumbbell_width(double t, double c) { return c * (1.0 + std::abs(t)); }

DumbbellSide dumbbell_realizer(double t) {
  if (t > 0.0) return DumbbellSide::A;
  if (t < 0.0) return DumbbellSide::B;
  return DumbbellSide::Both;
}

DumbbellKinkReport dumbbell_kink_experiment(std::shared_ptr<const RevolutionSurface> dumbbell,
                                            const std::vector<double>& ts, int resolution, double slope_step) {
  const auto& prof = dynamic_cast<const DumbbellProfile&>(dumbbell->profile());
  const DumbbellFamily family(dumbbell);
  const Sweepout sw = build_sweepout(dumbbell, 1, SweepoutRecipe::DumbbellParallels, resolution);
  auto width = [&](double t) { return minmax_upper_bound(sw, family.at(t), false).upper_bound; };

  DumbbellKinkReport rep;
  rep.c = 2.0 * std::numbers::pi * prof.cap_radius();
  rep.rows.resize(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    DumbbellRow& row = rep.rows[i];
    row.t = ts[i];
    row.estimate = width(ts[i]);
    row.model = dumbbell_width(ts[i], rep.c);
    row.rel_error = std::abs(row.estimate - row.model) / row.model;
  });
  for (const auto& row : rep.rows) rep.max_rel_error = std::max(rep.max_rel_error, row.rel_error);

  const std::vector<GammaNet> equators{parallel_loop(*dumbbell, prof.equator_a(), 64),
                                       parallel_loop(*dumbbell, prof.equator_b(), 64)};
  rep.at_zero = width_derivative_check(width, family, 0.0, equators, slope_step, 0.05);
  rep.slope_gap = rep.at_zero.right_slope - rep.at_zero.left_slope;
  return rep;
}

}  // namespace sgn
