#include <cmath>

#include "sgn/minmax.hpp"
#include "sgn/quadrature.hpp"

namespace sgn {

WeylProbe weyl_ratio_probe(const MetricFamily& family, std::shared_ptr<const Surface> surface,
                           const std::vector<int>& p_list, const std::vector<double>& t_grid,
                           SweepoutRecipe recipe, int resolution, bool shorten) {
  WeylProbe probe;
  std::vector<Sweepout> sweepouts;
  for (int p : p_list) sweepouts.push_back(build_sweepout(surface, p, recipe, resolution));
  for (double t : t_grid) {
    const Metric g = family.at(Eigen::VectorXd::Constant(1, t));
    const double vol = volume(g);
    for (std::size_t k = 0; k < p_list.size(); ++k) {
      const WidthEstimate est = minmax_upper_bound(sweepouts[k], g, shorten);
      WeylRow row;
      row.p = p_list[k];
      row.t = t;
      row.upper_bound = est.upper_bound;
      row.shortened_length = est.shortened_length;
      row.volume = vol;
      row.h_p = est.upper_bound / std::sqrt(static_cast<double>(row.p)) / std::sqrt(vol);
      probe.rows.push_back(row);
    }
  }
  const std::size_t np = p_list.size();
  for (std::size_t k = 0; k < np; ++k) {
    double lip = 0.0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
      const WeylRow& a = probe.rows[(i - 1) * np + k];
      const WeylRow& b = probe.rows[i * np + k];
      const double dt = std::abs(b.t - a.t);
      if (dt > 0.0)
        lip = std::max(lip, std::abs(b.upper_bound - a.upper_bound) / std::sqrt(static_cast<double>(a.p)) / dt);
    }
    probe.lipschitz.emplace_back(p_list[k], lip);
  }
  return probe;
}

}  // namespace sgn
