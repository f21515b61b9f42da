#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sgn/solver.hpp"
#include "sgn/variation.hpp"

namespace sgn {

enum class SweepoutRecipe {
  TorusXLevels,     // ceil(sqrt(p)) equispaced vertical circles, shifted together
  TorusProduct,     // p = 2: {x = a} union {y = b}
  SphereLatitudes,  // p = 1: parallels from pole to pole
  DumbbellParallels,  // p = 1: parallels from pole to pole, critical levels included
};

std::string to_string(SweepoutRecipe r);
SweepoutRecipe parse_recipe(const std::string& name);

struct Sweepout {
  int p = 1;
  SweepoutRecipe recipe = SweepoutRecipe::TorusXLevels;
  std::string description;
  std::vector<Eigen::VectorXd> grid;  // sampled parameters
  std::vector<GammaNet> cycles;       // empty nets on degenerate boundary faces
};

// `resolution` is the number of grid points per parameter direction.
// Throws DomainError for unsupported recipe/surface/p combinations.
Sweepout build_sweepout(std::shared_ptr<const Surface> surface, int p, SweepoutRecipe recipe,
                        int resolution = 101, int samples = 64);

struct ShortenOptions {
  double relaxation = 0.5;
  int max_sweeps = 3000;
  double decrease_tolerance = 1e-10;
  double collapse_factor = 1e-3;  // times the injectivity bound
  bool polish = true;             // finish with the Newton solver
  double polish_tolerance = 1e-9;
};

struct ShortenResult {
  GammaNet net;
  double initial_length = 0.0;
  double length = 0.0;
  bool collapsed = false;
  int sweeps = 0;
  double edge_residual = 0.0;
};

// Birkhoff-type shortening of a union of closed loops: alternating even/odd
// sample sweeps move each sample toward the geodesic midpoint of its
// neighbours with the given relaxation. Stops when a sweep shortens by less
// than the tolerance, then polishes with the Newton solver. Loops shorter than
// collapse_factor * injectivity bound are flagged as collapsed. Throws
// PreconditionError unless every edge is a closed loop.
ShortenResult birkhoff_shorten(const GammaNet& cycle, const Metric& metric, const ShortenOptions& opts = {});

struct WidthEstimate {
  int p = 1;
  double upper_bound = 0.0;
  int argmax = -1;
  Eigen::VectorXd parameter;
  GammaNet critical_net;
  double shortened_length = 0.0;
  bool collapsed = false;
};

// Max over the sweepout grid of the cycle lengths: an upper bound for the
// p-width, never the width itself. With `shorten`, the maximizing cycle is
// shortened to extract a nearby critical net.
WidthEstimate minmax_upper_bound(const Sweepout& sweepout, const Metric& metric, bool shorten = true,
                                 const ShortenOptions& opts = {});

// ---------------------------------------------------------------- dumbbell

enum class DumbbellSide { A, B, Both };
std::string to_string(DumbbellSide s);

// Model width c (1 + |t|) with c the great-circle length.
double dumbbell_width(double t, double c = 2.0 * 3.14159265358979323846);
DumbbellSide dumbbell_realizer(double t);

struct DumbbellRow {
  double t = 0.0;
  double estimate = 0.0;
  double model = 0.0;
  double rel_error = 0.0;
};

struct DumbbellKinkReport {
  std::vector<DumbbellRow> rows;
  double c = 0.0;
  WidthSlopeReport at_zero;    // kink check at t = 0
  double slope_gap = 0.0;      // right minus left slope at 0
  double max_rel_error = 0.0;
};

// Sweepout estimates of the dumbbell width along the dumbbell family at the
// given t values, compared with the model, and a slope check at t = 0 whose
// realizing nets are the two bulb equators.
DumbbellKinkReport dumbbell_kink_experiment(std::shared_ptr<const RevolutionSurface> dumbbell,
                                            const std::vector<double>& ts, int resolution = 201,
                                            double slope_step = 0.05);

// -------------------------------------------------------------------- weyl

struct WeylRow {
  int p = 1;
  double t = 0.0;
  double upper_bound = 0.0;
  double shortened_length = 0.0;
  double volume = 0.0;
  double h_p = 0.0;  // p^{-1/2} upper_bound / sqrt(volume)
};

struct WeylProbe {
  std::vector<WeylRow> rows;
  // Per p: max over consecutive t of |Δ(p^{-1/2} ω_p)| / |Δt|.
  std::vector<std::pair<int, double>> lipschitz;
};

// h_p(t) over a one-parameter family, from sweepout upper bounds on g(t).
WeylProbe weyl_ratio_probe(const MetricFamily& family, std::shared_ptr<const Surface> surface,
                           const std::vector<int>& p_list, const std::vector<double>& t_grid,
                           SweepoutRecipe recipe, int resolution = 41, bool shorten = false);

}  // namespace sgn
