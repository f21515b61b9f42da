#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgn/stationarity.hpp"

namespace sgn {

enum class SolverMode {
  Minimize,  // damped Newton with Armijo line search on length
  Critical,  // Newton on the gradient, for saddles and re-solves near a solution
  Auto,      // Newton steps while they shrink the gradient quickly, else Minimize
};

enum class SolverStatus { Converged, MaxIterations, Stalled, EdgeCollapse };

std::string to_string(SolverStatus s);

struct SolverOptions {
  double tolerance = 1e-8;          // on the reduced gradient norm
  int max_iterations = 200;
  double length_floor_factor = 1e-4;  // times the injectivity bound
  double spacing_ratio = 1.5;       // resample an edge beyond this max/min segment ratio
  double hessian_step = 1e-5;
  double initial_damping = 1e-3;
  int polish_steps = 3;
  bool detect_degenerate_family = true;
  double degeneracy_tolerance = 0.05;
  SolverMode mode = SolverMode::Auto;
  double max_newton_step = 0.05;    // Auto: largest Newton move, times the injectivity bound
  std::uint64_t seed = 0;
};

struct SolveResult {
  GammaNet net;
  StationarityReport report;
  SolverStatus status = SolverStatus::MaxIterations;
  int iterations = 0;
  bool monotone = true;               // length never rose on an accepted step
  bool degenerate_family = false;     // Hessian has a near-null transverse mode
  std::vector<double> length_history;  // after every accepted step
  std::vector<int> collapsed_edges;
};

// Requires every component to be good (closed loop with multiplicity or all
// vertex degrees at least 3); throws PreconditionError otherwise.
SolveResult solve_stationary(const GammaNet& init, const Metric& metric, const SolverOptions& opts = {});

}  // namespace sgn
