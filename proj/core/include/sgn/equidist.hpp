#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sgn/net.hpp"

namespace sgn {

// ------------------------------------------------------------- bump systems

// 1 on [lo, hi], 0 beyond distance `collar`, quintic smootherstep between.
// With period > 0 the coordinate is periodic.
double plateau(double u, double lo, double hi, double collar, double period = 0.0);

// Region in global parameter coordinates. `full_angle` cells (polar caps and
// whole-circle bands) ignore the second coordinate.
struct BumpCell {
  Vec2 lo = Vec2::Zero();
  Vec2 hi = Vec2::Zero();
  Vec2 collar = Vec2::Zero();
  bool full_angle = false;
  SurfacePoint centre;
};

class BumpSystem {
 public:
  BumpSystem(std::shared_ptr<const Surface> surface, std::vector<BumpCell> cells, double eps1);

  int size() const { return static_cast<int>(cells_.size()); }
  double eps1() const { return eps1_; }
  const std::vector<BumpCell>& cells() const { return cells_; }
  const Surface& surface() const { return *surface_; }

  // phi_k: 1 on the cell, 0 outside the enlarged cell.
  double phi(int k, const SurfacePoint& p) const;
  Eigen::VectorXd phi_all(const SurfacePoint& p) const;
  // psi_k = phi_k / sum phi.
  Eigen::VectorXd psi_all(const SurfacePoint& p) const;
  double psi(int k, const SurfacePoint& p) const { return psi_all(p)[k]; }
  // Index of the cell whose half-open region contains p.
  int cell_of(const SurfacePoint& p) const;

  // Largest sampled distance between two points of a cell, and from a cell
  // centre to its enlarged cell (upper bounds for non-exact geometry).
  double max_cell_diameter() const { return max_diameter_; }
  double max_enlarged_radius() const { return max_radius_; }
  void set_geometry_bounds(double diameter, double radius) {
    max_diameter_ = diameter;
    max_radius_ = radius;
  }

  std::string to_json() const;

 private:
  std::shared_ptr<const Surface> surface_;
  std::vector<BumpCell> cells_;
  double eps1_;
  Vec2 period_ = Vec2::Zero();
  double max_diameter_ = 0.0;
  double max_radius_ = 0.0;
};

// Distance upper bound: exact distance on the base torus and sphere, else the
// length of the straight parameter path.
double distance_upper_bound(const Metric& metric, const SurfacePoint& p, const SurfacePoint& q);

// Grid of cells in parameter coordinates, refined until every cell has
// sampled diameter at most eps1 and every enlarged cell lies within eps1 of
// its centre. Torus: n x n cells with n >= ceil(sqrt(K_min)). Surfaces of
// revolution: latitude bands split into sectors, polar caps kept whole.
// Throws DomainError when eps1 is not below the injectivity bound and
// ApproximationFailure beyond the refinement budget.
BumpSystem build_partition(const Metric& metric, double eps1, int K_min, double collar_fraction = 0.2,
                           int max_cells_per_side = 200);

// ---------------------------------------------------------- discrepancy

struct WeightedNetFamily {
  std::vector<GammaNet> nets;
  std::vector<double> alpha;
  std::vector<std::int64_t> c;  // optional integer weights
  std::int64_t d = 0;

  // Throws StructuralError when weights are malformed.
  void validate() const;
};

struct DiscrepancyReport {
  std::vector<double> D;
  double max = 0.0;
  double sum = 0.0;
  double threshold = 0.0;  // eps1 / K
  bool pass = false;
};

// Trapezoid averages of a vector field over a net, consistent with
// average_integral(). Throws DegenerateNet for a zero-length net.
Eigen::VectorXd net_average(const GammaNet& net, const Metric& metric,
                            const std::function<Eigen::VectorXd(const SurfacePoint&)>& fn, int dim);
// Volume averages with the metric's quadrature.
Eigen::VectorXd surface_average_vector(const Metric& metric,
                                       const std::function<Eigen::VectorXd(const SurfacePoint&)>& fn, int dim,
                                       int resolution = 0);

DiscrepancyReport discrepancy(const WeightedNetFamily& family, const Metric& metric, const BumpSystem& bumps);

struct BoundCheck {
  double lhs = 0.0;  // |sum alpha_j avg_j f - avg_M f|
  double rhs = 0.0;  // f_sup * sum D_k + 2 grad_sup * eps1
  bool holds = false;
};

// The triangle-inequality chain relating the discrepancy of the bumps to the
// discrepancy of a smooth f with |f| <= f_sup and |grad f|_g <= grad_sup.
BoundCheck discrepancy_bound_check(const WeightedNetFamily& family, const Metric& metric, const BumpSystem& bumps,
                                   const ScalarField& f, double f_sup, double grad_sup);

// ---------------------------------------------------- convex gradient search

struct MinNormPoint {
  Eigen::VectorXd point;
  std::vector<int> support;     // indices into the input columns
  std::vector<double> weights;  // convex weights on the support
  int iterations = 0;
};

// Wolfe's minimum-norm-point algorithm over the convex hull of the columns.
MinNormPoint min_norm_point(const Eigen::MatrixXd& points, int max_iterations = 200, double tol = 1e-12);

struct GradientSample {
  Eigen::VectorXd point;
  Eigen::VectorXd gradient;
};

struct ConvexSearchResult {
  bool found = false;
  std::vector<int> indices;     // N + 1 sample indices
  std::vector<double> weights;  // convex weights, same order
  double norm = 0.0;            // |sum weights * gradients|
  double radius = 0.0;          // cluster radius used
  std::string reason;
};

// Clusters of samples within balls of decreasing radius (halving from the
// sample diameter `levels` times); the first cluster whose gradient hull
// comes within eta of the origin is returned.
ConvexSearchResult convex_gradient_search(const std::vector<GradientSample>& samples, double eta, int levels = 8,
                                          int max_iterations = 200);

// ------------------------------------------------------- rational weights

struct RationalWeights {
  std::vector<std::int64_t> c;
  std::int64_t d = 0;
  std::vector<double> errors;  // |alpha_j / L_j - c_j / d|
  std::vector<double> bounds;  // 1 / (m J L_j)
};

// Smallest d <= d_max with integers c_j >= 0 and
// |alpha_j / L_j - c_j / d| < 1 / (m J L_j) for all j. Throws
// ApproximationFailure when d_max is exceeded.
RationalWeights rationalize_weights(const std::vector<double>& alpha, const std::vector<double>& lengths, int m,
                                    std::int64_t d_max = 10000000);
// Exact rational check of the strict bounds, the doubles taken as exact.
bool verify_rational_weights(const std::vector<double>& alpha, const std::vector<double>& lengths, int m,
                             const RationalWeights& w);

// -------------------------------------------------------------- merging

using BigCount = boost::multiprecision::cpp_int;

struct MergeBlock {
  int m = 1;
  std::vector<double> lengths;        // L_j
  std::vector<std::int64_t> counts;   // c_j
};

struct MergedSequence {
  // Block m's pattern (item j repeated c_j times) is emitted repeats[m] times.
  std::vector<MergeBlock> blocks;
  std::vector<BigCount> repeats;
  std::vector<BigCount> block_sizes;  // number of nets emitted per block

  BigCount size() const;
  // (block, item) of the i-th net of the merged sequence.
  std::pair<int, int> index_at(const BigCount& i) const;
  std::vector<std::pair<int, int>> expand(std::size_t limit) const;
};

// R_m is the smallest integer with R_m * T_m >= m * (emitted length so far),
// T_m = sum_j c_j L_j. Throws StructuralError for an empty block.
MergedSequence merge_sequences(const std::vector<MergeBlock>& blocks);

// Running ratio after each block, given per-item line integrals.
std::vector<double> merged_block_ratios(const MergedSequence& seq, const std::vector<std::vector<double>>& integrals);

// Partial ratios sum_i int_{gamma_i} f / sum_i L(gamma_i).
std::vector<double> running_ratio(const std::vector<GammaNet>& sequence, const ScalarField& f, const Metric& metric);

// Closed form of int sin(2 pi x) sin(2 pi y) dL along the closed geodesic of
// direction (k, 1) through the origin of the unit torus.
double torus_mode_line_integral(int k);

}  // namespace sgn
