#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sgn/solver.hpp"

namespace sgn {

// A symmetric 2-tensor dg/dv, evaluated in the chart of the point.
struct PerturbationDirection {
  TensorField tensor;
  std::string tag;
};

struct FirstVariation {
  double value = 0.0;
  double residual = 0.0;     // total first-variation norm of the net
  bool stationary = true;    // residual within the precondition
};

// Half the integral of trace_{f,g}(dg/dv) over the net, in the discretization
// that matches length(): per segment, the exact derivative of the trapezoid
// length with respect to the metric at fixed samples.
FirstVariation first_variation(const GammaNet& net, const Metric& metric, const PerturbationDirection& dir,
                               double stationarity_tolerance = 1e-6);

// g + s T, for finite differences along a tensor direction.
class TensorLineFamily final : public MetricFamily {
 public:
  TensorLineFamily(Metric base, TensorField direction);
  int dimension() const override { return 1; }
  Metric at(const Eigen::VectorXd& t) const override;
  TensorField derivative(const Eigen::VectorXd& t, const Eigen::VectorXd& v) const override;

 private:
  Metric base_;
  TensorField dir_;
};

struct FdOptions {
  std::vector<double> steps{1e-3, 5e-4};  // Richardson over the first two
  SolverOptions solver = [] {
    SolverOptions o;
    o.mode = SolverMode::Critical;
    o.detect_degenerate_family = false;
    o.tolerance = 1e-11;
    o.max_iterations = 60;
    return o;
  }();
};

struct FdDerivative {
  double value = 0.0;
  std::vector<double> central;  // per step
};

// d/ds length(net(t + s v), g(t + s v)) at s = 0 by central differences, the
// nets re-solved from `net` in Critical mode; Richardson over h and h/2.
// Throws ApproximationFailure when a re-solve does not converge.
FdDerivative fd_length_derivative(const GammaNet& net, const MetricFamily& family, const Eigen::VectorXd& t,
                                  const Eigen::VectorXd& v, const FdOptions& opts = {});

struct WidthSlopeReport {
  double t = 0.0;
  double width = 0.0;
  double left_slope = 0.0;
  double right_slope = 0.0;
  double central_slope = 0.0;
  double noise_floor = 0.0;
  std::vector<double> first_variations;  // one per realizing net
  bool kink = false;
  bool agrees = false;   // some realizing net matches the relevant slope(s)
  double tolerance = 0.02;
};

// Compares finite-difference slopes of a width estimate t -> W(t) with the
// first variation of the realizing nets along a one-parameter family. A kink
// is flagged when the one-sided slopes differ by more than ten times the
// noise floor (estimated from adjacent one-sided differences). At a kink each
// one-sided slope must be matched by one of the nets.
WidthSlopeReport width_derivative_check(const std::function<double(double)>& width, const MetricFamily& family,
                                        double t, const std::vector<GammaNet>& realizing_nets, double h = 0.05,
                                        double tolerance = 0.02);

struct EpsCloseResult {
  bool close = false;
  double sup = 0.0;
};

// Grid on [-1, 1]^K with n points per side.
std::vector<Eigen::VectorXd> cube_grid(int K, int n);
// sup over the grid of |f(delta s) - g(delta s)| / delta, compared strictly
// with eps. Values are given at the rescaled grid points delta * s.
EpsCloseResult eps_close(const std::vector<Eigen::VectorXd>& f_samples, const std::vector<Eigen::VectorXd>& g_samples,
                         double delta, double eps);

// ----------------------------------------------------------------- battery

struct BatteryRow {
  std::string net;
  std::string direction;
  double analytic = 0.0;
  double fd = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  bool pass = false;
  std::string note;
};

// Stationary nets on a bumpy torus, a bumpy sphere and the dumbbell, each
// tested against five directions: pass iff |analytic - fd| <= max(1e-6,
// 1e-4 |analytic|).
std::vector<BatteryRow> variation_battery(std::uint64_t seed = 1);

}  // namespace sgn
