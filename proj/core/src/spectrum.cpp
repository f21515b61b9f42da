#include "sgn/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "sgn/errors.hpp"
#include "sgn/stationarity.hpp"

namespace sgn {

std::vector<double> model_spectrum(const LengthModel& model, double hessian_step) {
  const Eigen::MatrixXd h = Eigen::MatrixXd(model.reduced_hessian(hessian_step));
  const Eigen::VectorXd m = model.lumped_mass();
  if (h.rows() == 0) return {};
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::MatrixXd(m.asDiagonal()),
                                                                Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ApproximationFailure("second variation eigensolver failed");
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

namespace {

std::vector<double> checked_spectrum(const GammaNet& net, const Metric& metric, double hessian_step) {
  const auto rep = stationarity_residual(net, metric);
  if (rep.total_first_variation_norm > 1e-6)
    throw PreconditionError("second variation needs a stationary net (first variation above 1e-6)");
  LengthModel model(metric, net);
  return model_spectrum(model, hessian_step);
}

}  // namespace

std::vector<double> second_variation_spectrum(const GammaNet& net, const Metric& metric, int k,
                                              double hessian_step) {
  auto ev = checked_spectrum(net, metric, hessian_step);
  if (k >= 0 && k < static_cast<int>(ev.size())) ev.resize(k);
  return ev;
}

bool is_nondegenerate(const GammaNet& net, const Metric& metric, double tol) {
  const auto ev = checked_spectrum(net, metric, 1e-5);
  return std::none_of(ev.begin(), ev.end(), [tol](double v) { return std::abs(v) <= tol; });
}

int morse_index(const GammaNet& net, const Metric& metric, double tol) {
  const auto ev = checked_spectrum(net, metric, 1e-5);
  return static_cast<int>(std::count_if(ev.begin(), ev.end(), [tol](double v) { return v < -tol; }));
}

}  // namespace sgn
