#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "sgn/surface.hpp"

namespace sgn {

using ScalarField = std::function<double(const SurfacePoint&)>;
using TensorField = std::function<Mat2(const SurfacePoint&)>;

// Riemannian metric on a surface:
//   g = exp(2 sum_i c_i w_i) g_base + sum_j d_j T_j
// where g_base is the surface tensor, w_i scalar fields and T_j symmetric
// tensor fields (given in the chart of the evaluation point).
class Metric {
 public:
  explicit Metric(std::shared_ptr<const Surface> surface);

  const Surface& surface() const { return *surface_; }
  std::shared_ptr<const Surface> surface_ptr() const { return surface_; }

  Metric with_conformal(ScalarField w, double c = 1.0) const;
  Metric scaled(double c) const;  // e^{2c} g
  Metric with_tensor(TensorField t, double d = 1.0) const;

  bool is_base() const { return conformal_.empty() && tensors_.empty() && scale_ == 0.0; }
  double constant_log_scale() const { return scale_; }

  // Domain-checked evaluation.
  Mat2 eval(const SurfacePoint& p) const;
  Mat2 eval(int chart, const Vec2& x) const { return eval(SurfacePoint{chart, x}); }
  // No domain check; used for finite differences near chart edges.
  Mat2 tensor(const SurfacePoint& p) const;

  double conformal_log_factor(const SurfacePoint& p) const;

  // d_k g_ij, k = 0, 1, by central differences.
  std::array<Mat2, 2> derivative(const SurfacePoint& p) const;
  // gamma[k](i, j) = Gamma^k_ij.
  std::array<Mat2, 2> christoffel(const SurfacePoint& p) const;
  // Gamma^k(v, v) as a chart vector.
  Vec2 christoffel_contract(const SurfacePoint& p, const Vec2& v) const;

  double inner(const SurfacePoint& p, const Vec2& u, const Vec2& v) const;
  double norm(const SurfacePoint& p, const Vec2& v) const;

  double injectivity_bound() const;
  void set_injectivity_bound(double v);

  int quadrature_resolution() const { return resolution_; }
  void set_quadrature_resolution(int n);

  double fd_step() const { return fd_step_; }

 private:
  std::shared_ptr<const Surface> surface_;
  std::vector<std::pair<ScalarField, double>> conformal_;
  std::vector<std::pair<TensorField, double>> tensors_;
  double scale_ = 0.0;
  double injectivity_ = -1.0;
  int resolution_ = 256;
  double fd_step_ = 1e-5;
};

// Smooth family of metrics t -> g(t), t in R^K.
class MetricFamily {
 public:
  virtual ~MetricFamily() = default;
  virtual int dimension() const = 0;
  virtual Metric at(const Eigen::VectorXd& t) const = 0;
  // dg/dv at t.
  virtual TensorField derivative(const Eigen::VectorXd& t, const Eigen::VectorXd& v) const = 0;
};

// g(t) = exp(2 sum_k t_k psi_k) g on the open box (-delta, delta)^K.
class ConformalFamily final : public MetricFamily {
 public:
  ConformalFamily(Metric base, std::vector<ScalarField> weights, double delta);

  int dimension() const override { return static_cast<int>(weights_.size()); }
  Metric at(const Eigen::VectorXd& t) const override;
  TensorField derivative(const Eigen::VectorXd& t, const Eigen::VectorXd& v) const override;

  Mat2 eval(const Eigen::VectorXd& t, const SurfacePoint& p) const;
  const Metric& base() const { return base_; }
  const std::vector<ScalarField>& weights() const { return weights_; }
  double delta() const { return delta_; }
  void check(const Eigen::VectorXd& t) const;

 private:
  Metric base_;
  std::vector<ScalarField> weights_;
  double delta_;
};

// Dumbbell family: the bulbs are scaled by (1 + t) and (1 - t); the factor
// interpolates smoothly across the neck and equals 1 at the neck centre.
class DumbbellFamily final : public MetricFamily {
 public:
  explicit DumbbellFamily(std::shared_ptr<const RevolutionSurface> surface);

  int dimension() const override { return 1; }
  Metric at(const Eigen::VectorXd& t) const override;
  TensorField derivative(const Eigen::VectorXd& t, const Eigen::VectorXd& v) const override;

  Metric at(double t) const { return at(Eigen::VectorXd::Constant(1, t)); }
  // +1 on bulb A, -1 on bulb B.
  double side(const SurfacePoint& p) const;

 private:
  std::shared_ptr<const RevolutionSurface> surface_;
};

// Scalar field through the global parameter coordinates.
ScalarField param_field(std::shared_ptr<const Surface> surface, std::function<double(const Vec2&)> fn);
// Scalar field through the embedding.
ScalarField ambient_field(std::shared_ptr<const Surface> surface,
                          std::function<double(const Eigen::VectorXd&)> fn);
// psi * J^T A J with J the Jacobian of the embedding, A a constant symmetric
// ambient matrix: a non-conformal tensor field.
TensorField ambient_tensor(std::shared_ptr<const Surface> surface, Eigen::MatrixXd a, ScalarField psi);
// psi * g for a given metric.
TensorField conformal_tensor(const Metric& metric, ScalarField psi, double factor = 1.0);

}  // namespace sgn
