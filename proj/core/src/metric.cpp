#include "sgn/metric.hpp"

#include <cmath>

#include "sgn/errors.hpp"

namespace sgn {

Metric::Metric(std::shared_ptr<const Surface> surface) : surface_(std::move(surface)) {
  if (!surface_) throw DomainError("metric needs a surface");
}

Metric Metric::with_conformal(ScalarField w, double c) const {
  Metric m = *this;
  m.conformal_.emplace_back(std::move(w), c);
  return m;
}

Metric Metric::scaled(double c) const {
  Metric m = *this;
  m.scale_ += c;
  return m;
}

Metric Metric::with_tensor(TensorField t, double d) const {
  Metric m = *this;
  m.tensors_.emplace_back(std::move(t), d);
  return m;
}

double Metric::conformal_log_factor(const SurfacePoint& p) const {
  double e = scale_;
  for (const auto& [w, c] : conformal_) e += c * w(p);
  return e;
}

Mat2 Metric::tensor(const SurfacePoint& p) const {
  Mat2 g = surface_->tensor(p.chart, p.x);
  if (!conformal_.empty() || scale_ != 0.0) g *= std::exp(2.0 * conformal_log_factor(p));
  for (const auto& [t, d] : tensors_) g += d * t(p);
  return g;
}

Mat2 Metric::eval(const SurfacePoint& p) const {
  if (p.chart < 0 || p.chart >= surface_->chart_count() || !surface_->in_domain(p.chart, p.x))
    throw DomainError("point outside chart domain");
  return tensor(p);
}

std::array<Mat2, 2> Metric::derivative(const SurfacePoint& p) const {
  std::array<Mat2, 2> d;
  for (int k = 0; k < 2; ++k) {
    SurfacePoint a = p;
    SurfacePoint b = p;
    a.x[k] += fd_step_;
    b.x[k] -= fd_step_;
    d[k] = (tensor(a) - tensor(b)) / (2.0 * fd_step_);
  }
  return d;
}

std::array<Mat2, 2> Metric::christoffel(const SurfacePoint& p) const {
  const Mat2 ginv = tensor(p).inverse();
  const auto dg = derivative(p);
  // lowered symbols first: L_l(i, j) = 1/2 (d_i g_lj + d_j g_li - d_l g_ij)
  std::array<Mat2, 2> low;
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) low[l](i, j) = 0.5 * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
  std::array<Mat2, 2> gamma;
  for (int k = 0; k < 2; ++k) gamma[k] = ginv(k, 0) * low[0] + ginv(k, 1) * low[1];
  return gamma;
}

Vec2 Metric::christoffel_contract(const SurfacePoint& p, const Vec2& v) const {
  const auto gamma = christoffel(p);
  return {v.dot(gamma[0] * v), v.dot(gamma[1] * v)};
}

double Metric::inner(const SurfacePoint& p, const Vec2& u, const Vec2& v) const {
  return u.dot(tensor(p) * v);
}

double Metric::norm(const SurfacePoint& p, const Vec2& v) const {
  return std::sqrt(std::max(0.0, inner(p, v, v)));
}

double Metric::injectivity_bound() const {
  if (injectivity_ > 0.0) return injectivity_;
  return surface_->injectivity_bound() * std::exp(scale_);
}

void Metric::set_injectivity_bound(double v) {
  if (!(v > 0.0)) throw DomainError("injectivity bound must be positive");
  injectivity_ = v;
}

void Metric::set_quadrature_resolution(int n) {
  if (n < 2) throw DomainError("quadrature resolution must be at least 2");
  resolution_ = n;
}

// ---------------------------------------------------------- ConformalFamily

ConformalFamily::ConformalFamily(Metric base, std::vector<ScalarField> weights, double delta)
    : base_(std::move(base)), weights_(std::move(weights)), delta_(delta) {
  if (!(delta > 0.0)) throw DomainError("box radius must be positive");
}

void ConformalFamily::check(const Eigen::VectorXd& t) const {
  if (t.size() != dimension()) throw DomainError("parameter dimension mismatch");
  for (int k = 0; k < t.size(); ++k)
    if (!(std::abs(t[k]) < delta_)) throw DomainError("parameter outside the box");
}

Metric ConformalFamily::at(const Eigen::VectorXd& t) const {
  check(t);
  Metric m = base_;
  for (int k = 0; k < t.size(); ++k)
    if (t[k] != 0.0) m = m.with_conformal(weights_[k], t[k]);
  return m;
}

Mat2 ConformalFamily::eval(const Eigen::VectorXd& t, const SurfacePoint& p) const {
  check(t);
  double e = 0.0;
  for (int k = 0; k < t.size(); ++k) e += t[k] * weights_[k](p);
  const Mat2 g = base_.eval(p);
  if (e == 0.0) return g;
  return std::exp(2.0 * e) * g;
}

TensorField ConformalFamily::derivative(const Eigen::VectorXd& t, const Eigen::VectorXd& v) const {
  const Metric g = at(t);
  auto weights = weights_;
  return [g, weights, v](const SurfacePoint& p) {
    double s = 0.0;
    for (int k = 0; k < v.size(); ++k) s += v[k] * weights[k](p);
    return Mat2(2.0 * s * g.tensor(p));
  };
}

// ----------------------------------------------------------- DumbbellFamily

DumbbellFamily::DumbbellFamily(std::shared_ptr<const RevolutionSurface> surface)
    : surface_(std::move(surface)) {
  if (surface_->kind() != SurfaceKind::Dumbbell) throw DomainError("dumbbell family needs a dumbbell");
}

double DumbbellFamily::side(const SurfacePoint& p) const {
  const auto& prof = dynamic_cast<const DumbbellProfile&>(surface_->profile());
  const double s = surface_->param(p)[0];
  const double lo = prof.junction();
  const double hi = prof.length() - prof.junction();
  const double u = (s - lo) / (hi - lo);
  if (u <= 0.0) return 1.0;
  if (u >= 1.0) return -1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return 1.0 - 2.0 * a / (a + b);
}

Metric DumbbellFamily::at(const Eigen::VectorXd& t) const {
  if (t.size() != 1 || !(std::abs(t[0]) < 1.0)) throw DomainError("dumbbell parameter must lie in (-1, 1)");
  const double tt = t[0];
  Metric m(surface_);
  if (tt == 0.0) return m;
  auto self = *this;
  return m.with_conformal([self, tt](const SurfacePoint& p) { return std::log1p(tt * self.side(p)); });
}

TensorField DumbbellFamily::derivative(const Eigen::VectorXd& t, const Eigen::VectorXd& v) const {
  const Metric g = at(t);
  const double tt = t[0];
  const double vv = v[0];
  auto self = *this;
  return [g, self, tt, vv](const SurfacePoint& p) {
    const double chi = self.side(p);
    return Mat2(2.0 * vv * chi / (1.0 + tt * chi) * g.tensor(p));
  };
}

// ------------------------------------------------------------------ helpers

ScalarField param_field(std::shared_ptr<const Surface> surface, std::function<double(const Vec2&)> fn) {
  return [surface, fn](const SurfacePoint& p) { return fn(surface->param(p)); };
}

ScalarField ambient_field(std::shared_ptr<const Surface> surface,
                          std::function<double(const Eigen::VectorXd&)> fn) {
  return [surface, fn](const SurfacePoint& p) { return fn(surface->embed(p)); };
}

TensorField ambient_tensor(std::shared_ptr<const Surface> surface, Eigen::MatrixXd a, ScalarField psi) {
  return [surface, a, psi](const SurfacePoint& p) {
    const double h = 1e-5;
    const Eigen::Index dim = a.rows();
    Eigen::MatrixXd jac(dim, 2);
    for (int k = 0; k < 2; ++k) {
      SurfacePoint u = p;
      SurfacePoint d = p;
      u.x[k] += h;
      d.x[k] -= h;
      jac.col(k) = (surface->embed(u) - surface->embed(d)) / (2.0 * h);
    }
    Mat2 t = jac.transpose() * a * jac;
    t = 0.5 * (t + t.transpose()).eval();
    return Mat2(psi(p) * t);
  };
}

TensorField conformal_tensor(const Metric& metric, ScalarField psi, double factor) {
  return [metric, psi, factor](const SurfacePoint& p) { return Mat2(factor * psi(p) * metric.tensor(p)); };
}

}  // namespace sgn
