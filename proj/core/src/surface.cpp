#include "sgn/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sgn/errors.hpp"

namespace sgn {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double v, double period) {
  double w = std::fmod(v, period);
  if (w < 0) w += period;
  if (w >= period) w -= period;
  return w;
}

// C-infinity step from 0 (u <= 0) to 1 (u >= 1).
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

}  // namespace

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::FlatTorus: return "torus";
    case SurfaceKind::RoundSphere: return "sphere";
    case SurfaceKind::Dumbbell: return "dumbbell";
  }
  return "unknown";
}

Mat2 Surface::transition_jacobian(const SurfacePoint& p, int chart) const {
  if (p.chart == chart) return Mat2::Identity();
  const double h = 1e-6;
  const SurfacePoint ref{chart, to_chart(p, chart)};
  Mat2 jac;
  for (int k = 0; k < 2; ++k) {
    SurfacePoint plus = p;
    SurfacePoint minus = p;
    plus.x[k] += h;
    minus.x[k] -= h;
    jac.col(k) = (lift_near(plus, ref) - lift_near(minus, ref)) / (2.0 * h);
  }
  return jac;
}

void Surface::set_injectivity_bound(double v) {
  if (!(v > 0.0)) throw DomainError("injectivity bound must be positive");
  injectivity_bound_ = v;
}

bool Surface::same_point(const SurfacePoint& a, const SurfacePoint& b, double tol) const {
  return (embed(a) - embed(b)).norm() <= tol;
}

// ---------------------------------------------------------------- FlatTorus

FlatTorus::FlatTorus(double lx, double ly) : lx_(lx), ly_(ly) {
  if (!(lx > 0.0 && ly > 0.0)) throw DomainError("torus side lengths must be positive");
  injectivity_bound_ = 0.5 * std::min(lx, ly);
}

bool FlatTorus::in_domain(int chart, const Vec2& x) const {
  return chart == 0 && x.allFinite();
}

Mat2 FlatTorus::tensor(int, const Vec2&) const { return Mat2::Identity(); }

Vec2 FlatTorus::to_chart(const SurfacePoint& p, int chart) const {
  if (chart != 0 || p.chart != 0) throw DomainError("flat torus has a single chart");
  return p.x;
}

Vec2 FlatTorus::lift_near(const SurfacePoint& p, const SurfacePoint& ref) const {
  const Vec2 d = p.x - ref.x;
  return {p.x[0] - lx_ * std::round(d[0] / lx_), p.x[1] - ly_ * std::round(d[1] / ly_)};
}

Vec2 FlatTorus::param(const SurfacePoint& p) const {
  return {wrap(p.x[0], lx_), wrap(p.x[1], ly_)};
}

Eigen::VectorXd FlatTorus::embed(const SurfacePoint& p) const {
  const double ax = kTwoPi * p.x[0] / lx_;
  const double ay = kTwoPi * p.x[1] / ly_;
  Eigen::VectorXd e(4);
  e << lx_ / kTwoPi * std::cos(ax), lx_ / kTwoPi * std::sin(ax), ly_ / kTwoPi * std::cos(ay),
      ly_ / kTwoPi * std::sin(ay);
  return e;
}

double FlatTorus::distance_bound(const SurfacePoint& p, const SurfacePoint& q) const {
  return (lift_near(q, p) - p.x).norm();
}

std::vector<QuadratureNode> FlatTorus::quadrature(int resolution) const {
  const int n = std::max(1, resolution);
  std::vector<QuadratureNode> nodes;
  nodes.reserve(static_cast<std::size_t>(n) * n);
  const double hx = lx_ / n;
  const double hy = ly_ / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      nodes.push_back({{0, Vec2((i + 0.5) * hx, (j + 0.5) * hy)}, hx * hy});
  return nodes;
}

// ----------------------------------------------------------------- Profiles

double SphereProfile::r(double s) const { return radius_ * std::sin(s / radius_); }
double SphereProfile::dr(double s) const { return std::cos(s / radius_); }
double SphereProfile::ddr(double s) const { return -std::sin(s / radius_) / radius_; }
double SphereProfile::length() const { return kPi * radius_; }

DumbbellProfile::DumbbellProfile(double bulb_radius, double neck_radius, double beta)
    : radius_(bulb_radius), neck_(neck_radius), beta_(beta) {
  if (!(bulb_radius > 0.0)) throw DomainError("bulb radius must be positive");
  if (!(beta > 0.0 && beta < kPi / 2)) throw DomainError("beta must lie in (0, pi/2)");
  if (!(neck_radius > 0.0 && neck_radius < bulb_radius * std::cos(beta)))
    throw DomainError("neck radius must lie in (0, R cos(beta))");
  junction_ = radius_ * (kPi / 2 + beta_);
  // Matching value, slope and curvature at the junction has a closed form in
  // c = cos(omega * half_neck).
  const double q = (radius_ * std::cos(beta_) - neck_) / (radius_ * std::sin(beta_) * std::tan(beta_));
  const double c = -q / (1.0 + q);
  const double phi = std::acos(c);
  omega_ = -std::tan(phi) / (std::tan(beta_) * radius_);
  amp_ = std::sin(beta_) / (omega_ * std::sin(phi));
  half_neck_ = phi / omega_;
  total_ = 2.0 * junction_ + 2.0 * half_neck_;
  if (std::sin(beta_) > std::sin(phi) + 1e-12)
    throw DomainError("dumbbell profile is not embeddable (|r'| > 1 in the neck)");
}

double DumbbellProfile::r(double s) const {
  if (s <= junction_) return radius_ * std::sin(s / radius_);
  if (s >= total_ - junction_) return radius_ * std::sin((total_ - s) / radius_);
  const double u = s - 0.5 * total_;
  return neck_ + amp_ * (1.0 - std::cos(omega_ * u));
}

double DumbbellProfile::dr(double s) const {
  if (s <= junction_) return std::cos(s / radius_);
  if (s >= total_ - junction_) return -std::cos((total_ - s) / radius_);
  const double u = s - 0.5 * total_;
  return amp_ * omega_ * std::sin(omega_ * u);
}

double DumbbellProfile::ddr(double s) const {
  if (s <= junction_) return -std::sin(s / radius_) / radius_;
  if (s >= total_ - junction_) return -std::sin((total_ - s) / radius_) / radius_;
  const double u = s - 0.5 * total_;
  return amp_ * omega_ * omega_ * std::cos(omega_ * u);
}

double DumbbellProfile::equator_a() const { return 0.5 * kPi * radius_; }
double DumbbellProfile::equator_b() const { return total_ - 0.5 * kPi * radius_; }

// -------------------------------------------------------- RevolutionSurface

RevolutionSurface::RevolutionSurface(std::shared_ptr<const Profile> profile, SurfaceKind kind)
    : profile_(std::move(profile)), kind_(kind) {
  radius_ = profile_->cap_radius();
  a0_ = 0.35 * radius_;
  a1_ = 1.05 * radius_;
  if (profile_->cap_extent() < 1.2 * radius_ || profile_->length() < 2.5 * radius_)
    throw DomainError("profile caps too small for the chart layout");
  injectivity_bound_ = kPi * radius_;

  // z(s) at table nodes; values in between are completed by Gauss-Legendre.
  const int n = 4096;
  z_step_ = profile_->length() / n;
  z_table_.assign(n + 1, 0.0);
  z_table_[0] = -radius_;
  static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                               0.9061798459386640};
  static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                               0.4786286704993665, 0.2369268850561891};
  for (int i = 0; i < n; ++i) {
    const double lo = i * z_step_;
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) {
      const double s = lo + 0.5 * z_step_ * (gx[k] + 1.0);
      const double d = profile_->dr(s);
      acc += gw[k] * std::sqrt(std::max(0.0, 1.0 - d * d));
    }
    z_table_[i + 1] = z_table_[i] + 0.5 * z_step_ * acc;
  }
}

double RevolutionSurface::height(double s) const {
  if (kind_ == SurfaceKind::RoundSphere) return -radius_ * std::cos(s / radius_);
  s = std::clamp(s, 0.0, profile_->length());
  const int n = static_cast<int>(z_table_.size()) - 1;
  const int i = std::min(n - 1, static_cast<int>(s / z_step_));
  const double lo = i * z_step_;
  const double span = s - lo;
  static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                               0.9061798459386640};
  static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                               0.4786286704993665, 0.2369268850561891};
  double acc = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double t = lo + 0.5 * span * (gx[k] + 1.0);
    const double d = profile_->dr(t);
    acc += gw[k] * std::sqrt(std::max(0.0, 1.0 - d * d));
  }
  return z_table_[i] + 0.5 * span * acc;
}

double RevolutionSurface::cap_domain_limit() const { return 1.2 * radius_; }
double RevolutionSurface::band_domain_limit() const { return 0.25 * radius_; }

double RevolutionSurface::pou_cap(double s_from_pole) const {
  return 1.0 - smooth_step((s_from_pole - a0_) / (a1_ - a0_));
}

bool RevolutionSurface::in_domain(int chart, const Vec2& x) const {
  if (!x.allFinite()) return false;
  if (chart == kBand) {
    const double b = band_domain_limit();
    return x[0] > b && x[0] < profile_->length() - b;
  }
  if (chart == kCapA || chart == kCapB)
    return x.norm() < std::tan(cap_domain_limit() / (2.0 * radius_));
  return false;
}

Mat2 RevolutionSurface::tensor(int chart, const Vec2& x) const {
  if (chart == kBand) {
    const double r = profile_->r(x[0]);
    Mat2 g;
    g << 1.0, 0.0, 0.0, r * r;
    return g;
  }
  const double f = 2.0 * radius_ / (1.0 + x.squaredNorm());
  return f * f * Mat2::Identity();
}

Vec2 RevolutionSurface::param(const SurfacePoint& p) const {
  if (p.chart == kBand) return {p.x[0], wrap(p.x[1], kTwoPi)};
  const double rho = p.x.norm();
  const double sp = 2.0 * radius_ * std::atan(rho);
  const double theta = rho > 0.0 ? wrap(std::atan2(p.x[1], p.x[0]), kTwoPi) : 0.0;
  if (p.chart == kCapA) return {sp, theta};
  if (p.chart == kCapB) return {profile_->length() - sp, theta};
  throw DomainError("unknown chart id");
}

Vec2 RevolutionSurface::to_chart(const SurfacePoint& p, int chart) const {
  if (p.chart == chart) return p.x;
  const Vec2 u = param(p);
  Vec2 out;
  if (chart == kBand) {
    out = u;
  } else if (chart == kCapA || chart == kCapB) {
    const double sp = chart == kCapA ? u[0] : profile_->length() - u[0];
    const double rho = std::tan(sp / (2.0 * radius_));
    out = Vec2(rho * std::cos(u[1]), rho * std::sin(u[1]));
  } else {
    throw DomainError("unknown chart id");
  }
  if (!in_domain(chart, out)) throw DomainError("point not covered by requested chart");
  return out;
}

Vec2 RevolutionSurface::lift_near(const SurfacePoint& p, const SurfacePoint& ref) const {
  Vec2 x = to_chart(p, ref.chart);
  if (ref.chart == kBand) x[1] -= kTwoPi * std::round((x[1] - ref.x[1]) / kTwoPi);
  return x;
}

SurfacePoint RevolutionSurface::from_param(const Vec2& u) const {
  const double len = profile_->length();
  const double s = std::clamp(u[0], 0.0, len);
  const double theta = u[1];
  if (s >= 0.5 * radius_ && s <= len - 0.5 * radius_) return {kBand, Vec2(s, theta)};
  const bool near_a = s < 0.5 * len;
  const double sp = near_a ? s : len - s;
  const double rho = std::tan(sp / (2.0 * radius_));
  return {near_a ? kCapA : kCapB, Vec2(rho * std::cos(theta), rho * std::sin(theta))};
}

SurfacePoint RevolutionSurface::normalize(const SurfacePoint& p) const {
  if (well_placed(p)) return p;
  const Vec2 u = param(p);
  SurfacePoint q = from_param(u);
  if (q.chart == kBand && p.chart == kBand) q.x[1] = p.x[1];
  return q;
}

bool RevolutionSurface::well_placed(const SurfacePoint& p) const {
  if (p.chart == kBand) {
    return p.x[0] >= 0.4 * radius_ && p.x[0] <= profile_->length() - 0.4 * radius_;
  }
  return p.x.norm() <= std::tan(1.0 * radius_ / (2.0 * radius_));
}

Eigen::VectorXd RevolutionSurface::embed(const SurfacePoint& p) const {
  const Vec2 u = param(p);
  const double r = profile_->r(u[0]);
  Eigen::VectorXd e(3);
  e << r * std::cos(u[1]), r * std::sin(u[1]), height(u[0]);
  return e;
}

double RevolutionSurface::distance_bound(const SurfacePoint& p, const SurfacePoint& q) const {
  const Eigen::Vector3d a = embed(p);
  const Eigen::Vector3d b = embed(q);
  if (kind_ == SurfaceKind::RoundSphere)
    return radius_ * std::atan2(a.cross(b).norm(), a.dot(b));
  return (a - b).norm();
}

std::vector<QuadratureNode> RevolutionSurface::quadrature(int resolution) const {
  const int n = std::max(2, resolution);
  const double len = profile_->length();
  std::vector<QuadratureNode> nodes;
  nodes.reserve(3 * static_cast<std::size_t>(n) * n);

  const double rho = std::tan(a1_ / (2.0 * radius_));
  const double h = 2.0 * rho / n;
  for (int chart : {kCapA, kCapB}) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Vec2 x(-rho + (i + 0.5) * h, -rho + (j + 0.5) * h);
        const double sp = 2.0 * radius_ * std::atan(x.norm());
        const double w = pou_cap(sp);
        if (w > 0.0) nodes.push_back({{chart, x}, w * h * h});
      }
    }
  }

  const double s_lo = a0_;
  const double s_hi = len - a0_;
  const double hs = (s_hi - s_lo) / n;
  const double ht = kTwoPi / n;
  for (int i = 0; i < n; ++i) {
    const double s = s_lo + (i + 0.5) * hs;
    const double w = 1.0 - pou_cap(s) - pou_cap(len - s);
    if (w <= 0.0) continue;
    for (int j = 0; j < n; ++j) nodes.push_back({{kBand, Vec2(s, (j + 0.5) * ht)}, w * hs * ht});
  }
  return nodes;
}

Vec2 RevolutionSurface::param_extent() const { return {profile_->length(), kTwoPi}; }

std::shared_ptr<FlatTorus> make_flat_torus(double lx, double ly) {
  return std::make_shared<FlatTorus>(lx, ly);
}

std::shared_ptr<RevolutionSurface> make_round_sphere(double radius) {
  return std::make_shared<RevolutionSurface>(std::make_shared<SphereProfile>(radius),
                                             SurfaceKind::RoundSphere);
}

std::shared_ptr<RevolutionSurface> make_dumbbell(double bulb_radius, double neck_radius, double beta) {
  auto profile = std::make_shared<DumbbellProfile>(bulb_radius, neck_radius, beta);
  auto s = std::make_shared<RevolutionSurface>(profile, SurfaceKind::Dumbbell);
  s->set_injectivity_bound(neck_radius);
  return s;
}

}  // namespace sgn
