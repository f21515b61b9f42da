#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

namespace sgn {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// A point on a surface, given by a chart id and coordinates in that chart.
/// For periodic charts the coordinates may be any lift.
struct SurfacePoint {
  int chart = 0;
  Vec2 x = Vec2::Zero();
};

enum class SurfaceKind { FlatTorus, RoundSphere, Dumbbell };

std::string to_string(SurfaceKind kind);

/// Quadrature node: a point with its chart-measure weight. The partition of
/// unity subordinate to the charts is already folded into the weight, so
/// integrals are sum(weight * sqrt(det g) * f).
struct QuadratureNode {
  SurfacePoint p;
  double weight = 0.0;
};

/// Chart atlas of a closed surface together with a base metric tensor.
class Surface {
 public:
  virtual ~Surface() = default;

  virtual SurfaceKind kind() const = 0;
  virtual int chart_count() const = 0;
  virtual bool in_domain(int chart, const Vec2& x) const = 0;

  /// Base metric components in the given chart. No domain check.
  virtual Mat2 tensor(int chart, const Vec2& x) const = 0;

  /// Coordinates of p in `chart`. Throws DomainError when p is not covered.
  virtual Vec2 to_chart(const SurfacePoint& p, int chart) const = 0;

  /// Coordinates of p in the chart of `ref`, choosing the periodic lift
  /// nearest to ref.x.
  virtual Vec2 lift_near(const SurfacePoint& p, const SurfacePoint& ref) const = 0;

  /// Same point re-expressed in its preferred chart (away from chart edges).
  virtual SurfacePoint normalize(const SurfacePoint& p) const = 0;

  /// True when p sits comfortably inside its chart.
  virtual bool well_placed(const SurfacePoint& p) const = 0;

  /// Global parameter coordinates: (x, y) wrapped to the period cell on the
  /// torus, (meridian arclength s, angle theta in [0, 2pi)) on surfaces of
  /// revolution.
  virtual Vec2 param(const SurfacePoint& p) const = 0;
  virtual SurfacePoint from_param(const Vec2& u) const = 0;

  /// Isometric (torus: Clifford, R^4) or standard (R^3) embedding.
  virtual Eigen::VectorXd embed(const SurfacePoint& p) const = 0;

  /// Base-metric distance: exact when distance_is_exact(), otherwise a
  /// certified lower bound (ambient chord).
  virtual double distance_bound(const SurfacePoint& p, const SurfacePoint& q) const = 0;
  virtual bool distance_is_exact() const = 0;

  /// Midpoint nodes on uniform chart grids, resolution x resolution per chart.
  virtual std::vector<QuadratureNode> quadrature(int resolution) const = 0;

  /// Period lengths of the parameter rectangle (for grids and partitions).
  virtual Vec2 param_extent() const = 0;

  /// Jacobian of the transition from p's chart to `chart` at p.
  Mat2 transition_jacobian(const SurfacePoint& p, int chart) const;

  double injectivity_bound() const { return injectivity_bound_; }
  void set_injectivity_bound(double v);

  /// Same point on the surface, up to `tol` in the embedding.
  bool same_point(const SurfacePoint& a, const SurfacePoint& b, double tol = 1e-9) const;

 protected:
  double injectivity_bound_ = 1.0;
};

/// Flat torus R^2 / (Lx Z x Ly Z), one periodic chart.
class FlatTorus final : public Surface {
 public:
  explicit FlatTorus(double lx = 1.0, double ly = 1.0);

  SurfaceKind kind() const override { return SurfaceKind::FlatTorus; }
  int chart_count() const override { return 1; }
  bool in_domain(int chart, const Vec2& x) const override;
  Mat2 tensor(int chart, const Vec2& x) const override;
  Vec2 to_chart(const SurfacePoint& p, int chart) const override;
  Vec2 lift_near(const SurfacePoint& p, const SurfacePoint& ref) const override;
  SurfacePoint normalize(const SurfacePoint& p) const override { return p; }
  bool well_placed(const SurfacePoint&) const override { return true; }
  Vec2 param(const SurfacePoint& p) const override;
  SurfacePoint from_param(const Vec2& u) const override { return {0, u}; }
  Eigen::VectorXd embed(const SurfacePoint& p) const override;
  double distance_bound(const SurfacePoint& p, const SurfacePoint& q) const override;
  bool distance_is_exact() const override { return true; }
  std::vector<QuadratureNode> quadrature(int resolution) const override;
  Vec2 param_extent() const override { return {lx_, ly_}; }

  double lx() const { return lx_; }
  double ly() const { return ly_; }

 private:
  double lx_;
  double ly_;
};

/// Meridian profile r(s) of a surface of revolution, s in [0, length()].
/// Near both poles the profile must be exactly spherical of radius
/// cap_radius() up to arclength cap_extent() from the pole.
class Profile {
 public:
  virtual ~Profile() = default;
  virtual double r(double s) const = 0;
  virtual double dr(double s) const = 0;
  virtual double ddr(double s) const = 0;
  virtual double length() const = 0;
  virtual double cap_radius() const = 0;
  virtual double cap_extent() const = 0;
};

class SphereProfile final : public Profile {
 public:
  explicit SphereProfile(double radius = 1.0) : radius_(radius) {}
  double r(double s) const override;
  double dr(double s) const override;
  double ddr(double s) const override;
  double length() const override;
  double cap_radius() const override { return radius_; }
  double cap_extent() const override { return 0.5 * length(); }

 private:
  double radius_;
};

/// Two round spheres of radius R joined by a neck of radius r_n. The bulbs are
/// exact spheres up to polar angle pi/2 + beta; the neck is
/// r = r_n + A (1 - cos(omega u)) around its midpoint, matched with value,
/// slope and curvature (C^2 profile).
class DumbbellProfile final : public Profile {
 public:
  DumbbellProfile(double bulb_radius = 1.0, double neck_radius = 0.1, double beta = 0.6);
  double r(double s) const override;
  double dr(double s) const override;
  double ddr(double s) const override;
  double length() const override { return total_; }
  double cap_radius() const override { return radius_; }
  double cap_extent() const override { return junction_; }

  double neck_radius() const { return neck_; }
  double junction() const { return junction_; }
  double neck_half_length() const { return half_neck_; }
  /// Arclength of the bulb equators (parallels of length 2 pi R).
  double equator_a() const;
  double equator_b() const;
  double neck_position() const { return 0.5 * total_; }

 private:
  double radius_;
  double neck_;
  double beta_;
  double junction_ = 0.0;   // s where bulb A ends
  double half_neck_ = 0.0;  // half length of the neck piece
  double amp_ = 0.0;
  double omega_ = 0.0;
  double total_ = 0.0;
};

/// Surface of revolution with three charts: stereographic caps around both
/// poles (charts 0 and 1) and a band chart (s, theta) (chart 2).
class RevolutionSurface final : public Surface {
 public:
  static constexpr int kCapA = 0;
  static constexpr int kCapB = 1;
  static constexpr int kBand = 2;

  RevolutionSurface(std::shared_ptr<const Profile> profile, SurfaceKind kind);

  SurfaceKind kind() const override { return kind_; }
  int chart_count() const override { return 3; }
  bool in_domain(int chart, const Vec2& x) const override;
  Mat2 tensor(int chart, const Vec2& x) const override;
  Vec2 to_chart(const SurfacePoint& p, int chart) const override;
  Vec2 lift_near(const SurfacePoint& p, const SurfacePoint& ref) const override;
  SurfacePoint normalize(const SurfacePoint& p) const override;
  bool well_placed(const SurfacePoint& p) const override;
  Vec2 param(const SurfacePoint& p) const override;
  SurfacePoint from_param(const Vec2& u) const override;
  Eigen::VectorXd embed(const SurfacePoint& p) const override;
  double distance_bound(const SurfacePoint& p, const SurfacePoint& q) const override;
  bool distance_is_exact() const override { return kind_ == SurfaceKind::RoundSphere; }
  std::vector<QuadratureNode> quadrature(int resolution) const override;
  Vec2 param_extent() const override;

  const Profile& profile() const { return *profile_; }
  /// Point at meridian arclength s and angle theta, in its preferred chart.
  SurfacePoint at(double s, double theta) const { return from_param({s, theta}); }
  /// Height of the embedding, z(s) with z(0) = -R.
  double height(double s) const;

 private:
  double cap_domain_limit() const;  // cap charts cover s < this
  double band_domain_limit() const;  // band covers (this, L - this)
  double pou_cap(double s_from_pole) const;

  std::shared_ptr<const Profile> profile_;
  SurfaceKind kind_;
  double radius_;
  double a0_;
  double a1_;
  std::vector<double> z_table_;
  double z_step_ = 0.0;
};

std::shared_ptr<FlatTorus> make_flat_torus(double lx = 1.0, double ly = 1.0);
std::shared_ptr<RevolutionSurface> make_round_sphere(double radius = 1.0);
std::shared_ptr<RevolutionSurface> make_dumbbell(double bulb_radius = 1.0, double neck_radius = 0.1,
                                                 double beta = 0.6);

}  // namespace sgn
