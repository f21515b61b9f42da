#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "sgn/equidist.hpp"
#include "sgn/errors.hpp"
#include "sgn/parallel.hpp"

namespace sgn {

void WeightedNetFamily::validate() const {
  if (nets.empty() || nets.size() != alpha.size()) throw StructuralError("family needs one weight per net");
  double total = 0.0;
  for (double a : alpha) {
    if (!(a >= 0.0 && a <= 1.0)) throw StructuralError("weights must lie in [0, 1]");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-12) throw StructuralError("weights must sum to 1");
  if (!c.empty()) {
    if (c.size() != nets.size()) throw StructuralError("integer weights need one entry per net");
    for (auto v : c)
      if (v < 0) throw StructuralError("integer weights must be nonnegative");
    if (d < 1) throw StructuralError("common denominator must be positive");
  }
}

Eigen::VectorXd net_average(const GammaNet& net, const Metric& metric,
                            const std::function<Eigen::VectorXd(const SurfacePoint&)>& fn, int dim) {
  const Surface& surface = metric.surface();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
  double len = 0.0;
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& line = net.curve(e);
    const double n = net.multiplicity(e);
    Eigen::VectorXd ha = fn(line[0]);
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      const int c = segment_chart(line[i], line[i + 1]);
      const auto [pa, pb] = segment_coords(surface, line[i], line[i + 1]);
      const Vec2 d = pb - pa;
      const double sa = std::sqrt(d.dot(metric.tensor({c, pa}) * d));
      const double sb = std::sqrt(d.dot(metric.tensor({c, pb}) * d));
      Eigen::VectorXd hb = fn(line[i + 1]);
      acc += n * 0.5 * (sa * ha + sb * hb);
      len += n * 0.5 * (sa + sb);
      ha = std::move(hb);
    }
  }
  if (!(len > 0.0)) throw DegenerateNet("average over a zero-length net");
  return acc / len;
}

Eigen::VectorXd surface_average_vector(const Metric& metric,
                                       const std::function<Eigen::VectorXd(const SurfacePoint&)>& fn, int dim,
                                       int resolution) {
  const auto nodes = metric.surface().quadrature(resolution > 0 ? resolution : metric.quadrature_resolution());
  constexpr std::size_t kTiles = 64;
  const std::size_t n = nodes.size();
  std::vector<Eigen::VectorXd> part(kTiles, Eigen::VectorXd::Zero(dim));
  std::vector<double> vol(kTiles, 0.0);
  parallel_for(kTiles, [&](std::size_t t) {
    for (std::size_t i = n * t / kTiles; i < n * (t + 1) / kTiles; ++i) {
      const double w = nodes[i].weight * std::sqrt(metric.tensor(nodes[i].p).determinant());
      part[t] += w * fn(nodes[i].p);
      vol[t] += w;
    }
  });
  Eigen::VectorXd total = Eigen::VectorXd::Zero(dim);
  double v = 0.0;
  for (std::size_t t = 0; t < kTiles; ++t) {
    total += part[t];
    v += vol[t];
  }
  return total / v;
}

DiscrepancyReport discrepancy(const WeightedNetFamily& family, const Metric& metric, const BumpSystem& bumps) {
  family.validate();
  const int K = bumps.size();
  auto psi = [&](const SurfacePoint& p) { return bumps.psi_all(p); };
  const Eigen::VectorXd volume_avg = surface_average_vector(metric, psi, K);
  std::vector<Eigen::VectorXd> net_avgs(family.nets.size());
  parallel_for(family.nets.size(), [&](std::size_t j) { net_avgs[j] = net_average(family.nets[j], metric, psi, K); });
  Eigen::VectorXd mix = Eigen::VectorXd::Zero(K);
  for (std::size_t j = 0; j < net_avgs.size(); ++j) mix += family.alpha[j] * net_avgs[j];

  DiscrepancyReport rep;
  rep.D.resize(K);
  for (int k = 0; k < K; ++k) {
    rep.D[k] = std::abs(mix[k] - volume_avg[k]);
    rep.max = std::max(rep.max, rep.D[k]);
    rep.sum += rep.D[k];
  }
  rep.threshold = bumps.eps1() / K;
  rep.pass = rep.max < rep.threshold;
  return rep;
}

BoundCheck discrepancy_bound_check(const WeightedNetFamily& family, const Metric& metric, const BumpSystem& bumps,
                                   const ScalarField& f, double f_sup, double grad_sup) {
  const DiscrepancyReport rep = discrepancy(family, metric, bumps);
  auto fv = [&](const SurfacePoint& p) { return Eigen::VectorXd::Constant(1, f(p)); };
  double mix = 0.0;
  for (std::size_t j = 0; j < family.nets.size(); ++j)
    mix += family.alpha[j] * net_average(family.nets[j], metric, fv, 1)[0];
  BoundCheck b;
  b.lhs = std::abs(mix - surface_average_vector(metric, fv, 1)[0]);
  b.rhs = f_sup * rep.sum + 2.0 * grad_sup * bumps.eps1();
  // Compare the computed doubles exactly: rhs rebuilt from its terms in rational arithmetic.
  using boost::multiprecision::cpp_rational;
  cpp_rational sum = 0;
  for (double d : rep.D) sum += cpp_rational(d);
  const cpp_rational rhs = cpp_rational(f_sup) * sum + cpp_rational(2) * cpp_rational(grad_sup) * cpp_rational(bumps.eps1());
  b.holds = cpp_rational(b.lhs) <= rhs;
  return b;
}

std::vector<double> running_ratio(const std::vector<GammaNet>& sequence, const ScalarField& f, const Metric& metric) {
  std::vector<double> ints(sequence.size()), lens(sequence.size());
  parallel_for(sequence.size(), [&](std::size_t i) {
    ints[i] = integrate(sequence[i], f, metric);
    lens[i] = length(sequence[i], metric);
  });
  std::vector<double> out;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    num += ints[i];
    den += lens[i];
    out.push_back(den > 0.0 ? num / den : 0.0);
  }
  return out;
}

double torus_mode_line_integral(int k) {
  // sin(2 pi k t) sin(2 pi t) = (cos(2 pi (k - 1) t) - cos(2 pi (k + 1) t)) / 2
  const double len = std::sqrt(static_cast<double>(k) * k + 1.0);
  return len * (0.5 * (k == 1) - 0.5 * (k == -1));
}

}  // namespace sgn
