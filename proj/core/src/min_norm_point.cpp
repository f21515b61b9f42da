#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sgn/equidist.hpp"
#include "sgn/errors.hpp"

namespace sgn {
namespace {

// Affine minimizer of |sum mu_i p_i| with sum mu_i = 1 over the columns in s.
Eigen::VectorXd affine_min(const Eigen::MatrixXd& pts, const std::vector<int>& s) {
  const int k = static_cast<int>(s.size());
  Eigen::MatrixXd a(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = pts.col(s[i]).dot(pts.col(s[j]));
  a.row(k).setOnes();
  a.col(k).setOnes();
  a(k, k) = 0.0;
  rhs[k] = 1.0;
  return a.completeOrthogonalDecomposition().solve(rhs).head(k);
}

}  // namespace

MinNormPoint min_norm_point(const Eigen::MatrixXd& points, int max_iterations, double tol) {
  const int n = static_cast<int>(points.cols());
  if (n == 0) throw DomainError("min-norm point of an empty set");
  MinNormPoint res;
  int start = 0;
  for (int i = 1; i < n; ++i)
    if (points.col(i).squaredNorm() < points.col(start).squaredNorm()) start = i;
  std::vector<int> s{start};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd x = points.col(start);
  const double scale = std::max(1.0, points.colwise().squaredNorm().maxCoeff());

  for (int it = 0; it < max_iterations; ++it) {
    res.iterations = it + 1;
    int j = 0;
    double best = x.dot(points.col(0));
    for (int i = 1; i < n; ++i) {
      const double v = x.dot(points.col(i));
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (x.squaredNorm() - best <= tol * scale || std::find(s.begin(), s.end(), j) != s.end()) break;
    s.push_back(j);
    lambda.push_back(0.0);
    for (int minor = 0; minor < 4 * n + 8; ++minor) {
      const Eigen::VectorXd mu = affine_min(points, s);
      if (mu.minCoeff() > 1e-14) {
        lambda.assign(mu.data(), mu.data() + mu.size());
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (mu[i] <= 1e-14) theta = std::min(theta, lambda[i] / (lambda[i] - mu[i]));
      std::vector<int> s2;
      std::vector<double> l2;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double v = lambda[i] + theta * (mu[i] - lambda[i]);
        if (v > 1e-14) {
          s2.push_back(s[i]);
          l2.push_back(v);
        }
      }
      if (s2.empty()) {
        s2.push_back(s.back());
        l2.push_back(1.0);
      }
      s = std::move(s2);
      lambda = std::move(l2);
    }
    const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    x.setZero();
    for (std::size_t i = 0; i < s.size(); ++i) {
      lambda[i] /= total;
      x += lambda[i] * points.col(s[i]);
    }
  }
  res.point = x;
  res.support = s;
  res.weights = lambda;
  return res;
}

ConvexSearchResult convex_gradient_search(const std::vector<GradientSample>& samples, double eta, int levels,
                                          int max_iterations) {
  ConvexSearchResult res;
  if (samples.empty()) {
    res.reason = "no samples";
    return res;
  }
  const int N = static_cast<int>(samples[0].gradient.size());
  const int n = static_cast<int>(samples.size());
  double radius = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) radius = std::max(radius, (samples[a].point - samples[b].point).norm());
  if (radius == 0.0) radius = 1.0;

  bool any_cluster = false;
  double best_norm = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= levels; ++level, radius *= 0.5) {
    for (int c = 0; c < n; ++c) {
      std::vector<int> members;
      for (int i = 0; i < n; ++i)
        if ((samples[i].point - samples[c].point).norm() <= radius) members.push_back(i);
      if (static_cast<int>(members.size()) < N + 1) continue;
      any_cluster = true;
      Eigen::MatrixXd pts(N, members.size());
      for (std::size_t i = 0; i < members.size(); ++i) pts.col(i) = samples[members[i]].gradient;
      const MinNormPoint mp = min_norm_point(pts, max_iterations);
      // Recompute the combination from the returned weights.
      Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
      for (std::size_t i = 0; i < mp.support.size(); ++i) v += mp.weights[i] * pts.col(mp.support[i]);
      const double norm = v.norm();
      best_norm = std::min(best_norm, norm);
      if (norm >= eta) continue;
      res.found = true;
      res.norm = norm;
      res.radius = radius;
      for (std::size_t i = 0; i < mp.support.size(); ++i) {
        res.indices.push_back(members[mp.support[i]]);
        res.weights.push_back(mp.weights[i]);
      }
      // Pad with zero-weight cluster members up to N + 1 indices.
      for (int m : members) {
        if (static_cast<int>(res.indices.size()) >= N + 1) break;
        if (std::find(res.indices.begin(), res.indices.end(), m) == res.indices.end()) {
          res.indices.push_back(m);
          res.weights.push_back(0.0);
        }
      }
      return res;
    }
  }
  res.reason = any_cluster ? "no cluster hull within eta of the origin (best " + std::to_string(best_norm) + ")"
                           : "fewer than N + 1 samples in every cluster";
  return res;
}

}  // namespace sgn
