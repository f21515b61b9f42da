#include "sgn/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <optional>

#include "sgn/errors.hpp"
#include "sgn/length_model.hpp"
#include "sgn/spectrum.hpp"

namespace sgn {

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::MaxIterations: return "max_iterations";
    case SolverStatus::Stalled: return "stalled";
    case SolverStatus::EdgeCollapse: return "edge_collapse";
  }
  return "unknown";
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

std::optional<Eigen::VectorXd> damped_step(const SpMat& h, const Eigen::VectorXd& mass, double mu,
                                           const Eigen::VectorXd& r, bool require_pd) {
  SpMat a = h;
  for (int i = 0; i < a.rows(); ++i) a.coeffRef(i, i) += mu * mass[i];
  a.makeCompressed();
  Eigen::SimplicialLDLT<SpMat> ldlt(a);
  if (ldlt.info() == Eigen::Success) {
    const Eigen::VectorXd d = ldlt.vectorD();
    const bool pd = d.size() == 0 || d.minCoeff() > 0.0;
    // LDLT without pivoting is unreliable on indefinite matrices; use LU there.
    if (pd) {
      Eigen::VectorXd x = ldlt.solve(-r);
      if (ldlt.info() == Eigen::Success && x.allFinite()) return x;
    }
    if (require_pd) return std::nullopt;
  }
  if (require_pd) return std::nullopt;
  Eigen::SparseLU<SpMat> lu(a);
  if (lu.info() != Eigen::Success) return std::nullopt;
  Eigen::VectorXd x = lu.solve(-r);
  if (lu.info() != Eigen::Success || !x.allFinite()) return std::nullopt;
  return x;
}

// Edges whose segment spacing has drifted are resampled to uniform arclength.
bool respace(GammaNet& net, const Metric& metric, double ratio) {
  bool changed = false;
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& line = net.curve(e);
    if (line.size() < 3) continue;
    double lo = 1e300;
    double hi = 0.0;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      const double s = segment_length(metric, line[i], line[i + 1]);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (lo > 0.0 && hi / lo > ratio) {
      net.curves()[e] = resample_polyline(metric, line, 0);
      changed = true;
    }
  }
  if (changed) net.sync_endpoints(metric.surface());
  return changed;
}

std::vector<int> short_edges(const GammaNet& net, const Metric& metric, double floor) {
  std::vector<int> out;
  for (int e = 0; e < net.edge_count(); ++e)
    if (edge_length(net, metric, e) < floor) out.push_back(e);
  return out;
}

}  // namespace

SolveResult solve_stationary(const GammaNet& init, const Metric& metric, const SolverOptions& opts) {
  if (!init.graph().all_good()) throw PreconditionError("solver needs good components");
  const double floor = opts.length_floor_factor * metric.injectivity_bound();

  SolveResult res;
  GammaNet net = init;
  net.sync_endpoints(metric.surface());
  respace(net, metric, opts.spacing_ratio);
  auto model = std::make_unique<LengthModel>(metric, net);
  double len = model->length();
  res.length_history.push_back(len);
  double mu = opts.initial_damping;
  int polish = 0;
  bool converged = false;

  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it + 1;
    model->build_frames();
    const Eigen::VectorXd r = model->reduced_gradient();
    const double rn = r.norm();
    if (rn <= opts.tolerance) {
      converged = true;
      if (polish >= opts.polish_steps || rn == 0.0) break;
    }
    const SpMat h = model->reduced_hessian(opts.hessian_step);
    const Eigen::VectorXd mass = model->lumped_mass();

    std::unique_ptr<LengthModel> next;
    double next_len = len;
    bool newton_taken = false;
    if (opts.mode == SolverMode::Auto && !converged) {
      const auto step = damped_step(h, mass, 1e-12, r, false);
      if (step && step->cwiseAbs().maxCoeff() <= opts.max_newton_step * metric.injectivity_bound()) {
        auto trial = std::make_unique<LengthModel>(*model);
        try {
          trial->apply(*step);
          trial->build_frames();
          if (trial->reduced_gradient().norm() <= 0.5 * rn) {
            next_len = trial->length();
            next = std::move(trial);
            newton_taken = true;
          }
        } catch (const DomainError&) {
        }
      }
    }
    if (!next && opts.mode != SolverMode::Critical && !converged) {
      for (int tries = 0; tries < 40 && !next; ++tries) {
        const auto step = damped_step(h, mass, mu, r, true);
        if (!step) {
          mu = std::max(mu * 10.0, 1e-8);
          continue;
        }
        auto trial = std::make_unique<LengthModel>(*model);
        double tl = 0.0;
        try {
          trial->apply(*step);
          tl = trial->length();
        } catch (const DomainError&) {
          mu = std::max(mu * 10.0, 1e-8);
          continue;
        }
        if (tl <= len + 1e-4 * r.dot(*step) + 1e-13 * std::abs(len)) {
          next = std::move(trial);
          next_len = tl;
          mu = std::max(mu / 10.0, 1e-12);
        } else {
          mu = std::max(mu * 10.0, 1e-8);
        }
      }
    } else if (!next) {
      const auto step = damped_step(h, mass, 1e-12, r, false);
      if (step) {
        double alpha = 1.0;
        for (int tries = 0; tries < 30 && !next; ++tries, alpha *= 0.5) {
          auto trial = std::make_unique<LengthModel>(*model);
          double tn = 0.0;
          try {
            trial->apply(alpha * *step);
            trial->build_frames();
            tn = trial->reduced_gradient().norm();
          } catch (const DomainError&) {
            continue;
          }
          if (tn < rn) {
            next_len = trial->length();
            next = std::move(trial);
          }
        }
      }
    }

    if (!next) {
      if (!converged) res.status = SolverStatus::Stalled;
      break;
    }
    if (converged) ++polish;
    if (next_len > len + 1e-13 * std::abs(len) && opts.mode != SolverMode::Critical && !newton_taken && !converged)
      res.monotone = false;
    len = next_len;
    res.length_history.push_back(len);

    net = next->to_net();
    const auto collapsed = short_edges(net, metric, floor);
    if (!collapsed.empty()) {
      res.status = SolverStatus::EdgeCollapse;
      res.collapsed_edges = collapsed;
      res.net = net;
      try {
        res.report = stationarity_residual(net, metric);
      } catch (const DegenerateNet&) {
        res.report.length = length(net, metric);
      }
      return res;
    }
    if (respace(net, metric, opts.spacing_ratio)) {
      next = std::make_unique<LengthModel>(metric, net);
      len = next->length();
    }
    model = std::move(next);
  }

  res.net = model->to_net();
  if (converged) res.status = SolverStatus::Converged;
  else if (res.status != SolverStatus::Stalled) res.status = SolverStatus::MaxIterations;
  res.report = stationarity_residual(res.net, metric);
  if (opts.detect_degenerate_family && converged) {
    model->build_frames();
    const auto ev = model_spectrum(*model, opts.hessian_step);
    res.degenerate_family =
        std::any_of(ev.begin(), ev.end(), [&](double v) { return std::abs(v) <= opts.degeneracy_tolerance; });
  }
  return res;
}

}  // namespace sgn
