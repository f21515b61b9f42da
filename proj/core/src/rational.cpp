#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "sgn/equidist.hpp"
#include "sgn/errors.hpp"

namespace sgn {

namespace mp = boost::multiprecision;

bool verify_rational_weights(const std::vector<double>& alpha, const std::vector<double>& lengths, int m,
                             const RationalWeights& w) {
  const std::size_t J = alpha.size();
  if (w.c.size() != J || lengths.size() != J || w.d < 1 || m < 1) return false;
  const mp::cpp_rational d(w.d);
  const mp::cpp_rational mJ(static_cast<long long>(m) * static_cast<long long>(J));
  for (std::size_t j = 0; j < J; ++j) {
    if (w.c[j] < 0) return false;
    const mp::cpp_rational a(alpha[j]);
    const mp::cpp_rational len(lengths[j]);
    // |a / L - c / d| < 1 / (m J L)  <=>  |a d - c L| m J < d
    if (!(abs(a * d - mp::cpp_rational(w.c[j]) * len) * mJ < d)) return false;
  }
  return true;
}

RationalWeights rationalize_weights(const std::vector<double>& alpha, const std::vector<double>& lengths, int m,
                                    std::int64_t d_max) {
  const std::size_t J = alpha.size();
  if (J == 0 || lengths.size() != J) throw StructuralError("one length per weight is required");
  if (m < 1) throw DomainError("m must be positive");
  RationalWeights w;
  w.bounds.resize(J);
  w.errors.resize(J);
  w.c.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    if (!(lengths[j] > 0.0)) throw DomainError("lengths must be positive");
    if (alpha[j] < 0.0) throw DomainError("weights must be nonnegative");
    w.bounds[j] = 1.0 / (static_cast<double>(m) * J * lengths[j]);
  }
  std::vector<double> best(J, 1.0);
  for (std::int64_t d = 1; d <= d_max; ++d) {
    bool ok = true;
    for (std::size_t j = 0; j < J && ok; ++j) {
      const double x = alpha[j] / lengths[j];
      w.c[j] = std::llround(x * static_cast<double>(d));
      w.errors[j] = std::abs(x - static_cast<double>(w.c[j]) / static_cast<double>(d));
      best[j] = std::min(best[j], w.errors[j] / w.bounds[j]);
      ok = w.errors[j] < w.bounds[j] * (1.0 + 1e-9);
    }
    if (!ok) continue;
    w.d = d;
    if (verify_rational_weights(alpha, lengths, m, w)) return w;
  }
  std::string msg = "no common denominator up to d_max; best error/bound ratios:";
  for (double b : best) msg += " " + std::to_string(b);
  throw ApproximationFailure(msg);
}

}  // namespace sgn
