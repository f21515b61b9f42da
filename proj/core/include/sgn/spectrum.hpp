#pragma once

#include <vector>

#include "sgn/length_model.hpp"

namespace sgn {

// Generalized eigenvalues of the reduced second variation against the lumped
// mass, ascending. No stationarity check.
std::vector<double> model_spectrum(const LengthModel& model, double hessian_step = 1e-5);

// The k smallest eigenvalues. Requires total_first_variation_norm <= 1e-6
// (PreconditionError otherwise).
std::vector<double> second_variation_spectrum(const GammaNet& net, const Metric& metric, int k,
                                              double hessian_step = 1e-5);

// True iff no eigenvalue lies within tol of zero.
bool is_nondegenerate(const GammaNet& net, const Metric& metric, double tol = 0.05);

// Number of eigenvalues below -tol.
int morse_index(const GammaNet& net, const Metric& metric, double tol = 0.05);

}  // namespace sgn
