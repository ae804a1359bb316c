// Derivative-free simplex minimization (Nelder-Mead) for small unconstrained
// problems.

#pragma once

#include <functional>
#include <vector>

namespace qcorr {

struct NelderMeadOptions {
  double x_tolerance = 1e-6;   // max vertex distance from the best vertex
  double f_tolerance = 1e-10;  // spread of function values over the simplex
  int max_evaluations = 2000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int evaluations;
  bool converged;
};

/// Minimizes f from an axis-aligned initial simplex x0 + step_i e_i.
/// Stops once both tolerances are met or the evaluation budget runs out.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const std::vector<double>& step,
                             const NelderMeadOptions& options = {});

}  // namespace qcorr
