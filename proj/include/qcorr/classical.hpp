// Classical correlations J(beta|alpha) of a two-qubit state, maximized over
// orthogonal projective measurements on alpha.

#pragma once

#include "qcorr/matrix.hpp"

namespace qcorr {

/// The measurement {|t1><t1|, |t2><t2|} with
///   |t1> = cos(theta)|0> + e^{i phi} sin(theta)|1>,
///   |t2> = e^{-i phi} sin(theta)|0> - cos(theta)|1>.
struct MeasurementDirection {
  double theta = 0.0;  // [0, pi/2]
  double phi = 0.0;    // [0, 2 pi)

  StateVector first() const;
  StateVector second() const;

  /// Same |t1>, with theta folded into [0, pi/2] and phi into [0, 2 pi).
  MeasurementDirection canonical() const;
};

struct ClassicalOptions {
  int grid = 64;                  // grid x grid points over theta and phi
  double angle_tolerance = 1e-6;  // simplex refinement, radians
  double value_tolerance = 1e-10; // simplex refinement, bits
  int max_evaluations = 4000;
};

struct ClassicalResult {
  double J;        // bits, >= 0
  double grid_J;   // best value of the grid stage alone
  MeasurementDirection optimum;
};

/// sum_i q_i S(rho_beta | i) for the measurement `dir` on qubit `measured`
/// (0 or 1) of a two-qubit state; beta is the other qubit. Branches with
/// probability below 1e-12 are dropped.
double conditional_entropy(const DensityMatrix& pair, int measured, const MeasurementDirection& dir);

/// S(beta) - min over directions of conditional_entropy. A grid search picks
/// the start (ties resolved toward smaller theta, then smaller phi) and a
/// Nelder-Mead simplex refines it.
ClassicalResult classical_correlations(const DensityMatrix& pair, int measured, const ClassicalOptions& options = {});

}  // namespace qcorr
