// Two-qubit entanglement: Wootters concurrence and entanglement of formation.

#pragma once

#include "qcorr/matrix.hpp"

namespace qcorr {

/// max(0, l1 - l2 - l3 - l4) where l_i are the descending square roots of the
/// eigenvalues of rho (Y(x)Y) rho* (Y(x)Y).
///
/// The l_i are computed as the singular values of sqrt(rho) (Y(x)Y) sqrt(rho)*,
/// whose squares are that spectrum.
double concurrence(const DensityMatrix& rho);

/// h((1 + sqrt(1 - C^2)) / 2) in bits.
double eof_from_concurrence(double c);

}  // namespace qcorr
