// Spectral decomposition, entropies, partial traces and projective
// measurements on dense states of up to kMaxQubits qubits.

#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "qcorr/matrix.hpp"

namespace qcorr {

struct Spectrum {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k pairs with values[k]

  ComplexMatrix reconstruct() const;
};

/// Cyclic complex Jacobi. Throws InvalidState if h is not Hermitian to 1e-9.
///
/// Eigenpairs are sorted by descending eigenvalue and each eigenvector is
/// rephased so its first component above 1e-12 in magnitude is real positive.
Spectrum eig_hermitian(const ComplexMatrix& h);

/// Applies f to the spectrum of a Hermitian matrix: V f(L) V^dagger.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& h, F&& f) {
  Spectrum s = eig_hermitian(h);
  for (double& v : s.values) v = f(v);
  return s.reconstruct();
}

/// -sum x log2 x over a probability-like vector; entries below 1e-12 count as 0.
double shannon_entropy(std::span<const double> probabilities);
double binary_entropy(double x);

/// Von Neumann entropy in bits. Eigenvalues in [-1e-8, 0) are clamped to 0;
/// anything more negative throws InvalidState.
double von_neumann_entropy(const DensityMatrix& rho);

/// Reduced state on the qubits in `keep`, in the order given.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

/// <psi|rho|psi>.
double fidelity_pure(const StateVector& target, const DensityMatrix& rho);

struct QubitOutcome {
  int qubit;
  StateVector outcome;  // single-qubit state projected onto
};

struct ProjectionSpec {
  std::vector<QubitOutcome> assignments;

  /// Distinct, in-range qubit indices and single-qubit normalized outcomes.
  void validate(int n_qubits) const;
};

using State = std::variant<StateVector, DensityMatrix>;

struct Projected {
  State state;  // lives on the unprojected qubits, in increasing index order
  double probability;
};

/// Born-rule projection of some qubits followed by renormalization.
/// Throws ZeroProbability when the outcome probability is <= 1e-12.
Projected project(const State& state, const ProjectionSpec& spec);

DensityMatrix to_density(const State& state);
int n_qubits(const State& state);

}  // namespace qcorr
