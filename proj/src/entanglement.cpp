#include "qcorr/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qcorr/linalg.hpp"
#include "qcorr/pauli.hpp"

namespace qcorr {

double concurrence(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) throw std::invalid_argument("concurrence: expected a 2-qubit state");
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix yy = tensor(pauli_matrix('Y'), pauli_matrix('Y'));

  const Spectrum s = eig_hermitian(m);
  if (s.values.back() < -1e-8) throw InvalidState("concurrence: state has a negative eigenvalue");
  ComplexMatrix root = hermitian_function(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });

  // l_i are the singular values of A = sqrt(rho) YY sqrt(rho)*, read off the
  // Hermitian dilation [[0, A], [A^dagger, 0]] to avoid squaring them.
  const ComplexMatrix a = root * yy * root.conjugate();
  ComplexMatrix dilation(8, 8);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      dilation(r, c + 4) = a(r, c);
      dilation(c + 4, r) = std::conj(a(r, c));
    }
  }
  const std::vector<double> values = eig_hermitian(dilation).values;
  std::array<double, 4> lam{};
  for (std::size_t i = 0; i < 4; ++i) lam[i] = std::max(values[i], 0.0);
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double eof_from_concurrence(double c) {
  if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) throw std::invalid_argument("eof_from_concurrence: C outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

}  // namespace qcorr
