#include "qcorr/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

int label_rank(char c) {
  switch (c) {
    case 'X': return 0;
    case 'Y': return 1;
    case 'Z': return 2;
    default: return 3;
  }
}

}  // namespace

PauliString::PauliString(std::string labels) : labels_(std::move(labels)) {
  if (labels_.empty() || labels_.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("PauliString: length must be in [1, 8]");
  }
  for (char& c : labels_) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument("PauliString: invalid label '" + std::string(1, c) + "'");
    }
  }
}

bool PauliString::is_identity() const {
  return std::all_of(labels_.begin(), labels_.end(), [](char c) { return c == 'I'; });
}

std::string PauliString::class_key() const {
  std::string key = labels_;
  std::sort(key.begin(), key.end(), [](char a, char b) { return label_rank(a) < label_rank(b); });
  return key;
}

ComplexMatrix pauli_matrix(char label) {
  const cplx i{0.0, 1.0};
  switch (label) {
    case 'I': return ComplexMatrix::identity(2);
    case 'X': return {{0.0, 1.0}, {1.0, 0.0}};
    case 'Y': return {{0.0, -i}, {i, 0.0}};
    case 'Z': return {{1.0, 0.0}, {0.0, -1.0}};
    default: throw std::invalid_argument("pauli_matrix: invalid label");
  }
}

ComplexMatrix PauliString::matrix() const {
  ComplexMatrix m = pauli_matrix(labels_[0]);
  for (std::size_t q = 1; q < labels_.size(); ++q) m = tensor(m, pauli_matrix(labels_[q]));
  return m;
}

double pauli_expectation(const ComplexMatrix& rho, const PauliString& p) {
  const int n = p.n_qubits();
  if (rho.rows() != (std::size_t{1} << n) || !rho.is_square()) {
    throw std::invalid_argument("pauli_expectation: '" + p.labels() + "' does not match the state size");
  }
  // P|j> = phase(j) |j ^ flip>, so Tr[rho P] = sum_j rho(j, j ^ flip) phase(j).
  std::size_t flip = 0;
  for (int q = 0; q < n; ++q) {
    const char c = p[static_cast<std::size_t>(q)];
    if (c == 'X' || c == 'Y') flip |= std::size_t{1} << (n - 1 - q);
  }
  const cplx i{0.0, 1.0};
  cplx total = 0.0;
  for (std::size_t j = 0; j < rho.rows(); ++j) {
    cplx phase = 1.0;
    for (int q = 0; q < n; ++q) {
      const bool one = (j >> (n - 1 - q)) & 1U;
      switch (p[static_cast<std::size_t>(q)]) {
        case 'Y': phase *= one ? -i : i; break;
        case 'Z': if (one) phase = -phase; break;
        default: break;
      }
    }
    total += rho(j, j ^ flip) * phase;
  }
  if (std::abs(total.imag()) > 1e-9) throw InvalidState("pauli_expectation: complex result; state is not Hermitian");
  return total.real();
}

void CorrelatorRecord::validate() const {
  if (!(std::abs(value) <= 1.0)) throw std::invalid_argument("correlator " + pauli.labels() + ": |value| exceeds 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("correlator " + pauli.labels() + ": negative sigma");
}

std::vector<PauliString> permutation_class(const PauliString& p) {
  std::string labels = p.labels();
  std::sort(labels.begin(), labels.end());
  std::vector<PauliString> out;
  do {
    out.emplace_back(labels);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

}  // namespace qcorr
