// Local Pauli observables and measured correlators.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcorr/matrix.hpp"

namespace qcorr {

/// A tensor product of single-qubit Paulis, e.g. "XXZ". Qubit a first.
class PauliString {
public:
  explicit PauliString(std::string labels);

  const std::string& labels() const { return labels_; }
  int n_qubits() const { return static_cast<int>(labels_.size()); }
  char operator[](std::size_t i) const { return labels_[i]; }
  bool is_identity() const;

  /// Labels sorted as X < Y < Z < I; two strings in the same permutation
  /// class share this key ("ZZI", "ZIZ" and "IZZ" all map to "ZZI").
  std::string class_key() const;

  ComplexMatrix matrix() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) { return a.labels_ <=> b.labels_; }

private:
  std::string labels_;
};

ComplexMatrix pauli_matrix(char label);

/// Tr[rho P]. Throws on a qubit-count mismatch.
double pauli_expectation(const ComplexMatrix& rho, const PauliString& p);

struct CorrelatorRecord {
  PauliString pauli;
  double value;
  double sigma;

  void validate() const;
};

/// All distinct permutations of the labels of p, in lexicographic order.
std::vector<PauliString> permutation_class(const PauliString& p);

}  // namespace qcorr
