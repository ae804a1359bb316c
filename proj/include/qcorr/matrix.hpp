// Dense complex matrices and the two state types built on them.
//
// Basis convention: qubit 0 ("a") is the most significant bit, so the ket
// |abcd> sits at index 8a + 4b + 2c + d.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorr {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 8;

/// Raised when a matrix or vector violates a state invariant.
class InvalidState : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a projection or conditioning step hits an outcome of zero probability.
class ZeroProbability : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;
  cplx trace() const;

  /// Largest |entry| of this − other. Shapes must match.
  double max_abs_diff(const ComplexMatrix& other) const;
  /// Largest |entry| of this − this^dagger.
  double hermiticity_error() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, cplx s) { return m *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Kronecker product; the left factor occupies the more significant qubits.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Number of qubits n with 2^n == dim, or throws.
int qubits_for_dimension(std::size_t dim);

class StateVector {
public:
  /// Validates the norm to 1e-9. Use normalized() to rescale arbitrary input.
  explicit StateVector(std::vector<cplx> amplitudes);

  static StateVector normalized(std::vector<cplx> amplitudes);
  static StateVector basis(int n_qubits, std::size_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }

  /// <this|other>
  cplx inner(const StateVector& other) const;
  ComplexMatrix projector() const;
  ComplexMatrix column() const;

  /// Copy with the first nonzero amplitude made real and positive.
  StateVector phase_fixed() const;

private:
  int n_qubits_ = 0;
  std::vector<cplx> amplitudes_;
};

StateVector tensor(const StateVector& a, const StateVector& b);

class DensityMatrix {
public:
  /// Checks hermiticity (1e-9), unit trace (1e-9) and min eigenvalue >= -1e-8.
  explicit DensityMatrix(ComplexMatrix m);
  explicit DensityMatrix(const StateVector& pure);

  /// Skips validation; for values whose invariants follow from construction.
  static DensityMatrix trusted(ComplexMatrix m);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
  struct NoCheck {};
  DensityMatrix(ComplexMatrix m, NoCheck);

  int n_qubits_ = 0;
  ComplexMatrix m_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qcorr
