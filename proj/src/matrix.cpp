#include "qcorr/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qcorr/linalg.hpp"

namespace qcorr {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& x : out.data_) x = std::conj(x);
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  return worst;
}

double ComplexMatrix::hermiticity_error() const {
  if (!is_square()) return INFINITY;
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix +: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix -: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix *: inner dimension mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx x = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
    }
  return out;
}

int qubits_for_dimension(std::size_t dim) {
  for (int n = 1; n <= kMaxQubits; ++n) {
    if (dim == (std::size_t{1} << n)) return n;
  }
  throw InvalidState("dimension " + std::to_string(dim) + " is not 2^n for 1 <= n <= 8");
}

// ---------------------------------------------------------------------------

StateVector::StateVector(std::vector<cplx> amplitudes) : amplitudes_(std::move(amplitudes)) {
  n_qubits_ = qubits_for_dimension(amplitudes_.size());
  double norm2 = 0.0;
  for (const auto& a : amplitudes_) norm2 += std::norm(a);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9) {
    throw InvalidState("StateVector: norm " + std::to_string(std::sqrt(norm2)) + " differs from 1");
  }
}

StateVector StateVector::normalized(std::vector<cplx> amplitudes) {
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (norm2 <= 0.0) throw InvalidState("StateVector: cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amplitudes) a *= inv;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  if (index >= amps.size()) throw std::out_of_range("StateVector::basis: index out of range");
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

cplx StateVector::inner(const StateVector& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  return s;
}

ComplexMatrix StateVector::projector() const {
  ComplexMatrix m(dim(), dim());
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c) m(r, c) = amplitudes_[r] * std::conj(amplitudes_[c]);
  return m;
}

ComplexMatrix StateVector::column() const { return ComplexMatrix(dim(), 1, amplitudes_); }

StateVector StateVector::phase_fixed() const {
  std::vector<cplx> amps = amplitudes_;
  for (const auto& a : amps) {
    if (std::abs(a) > 1e-12) {
      const cplx phase = std::conj(a) / std::abs(a);
      for (auto& x : amps) x *= phase;
      break;
    }
  }
  return StateVector(std::move(amps));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<cplx> amps;
  amps.reserve(a.dim() * b.dim());
  for (const auto& x : a.amplitudes())
    for (const auto& y : b.amplitudes()) amps.push_back(x * y);
  return StateVector(std::move(amps));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m, NoCheck) : m_(std::move(m)) {
  if (!m_.is_square()) throw InvalidState("DensityMatrix: matrix is not square");
  n_qubits_ = qubits_for_dimension(m_.rows());
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : DensityMatrix(std::move(m), NoCheck{}) {
  if (const double h = m_.hermiticity_error(); h > 1e-9) {
    throw InvalidState("DensityMatrix: not Hermitian (error " + std::to_string(h) + ")");
  }
  if (const cplx t = m_.trace(); std::abs(t - 1.0) > 1e-9) {
    throw InvalidState("DensityMatrix: trace " + std::to_string(t.real()) + " differs from 1");
  }
  const Spectrum s = eig_hermitian(m_);
  if (s.values.back() < -1e-8) {
    throw InvalidState("DensityMatrix: negative eigenvalue " + std::to_string(s.values.back()));
  }
}

DensityMatrix::DensityMatrix(const StateVector& pure) : DensityMatrix(pure.projector(), NoCheck{}) {}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) { return DensityMatrix(std::move(m), NoCheck{}); }

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const std::size_t d = std::size_t{1} << n_qubits;
  return trusted(ComplexMatrix::identity(d) * cplx(1.0 / static_cast<double>(d)));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(tensor(a.matrix(), b.matrix()));
}

}  // namespace qcorr
