#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcorr {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-14;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary W = diag(1, e^{-i arg a_pq}) * R(theta),
// applied as a <- W^dagger a W and v <- v W.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx g = a(p, q);
  const double mag = std::abs(g);
  if (mag < 1e-300) return;
  const cplx phase = std::conj(g) / mag;  // e^{-i alpha}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const cplx wpp = c;
  const cplx wpq = s;
  const cplx wqp = -s * phase;
  const cplx wqq = c * phase;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * wpp + akq * wqp;
    a(k, q) = akp * wpq + akq * wqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(wpp) * apk + std::conj(wqp) * aqk;
    a(q, k) = std::conj(wpq) * apk + std::conj(wqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * wpp + vkq * wqp;
    v(k, q) = vkp * wpq + vkq * wqq;
  }
}

}  // namespace

ComplexMatrix Spectrum::reconstruct() const {
  const std::size_t n = values.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = values[k];
    if (lam == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const cplx vr = vectors(r, k) * lam;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(vectors(c, k));
    }
  }
  return out;
}

Spectrum eig_hermitian(const ComplexMatrix& h) {
  if (!h.is_square()) throw InvalidState("eig_hermitian: matrix is not square");
  if (const double err = h.hermiticity_error(); err > 1e-9) {
    throw InvalidState("eig_hermitian: matrix is not Hermitian (error " + std::to_string(err) + ")");
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, h.frobenius_norm());
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < kOffDiagonalTolerance * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  Spectrum out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();
    cplx phase = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r, src)) > 1e-12) {
        phase = std::conj(v(r, src)) / std::abs(v(r, src));
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, src) * phase;
  }
  return out;
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double x : probabilities) {
    if (x > 1e-12) s -= x * std::log2(x);
  }
  return s;
}

double binary_entropy(double x) {
  const double p[2] = {x, 1.0 - x};
  return shannon_entropy(p);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Spectrum s = eig_hermitian(rho.matrix());
  if (s.values.back() < -1e-8) {
    throw InvalidState("von_neumann_entropy: eigenvalue " + std::to_string(s.values.back()) + " below -1e-8");
  }
  std::vector<double> clamped = s.values;
  for (double& x : clamped) x = std::max(x, 0.0);
  return shannon_entropy(clamped);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) throw std::out_of_range("partial_trace: keep must be nonempty");
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::out_of_range("partial_trace: qubit index " + std::to_string(q) + " out of range");
    if (kept[static_cast<std::size_t>(q)]) throw std::out_of_range("partial_trace: duplicate qubit index");
    kept[static_cast<std::size_t>(q)] = true;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!kept[static_cast<std::size_t>(q)]) traced.push_back(q);

  const int k = static_cast<int>(keep.size());
  const std::size_t dk = std::size_t{1} << k;
  const std::size_t dt = std::size_t{1} << traced.size();

  // bit of qubit q inside a full index
  auto bit_pos = [n](int q) { return n - 1 - q; };
  auto full_index = [&](std::size_t kept_idx, std::size_t traced_idx) {
    std::size_t idx = 0;
    for (int i = 0; i < k; ++i) {
      const std::size_t b = (kept_idx >> (k - 1 - i)) & 1U;
      idx |= b << bit_pos(keep[static_cast<std::size_t>(i)]);
    }
    const int nt = static_cast<int>(traced.size());
    for (int i = 0; i < nt; ++i) {
      const std::size_t b = (traced_idx >> (nt - 1 - i)) & 1U;
      idx |= b << bit_pos(traced[static_cast<std::size_t>(i)]);
    }
    return idx;
  };

  ComplexMatrix out(dk, dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < dt; ++t) s += rho(full_index(r, t), full_index(c, t));
      out(r, c) = s;
    }
  return DensityMatrix::trusted(std::move(out));
}

double fidelity_pure(const StateVector& target, const DensityMatrix& rho) {
  if (target.dim() != rho.dim()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
  cplx f = 0.0;
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    cplx row = 0.0;
    for (std::size_t c = 0; c < rho.dim(); ++c) row += rho(r, c) * target[c];
    f += std::conj(target[r]) * row;
  }
  if (std::abs(f.imag()) > 1e-9) throw InvalidState("fidelity_pure: complex overlap; rho is not Hermitian");
  return f.real();
}

void ProjectionSpec::validate(int n_qubits) const {
  std::vector<bool> seen(static_cast<std::size_t>(n_qubits), false);
  for (const auto& a : assignments) {
    if (a.qubit < 0 || a.qubit >= n_qubits) {
      throw std::out_of_range("projection: qubit index " + std::to_string(a.qubit) + " out of range");
    }
    if (seen[static_cast<std::size_t>(a.qubit)]) throw std::invalid_argument("projection: qubit listed twice");
    seen[static_cast<std::size_t>(a.qubit)] = true;
    if (a.outcome.n_qubits() != 1) throw std::invalid_argument("projection: outcome must be a single-qubit state");
  }
  if (assignments.empty()) throw std::invalid_argument("projection: no qubits to project");
  if (static_cast<int>(assignments.size()) >= n_qubits) {
    throw std::invalid_argument("projection: at least one qubit must remain unprojected");
  }
}

int n_qubits(const State& state) {
  return std::visit([](const auto& s) { return s.n_qubits(); }, state);
}

DensityMatrix to_density(const State& state) {
  if (const auto* pure = std::get_if<StateVector>(&state)) return DensityMatrix(*pure);
  return std::get<DensityMatrix>(state);
}

Projected project(const State& state, const ProjectionSpec& spec) {
  const int n = n_qubits(state);
  spec.validate(n);

  std::vector<int> outcome_of(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < spec.assignments.size(); ++i) {
    outcome_of[static_cast<std::size_t>(spec.assignments[i].qubit)] = static_cast<int>(i);
  }
  std::vector<int> remaining;
  for (int q = 0; q < n; ++q)
    if (outcome_of[static_cast<std::size_t>(q)] < 0) remaining.push_back(q);

  const int m = static_cast<int>(spec.assignments.size());
  const int nr = static_cast<int>(remaining.size());
  const std::size_t dr = std::size_t{1} << nr;
  const std::size_t dp = std::size_t{1} << m;

  // Kraus operator K = <phi| (x) I_remaining, as a dr x 2^n matrix.
  ComplexMatrix kraus(dr, std::size_t{1} << n);
  for (std::size_t r = 0; r < dr; ++r) {
    for (std::size_t t = 0; t < dp; ++t) {
      std::size_t idx = 0;
      cplx weight = 1.0;
      for (int i = 0; i < nr; ++i) {
        const std::size_t b = (r >> (nr - 1 - i)) & 1U;
        idx |= b << (n - 1 - remaining[static_cast<std::size_t>(i)]);
      }
      for (int i = 0; i < m; ++i) {
        const auto& a = spec.assignments[static_cast<std::size_t>(i)];
        const std::size_t b = (t >> (m - 1 - i)) & 1U;
        idx |= b << (n - 1 - a.qubit);
        weight *= std::conj(a.outcome[b]);
      }
      kraus(r, idx) += weight;
    }
  }

  if (const auto* pure = std::get_if<StateVector>(&state)) {
    std::vector<cplx> amps(dr);
    double prob = 0.0;
    for (std::size_t r = 0; r < dr; ++r) {
      cplx s = 0.0;
      for (std::size_t c = 0; c < pure->dim(); ++c) s += kraus(r, c) * (*pure)[c];
      amps[r] = s;
      prob += std::norm(s);
    }
    if (prob <= 1e-12) throw ZeroProbability("projection outcome has zero probability");
    return {StateVector::normalized(std::move(amps)), prob};
  }

  const auto& rho = std::get<DensityMatrix>(state);
  ComplexMatrix post = kraus * rho.matrix() * kraus.adjoint();
  const double prob = post.trace().real();
  if (prob <= 1e-12) throw ZeroProbability("projection outcome has zero probability");
  post *= cplx(1.0 / prob);
  return {DensityMatrix::trusted(std::move(post)), prob};
}

}  // namespace qcorr
