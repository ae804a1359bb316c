#include "qcorr/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "qcorr/linalg.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

namespace {

StateVector basis_vector(char basis, int bit) {
  const double r = M_SQRT1_2;
  const cplx i{0.0, 1.0};
  switch (basis) {
    case 'X': return StateVector({r, bit ? -r : r});
    case 'Y': return StateVector({r, bit ? -i * r : i * r});
    default: return StateVector::basis(1, static_cast<std::size_t>(bit));
  }
}

struct Projector {
  std::vector<cplx> v;
  double count;
};

std::vector<Projector> to_projectors(const std::vector<CountRecord>& counts, int& n_qubits) {
  if (counts.empty()) throw std::invalid_argument("no count records");
  n_qubits = counts.front().setting.n_qubits();
  std::vector<Projector> out;
  out.reserve(counts.size());
  for (const auto& rec : counts) {
    rec.validate();
    if (rec.setting.n_qubits() != n_qubits) throw std::invalid_argument("count records mix qubit numbers");
    const StateVector v = rec.setting.projector(rec.outcome_index());
    out.push_back({{v.amplitudes().begin(), v.amplitudes().end()}, rec.count});
  }
  return out;
}

double expectation(const ComplexMatrix& rho, const std::vector<cplx>& v) {
  cplx s = 0.0;
  const std::size_t d = v.size();
  for (std::size_t r = 0; r < d; ++r) {
    if (v[r] == cplx{}) continue;
    cplx row = 0.0;
    for (std::size_t c = 0; c < d; ++c) row += rho(r, c) * v[c];
    s += std::conj(v[r]) * row;
  }
  return s.real();
}

double profiled_log_likelihood(const std::vector<Projector>& projectors, const ComplexMatrix& rho) {
  double total_counts = 0.0;
  double total_prob = 0.0;
  std::vector<double> p(projectors.size());
  for (std::size_t j = 0; j < projectors.size(); ++j) {
    p[j] = expectation(rho, projectors[j].v);
    total_counts += projectors[j].count;
    total_prob += p[j];
  }
  if (total_prob <= 0.0) return -std::numeric_limits<double>::infinity();
  double l = -total_counts;
  for (std::size_t j = 0; j < projectors.size(); ++j) {
    const double n = projectors[j].count;
    if (n <= 0.0) continue;
    if (p[j] <= 0.0) return -std::numeric_limits<double>::infinity();
    l += n * std::log(total_counts * p[j] / total_prob);
  }
  return l;
}

void add_outer(ComplexMatrix& m, const std::vector<cplx>& v, double w) {
  const std::size_t d = v.size();
  for (std::size_t r = 0; r < d; ++r) {
    if (v[r] == cplx{}) continue;
    const cplx vr = v[r] * w;
    for (std::size_t c = 0; c < d; ++c) m(r, c) += vr * std::conj(v[c]);
  }
}

bool covers_everything(const std::vector<CountRecord>& counts, int n) {
  std::vector<MeasurementSetting> present;
  for (const auto& rec : counts) present.push_back(rec.setting);
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < total; ++code) {
    std::string labels(static_cast<std::size_t>(n), 'I');
    for (int q = 0; q < n; ++q) labels[static_cast<std::size_t>(q)] = "IXYZ"[(code >> (2 * (n - 1 - q))) & 3U];
    const PauliString p(labels);
    if (std::none_of(present.begin(), present.end(), [&](const auto& s) { return s.covers(p); })) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

MeasurementSetting::MeasurementSetting(std::string bases) : bases_(std::move(bases)) {
  if (bases_.empty() || bases_.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("measurement setting length must be in [1, 8]");
  }
  for (char& c : bases_) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    if (c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument("measurement setting '" + bases_ + "' must use only X, Y, Z");
    }
  }
}

StateVector MeasurementSetting::projector(std::size_t outcome) const {
  const int n = n_qubits();
  if (outcome >= (std::size_t{1} << n)) throw std::out_of_range("outcome index out of range");
  StateVector v = basis_vector(bases_[0], static_cast<int>((outcome >> (n - 1)) & 1U));
  for (int q = 1; q < n; ++q) {
    v = tensor(v, basis_vector(bases_[static_cast<std::size_t>(q)], static_cast<int>((outcome >> (n - 1 - q)) & 1U)));
  }
  return v;
}

std::vector<StateVector> MeasurementSetting::projectors() const {
  std::vector<StateVector> out;
  for (std::size_t o = 0; o < (std::size_t{1} << n_qubits()); ++o) out.push_back(projector(o));
  return out;
}

bool MeasurementSetting::covers(const PauliString& p) const {
  if (p.n_qubits() != n_qubits()) return false;
  for (std::size_t q = 0; q < bases_.size(); ++q) {
    if (p[q] != 'I' && p[q] != bases_[q]) return false;
  }
  return true;
}

std::size_t CountRecord::outcome_index() const {
  std::size_t idx = 0;
  for (char c : outcome) idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  return idx;
}

void CountRecord::validate() const {
  if (outcome.size() != static_cast<std::size_t>(setting.n_qubits())) {
    throw std::invalid_argument("outcome '" + outcome + "' does not match setting " + setting.bases());
  }
  for (char c : outcome) {
    if (c != '0' && c != '1') throw std::invalid_argument("outcome '" + outcome + "' must be a bitstring");
  }
  if (!(count >= 0.0) || !std::isfinite(count)) throw std::invalid_argument("count must be a nonnegative number");
}

std::string outcome_label(std::size_t index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((index >> (n_qubits - 1 - q)) & 1U) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

std::vector<MeasurementSetting> settings_full(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("settings_full: n must be in [1, 4]");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::vector<MeasurementSetting> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::string bases(static_cast<std::size_t>(n), 'X');
    std::size_t rest = code;
    for (int q = n - 1; q >= 0; --q) {
      bases[static_cast<std::size_t>(q)] = "XYZ"[rest % 3];
      rest /= 3;
    }
    out.emplace_back(bases);
  }
  return out;
}

std::vector<double> born_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting) {
  if (rho.n_qubits() != setting.n_qubits()) throw std::invalid_argument("born_probabilities: dimension mismatch");
  std::vector<double> p;
  for (const auto& v : setting.projectors()) {
    p.push_back(std::max(0.0, expectation(rho.matrix(), {v.amplitudes().begin(), v.amplitudes().end()})));
  }
  return p;
}

std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
                                         double mean_counts, std::uint64_t seed) {
  if (!(mean_counts >= 1.0)) throw std::invalid_argument("simulate_counts: mean_counts must be at least 1");
  std::vector<CountRecord> out;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    auto rng = task_rng(seed, i);
    const auto probs = born_probabilities(rho, settings[i]);
    for (std::size_t o = 0; o < probs.size(); ++o) {
      const double mean = mean_counts * probs[o];
      double n = 0.0;
      if (mean > 0.0) n = static_cast<double>(std::poisson_distribution<long long>(mean)(rng));
      out.push_back({settings[i], outcome_label(o, settings[i].n_qubits()), n});
    }
  }
  return out;
}

std::vector<CountRecord> expected_counts(const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
                                         double mean_counts) {
  std::vector<CountRecord> out;
  for (const auto& s : settings) {
    const auto probs = born_probabilities(rho, s);
    for (std::size_t o = 0; o < probs.size(); ++o) {
      out.push_back({s, outcome_label(o, s.n_qubits()), mean_counts * probs[o]});
    }
  }
  return out;
}

ComplexMatrix linear_inversion(const std::vector<CountRecord>& counts) {
  if (counts.empty()) throw std::invalid_argument("linear_inversion: no count records");
  const int n = counts.front().setting.n_qubits();
  const std::size_t d = std::size_t{1} << n;

  std::vector<PauliString> paulis;
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < total; ++code) {
    std::string labels(static_cast<std::size_t>(n), 'I');
    for (int q = 0; q < n; ++q) labels[static_cast<std::size_t>(q)] = "IXYZ"[(code >> (2 * (n - 1 - q))) & 3U];
    paulis.emplace_back(labels);
  }
  std::vector<CorrelatorRecord> expectations;
  try {
    expectations = correlators_from_counts(counts, paulis);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("linear_inversion: insufficient settings (") + e.what() + ")");
  }

  ComplexMatrix rho(d, d);
  for (const auto& e : expectations) rho += e.pauli.matrix() * cplx(e.value / static_cast<double>(d));
  return rho;
}

DensityMatrix psd_projection(const ComplexMatrix& m) {
  Spectrum s = eig_hermitian((m + m.adjoint()) * cplx(0.5));
  double total = 0.0;
  for (double& x : s.values) {
    x = std::max(x, 0.0);
    total += x;
  }
  if (total <= 0.0) throw InvalidState("psd_projection: no positive eigenvalues");
  for (double& x : s.values) x /= total;
  ComplexMatrix out = s.reconstruct();
  return DensityMatrix::trusted((out + out.adjoint()) * cplx(0.5));
}

double log_likelihood(const std::vector<CountRecord>& counts, const ComplexMatrix& rho) {
  int n = 0;
  return profiled_log_likelihood(to_projectors(counts, n), rho);
}

TomographyResult mle_reconstruct(const std::vector<CountRecord>& counts, const MleOptions& options) {
  int n = 0;
  const auto projectors = to_projectors(counts, n);
  const std::size_t d = std::size_t{1} << n;

  double total_counts = 0.0;
  ComplexMatrix gram(d, d);
  for (const auto& pr : projectors) {
    total_counts += pr.count;
    add_outer(gram, pr.v, 1.0);
  }
  if (total_counts <= 0.0) throw std::invalid_argument("mle_reconstruct: all counts are zero");

  ComplexMatrix rho = covers_everything(counts, n) ? psd_projection(linear_inversion(counts)).matrix()
                                                  : DensityMatrix::maximally_mixed(n).matrix();
  double l = profiled_log_likelihood(projectors, rho);
  if (!std::isfinite(l)) {
    // observed outcomes with zero start probability
    rho = rho * cplx(1.0 - 1e-3) + DensityMatrix::maximally_mixed(n).matrix() * cplx(1e-3);
    l = profiled_log_likelihood(projectors, rho);
  }

  // R-rho-R is the step (I + eps A) rho (I + eps A) with eps = d / tr(G).
  const double eps_full = static_cast<double>(d) / gram.trace().real();
  double eps = eps_full;
  const ComplexMatrix identity = ComplexMatrix::identity(d);

  TomographyResult result{DensityMatrix::trusted(rho), l, 0, false, {}};
  if (options.keep_trace) result.likelihood_trace.push_back(l);

  for (int it = 1; it <= options.max_iterations; ++it) {
    double total_prob = 0.0;
    ComplexMatrix r(d, d);
    for (const auto& pr : projectors) {
      const double p = expectation(rho, pr.v);
      total_prob += p;
      if (pr.count > 0.0) add_outer(r, pr.v, pr.count / std::max(p, 1e-300));
    }
    const ComplexMatrix ascent = r * cplx(total_prob / total_counts) - gram;

    bool accepted = false;
    double gain = 0.0;
    while (eps > eps_full * 1e-12) {
      const ComplexMatrix step = identity + ascent * cplx(eps);
      ComplexMatrix candidate = step * rho * step;
      candidate *= cplx(1.0 / candidate.trace().real());
      candidate = (candidate + candidate.adjoint()) * cplx(0.5);
      const double lc = profiled_log_likelihood(projectors, candidate);
      if (std::isfinite(lc) && lc >= l) {
        gain = lc - l;
        rho = std::move(candidate);
        l = lc;
        accepted = true;
        break;
      }
      eps *= 0.5;
    }
    result.iterations = it;
    if (!accepted) {
      result.converged = true;  // no ascent direction left at this resolution
      break;
    }
    if (options.keep_trace) result.likelihood_trace.push_back(l);
    eps = std::min(2.0 * eps, eps_full);
    if (gain < options.tolerance) {
      result.converged = true;
      break;
    }
  }

  result.rho = DensityMatrix::trusted(std::move(rho));
  result.log_likelihood = l;
  return result;
}

BootstrapResult bootstrap_fidelity(const std::vector<CountRecord>& counts, const StateVector& target, int replicas,
                                   std::uint64_t seed, int threads, const MleOptions& options) {
  if (replicas < 50) throw std::invalid_argument("bootstrap_fidelity: need at least 50 replicas");
  if (counts.empty() || target.n_qubits() != counts.front().setting.n_qubits()) {
    throw std::invalid_argument("bootstrap_fidelity: target does not match the counts");
  }
  const auto b = static_cast<std::size_t>(replicas);
  BootstrapResult out{0.0, 0.0, std::vector<double>(b)};
  MleOptions quiet = options;
  quiet.keep_trace = false;
  parallel_for(b, threads, [&](std::size_t i) {
    auto rng = task_rng(seed, i);
    std::vector<CountRecord> draw = counts;
    for (auto& rec : draw) {
      rec.count = rec.count > 0.0 ? static_cast<double>(std::poisson_distribution<long long>(rec.count)(rng)) : 0.0;
    }
    out.replicas[i] = fidelity_pure(target, mle_reconstruct(draw, quiet).rho);
  });
  out.fidelity = std::accumulate(out.replicas.begin(), out.replicas.end(), 0.0) / static_cast<double>(b);
  double var = 0.0;
  for (double f : out.replicas) var += (f - out.fidelity) * (f - out.fidelity);
  out.sigma = std::sqrt(var / static_cast<double>(b - 1));
  return out;
}

std::vector<CorrelatorRecord> correlators_from_counts(const std::vector<CountRecord>& counts,
                                                      const std::vector<PauliString>& paulis) {
  if (counts.empty()) throw std::invalid_argument("correlators_from_counts: no count records");
  const int n = counts.front().setting.n_qubits();
  for (const auto& rec : counts) {
    rec.validate();
    if (rec.setting.n_qubits() != n) throw std::invalid_argument("count records mix qubit numbers");
  }

  std::vector<CorrelatorRecord> out;
  out.reserve(paulis.size());
  for (const auto& p : paulis) {
    if (p.n_qubits() != n) throw std::invalid_argument("Pauli string " + p.labels() + " does not match the counts");
    if (p.is_identity()) {
      out.push_back({p, 1.0, 0.0});
      continue;
    }
    double signed_sum = 0.0;
    double total = 0.0;
    bool covered = false;
    for (const auto& rec : counts) {
      if (!rec.setting.covers(p)) continue;
      covered = true;
      int parity = 0;
      for (std::size_t q = 0; q < p.labels().size(); ++q) {
        if (p[q] != 'I' && rec.outcome[q] == '1') parity ^= 1;
      }
      signed_sum += parity ? -rec.count : rec.count;
      total += rec.count;
    }
    if (!covered) throw std::invalid_argument("no measurement setting covers " + p.labels());
    if (total <= 0.0) throw std::invalid_argument("no counts recorded for settings covering " + p.labels());
    const double value = std::clamp(signed_sum / total, -1.0, 1.0);
    out.push_back({p, value, std::sqrt(std::max(0.0, 1.0 - value * value) / total)});
  }
  return out;
}

}  // namespace qcorr
