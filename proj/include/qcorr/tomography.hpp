// Coincidence-count tomography in local Pauli bases: simulation with Poisson
// noise, linear inversion, maximum-likelihood reconstruction, bootstrap
// error bars and correlator estimation.
//
// Outcome labels are bitstrings with qubit a leftmost; for every basis the
// outcome bit 0 is the +1 eigenvector (|0>, |+>, |+i>).

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/pauli.hpp"

namespace qcorr {

class MeasurementSetting {
public:
  /// One local basis per qubit, each of 'X', 'Y', 'Z'.
  explicit MeasurementSetting(std::string bases);

  const std::string& bases() const { return bases_; }
  int n_qubits() const { return static_cast<int>(bases_.size()); }

  /// Rank-1 projector vector for outcome index o (bit of qubit a is the MSB).
  StateVector projector(std::size_t outcome) const;
  std::vector<StateVector> projectors() const;

  /// True when every non-identity label of p equals this setting's basis.
  bool covers(const PauliString& p) const;

  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;
  friend auto operator<=>(const MeasurementSetting& a, const MeasurementSetting& b) { return a.bases_ <=> b.bases_; }

private:
  std::string bases_;
};

struct CountRecord {
  MeasurementSetting setting;
  std::string outcome;  // e.g. "010"
  double count;         // simulated counts are integral; expected_counts gives exact means

  std::size_t outcome_index() const;
  void validate() const;
};

std::string outcome_label(std::size_t index, int n_qubits);

/// All 3^n settings in lexicographic order (X < Y < Z).
std::vector<MeasurementSetting> settings_full(int n);

/// Tr[rho Pi_o] for every outcome o of the setting.
std::vector<double> born_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting);

/// Poisson counts with mean mean_counts * probability for every outcome of
/// every setting. Setting i draws from task_rng(seed, i).
std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
                                         double mean_counts, std::uint64_t seed);

/// Noiseless counts mean_counts * probability (not rounded).
std::vector<CountRecord> expected_counts(const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
                                         double mean_counts);

/// rho = 2^-n sum_P <P> P with every <P> estimated from the pooled
/// frequencies of the settings that cover it. Hermitian with unit trace but
/// not necessarily positive. Throws if some Pauli string is not covered.
ComplexMatrix linear_inversion(const std::vector<CountRecord>& counts);

/// Clips negative eigenvalues to 0 and renormalizes the trace.
DensityMatrix psd_projection(const ComplexMatrix& m);

struct MleOptions {
  int max_iterations = 5000;
  double tolerance = 1e-10;  // stop when an accepted step gains less than this
  bool keep_trace = false;   // record the log-likelihood after every iteration
};

struct TomographyResult {
  DensityMatrix rho;
  double log_likelihood;
  int iterations;
  bool converged;
  std::vector<double> likelihood_trace;  // filled when MleOptions::keep_trace
};

/// Maximizes the Poisson likelihood (rate profiled out) over density
/// matrices with diluted R-rho-R iterations. Every accepted step increases
/// the likelihood; the step size is halved until it does. The start point is
/// the PSD projection of linear inversion when the records cover every
/// Pauli string, I/d otherwise.
TomographyResult mle_reconstruct(const std::vector<CountRecord>& counts, const MleOptions& options = {});

/// Profiled Poisson log-likelihood sum_j n_j log(N p_j / sum p) - N,
/// without the log n_j! constant.
double log_likelihood(const std::vector<CountRecord>& counts, const ComplexMatrix& rho);

struct BootstrapResult {
  double fidelity;  // mean over replicas
  double sigma;     // sample standard deviation over replicas
  std::vector<double> replicas;
};

/// Redraws every count from Poisson(observed), reconstructs each replica with
/// mle_reconstruct and summarizes fidelity_pure to the target.
BootstrapResult bootstrap_fidelity(const std::vector<CountRecord>& counts, const StateVector& target, int replicas,
                                   std::uint64_t seed, int threads = 1, const MleOptions& options = {});

/// <P> = (n+ - n-) / N pooled over every setting covering P, with
/// sigma = sqrt((1 - <P>^2) / N). <I...I> is reported as 1 with sigma 0.
std::vector<CorrelatorRecord> correlators_from_counts(const std::vector<CountRecord>& counts,
                                                      const std::vector<PauliString>& paulis);

}  // namespace qcorr
