// The Koashi-Winter residual KW = S(beta) - J(beta|alpha) - E(beta, gamma)
// of a three-qubit state, computed three ways:
//
//   * exactly, from the reduced states (kw_exact);
//   * in closed form for the single-excitation symmetric family described by
//     a population p and a pairwise coherence c (kw_symmetric);
//   * from eight classes of local Pauli correlators, via an estimate of
//     (p, c) and Monte-Carlo propagation of their uncertainties
//     (kw_from_correlators).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/classical.hpp"
#include "qcorr/pauli.hpp"

namespace qcorr {

/// beta is measured against alpha (J) and shares entanglement with gamma (E).
struct Assignment {
  int alpha = 0;
  int beta = 1;
  int gamma = 2;

  void validate() const;
  /// "b|a,c" means beta = b, alpha = a, gamma = c.
  std::string to_string() const;
  static Assignment parse(std::string_view text);
  static std::vector<Assignment> all();

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

enum class KWMethod { exact, symmetric_formula, correlator_estimate };
std::string_view to_string(KWMethod m);

struct KWReport {
  Assignment assignment;
  double S = 0.0;
  double J = 0.0;
  double E = 0.0;
  double KW = 0.0;
  MeasurementDirection optimum;
  KWMethod method = KWMethod::exact;
  std::optional<double> sigma;
};

/// Population p of each of |001>, |010>, |100> and their pairwise coherence c.
struct SymmetricModel {
  double p = 0.0;
  double c = 0.0;

  /// p > 0, 3p <= 1 and -p/2 <= c <= p (all to 1e-12).
  void validate() const;
  /// Nearest point of the valid domain, with p floored at 1e-9.
  SymmetricModel clipped() const;
};

KWReport kw_exact(const DensityMatrix& rho, const Assignment& assignment, const ClassicalOptions& options = {});

struct KWPermutations {
  std::vector<KWReport> reports;  // Assignment::all() order
  double average_KW;
};

KWPermutations kw_exact_all(const DensityMatrix& rho, const ClassicalOptions& options = {}, int threads = 1);

/// Closed-form S, E and J of the symmetric family. With strict set, also
/// requires |3p - 1| <= 1e-6.
KWReport kw_symmetric(const SymmetricModel& model, bool strict = false);

enum class PopulationFormula {
  corrected,  // every permutation sum divided by 3
  printed,    // P(<ZII>) enters without the 1/3; kept for comparison only
};

/// p = [<III> + P(<ZII>)/3 - P(<ZZI>)/3 - <ZZZ>] / 8,
/// c = [P(<XXZ>) + P(<YYZ>) + P(<XXI>) + P(<YYI>)] / 24,
/// where P sums the three qubit permutations. Missing members of a class are
/// filled with the class mean; <III> defaults to 1. Throws if any of the
/// seven nontrivial classes is absent.
SymmetricModel extract_pc(const std::vector<CorrelatorRecord>& records,
                          PopulationFormula formula = PopulationFormula::corrected);

enum class SignMap {
  raw,       // use values as given
  ideal_w1,  // |value| times the sign of the same correlator on |W1>
};

std::vector<CorrelatorRecord> apply_sign_map(std::vector<CorrelatorRecord> records, SignMap map);

struct MonteCarloOptions {
  int samples = 2000;
  std::uint64_t seed = 42;
  int threads = 1;
  PopulationFormula formula = PopulationFormula::corrected;
};

/// Central value kw_symmetric(extract_pc(records)); sigma is the standard
/// deviation over resampled tables, each correlator drawn from
/// N(value, sigma) and clipped to [-1, 1], with (p, c) clipped to the model
/// domain.
KWReport kw_from_correlators(const std::vector<CorrelatorRecord>& records, const MonteCarloOptions& options = {});

/// The seven nontrivial measurement settings that cover every correlator
/// extract_pc needs: ZZZ, XXZ, XZX, ZXX, YYZ, YZY, ZYY.
std::vector<PauliString> kw_settings();

/// Every member of the eight correlator classes, grouped by the setting that
/// measures it, followed by III.
std::vector<PauliString> kw_correlators();

/// Exact values of kw_correlators() on a three-qubit state, sigma = 0.
std::vector<CorrelatorRecord> correlator_table(const DensityMatrix& rho);

}  // namespace qcorr
