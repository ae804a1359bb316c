#include "qcorr/kw.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "qcorr/entanglement.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

namespace {

constexpr std::array<std::string_view, 7> kRequiredClasses = {"ZZZ", "ZZI", "ZII", "XXZ", "YYZ", "XXI", "YYI"};

double xlog2(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

// ---------------------------------------------------------------------------
// Assignment

void Assignment::validate() const {
  for (int q : {alpha, beta, gamma}) {
    if (q < 0 || q > 2) throw std::out_of_range("assignment: qubit index must be 0, 1 or 2");
  }
  if (alpha == beta || beta == gamma || alpha == gamma) {
    throw std::invalid_argument("assignment: alpha, beta and gamma must be distinct");
  }
}

std::string Assignment::to_string() const {
  return {qubit_letter(beta), '|', qubit_letter(alpha), ',', qubit_letter(gamma)};
}

Assignment Assignment::parse(std::string_view text) {
  const auto bar = text.find('|');
  const auto comma = text.find(',');
  if (bar == std::string_view::npos || comma == std::string_view::npos || comma < bar) {
    throw std::invalid_argument("assignment must look like 'b|a,c' (beta|alpha,gamma)");
  }
  Assignment a;
  a.beta = qubit_index(text.substr(0, bar));
  a.alpha = qubit_index(text.substr(bar + 1, comma - bar - 1));
  a.gamma = qubit_index(text.substr(comma + 1));
  a.validate();
  return a;
}

std::vector<Assignment> Assignment::all() {
  std::vector<Assignment> out;
  std::array<int, 3> q{0, 1, 2};
  do {
    out.push_back({q[0], q[1], q[2]});
  } while (std::next_permutation(q.begin(), q.end()));
  return out;
}

std::string_view to_string(KWMethod m) {
  switch (m) {
    case KWMethod::exact: return "exact";
    case KWMethod::symmetric_formula: return "symmetric-formula";
    case KWMethod::correlator_estimate: return "correlator-estimate";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// SymmetricModel

void SymmetricModel::validate() const {
  constexpr double tol = 1e-12;
  if (!(p > 0.0)) throw std::domain_error("symmetric model: p must be positive");
  if (3.0 * p > 1.0 + tol) throw std::domain_error("symmetric model: 3p exceeds 1");
  if (c < -0.5 * p - tol || c > p + tol) throw std::domain_error("symmetric model: c outside [-p/2, p]");
}

SymmetricModel SymmetricModel::clipped() const {
  SymmetricModel out;
  out.p = std::clamp(p, 1e-9, 1.0 / 3.0);
  out.c = std::clamp(c, -0.5 * out.p, out.p);
  return out;
}

// ---------------------------------------------------------------------------
// Exact evaluation

KWReport kw_exact(const DensityMatrix& rho, const Assignment& assignment, const ClassicalOptions& options) {
  if (rho.n_qubits() != 3) throw std::invalid_argument("kw_exact: expected a 3-qubit state");
  assignment.validate();

  KWReport r;
  r.assignment = assignment;
  r.method = KWMethod::exact;
  r.S = von_neumann_entropy(partial_trace(rho, {assignment.beta}));
  const DensityMatrix pair = partial_trace(rho, {assignment.alpha, assignment.beta});
  const ClassicalResult cl = classical_correlations(pair, 0, options);
  r.J = cl.J;
  r.optimum = cl.optimum;
  r.E = eof_from_concurrence(concurrence(partial_trace(rho, {assignment.beta, assignment.gamma})));
  r.KW = r.S - r.J - r.E;
  return r;
}

KWPermutations kw_exact_all(const DensityMatrix& rho, const ClassicalOptions& options, int threads) {
  const auto assignments = Assignment::all();
  KWPermutations out;
  out.reports.resize(assignments.size());
  parallel_for(assignments.size(), threads,
               [&](std::size_t i) { out.reports[i] = kw_exact(rho, assignments[i], options); });
  double sum = 0.0;
  for (const auto& r : out.reports) sum += r.KW;
  out.average_KW = sum / static_cast<double>(out.reports.size());
  return out;
}

// ---------------------------------------------------------------------------
// Closed form

KWReport kw_symmetric(const SymmetricModel& model, bool strict) {
  model.validate();
  const double p = model.p;
  const double c = model.c;
  if (strict && std::abs(3.0 * p - 1.0) > 1e-6) {
    throw std::domain_error("kw_symmetric (strict): populations do not sum to 1");
  }

  KWReport r;
  r.method = KWMethod::symmetric_formula;
  r.optimum = {std::numbers::pi / 4.0, 0.0};

  r.S = -p * (2.0 + 3.0 * std::log2(p));

  const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * p * p));
  r.E = -xlog2(0.5 * (1.0 + root)) - xlog2(0.5 * (1.0 - root));

  const double q = std::sqrt(4.0 * c * c * p * p + p * p * p * p);
  const double p2 = 3.0 * p * p;
  const double lower = 0.5 * (1.0 - q / p2);
  const double upper = 0.5 * (1.0 + q / p2);
  const double lower_term = lower > 0.0 ? (p2 - q) * std::log2(lower) : 0.0;
  const double upper_term = (p2 + q) * std::log2(upper);
  r.J = -p * std::log2(p) - 2.0 * p * std::log2(2.0 * p) + (lower_term + upper_term) / (2.0 * p);

  r.KW = r.S - r.J - r.E;
  return r;
}

// ---------------------------------------------------------------------------
// Correlator route

SymmetricModel extract_pc(const std::vector<CorrelatorRecord>& records, PopulationFormula formula) {
  // class key -> member labels -> observed values
  std::map<std::string, std::map<std::string, std::vector<double>>> classes;
  std::optional<double> identity;
  for (const auto& rec : records) {
    if (rec.pauli.n_qubits() != 3) throw std::invalid_argument("extract_pc: correlators must act on 3 qubits");
    if (rec.pauli.is_identity()) {
      identity = rec.value;
      continue;
    }
    classes[rec.pauli.class_key()][rec.pauli.labels()].push_back(rec.value);
  }

  // P(class): three times the mean over the members present
  auto permutation_sum = [&](std::string_view key) {
    const auto it = classes.find(std::string(key));
    if (it == classes.end()) {
      throw std::invalid_argument("extract_pc: missing correlator class <" + std::string(key) + ">");
    }
    double sum = 0.0;
    for (const auto& [label, values] : it->second) {
      sum += std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    }
    return 3.0 * sum / static_cast<double>(it->second.size());
  };
  for (auto key : kRequiredClasses) (void)permutation_sum(key);

  const double iii = identity.value_or(1.0);
  const double zzz = permutation_sum("ZZZ") / 3.0;
  const double zii_weight = formula == PopulationFormula::corrected ? 1.0 / 3.0 : 1.0;

  SymmetricModel m;
  m.p = (iii + zii_weight * permutation_sum("ZII") - permutation_sum("ZZI") / 3.0 - zzz) / 8.0;
  m.c = (permutation_sum("XXZ") + permutation_sum("YYZ") + permutation_sum("XXI") + permutation_sum("YYI")) / 24.0;
  return m;
}

std::vector<CorrelatorRecord> apply_sign_map(std::vector<CorrelatorRecord> records, SignMap map) {
  if (map == SignMap::raw) return records;
  const DensityMatrix w1(dicke(3, 1));
  for (auto& rec : records) {
    if (rec.pauli.n_qubits() != 3) throw std::invalid_argument("ideal-w1 sign map needs 3-qubit correlators");
    const double ideal = pauli_expectation(w1.matrix(), rec.pauli);
    if (std::abs(ideal) > 1e-12) rec.value = std::copysign(std::abs(rec.value), ideal);
  }
  return records;
}

KWReport kw_from_correlators(const std::vector<CorrelatorRecord>& records, const MonteCarloOptions& options) {
  if (options.samples < 100) throw std::invalid_argument("kw_from_correlators: need at least 100 samples");
  for (const auto& rec : records) rec.validate();

  auto evaluate = [&](const std::vector<CorrelatorRecord>& table) {
    SymmetricModel m = extract_pc(table, options.formula);
    try {
      m.validate();
    } catch (const std::domain_error&) {
      m = m.clipped();
    }
    return kw_symmetric(m);
  };

  KWReport central = evaluate(records);
  central.method = KWMethod::correlator_estimate;

  const auto n = static_cast<std::size_t>(options.samples);
  std::vector<double> kw(n);
  parallel_for(n, options.threads, [&](std::size_t i) {
    auto rng = task_rng(options.seed, i);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<CorrelatorRecord> draw = records;
    for (auto& rec : draw) rec.value = std::clamp(rec.value + rec.sigma * gauss(rng), -1.0, 1.0);
    kw[i] = evaluate(draw).KW;
  });

  // shifted by the first sample so identical draws give exactly zero
  double sum = 0.0;
  double sum2 = 0.0;
  for (double x : kw) {
    sum += x - kw.front();
    sum2 += (x - kw.front()) * (x - kw.front());
  }
  const double var = (sum2 - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1);
  central.sigma = std::sqrt(std::max(var, 0.0));
  return central;
}

std::vector<PauliString> kw_settings() {
  return {PauliString("ZZZ"), PauliString("XXZ"), PauliString("XZX"), PauliString("ZXX"),
          PauliString("YYZ"), PauliString("YZY"), PauliString("ZYY")};
}

std::vector<PauliString> kw_correlators() {
  const std::set<std::string_view> wanted(kRequiredClasses.begin(), kRequiredClasses.end());
  std::vector<PauliString> out;
  std::set<std::string> seen;
  for (const auto& setting : kw_settings()) {
    // coarse-grainings of the setting, fewest identities first
    for (int identities = 0; identities < 3; ++identities) {
      for (unsigned mask = 0; mask < 8; ++mask) {
        if (std::popcount(mask) != identities) continue;
        std::string labels = setting.labels();
        for (int q = 0; q < 3; ++q)
          if (mask & (1U << (2 - q))) labels[static_cast<std::size_t>(q)] = 'I';
        PauliString ps(labels);
        if (wanted.contains(ps.class_key()) && seen.insert(labels).second) out.push_back(ps);
      }
    }
  }
  out.emplace_back("III");
  return out;
}

std::vector<CorrelatorRecord> correlator_table(const DensityMatrix& rho) {
  if (rho.n_qubits() != 3) throw std::invalid_argument("correlator_table: expected a 3-qubit state");
  std::vector<CorrelatorRecord> out;
  for (const auto& ps : kw_correlators()) {
    out.push_back({ps, std::clamp(pauli_expectation(rho.matrix(), ps), -1.0, 1.0), 0.0});
  }
  return out;
}

}  // namespace qcorr
