// qcorr: build states, simulate and reconstruct tomography data, and evaluate
// the Koashi-Winter residual from density matrices, closed forms or
// correlator tables.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/entanglement.hpp"
#include "qcorr/io.hpp"
#include "qcorr/kw.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tomography.hpp"

using namespace qcorr;
using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty()) {
    std::cout << contents;
  } else {
    write_file_atomic(out_path, contents);
  }
}

// Summaries go to stdout unless stdout carries the document itself.
void note(const std::string& out_path, const std::string& text) {
  (out_path.empty() ? std::cerr : std::cout) << text << "\n";
}

DensityMatrix load_density(const std::string& path) { return density_from_json(json::parse(read_file(path))); }

std::vector<CountRecord> load_counts(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_counts(in);
}

std::vector<CorrelatorRecord> load_correlators(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_correlators(in);
}

StateVector pure_target(const DensityMatrix& rho) {
  const Spectrum s = eig_hermitian(rho.matrix());
  if (s.values.front() < 1.0 - 1e-8) throw std::invalid_argument("target state is not pure");
  std::vector<cplx> amps(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) amps[i] = s.vectors(i, 0);
  return StateVector::normalized(std::move(amps)).phase_fixed();
}

std::string report_line(const KWReport& r) {
  std::string line = r.assignment.to_string() + "  S " + num(r.S) + "  J " + num(r.J) + "  E " + num(r.E) + "  KW " +
                     num(r.KW);
  if (r.sigma) line += " +/- " + num(*r.sigma);
  line += "  theta " + num(r.optimum.theta) + "  phi " + num(r.optimum.phi) + "  (" +
          std::string(to_string(r.method)) + ")";
  return line;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---- state ----------------------------------------------------------------

struct StateArgs {
  std::string name;
  std::string project;
  std::string out;
};

void cmd_state(const StateArgs& a) {
  State state = named_state(a.name);
  double probability = 1.0;
  if (!a.project.empty()) {
    const Projected p = reduce(state, parse_projection(a.project));
    state = p.state;
    probability = p.probability;
  }
  const DensityMatrix rho = to_density(state);
  json meta = {{"state", a.name}, {"probability", probability}};
  if (!a.project.empty()) meta["projection"] = a.project;
  emit(a.out, density_to_json(rho, meta).dump(2) + "\n");
  note(a.out, "qubits " + std::to_string(rho.n_qubits()) + "  probability " + num(probability));
}

// ---- tomo -----------------------------------------------------------------

struct TomoArgs {
  std::string in;
  std::string counts_file;
  std::string target;
  std::string settings;
  std::string paulis;
  std::string out;
  double counts = 1e4;
  std::uint64_t seed = 42;
  int bootstrap = 0;
  int threads = 1;
  int max_iterations = 5000;
  bool exact = false;
};

std::vector<MeasurementSetting> parse_settings(const std::string& text, int n) {
  if (text.empty()) return settings_full(n);
  std::vector<MeasurementSetting> out;
  for (const auto& s : split_list(text)) {
    MeasurementSetting m(s);
    if (m.n_qubits() != n) throw std::invalid_argument("setting " + s + " does not match the state size");
    out.push_back(std::move(m));
  }
  return out;
}

void cmd_tomo_simulate(const TomoArgs& a) {
  const DensityMatrix rho = load_density(a.in);
  const auto settings = parse_settings(a.settings, rho.n_qubits());
  const auto counts =
      a.exact ? expected_counts(rho, settings, a.counts) : simulate_counts(rho, settings, a.counts, a.seed);
  std::ostringstream out;
  write_counts(out, counts);
  emit(a.out, out.str());
  note(a.out, "settings " + std::to_string(settings.size()) + "  records " + std::to_string(counts.size()));
}

void cmd_tomo_reconstruct(const TomoArgs& a) {
  const auto counts = load_counts(a.counts_file);
  MleOptions options;
  options.max_iterations = a.max_iterations;
  const TomographyResult r = mle_reconstruct(counts, options);
  json meta = {{"log_likelihood", r.log_likelihood}, {"iterations", r.iterations}, {"converged", r.converged}};

  std::string summary = "log-likelihood " + num(r.log_likelihood) + "  iterations " + std::to_string(r.iterations) +
                        "  converged " + (r.converged ? "yes" : "no");
  if (!a.target.empty()) {
    const StateVector target = pure_target(load_density(a.target));
    const double f = fidelity_pure(target, r.rho);
    meta["fidelity"] = f;
    summary += "\nfidelity " + num(f);
    if (a.bootstrap > 0) {
      const BootstrapResult b = bootstrap_fidelity(counts, target, a.bootstrap, a.seed, a.threads, options);
      meta["bootstrap"] = {{"replicas", a.bootstrap}, {"seed", a.seed}, {"fidelity", b.fidelity}, {"sigma", b.sigma}};
      summary += " +/- " + num(b.sigma) + "  (bootstrap mean " + num(b.fidelity) + ", B " +
                 std::to_string(a.bootstrap) + ")";
    }
  } else if (a.bootstrap > 0) {
    throw std::invalid_argument("--bootstrap needs --target");
  }
  emit(a.out, density_to_json(r.rho, meta).dump(2) + "\n");
  note(a.out, summary);
}

void cmd_tomo_correlators(const TomoArgs& a) {
  const auto counts = load_counts(a.counts_file);
  std::vector<PauliString> paulis;
  if (a.paulis.empty()) {
    paulis = kw_correlators();
  } else {
    for (const auto& p : split_list(a.paulis)) paulis.emplace_back(p);
  }
  std::ostringstream out;
  write_correlators(out, correlators_from_counts(counts, paulis));
  emit(a.out, out.str());
}

// ---- kw -------------------------------------------------------------------

struct KwArgs {
  std::string in;
  std::string table;
  std::string assignment = "b|a,c";
  std::string sign_map = "raw";
  std::string out;
  bool all = false;
  bool strict = false;
  bool printed_p = false;
  int grid = 64;
  double tol = 1e-6;
  double p = 0.0;
  double c = 0.0;
  int samples = 2000;
  std::uint64_t seed = 42;
  int threads = 1;
};

void cmd_kw_exact(const KwArgs& a) {
  const DensityMatrix rho = load_density(a.in);
  ClassicalOptions options;
  options.grid = a.grid;
  options.angle_tolerance = a.tol;
  if (a.all) {
    const KWPermutations all = kw_exact_all(rho, options, a.threads);
    json doc = {{"reports", json::array()}, {"average_KW", all.average_KW}};
    for (const auto& r : all.reports) {
      doc["reports"].push_back(report_to_json(r));
      std::cout << report_line(r) << "\n";
    }
    std::cout << "average KW " << num(all.average_KW) << "\n";
    if (!a.out.empty()) write_file_atomic(a.out, doc.dump(2) + "\n");
    return;
  }
  const KWReport r = kw_exact(rho, Assignment::parse(a.assignment), options);
  std::cout << report_line(r) << "\n";
  if (!a.out.empty()) write_file_atomic(a.out, report_to_json(r).dump(2) + "\n");
}

void cmd_kw_symmetric(const KwArgs& a) {
  const KWReport r = kw_symmetric({a.p, a.c}, a.strict);
  std::cout << report_line(r) << "\n";
  if (!a.out.empty()) write_file_atomic(a.out, report_to_json(r).dump(2) + "\n");
}

void cmd_kw_correlators(const KwArgs& a) {
  const SignMap map = a.sign_map == "ideal-w1" ? SignMap::ideal_w1 : SignMap::raw;
  const auto records = apply_sign_map(load_correlators(a.table), map);
  MonteCarloOptions options;
  options.samples = a.samples;
  options.seed = a.seed;
  options.threads = a.threads;
  options.formula = a.printed_p ? PopulationFormula::printed : PopulationFormula::corrected;
  const SymmetricModel model = extract_pc(records, options.formula);
  const KWReport r = kw_from_correlators(records, options);
  std::cout << "p " << num(model.p) << "  c " << num(model.c) << "\n" << report_line(r) << "\n";
  if (!a.out.empty()) {
    json doc = report_to_json(r);
    doc["p"] = model.p;
    doc["c"] = model.c;
    write_file_atomic(a.out, doc.dump(2) + "\n");
  }
}

// ---- report ---------------------------------------------------------------

struct ReportArgs {
  std::string out;
  int threads = 1;
};

void cmd_report(const ReportArgs& a) {
  json doc;
  const auto line = [](const std::string& key, const std::string& text) { std::cout << key << ": " << text << "\n"; };

  const double overlap = std::norm(dicke(4, 2).inner(circuit_to_dicke(ket_xi())));
  doc["circuit_overlap"] = overlap;
  line("circuit |<D(4,2)|U|xi>|^2", num(overlap));

  json split = json::array();
  for (int j = 0; j < 4; ++j) {
    const Projected one = reduce(dicke(4, 2), {{{j, qubit_state("1")}}});
    const double f = std::norm(dicke(3, 1).inner(std::get<StateVector>(one.state)));
    split.push_back({{"qubit", std::string(1, qubit_letter(j))}, {"probability", one.probability}, {"fidelity_w1", f}});
  }
  doc["single_qubit_split"] = split;
  line("single-qubit split probability", num(split[0]["probability"].get<double>()));
  const Projected bell = reduce(dicke(4, 2), {{{2, qubit_state("0")}, {3, qubit_state("1")}}});
  doc["bell_projection_probability"] = bell.probability;
  line("cd=01 projection probability", num(bell.probability));

  const KWReport pure = kw_symmetric({1.0 / 3.0, 1.0 / 3.0});
  doc["closed_form_pure"] = report_to_json(pure);
  line("closed form at p = c = 1/3", report_line(pure));

  const DensityMatrix w1(dicke(3, 1));
  const double c_w = concurrence(partial_trace(w1, {1, 2}));
  doc["w1_pair_concurrence"] = c_w;
  doc["w1_pair_eof"] = eof_from_concurrence(c_w);
  line("W pair concurrence / EoF", num(c_w) + " / " + num(eof_from_concurrence(c_w)));

  const std::vector<CorrelatorRecord> measured = {
      {PauliString("ZZZ"), 0.87, 0.02}, {PauliString("ZZI"), 0.35, 0.04}, {PauliString("ZII"), 0.26, 0.04},
      {PauliString("XXZ"), 0.55, 0.04}, {PauliString("YYZ"), 0.70, 0.03}, {PauliString("XXI"), 0.66, 0.03},
      {PauliString("YYI"), 0.52, 0.04}};
  MonteCarloOptions mc;
  mc.threads = a.threads;
  const auto mapped = apply_sign_map(measured, SignMap::ideal_w1);
  const KWReport t1 = kw_from_correlators(mapped, mc);
  const SymmetricModel t1_model = extract_pc(mapped);
  doc["measured_table"] = report_to_json(t1);
  doc["measured_table"]["p"] = t1_model.p;
  doc["measured_table"]["c"] = t1_model.c;
  line("measured table (ideal-w1 signs)", report_line(t1));

  const double p = 0.765;
  doc["noise_model"]["fidelity"] = fidelity_pure(dicke(4, 2), noisy_dicke(p));
  const auto noisy = std::get<DensityMatrix>(reduce(noisy_dicke(p), {{{3, qubit_state("1")}}}).state);
  const KWPermutations all = kw_exact_all(noisy, {}, a.threads);
  const SymmetricModel nm = extract_pc(correlator_table(noisy));
  const SymmetricModel nm_printed = extract_pc(correlator_table(noisy), PopulationFormula::printed);
  doc["noise_model"]["exact_average_KW"] = all.average_KW;
  doc["noise_model"]["exact_reports"] = json::array();
  for (const auto& r : all.reports) doc["noise_model"]["exact_reports"].push_back(report_to_json(r));
  doc["noise_model"]["p"] = nm.p;
  doc["noise_model"]["c"] = nm.c;
  doc["noise_model"]["closed_form_KW"] = kw_symmetric(nm).KW;
  doc["noise_model"]["closed_form_printed_p_KW"] = kw_symmetric(nm_printed.clipped()).KW;
  line("noise model fidelity", num(doc["noise_model"]["fidelity"].get<double>()));
  line("noise model exact KW (average)", num(all.average_KW));
  line("noise model closed-form KW", num(kw_symmetric(nm).KW));

  const TomographyResult mle = mle_reconstruct(simulate_counts(w1, settings_full(3), 1e4, 42));
  doc["tomography_w1_fidelity"] = fidelity_pure(dicke(3, 1), mle.rho);
  line("W tomography fidelity (1e4 counts, seed 42)", num(doc["tomography_w1_fidelity"].get<double>()));

  std::vector<MeasurementSetting> settings;
  for (const auto& s : kw_settings()) settings.emplace_back(s.labels());
  const KWReport e2e =
      kw_from_correlators(correlators_from_counts(simulate_counts(noisy, settings, 1e4, 42), kw_correlators()), mc);
  doc["end_to_end"] = report_to_json(e2e);
  line("end-to-end noise model KW", report_line(e2e));

  const auto bell_counts = simulate_counts(DensityMatrix(dicke(2, 1)), settings_full(2), 200, 42);
  const BootstrapResult boot = bootstrap_fidelity(bell_counts, dicke(2, 1), 500, 7, a.threads);
  doc["bell_bootstrap"] = {{"fidelity", boot.fidelity}, {"sigma", boot.sigma}};
  line("Bell bootstrap (200 counts/setting)", num(boot.fidelity) + " +/- " + num(boot.sigma));

  if (!a.out.empty()) write_file_atomic(a.out, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcorr: three-qubit correlations from Dicke-state tomography"};
  app.require_subcommand(1);

  StateArgs state_args;
  auto* state = app.add_subcommand("state", "write a named state, optionally after projecting some qubits");
  state->add_option("name", state_args.name, "xi, dicke-<n>-<k>, w1, w2, psi-plus, noisy-dicke:p=<p>")->required();
  state->add_option("--project", state_args.project, "projections such as d=1 or c=0,d=1 (0 1 + - +i -i)");
  state->add_option("--out", state_args.out, "density-matrix JSON (stdout if omitted)");
  state->callback([&] { cmd_state(state_args); });

  TomoArgs tomo_args;
  auto* tomo = app.add_subcommand("tomo", "tomography: simulate, reconstruct, correlators");
  tomo->require_subcommand(1);
  auto* sim = tomo->add_subcommand("simulate", "Poisson counts for every local Pauli setting");
  sim->add_option("--in", tomo_args.in, "density-matrix JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--counts", tomo_args.counts, "mean counts per setting")->check(CLI::PositiveNumber);
  sim->add_option("--seed", tomo_args.seed, "random seed");
  sim->add_option("--settings", tomo_args.settings, "comma-separated settings (default: all 3^n)");
  sim->add_flag("--exact", tomo_args.exact, "write expected counts instead of sampling");
  sim->add_option("--out", tomo_args.out, "counts CSV (stdout if omitted)");
  sim->callback([&] { cmd_tomo_simulate(tomo_args); });

  auto* rec = tomo->add_subcommand("reconstruct", "maximum-likelihood density matrix");
  rec->add_option("--counts", tomo_args.counts_file, "counts CSV")->required()->check(CLI::ExistingFile);
  rec->add_option("--target", tomo_args.target, "pure target state for the fidelity")->check(CLI::ExistingFile);
  rec->add_option("--bootstrap", tomo_args.bootstrap, "bootstrap replicas (>= 50)")->check(CLI::NonNegativeNumber);
  rec->add_option("--seed", tomo_args.seed, "bootstrap seed");
  rec->add_option("--threads", tomo_args.threads, "worker threads")->check(CLI::PositiveNumber);
  rec->add_option("--max-iter", tomo_args.max_iterations, "iteration cap")->check(CLI::PositiveNumber);
  rec->add_option("--out", tomo_args.out, "density-matrix JSON (stdout if omitted)");
  rec->callback([&] { cmd_tomo_reconstruct(tomo_args); });

  auto* cor = tomo->add_subcommand("correlators", "Pauli correlators from counts");
  cor->add_option("--counts", tomo_args.counts_file, "counts CSV")->required()->check(CLI::ExistingFile);
  cor->add_option("--paulis", tomo_args.paulis, "comma-separated Pauli strings (default: the KW table)");
  cor->add_option("--out", tomo_args.out, "correlator CSV (stdout if omitted)");
  cor->callback([&] { cmd_tomo_correlators(tomo_args); });

  KwArgs kw_args;
  auto* kw = app.add_subcommand("kw", "Koashi-Winter residual S - J - E");
  kw->require_subcommand(1);
  auto* exact = kw->add_subcommand("exact", "from a three-qubit density matrix");
  exact->add_option("--in", kw_args.in, "density-matrix JSON")->required()->check(CLI::ExistingFile);
  auto* assignment = exact->add_option("--assignment", kw_args.assignment, "beta|alpha,gamma, e.g. b|a,c");
  exact->add_flag("--all-permutations", kw_args.all, "all six assignments and their average")->excludes(assignment);
  exact->add_option("--grid", kw_args.grid, "grid points per angle")->check(CLI::Range(2, 4096));
  exact->add_option("--tol", kw_args.tol, "angle tolerance of the simplex refinement")->check(CLI::PositiveNumber);
  exact->add_option("--threads", kw_args.threads, "worker threads")->check(CLI::PositiveNumber);
  exact->add_option("--out", kw_args.out, "report JSON");
  exact->callback([&] { cmd_kw_exact(kw_args); });

  auto* sym = kw->add_subcommand("symmetric", "closed form for population p and coherence c");
  sym->add_option("--p", kw_args.p, "single-excitation population")->required();
  sym->add_option("--c", kw_args.c, "pairwise coherence")->required();
  sym->add_flag("--strict", kw_args.strict, "require 3p = 1");
  sym->add_option("--out", kw_args.out, "report JSON");
  sym->callback([&] { cmd_kw_symmetric(kw_args); });

  auto* corr = kw->add_subcommand("correlators", "from a correlator table with Monte-Carlo uncertainty");
  corr->add_option("--table", kw_args.table, "correlator CSV")->required()->check(CLI::ExistingFile);
  corr->add_option("--sign-map", kw_args.sign_map, "raw or ideal-w1")->check(CLI::IsMember({"raw", "ideal-w1"}));
  corr->add_option("--samples", kw_args.samples, "Monte-Carlo samples (>= 100)")->check(CLI::PositiveNumber);
  corr->add_option("--seed", kw_args.seed, "random seed");
  corr->add_option("--threads", kw_args.threads, "worker threads")->check(CLI::PositiveNumber);
  corr->add_flag("--printed-p-formula", kw_args.printed_p, "use the population formula without the 1/3 on P(ZII)");
  corr->add_option("--out", kw_args.out, "report JSON");
  corr->callback([&] { cmd_kw_correlators(kw_args); });

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "every reference number in one document");
  report->add_option("--out", report_args.out, "report JSON");
  report->add_option("--threads", report_args.threads, "worker threads")->check(CLI::PositiveNumber);
  report->callback([&] { cmd_report(report_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qcorr: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qcorr: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
