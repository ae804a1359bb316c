// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcorr/entanglement.hpp"
#include "qcorr/kw.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tomography.hpp"
#include "random_states.hpp"

using namespace qcorr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double overlap2(const StateVector& a, const StateVector& b) { return std::norm(a.inner(b)); }

Outcome circuit_identity() {
  const StateVector xi = ket_xi();
  double overlap = overlap2(dicke(4, 2), circuit_to_dicke(xi));
  std::vector<double> times;
  for (int i = 0; i < 20; ++i) {
    const auto t0 = Clock::now();
    overlap = overlap2(dicke(4, 2), circuit_to_dicke(xi));
    times.push_back(seconds_since(t0));
  }
  std::sort(times.begin(), times.end());
  const double ms = times[times.size() / 2] * 1e3;
  return {std::abs(overlap - 1.0) <= 1e-12 && ms < 1.0,
          fmt("|<D|U xi>|^2 = %.15f, runtime %.4f ms (median of 20)", overlap, ms)};
}

Outcome decomposition() {
  const StateVector d = dicke(4, 2);
  double worst = 0.0;
  for (int j = 0; j < 4; ++j) {
    const Projected zero = reduce(d, {{{j, qubit_state("0")}}});
    const Projected one = reduce(d, {{{j, qubit_state("1")}}});
    worst = std::max({worst, std::abs(zero.probability - 0.5), std::abs(one.probability - 0.5),
                      std::abs(overlap2(std::get<StateVector>(zero.state), dicke(3, 2)) - 1.0),
                      std::abs(overlap2(std::get<StateVector>(one.state), dicke(3, 1)) - 1.0)});
  }
  for (const auto& [c, dd] : {std::pair{"0", "1"}, std::pair{"1", "0"}}) {
    const Projected r = reduce(d, {{{2, qubit_state(c)}, {3, qubit_state(dd)}}});
    worst = std::max({worst, std::abs(r.probability - 1.0 / 3.0),
                      std::abs(overlap2(std::get<StateVector>(r.state), dicke(2, 1)) - 1.0)});
  }
  return {worst <= 1e-12, fmt("max deviation over 4 single-qubit splits and 2 Bell projections %.3g", worst)};
}

Outcome pure_equality() {
  std::mt19937_64 rng(2024);
  const auto assignments = Assignment::all();
  double worst = 0.0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 500; ++i) {
    const DensityMatrix rho(testing::random_pure(3, rng));
    worst = std::max(worst, std::abs(kw_exact(rho, assignments[static_cast<std::size_t>(i) % 6]).KW));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-3 && t <= 60.0, fmt("500 Haar states, max |KW| = %.3g, %.1f s single-threaded", worst, t)};
}

Outcome mixed_inequality() {
  std::mt19937_64 rng(2025);
  const auto assignments = Assignment::all();
  double lowest = INFINITY;
  for (int i = 0; i < 500; ++i) {
    const DensityMatrix rho = testing::random_mixed(3, rng);
    lowest = std::min(lowest, kw_exact(rho, assignments[static_cast<std::size_t>(i) % 6]).KW);
  }
  return {lowest >= -1e-3, fmt("500 random mixed states, min KW = %.4g", lowest)};
}

Outcome symmetric_cross_check() {
  const KWReport closed = kw_symmetric({1.0 / 3.0, 1.0 / 3.0});
  ComplexMatrix sigma(8, 8);
  for (std::size_t i : {1U, 2U, 4U})
    for (std::size_t j : {1U, 2U, 4U}) sigma(i, j) = 1.0 / 3.0;
  const KWReport exact = kw_exact(DensityMatrix(sigma), {});
  bool ok = true;
  for (const KWReport* r : {&closed, &exact}) {
    ok = ok && std::abs(r->S - 0.918296) <= 1e-5 && std::abs(r->E - 0.550048) <= 1e-5 &&
         std::abs(r->J - 0.368248) <= 1e-4 && std::abs(r->KW) <= 1e-4;
  }
  return {ok, fmt("closed form S=%.6f E=%.6f J=%.6f KW=%.2g; exact S=%.6f E=%.6f J=%.6f KW=%.2g", closed.S, closed.E,
                  closed.J, closed.KW, exact.S, exact.E, exact.J, exact.KW)};
}

std::vector<CorrelatorRecord> measured_table() {
  return {{PauliString("ZZZ"), 0.87, 0.02}, {PauliString("ZZI"), 0.35, 0.04}, {PauliString("ZII"), 0.26, 0.04},
          {PauliString("XXZ"), 0.55, 0.04}, {PauliString("YYZ"), 0.70, 0.03}, {PauliString("XXI"), 0.66, 0.03},
          {PauliString("YYI"), 0.52, 0.04}};
}

Outcome measured_table_reproduction() {
  MonteCarloOptions o;
  o.samples = 2000;
  o.seed = 42;
  const KWReport r = kw_from_correlators(apply_sign_map(measured_table(), SignMap::ideal_w1), o);
  return {std::abs(r.KW - 0.0335) <= 0.005 && *r.sigma >= 0.01 && *r.sigma <= 0.04,
          fmt("KW = %.4f +/- %.4f (2000 samples, seed 42); published 0.04 +/- 0.02", r.KW, *r.sigma)};
}

Outcome noise_model() {
  const double p = 0.765;
  const double f = fidelity_pure(dicke(4, 2), noisy_dicke(p));
  const double f_expected = p + (1.0 - p) / 16.0;
  const auto state = std::get<DensityMatrix>(reduce(noisy_dicke(p), {{{3, qubit_state("1")}}}).state);
  const KWPermutations all = kw_exact_all(state, {}, 6);
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : all.reports) {
    lo = std::min(lo, r.KW);
    hi = std::max(hi, r.KW);
  }
  const auto table = correlator_table(state);
  const double eq8 = kw_symmetric(extract_pc(table)).KW;
  const double eq8_printed = kw_symmetric(extract_pc(table, PopulationFormula::printed).clipped()).KW;

  const auto flag = [](double v) { return std::abs(v - 0.25) <= 0.02 ? "agrees" : "disagrees"; };
  std::string matches;
  for (const auto& [name, v] : {std::pair{"per-assignment", std::abs(hi - 0.25) < std::abs(lo - 0.25) ? hi : lo},
                                std::pair{"average", all.average_KW}, std::pair{"closed-form", eq8},
                                std::pair{"closed-form/printed-p", eq8_printed}}) {
    if (std::abs(v - 0.25) <= 0.02) matches += std::string(matches.empty() ? "" : ",") + name;
  }
  const bool reported = std::isfinite(all.average_KW) && std::isfinite(eq8) && all.reports.size() == 6;
  return {std::abs(f - f_expected) <= 1e-5 && std::abs(f - 0.779688) <= 1e-5 && reported,
          fmt("F = %.6f (= p + (1-p)/16); exact KW per assignment in [%.4f, %.4f], average %.4f [%s 0.25]; "
              "closed form from extracted (p,c) %.4f [%s]; printed-p variant (clipped to 3p <= 1) %.4f [%s]; "
              "matching variants: %s",
              f, lo, hi, all.average_KW, flag(all.average_KW), eq8, flag(eq8), eq8_printed, flag(eq8_printed),
              matches.empty() ? "none" : matches.c_str())};
}

Outcome extraction_oracle() {
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = testing::random_mixed(3, rng);
    const SymmetricModel m = extract_pc(correlator_table(rho));
    const double p = (rho(1, 1).real() + rho(2, 2).real() + rho(4, 4).real()) / 3.0;
    const double c = (rho(1, 2).real() + rho(1, 4).real() + rho(2, 4).real()) / 3.0;
    worst = std::max({worst, std::abs(m.p - p), std::abs(m.c - c)});
  }
  const auto w = correlator_table(DensityMatrix(dicke(3, 1)));
  const SymmetricModel corrected = extract_pc(w);
  const SymmetricModel printed = extract_pc(w, PopulationFormula::printed);
  const bool corrected_ok = std::abs(corrected.p - 1.0 / 3.0) <= 1e-12 && std::abs(corrected.c - 1.0 / 3.0) <= 1e-12;
  const bool printed_ok = std::abs(printed.p - 1.0 / 3.0) <= 1e-12;
  return {worst <= 1e-10 && corrected_ok && !printed_ok,
          fmt("max deviation %.3g on 100 states; W gives (p,c) = (%.12f, %.12f); printed p formula gives %.6f (fails "
              "as expected)",
              worst, corrected.p, corrected.c, printed.p)};
}

Outcome tomography_round_trip() {
  const DensityMatrix w(dicke(3, 1));
  MleOptions o;
  o.keep_trace = true;
  const auto monotone = [](const TomographyResult& r) {
    for (std::size_t i = 1; i < r.likelihood_trace.size(); ++i)
      if (r.likelihood_trace[i] < r.likelihood_trace[i - 1]) return false;
    return true;
  };
  const TomographyResult noisy = mle_reconstruct(simulate_counts(w, settings_full(3), 1e4, 42), o);
  const TomographyResult exact = mle_reconstruct(expected_counts(w, settings_full(3), 1e4), o);
  bool all_monotone = monotone(noisy) && monotone(exact);
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    all_monotone = all_monotone && monotone(mle_reconstruct(simulate_counts(w, settings_full(3), 1e3, seed), o));
  const double f_noisy = fidelity_pure(dicke(3, 1), noisy.rho);
  const double f_exact = fidelity_pure(dicke(3, 1), exact.rho);
  return {f_noisy >= 0.99 && f_exact >= 1.0 - 1e-8 && all_monotone,
          fmt("seed 42 fidelity %.6f (%d iterations); noiseless 1 - F = %.3g; likelihood monotone on 12 runs: %s",
              f_noisy, noisy.iterations, 1.0 - f_exact, all_monotone ? "yes" : "no")};
}

Outcome end_to_end() {
  const auto t0 = Clock::now();
  const auto state = std::get<DensityMatrix>(reduce(noisy_dicke(0.765), {{{3, qubit_state("1")}}}).state);
  std::vector<MeasurementSetting> settings;
  for (const auto& s : kw_settings()) settings.emplace_back(s.labels());
  const auto counts = simulate_counts(state, settings, 1e4, 42);
  MonteCarloOptions o;
  o.samples = 2000;
  o.seed = 42;
  const KWReport measured = kw_from_correlators(correlators_from_counts(counts, kw_correlators()), o);
  const KWReport reference = kw_from_correlators(correlator_table(state), o);
  const double t = seconds_since(t0);
  return {std::abs(measured.KW - reference.KW) <= 0.02 && t <= 120.0,
          fmt("simulated KW = %.4f +/- %.4f, exact-correlator KW = %.4f, difference %.4f, %.2f s", measured.KW,
              *measured.sigma, reference.KW, std::abs(measured.KW - reference.KW), t)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"circuit identity", circuit_identity},
      {"decomposition identities", decomposition},
      {"pure-state KW equality", pure_equality},
      {"mixed-state KW inequality", mixed_inequality},
      {"symmetric-formula cross-check", symmetric_cross_check},
      {"measured correlator table", measured_table_reproduction},
      {"noise model", noise_model},
      {"extraction oracle", extraction_oracle},
      {"tomography round trip", tomography_round_trip},
      {"end-to-end pipeline", end_to_end},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += out.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
