#include "qcorr/states.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

std::size_t bit_of(int n, int qubit) { return std::size_t{1} << (n - 1 - qubit); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void GateSpec::validate(int n_qubits) const {
  if (target < 0 || target >= n_qubits) throw std::out_of_range("gate target out of range");
  const bool controlled = kind == GateKind::CX || kind == GateKind::CZbar;
  if (controlled != control.has_value()) {
    throw std::invalid_argument(controlled ? "controlled gate needs a control qubit"
                                           : "single-qubit gate takes no control");
  }
  if (control) {
    if (*control < 0 || *control >= n_qubits) throw std::out_of_range("gate control out of range");
    if (*control == target) throw std::invalid_argument("gate control equals target");
  }
}

StateVector apply_gate(const StateVector& psi, const GateSpec& gate) {
  const int n = psi.n_qubits();
  gate.validate(n);
  std::vector<cplx> in(psi.amplitudes().begin(), psi.amplitudes().end());
  std::vector<cplx> out = in;
  const std::size_t tbit = bit_of(n, gate.target);
  const std::size_t cbit = gate.control ? bit_of(n, *gate.control) : 0;

  for (std::size_t i = 0; i < in.size(); ++i) {
    const bool t1 = (i & tbit) != 0;
    switch (gate.kind) {
      case GateKind::Z:
        if (t1) out[i] = -in[i];
        break;
      case GateKind::H: {
        const std::size_t i0 = i & ~tbit;
        const std::size_t i1 = i | tbit;
        out[i] = (t1 ? in[i0] - in[i1] : in[i0] + in[i1]) * M_SQRT1_2;
        break;
      }
      case GateKind::CX:
        if (i & cbit) out[i] = in[i ^ tbit];
        break;
      case GateKind::CZbar:
        if (!(i & cbit) && t1) out[i] = -in[i];
        break;
    }
  }
  return StateVector(std::move(out));
}

std::vector<GateSpec> dicke_circuit() {
  constexpr int a = 0, b = 1, c = 2, d = 3;
  return {
      {GateKind::H, d, std::nullopt},  {GateKind::H, c, std::nullopt}, {GateKind::CX, b, d},
      {GateKind::CX, a, c},            {GateKind::CZbar, b, d},        {GateKind::CZbar, a, c},
      {GateKind::Z, a, std::nullopt},
  };
}

StateVector ket_xi() {
  const double s = 1.0 / std::sqrt(6.0);
  std::vector<cplx> amps(16);
  amps[0b0001] = s;
  amps[0b0010] = -s;
  amps[0b1101] = 2.0 * s;
  return StateVector(std::move(amps));
}

StateVector circuit_to_dicke(const StateVector& psi) {
  if (psi.n_qubits() != 4) throw std::invalid_argument("circuit_to_dicke: expected a 4-qubit state");
  StateVector out = psi;
  for (const auto& g : dicke_circuit()) out = apply_gate(out, g);
  return out;
}

StateVector dicke(int n, int k) {
  if (n < 1 || n > kMaxQubits || k < 0 || k > n) {
    throw std::invalid_argument("dicke: invalid (n, k) = (" + std::to_string(n) + ", " + std::to_string(k) + ")");
  }
  std::vector<cplx> amps(std::size_t{1} << n);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::popcount(i) == k) amps[i] = 1.0;
  }
  return StateVector::normalized(std::move(amps));
}

DensityMatrix noisy_dicke(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noisy_dicke: p must lie in [0, 1]");
  ComplexMatrix m = dicke(4, 2).projector() * cplx(p);
  for (std::size_t i = 0; i < 16; ++i) m(i, i) += (1.0 - p) / 16.0;
  return DensityMatrix::trusted(std::move(m));
}

StateVector qubit_state(std::string_view label) {
  const double r = M_SQRT1_2;
  const cplx i{0.0, 1.0};
  if (label == "0") return StateVector({1.0, 0.0});
  if (label == "1") return StateVector({0.0, 1.0});
  if (label == "+") return StateVector({r, r});
  if (label == "-") return StateVector({r, -r});
  if (label == "+i") return StateVector({r, i * r});
  if (label == "-i") return StateVector({r, -i * r});
  throw std::invalid_argument("unknown single-qubit state '" + std::string(label) + "'");
}

int qubit_index(std::string_view label) {
  label = trim(label);
  if (label.size() == 1 && label[0] >= 'a' && label[0] < 'a' + kMaxQubits) return label[0] - 'a';
  int v = -1;
  const auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), v);
  if (ec == std::errc{} && ptr == label.data() + label.size() && v >= 0 && v < kMaxQubits) return v;
  throw std::invalid_argument("unknown qubit label '" + std::string(label) + "'");
}

char qubit_letter(int index) { return static_cast<char>('a' + index); }

Projected reduce(const State& state, const ProjectionSpec& spec) { return project(state, spec); }

ProjectionSpec parse_projection(std::string_view text) {
  ProjectionSpec spec;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("projection entry '" + std::string(item) + "' must look like q=outcome");
    }
    spec.assignments.push_back({qubit_index(item.substr(0, eq)), qubit_state(trim(item.substr(eq + 1)))});
  }
  if (spec.assignments.empty()) throw std::invalid_argument("empty projection list");
  return spec;
}

State named_state(std::string_view name) {
  name = trim(name);
  if (name == "xi") return ket_xi();
  if (name == "w1") return dicke(3, 1);
  if (name == "w2") return dicke(3, 2);
  if (name == "psi-plus") return dicke(2, 1);
  if (name.starts_with("noisy-dicke:")) {
    std::string_view rest = name.substr(12);
    if (!rest.starts_with("p=")) throw std::invalid_argument("noisy-dicke expects 'noisy-dicke:p=<float>'");
    return noisy_dicke(parse_double(rest.substr(2), "noise parameter p"));
  }
  if (name.starts_with("dicke-")) {
    std::string_view rest = name.substr(6);
    const auto dash = rest.find('-');
    if (dash != std::string_view::npos) {
      const int n = static_cast<int>(parse_double(rest.substr(0, dash), "n"));
      const int k = static_cast<int>(parse_double(rest.substr(dash + 1), "k"));
      return dicke(n, k);
    }
  }
  throw std::invalid_argument("unknown state name '" + std::string(name) + "'");
}

}  // namespace qcorr
