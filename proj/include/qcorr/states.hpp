// Named states of the four-qubit Dicke experiment, the gate circuit that
// maps the photonic source state onto the Dicke state, and projective
// reduction of the register.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

enum class GateKind { Z, H, CX, CZbar };

struct GateSpec {
  GateKind kind;
  int target;
  std::optional<int> control;  // required for CX and CZbar

  void validate(int n_qubits) const;
};

/// Applies one gate. CX flips the target when the control is |1>;
/// CZbar applies Z to the target when the control is |0>.
StateVector apply_gate(const StateVector& psi, const GateSpec& gate);

/// Gates mapping |xi> to the Dicke state, in application order
/// (H_d, H_c, CX_db, CX_ca, CZbar_db, CZbar_ca, Z_a).
std::vector<GateSpec> dicke_circuit();

/// The source state on abcd: [|00>(|01> - |10>) + 2|11>|01>] / sqrt(6).
StateVector ket_xi();

/// Runs dicke_circuit() on a four-qubit input.
StateVector circuit_to_dicke(const StateVector& psi);

/// Equal superposition of all n-qubit basis states of Hamming weight k.
StateVector dicke(int n, int k);

/// p |D(4,2)><D(4,2)| + (1 - p) I / 16.
DensityMatrix noisy_dicke(double p);

/// Single-qubit states by label: "0", "1", "+", "-", "+i", "-i".
StateVector qubit_state(std::string_view label);

/// Qubit letter a..h to index; also accepts decimal digits.
int qubit_index(std::string_view label);
char qubit_letter(int index);

/// Projects some qubits and renormalizes. Pure inputs stay pure.
Projected reduce(const State& state, const ProjectionSpec& spec);

/// Parses "d=1,c=0" style projection lists (entries may also be repeated
/// across calls and concatenated by the caller).
ProjectionSpec parse_projection(std::string_view text);

/// Resolves "xi", "dicke-4-2", "dicke-<n>-<k>", "w1", "w2", "psi-plus",
/// "noisy-dicke:p=<float>".
State named_state(std::string_view name);

}  // namespace qcorr
