// File formats.
//
// Density matrix (JSON):
//   {"qubit_order": "abcd-msb", "n_qubits": n, "re": [[...]], "im": [[...]],
//    "metadata": {...}}            // metadata optional
// Counts (CSV):      setting,outcome,count      e.g.  XYZ,010,412
// Correlators (CSV): pauli,value,sigma          e.g.  ZZZ,0.87,0.02
// KW report (JSON):  assignment, S, J, E, KW, sigma, method, theta_opt, phi_opt
//
// CSV readers skip blank lines, '#' comments and a header row.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcorr/kw.hpp"
#include "qcorr/tomography.hpp"

namespace qcorr {

nlohmann::json density_to_json(const DensityMatrix& rho, const nlohmann::json& metadata = nullptr);
/// Validates the header, shape and DensityMatrix invariants.
DensityMatrix density_from_json(const nlohmann::json& doc);

void write_counts(std::ostream& out, const std::vector<CountRecord>& counts);
std::vector<CountRecord> read_counts(std::istream& in);

void write_correlators(std::ostream& out, const std::vector<CorrelatorRecord>& records);
std::vector<CorrelatorRecord> read_correlators(std::istream& in);

nlohmann::json report_to_json(const KWReport& report);

/// Writes via a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace qcorr
