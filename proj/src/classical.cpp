#include "qcorr/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcorr/linalg.hpp"
#include "qcorr/nelder_mead.hpp"

namespace qcorr {

namespace {

using Block = std::array<cplx, 4>;  // row-major 2x2

// Unnormalized conditional states of beta are sum_ij conj(v_i) v_j blocks[i][j].
struct ConditionalModel {
  std::array<std::array<Block, 2>, 2> blocks{};

  ConditionalModel(const DensityMatrix& pair, int measured) {
    const ComplexMatrix& m = pair.matrix();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) {
            const std::size_t row = measured == 0 ? 2 * i + r : 2 * r + i;
            const std::size_t col = measured == 0 ? 2 * j + c : 2 * c + j;
            blocks[i][j][2 * r + c] = m(row, col);
          }
  }

  // q * S(rho_beta | v) for the outcome vector v.
  double weighted_entropy(cplx v0, cplx v1) const {
    const std::array<cplx, 2> v{v0, v1};
    Block acc{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const cplx w = std::conj(v[i]) * v[j];
        for (int k = 0; k < 4; ++k) acc[k] += w * blocks[i][j][k];
      }
    const double a = acc[0].real();
    const double d = acc[3].real();
    const double q = a + d;
    if (q < 1e-12) return 0.0;
    const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(acc[1]));
    const double top = std::clamp(0.5 * (q + disc) / q, 0.0, 1.0);
    return q * binary_entropy(top);
  }

  double evaluate(double theta, double phi) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cplx e = std::polar(1.0, phi);
    return weighted_entropy(c, e * s) + weighted_entropy(std::conj(e) * s, -c);
  }
};

void check_pair(const DensityMatrix& pair, int measured) {
  if (pair.n_qubits() != 2) throw std::invalid_argument("classical correlations need a 2-qubit state");
  if (measured != 0 && measured != 1) throw std::out_of_range("measured qubit must be 0 or 1");
}

}  // namespace

StateVector MeasurementDirection::first() const {
  return StateVector({std::cos(theta), std::polar(std::sin(theta), phi)});
}

StateVector MeasurementDirection::second() const {
  return StateVector({std::polar(std::sin(theta), -phi), -std::cos(theta)});
}

MeasurementDirection MeasurementDirection::canonical() const {
  const double nz = std::cos(2.0 * theta);
  const double sxy = std::sin(2.0 * theta);
  const double nx = sxy * std::cos(phi);
  const double ny = sxy * std::sin(phi);
  MeasurementDirection out;
  out.theta = 0.5 * std::acos(std::clamp(nz, -1.0, 1.0));
  if (std::hypot(nx, ny) > 1e-15) {
    out.phi = std::atan2(ny, nx);
    if (out.phi < 0.0) out.phi += 2.0 * std::numbers::pi;
    if (out.phi >= 2.0 * std::numbers::pi) out.phi = 0.0;
  }
  return out;
}

double conditional_entropy(const DensityMatrix& pair, int measured, const MeasurementDirection& dir) {
  check_pair(pair, measured);
  return ConditionalModel(pair, measured).evaluate(dir.theta, dir.phi);
}

ClassicalResult classical_correlations(const DensityMatrix& pair, int measured, const ClassicalOptions& options) {
  check_pair(pair, measured);
  if (options.grid < 2) throw std::invalid_argument("classical_correlations: grid must be at least 2");
  const ConditionalModel model(pair, measured);
  const std::array<int, 1> beta{1 - measured};
  const double s_beta = von_neumann_entropy(partial_trace(pair, beta));

  const double dtheta = 0.5 * std::numbers::pi / (options.grid - 1);
  const double dphi = 2.0 * std::numbers::pi / options.grid;
  double best = INFINITY;
  MeasurementDirection best_dir;
  for (int i = 0; i < options.grid; ++i) {
    for (int j = 0; j < options.grid; ++j) {
      const double v = model.evaluate(i * dtheta, j * dphi);
      if (v < best) {
        best = v;
        best_dir = {i * dtheta, j * dphi};
      }
    }
  }
  const double grid_min = best;

  NelderMeadOptions nm;
  nm.x_tolerance = options.angle_tolerance;
  nm.f_tolerance = options.value_tolerance;
  nm.max_evaluations = options.max_evaluations;
  const auto refined = nelder_mead([&](const std::vector<double>& x) { return model.evaluate(x[0], x[1]); },
                                   {best_dir.theta, best_dir.phi}, {dtheta, dphi}, nm);
  if (refined.value < best) {
    best = refined.value;
    best_dir = {refined.x[0], refined.x[1]};
  }

  return {std::max(0.0, s_beta - best), std::max(0.0, s_beta - grid_min), best_dir.canonical()};
}

}  // namespace qcorr
