#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "qcorr/linalg.hpp"
#include "qcorr/pauli.hpp"
#include "qcorr/states.hpp"
#include "random_states.hpp"

using namespace qcorr;
using namespace qcorr::testing;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector psi_plus() { return StateVector({0.0, kInvSqrt2, kInvSqrt2, 0.0}); }
StateVector w1() {
  const double s = 1.0 / std::sqrt(3.0);
  return StateVector({0.0, s, s, 0.0, s, 0.0, 0.0, 0.0});
}

// Independent eigenvalue route through Eigen.
std::vector<double> eigen_oracle(const ComplexMatrix& h) {
  Eigen::MatrixXcd m(h.rows(), h.cols());
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c) m(r, c) = h(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

TEST_SUITE("qmat") {
  TEST_CASE("tensor of identities is the identity") {
    const ComplexMatrix i4 = tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    CHECK(i4.max_abs_diff(ComplexMatrix::identity(4)) == 0.0);
  }

  TEST_CASE("Z(x)Z acts diagonally with Z|0> = +|0>") {
    const ComplexMatrix zz = tensor(pauli_matrix('Z'), pauli_matrix('Z'));
    const ComplexMatrix ket01 = StateVector::basis(2, 0b01).column();
    CHECK((zz * ket01).max_abs_diff(ket01 * cplx(-1.0)) == 0.0);
  }

  TEST_CASE("Bell projector assembled from tensor products") {
    const StateVector k0 = StateVector::basis(1, 0);
    const StateVector k1 = StateVector::basis(1, 1);
    const ComplexMatrix col = (tensor(k0.column(), k1.column()) + tensor(k1.column(), k0.column())) * cplx(kInvSqrt2);
    const ComplexMatrix proj = col * col.adjoint();
    // hand expansion: 1/2 on the central 2x2 block
    ComplexMatrix expected(4, 4);
    expected(1, 1) = expected(1, 2) = expected(2, 1) = expected(2, 2) = 0.5;
    CHECK(proj.max_abs_diff(expected) < 1e-15);
  }

  TEST_CASE("partial trace examples") {
    const DensityMatrix bell(psi_plus());
    const ComplexMatrix half = ComplexMatrix::identity(2) * cplx(0.5);
    CHECK(partial_trace(bell, {0}).matrix().max_abs_diff(half) < 1e-15);
    CHECK(partial_trace(bell, {1}).matrix().max_abs_diff(half) < 1e-15);

    std::mt19937_64 rng(7);
    const DensityMatrix a = random_mixed(1, rng);
    const DensityMatrix b = random_mixed(2, rng);
    const DensityMatrix ab = tensor(a, b);
    CHECK(partial_trace(ab, {0}).matrix().max_abs_diff(a.matrix()) < 1e-12);
    CHECK(partial_trace(ab, {1, 2}).matrix().max_abs_diff(b.matrix()) < 1e-12);

    // Tr_a |W1><W1|: diag(1/3,1/3,1/3,0) and 1/3 between |01> and |10>
    ComplexMatrix expected(4, 4);
    expected(0, 0) = expected(1, 1) = expected(2, 2) = 1.0 / 3.0;
    expected(1, 2) = expected(2, 1) = 1.0 / 3.0;
    CHECK(partial_trace(DensityMatrix(w1()), {1, 2}).matrix().max_abs_diff(expected) < 1e-15);
  }

  TEST_CASE("partial trace keeps the requested order") {
    const DensityMatrix prod(tensor(StateVector::basis(1, 0), StateVector::basis(1, 1)));
    const DensityMatrix swapped = partial_trace(prod, {1, 0});
    CHECK(std::abs(swapped(2, 2) - 1.0) < 1e-15);  // |10>
  }

  TEST_CASE("partial trace rejects bad indices") {
    const DensityMatrix bell(psi_plus());
    CHECK_THROWS_AS(partial_trace(bell, {2}), std::out_of_range);
    CHECK_THROWS_AS(partial_trace(bell, {0, 0}), std::out_of_range);
    CHECK_THROWS_AS(partial_trace(bell, std::span<const int>{}), std::out_of_range);
  }

  TEST_CASE("partial trace round trip and trace preservation on random products") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
      const DensityMatrix a = random_mixed(2, rng);
      const DensityMatrix b = random_mixed(1, rng);
      const DensityMatrix ab = tensor(a, b);
      CHECK(partial_trace(ab, {0, 1}).matrix().max_abs_diff(a.matrix()) < 1e-12);
      const DensityMatrix r = partial_trace(random_mixed(3, rng), {2});
      CHECK(std::abs(r.matrix().trace().real() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("eig_hermitian small cases") {
    const Spectrum z = eig_hermitian(pauli_matrix('Z'));
    CHECK(z.values[0] == doctest::Approx(1.0));
    CHECK(z.values[1] == doctest::Approx(-1.0));

    const Spectrum half = eig_hermitian(ComplexMatrix::identity(2) * cplx(0.5));
    CHECK(half.values[0] == doctest::Approx(0.5));
    CHECK(half.values[1] == doctest::Approx(0.5));

    const Spectrum red = eig_hermitian(partial_trace(DensityMatrix(w1()), {0}).matrix());
    CHECK(red.values[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(red.values[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }

  TEST_CASE("eig_hermitian rejects non-Hermitian input") {
    ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(eig_hermitian(m), InvalidState);
  }

  TEST_CASE("eig_hermitian phase convention on eigenvectors") {
    std::mt19937_64 rng(3);
    const Spectrum s = eig_hermitian(random_hermitian(5, rng));
    for (std::size_t k = 0; k < 5; ++k) {
      for (std::size_t r = 0; r < 5; ++r) {
        if (std::abs(s.vectors(r, k)) > 1e-12) {
          CHECK(std::abs(s.vectors(r, k).imag()) < 1e-15);
          CHECK(s.vectors(r, k).real() > 0.0);
          break;
        }
      }
    }
  }

  TEST_CASE("eig_hermitian on 1000 random Hermitian matrices up to 16x16") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(1, 16);
    double worst_residual = 0.0;
    double worst_orth = 0.0;
    double worst_oracle = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = size(rng);
      const ComplexMatrix h = random_hermitian(n, rng);
      const Spectrum s = eig_hermitian(h);
      ComplexMatrix lam = ComplexMatrix::diagonal(s.values);
      worst_residual = std::max(worst_residual, (h * s.vectors).max_abs_diff(s.vectors * lam));
      worst_orth = std::max(worst_orth, (s.vectors.adjoint() * s.vectors).max_abs_diff(ComplexMatrix::identity(n)));
      CHECK(std::is_sorted(s.values.begin(), s.values.end(), std::greater<>()));
      const auto oracle = eigen_oracle(h);
      for (std::size_t k = 0; k < n; ++k) worst_oracle = std::max(worst_oracle, std::abs(oracle[k] - s.values[k]));
    }
    CHECK(worst_residual <= 1e-9);
    CHECK(worst_orth <= 1e-9);
    CHECK(worst_oracle <= 1e-9);
  }

  TEST_CASE("von Neumann entropy") {
    std::mt19937_64 rng(5);
    CHECK(von_neumann_entropy(DensityMatrix(random_pure(3, rng))) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(1)) == 1.0);
    // h(1/3)
    CHECK(von_neumann_entropy(partial_trace(DensityMatrix(w1()), {0})) == doctest::Approx(0.918296).epsilon(1e-5));
  }

  TEST_CASE("entropy is additive on products") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 100; ++t) {
      const DensityMatrix a = random_mixed(1, rng);
      const DensityMatrix b = random_mixed(2, rng);
      CHECK(std::abs(von_neumann_entropy(tensor(a, b)) - von_neumann_entropy(a) - von_neumann_entropy(b)) < 1e-8);
    }
  }

  TEST_CASE("entropy rejects clearly negative spectra and clamps round-off") {
    ComplexMatrix m = ComplexMatrix::diagonal(std::vector<double>{1.0 + 5e-9, -5e-9});
    CHECK(von_neumann_entropy(DensityMatrix::trusted(m)) == doctest::Approx(0.0).epsilon(1e-7));
    ComplexMatrix bad = ComplexMatrix::diagonal(std::vector<double>{1.1, -0.1});
    CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix::trusted(bad)), InvalidState);
  }

  TEST_CASE("DensityMatrix validation") {
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{0.7, 0.7})), InvalidState);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{1.1, -0.1})), InvalidState);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{0.5, 0.1}, {0.2, 0.5}}), InvalidState);
    CHECK_THROWS_AS(StateVector({1.0, 1.0}), InvalidState);
  }

  TEST_CASE("fidelity_pure") {
    std::mt19937_64 rng(23);
    const StateVector psi = random_pure(2, rng);
    CHECK(fidelity_pure(psi, DensityMatrix(psi)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity_pure(StateVector::basis(1, 0), DensityMatrix(StateVector::basis(1, 1))) == 0.0);
    // p + (1 - p)/16 at p = 0.765
    CHECK(std::abs(fidelity_pure(dicke(4, 2), noisy_dicke(0.765)) - 0.7797) < 1e-4);
    CHECK_THROWS_AS(fidelity_pure(psi, DensityMatrix::maximally_mixed(1)), std::invalid_argument);
  }

  TEST_CASE("project examples") {
    const auto one = qubit_state("1");
    const auto zero = qubit_state("0");

    const Projected w = project(dicke(4, 2), {{{3, one}}});
    CHECK(w.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::norm(std::get<StateVector>(w.state).inner(w1())) == doctest::Approx(1.0).epsilon(1e-12));

    const Projected bell = project(dicke(4, 2), {{{2, one}, {3, zero}}});
    CHECK(bell.probability == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::norm(std::get<StateVector>(bell.state).inner(psi_plus())) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(project(StateVector::basis(3, 0), {{{1, one}}}), ZeroProbability);
  }

  TEST_CASE("projection probabilities over one qubit sum to one") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
      const DensityMatrix rho = random_mixed(3, rng);
      for (int q = 0; q < 3; ++q) {
        const double p0 = project(rho, {{{q, qubit_state("0")}}}).probability;
        const double p1 = project(rho, {{{q, qubit_state("1")}}}).probability;
        CHECK(std::abs(p0 + p1 - 1.0) < 1e-12);
      }
    }
  }

  TEST_CASE("projection spec validation") {
    const auto one = qubit_state("1");
    CHECK_THROWS_AS(project(dicke(3, 1), {{{3, one}}}), std::out_of_range);
    CHECK_THROWS_AS(project(dicke(3, 1), {{{1, one}, {1, one}}}), std::invalid_argument);
    CHECK_THROWS_AS(project(dicke(2, 1), {{{0, one}, {1, one}}}), std::invalid_argument);
  }
}
