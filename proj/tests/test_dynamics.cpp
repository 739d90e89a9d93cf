#include <doctest.h>

#include <random>

#include "jcq/dynamics.hpp"
#include "jcq/protocol.hpp"
#include "oracles.hpp"

using namespace jcq;
using namespace jcq::dynamics;

namespace {

StateVector pm_product(bool first_minus, bool second_minus) {
  const StateVector a = first_minus ? PlusMinusBasis::minus() : PlusMinusBasis::plus();
  const StateVector b = second_minus ? PlusMinusBasis::minus() : PlusMinusBasis::plus();
  return tensor(a, b);
}

Matrix to_pm_basis(const Matrix& m) {
  const Matrix h = oracle::hadamard_n(2);
  return h * m * h;
}

}  // namespace

TEST_CASE("change of basis is self-inverse and maps |0>,|1> to |+>,|->") {
  const Matrix2 h = PlusMinusBasis::change_of_basis();
  CHECK(oracle::max_abs_diff(Matrix(h * h), Matrix(Matrix2::Identity())) < 1e-15);
  CHECK(oracle::max_abs_diff(Vector(h.col(0)), PlusMinusBasis::plus().amplitudes()) == 0.0);
  CHECK(oracle::max_abs_diff(Vector(h.col(1)), PlusMinusBasis::minus().amplitudes()) == 0.0);
}

TEST_CASE("(|-> + |+>)/sqrt2 is |0>") {
  const Vector phi = (PlusMinusBasis::minus().amplitudes() + PlusMinusBasis::plus().amplitudes()) / std::sqrt(2.0);
  CHECK(std::abs(phi[0] - 1.0) < 1e-15);
  CHECK(std::abs(phi[1]) < 1e-15);
}

TEST_CASE("one period of evolution puts the documented phases on the |+-> products") {
  const Operator h = protocol_hamiltonian();
  const cplx expected[4] = {std::polar(1.0, -oracle::kPi / 4), std::polar(1.0, -oracle::kPi / 4),
                            std::polar(1.0, -oracle::kPi / 4), std::polar(1.0, 3 * oracle::kPi / 4)};
  for (int k = 0; k < 4; ++k) {
    const StateVector in = pm_product(k & 2, k & 1);
    const StateVector out = evolve(in, h, 1.0);
    CHECK(oracle::max_abs_diff(out.amplitudes(), Vector(expected[k] * in.amplitudes())) < 1e-12);
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("phases scale as t / tau") {
  const double tau = 2.5;
  const double t = 0.7;
  const StateVector mm = pm_product(true, true);
  const StateVector out = evolve(mm, protocol_hamiltonian(tau), t);
  CHECK(oracle::max_abs_diff(out.amplitudes(), Vector(std::polar(1.0, 3 * oracle::kPi * t / (4 * tau)) * mm.amplitudes())) < 1e-12);
}

TEST_CASE("zero time leaves the state unchanged") {
  const StateVector in = pm_product(true, false);
  CHECK(oracle::max_abs_diff(evolve(in, protocol_hamiltonian(), 0.0).amplitudes(), in.amplitudes()) < 1e-15);
}

TEST_CASE("evolve agrees with independent oracles") {
  std::mt19937_64 rng(17);
  const Operator h = protocol_hamiltonian();
  for (double t : {0.1, 0.5, 1.0, 1.7, 3.0}) {
    const StateVector in = pm_product(false, true);
    const Vector taylor = oracle::expm_taylor(h.matrix(), t) * in.amplitudes();
    CHECK(oracle::max_abs_diff(evolve(in, h, t).amplitudes(), taylor) < 1e-10);
  }
  // Subspace evolution on a 3-qubit register against the dense embedding.
  const Matrix hr = oracle::random_hermitian(4, rng);
  Vector psi = Vector::Random(8);
  psi.normalize();
  const StateVector state(3, psi);
  const std::vector<int> targets{3, 1};
  const Vector expected = oracle::expm_taylor(oracle::embed_outer_products(hr, targets, 3), 0.8) * psi;
  CHECK(oracle::max_abs_diff(evolve(state, Operator(hr), 0.8, targets).amplitudes(), expected) < 1e-10);
  CHECK_THROWS_AS(evolve(state, h, 1.0), DimensionError);
}

TEST_CASE("entangling gate at one period is diag(1,1,1,-1) in the |+-> basis") {
  const Matrix pm = to_pm_basis(entangling_gate(1.0, 1.0).matrix());
  Matrix expected = Matrix::Identity(4, 4);
  expected(3, 3) = -1.0;
  CHECK(oracle::max_abs_diff(pm, expected) < 1e-12);
  const Matrix g = entangling_gate(1.0, 1.0).matrix();
  CHECK(oracle::max_abs_diff(g * g, Matrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("entangling gate at t=0 is identity up to the fixed phase correction") {
  CHECK(oracle::max_abs_diff(entangling_gate(0.0, 1.0).matrix(), Matrix(phase_correction() * Matrix::Identity(4, 4))) < 1e-15);
}

TEST_CASE("timing error: t = tau(1+delta) gives e^{-i pi delta/4} diag(1,1,1,-e^{i pi delta})") {
  for (double delta : {-1.0, -0.3, 0.0, 0.25, 0.6, 1.0, 1.8}) {
    const Matrix pm = to_pm_basis(entangling_gate(1.0 + delta, 1.0).matrix());
    const cplx g = std::polar(1.0, -oracle::kPi * delta / 4.0);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(1, 1) = expected(2, 2) = g;
    expected(3, 3) = -g * std::polar(1.0, oracle::kPi * delta);
    CHECK(oracle::max_abs_diff(pm, expected) < 1e-12);

    // Same gate seen through evolve + phase.
    const StateVector mm = pm_product(true, true);
    const Vector via_evolve = phase_correction() * evolve(mm, protocol_hamiltonian(), 1.0 + delta).amplitudes();
    CHECK(oracle::max_abs_diff(Vector(entangling_gate(1.0 + delta, 1.0).matrix() * mm.amplitudes()), via_evolve) < 1e-12);
  }
}

TEST_CASE("entangling gates are unitary, diagonal in |+->, and commute across pairs") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> tdist(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double t1 = tdist(rng), t2 = tdist(rng);
    const Operator g1 = entangling_gate(t1, 1.0);
    CHECK(g1.unitarity_residual() < 1e-12);
    const Matrix pm = to_pm_basis(g1.matrix());
    CHECK((pm - Matrix(pm.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);

    const Operator a = embed_local(g1, {1, 2}, 3);
    const Operator b = embed_local(entangling_gate(t2, 1.0), {2, 3}, 3);
    CHECK(oracle::max_abs_diff((a * b).matrix(), (b * a).matrix()) < 1e-12);
  }
}

TEST_CASE("apply_pair_gate") {
  const StateVector zero = StateVector::basis(2, 0);
  CHECK(oracle::max_abs_diff(apply_pair_gate(zero, 1, 2, Operator::identity(4)).amplitudes(), zero.amplitudes()) == 0.0);

  // |phi>|phi> with |phi> = (|-> + |+>)/sqrt2 goes to (1,1,1,-1)/2 in |+-> coordinates.
  const StateVector out = apply_pair_gate(zero, 1, 2, entangling_gate(1.0, 1.0));
  const StateVector pm = PlusMinusBasis::to_pm(out);
  const Vector expected = Vector{{0.5, 0.5, 0.5, -0.5}};
  CHECK(oracle::max_abs_diff(pm.amplitudes(), expected) < 1e-12);

  std::mt19937_64 rng(8);
  Vector psi = Vector::Random(16);
  psi.normalize();
  const StateVector s(4, psi);
  const Operator ga(oracle::expm_taylor(oracle::random_hermitian(4, rng), 1.0));
  const Operator gb(oracle::expm_taylor(oracle::random_hermitian(4, rng), 1.0));
  const StateVector ab = apply_pair_gate(apply_pair_gate(s, 1, 2, ga), 3, 4, gb);
  const StateVector ba = apply_pair_gate(apply_pair_gate(s, 3, 4, gb), 1, 2, ga);
  CHECK(oracle::max_abs_diff(ab.amplitudes(), ba.amplitudes()) < 1e-15);

  CHECK_THROWS_AS(apply_pair_gate(s, 2, 2, ga), DimensionError);
  CHECK_THROWS_AS(apply_pair_gate(s, 0, 2, ga), DimensionError);
  CHECK_THROWS_AS(apply_pair_gate(s, 1, 2, Operator::identity(2)), DimensionError);
}
