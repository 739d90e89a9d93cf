#include "jcq/dynamics.hpp"

#include <cmath>

#include "jcq/device.hpp"
#include "jcq/kernels.hpp"

namespace jcq::dynamics {

using device::kPi;

Matrix2 PlusMinusBasis::change_of_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix2 h;
  h << s, s, s, -s;
  return h;
}

StateVector PlusMinusBasis::to_pm(const StateVector& computational) {
  StateVector out = computational;
  kernels::hadamard_all(out.data(), out.n_qubits());
  return out;
}

StateVector PlusMinusBasis::from_pm(const StateVector& pm) { return to_pm(pm); }

StateVector PlusMinusBasis::plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return {1, Vector{{cplx(s), cplx(s)}}};
}

StateVector PlusMinusBasis::minus() {
  const double s = 1.0 / std::sqrt(2.0);
  return {1, Vector{{cplx(s), cplx(-s)}}};
}

Operator protocol_hamiltonian(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("protocol_hamiltonian: tau must be positive");
  const Operator x(Matrix(pauli::x()));
  const Operator id = Operator::identity(2);
  const double coeff = -kPi / (4.0 * tau);
  const Matrix h = coeff * (-tensor(x, id).matrix() - tensor(id, x).matrix() + tensor(x, x).matrix());
  return Operator(h);
}

StateVector evolve(const StateVector& state, const Operator& h, double t) {
  if (h.dim() != state.dim()) throw DimensionError("evolve: Hamiltonian and state dimensions differ");
  return expm_hermitian(h, t) * state;
}

StateVector evolve(const StateVector& state, const Operator& h, double t, std::span<const int> targets) {
  const Operator u = expm_hermitian(h, t);
  StateVector out = state;
  if (targets.size() == 1 && u.dim() == 2) {
    kernels::apply_single(out.data(), out.n_qubits(), targets[0], u.matrix());
  } else if (targets.size() == 2 && u.dim() == 4) {
    kernels::apply_pair(out.data(), out.n_qubits(), targets[0], targets[1], u.matrix());
  } else {
    throw DimensionError("evolve: Hamiltonian dimension does not match target count");
  }
  return out;
}

cplx phase_correction() { return std::polar(1.0, kPi / 4.0); }

Operator entangling_gate(double t, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("entangling_gate: tau must be positive");
  const Operator u = expm_hermitian(protocol_hamiltonian(tau), t);
  return Operator(phase_correction() * u.matrix());
}

StateVector apply_pair_gate(const StateVector& state, int i, int j, const Operator& gate) {
  if (gate.dim() != 4) throw DimensionError("apply_pair_gate: gate must be 4x4");
  StateVector out = state;
  apply_pair_gate_inplace(out, i, j, gate.matrix());
  return out;
}

void apply_pair_gate_inplace(StateVector& state, int i, int j, const Matrix4& gate) {
  kernels::apply_pair(state.data(), state.n_qubits(), i, j, gate);
}

}  // namespace jcq::dynamics
