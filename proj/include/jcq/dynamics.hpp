#pragma once

// Time evolution under the device Hamiltonians and the effective two-qubit
// controlled-phase gate obtained from one entangling period.

#include <span>

#include "jcq/hilbert.hpp"

namespace jcq::dynamics {

/// Change of basis between computational (|0>,|1>) and (|+>,|->) coordinates.
/// The matrix is real and self-inverse.
struct PlusMinusBasis {
  static Matrix2 change_of_basis();
  /// Computational amplitudes -> |+-> coordinates (qubit 1 most significant, '+' = bit 0).
  static StateVector to_pm(const StateVector& computational);
  static StateVector from_pm(const StateVector& pm);
  static StateVector plus();
  static StateVector minus();
};

/// Pair coupling with all three coefficients equal to -pi/(4 tau):
/// (-pi/4tau)(-X_i - X_j + X_i X_j), in units of hbar/tau.
Operator protocol_hamiltonian(double tau = 1.0);

/// exp(-i H t) |state>; H spans the full register.
StateVector evolve(const StateVector& state, const Operator& h, double t);
/// exp(-i H t) on a 1- or 2-qubit subset of the register.
StateVector evolve(const StateVector& state, const Operator& h, double t, std::span<const int> targets);

/// Global phase applied after each entangling period.
cplx phase_correction();

/// e^{i pi/4} exp(-i H t). At t = tau this is diag(1,1,1,-1) in the |+-> product basis.
Operator entangling_gate(double t, double tau = 1.0);

StateVector apply_pair_gate(const StateVector& state, int i, int j, const Operator& gate);
void apply_pair_gate_inplace(StateVector& state, int i, int j, const Matrix4& gate);

}  // namespace jcq::dynamics
