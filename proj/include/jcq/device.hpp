#pragma once

// Physical control knobs of the shared-inductance charge-qubit register and
// the effective spin Hamiltonians they produce.
//
// Units. Device constants are SI (joule, farad, henry, second). Control
// settings are stored relative to their natural scale so that the idle and
// degeneracy prescriptions are exact in binary floating point:
//   flux_x  in units of the flux quantum Phi0,
//   v_x     in units of e / c_gate.
// Hamiltonian coefficients are in units of hbar / tau, so a Hamiltonian
// exponentiated for time t (in units of tau) needs no further scaling.

#include <optional>
#include <stdexcept>
#include <vector>

#include "jcq/hilbert.hpp"

namespace jcq::device {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kHbar = kPlanck / (2.0 * kPi);
inline constexpr double kFluxQuantum = kPlanck / (2.0 * kElementaryCharge);  // Wb

/// Relative tolerance for the idle and degeneracy predicates.
inline constexpr double kBiasTolerance = 1e-9;

/// Spectator box not at its idle bias, or an inconsistent configuration.
class BiasError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QubitParams {
  double ej0 = 0.0;     ///< single-junction Josephson energy, J
  double c_j = 0.0;     ///< junction capacitance, F
  double c_gate = 0.0;  ///< gate capacitance, F
  int n_offset = 0;     ///< Cooper-pair number offset n_k
  double flux_x = 0.5;  ///< SQUID flux, units of Phi0
  double v_x = 1.0;     ///< gate voltage, units of e / c_gate

  double flux_x_weber() const { return flux_x * kFluxQuantum; }
  double v_x_volts() const { return v_x * kElementaryCharge / c_gate; }
  /// Gate voltage (in units of e / c_gate) at which the charge states are degenerate.
  double degeneracy_voltage() const { return 2.0 * n_offset + 1.0; }

  bool operator==(const QubitParams&) const = default;
};

struct DeviceConfig {
  std::vector<QubitParams> qubits;
  double inductance = 30e-9;  ///< H
  double flux_e = 0.0;        ///< external flux through L, units of Phi0
  double tau = 1e-10;         ///< entangling period, s
  /// Per-box overrides, units of hbar / tau. Empty or shorter vectors mean "no override".
  std::vector<std::optional<double>> epsilon_overrides;
  std::vector<std::optional<double>> ebar_overrides;
  std::optional<double> pi_override;
  /// Phenomenological fallback: ebar = ebar_screening * E_J(flux_x).
  double ebar_screening = 1.0;

  int size() const { return static_cast<int>(qubits.size()); }
  void validate() const;

  bool operator==(const DeviceConfig&) const = default;
};

struct EffectiveCoefficients {
  double epsilon = 0.0;
  double ebar = 0.0;
  std::optional<double> pi;
};

/// A register of `n` identical idle boxes with representative charge-regime constants.
DeviceConfig default_device(int n);

/// 2 E_J0 cos(pi flux / Phi0); `flux_quanta` in units of Phi0.
double squid_coupling(double ej0, double flux_quanta);

/// Charging energy e^2 / 2 (c_gate + 4 c_j), J.
double charging_energy(const QubitParams& q);

bool idle_settings(const QubitParams& q);
QubitParams make_idle(const QubitParams& q);
bool at_degeneracy(const QubitParams& q);

/// Coefficients of box `k` (1-based). Idle boxes give exactly zero.
EffectiveCoefficients effective_coefficients(const DeviceConfig& cfg, int k);

/// eps_i sigma_z - ebar_i sigma_x, with every other box required idle.
Operator single_qubit_hamiltonian(const DeviceConfig& cfg, int i);

/// Two-box Hamiltonian on (i, j) with i as the high-order factor; every
/// other box must be idle. The pair coupling requires `pi_override`.
Operator pair_hamiltonian(const DeviceConfig& cfg, int i, int j);

}  // namespace jcq::device
