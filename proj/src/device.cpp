#include "jcq/device.hpp"

#include <cmath>
#include <string>

namespace jcq::device {
namespace {

bool close_rel(double value, double target) {
  return std::abs(value - target) <= kBiasTolerance * std::abs(target);
}

void check_index(const DeviceConfig& cfg, int k) {
  if (k < 1 || k > cfg.size()) {
    throw DimensionError("box index " + std::to_string(k) + " out of range 1.." + std::to_string(cfg.size()));
  }
}

std::optional<double> override_at(const std::vector<std::optional<double>>& v, int k) {
  const auto idx = static_cast<std::size_t>(k - 1);
  return idx < v.size() ? v[idx] : std::nullopt;
}

double to_internal(const DeviceConfig& cfg, double joules) { return joules * cfg.tau / kHbar; }

void require_spectators_idle(const DeviceConfig& cfg, int i, int j) {
  for (int k = 1; k <= cfg.size(); ++k) {
    if (k == i || k == j) continue;
    if (!idle_settings(cfg.qubits[static_cast<std::size_t>(k - 1)])) {
      throw BiasError("box " + std::to_string(k) + " is not at idle bias (flux_x = Phi0/2, v_x = (2n+1)e/c_gate)");
    }
  }
}

}  // namespace

void DeviceConfig::validate() const {
  if (qubits.empty()) throw std::invalid_argument("device has no boxes");
  if (!(tau > 0.0)) throw std::invalid_argument("device tau must be positive");
  if (!(inductance > 0.0)) throw std::invalid_argument("device inductance must be positive");
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    const auto& q = qubits[k];
    if (!(q.ej0 > 0.0) || !(q.c_j > 0.0) || !(q.c_gate > 0.0)) {
      throw std::invalid_argument("box " + std::to_string(k + 1) + ": ej0 and capacitances must be positive");
    }
  }
}

DeviceConfig default_device(int n) {
  if (n < 1) throw std::invalid_argument("default_device: n must be positive");
  QubitParams q;
  q.ej0 = 1.5e-24;   // ~ k_B * 110 mK
  q.c_j = 1e-16;
  q.c_gate = 2e-17;  // E_c ~ 3e-23 J, well inside the charging regime
  q.n_offset = 0;
  q = make_idle(q);
  DeviceConfig cfg;
  cfg.qubits.assign(static_cast<std::size_t>(n), q);
  return cfg;
}

double squid_coupling(double ej0, double flux_quanta) {
  if (!(ej0 > 0.0)) throw std::invalid_argument("squid_coupling: ej0 must be positive");
  // Odd half-quanta are where the coupling vanishes; return an exact zero there.
  const double twice = 2.0 * flux_quanta;
  if (twice == std::nearbyint(twice) && std::fmod(std::abs(std::nearbyint(twice)), 2.0) == 1.0) return 0.0;
  return 2.0 * ej0 * std::cos(kPi * flux_quanta);
}

double charging_energy(const QubitParams& q) {
  return kElementaryCharge * kElementaryCharge / (2.0 * (q.c_gate + 4.0 * q.c_j));
}

bool idle_settings(const QubitParams& q) {
  return close_rel(q.flux_x, 0.5) && at_degeneracy(q);
}

bool at_degeneracy(const QubitParams& q) { return close_rel(q.v_x, q.degeneracy_voltage()); }

QubitParams make_idle(const QubitParams& q) {
  QubitParams out = q;
  out.flux_x = 0.5;
  out.v_x = q.degeneracy_voltage();
  return out;
}

EffectiveCoefficients effective_coefficients(const DeviceConfig& cfg, int k) {
  check_index(cfg, k);
  const QubitParams& q = cfg.qubits[static_cast<std::size_t>(k - 1)];
  EffectiveCoefficients out;
  out.pi = cfg.pi_override;
  if (idle_settings(q)) return out;

  if (auto e = override_at(cfg.epsilon_overrides, k)) {
    out.epsilon = *e;
  } else {
    // Linear charging model; exactly zero at the degeneracy voltage.
    out.epsilon = to_internal(cfg, 0.5 * charging_energy(q) * (q.v_x - q.degeneracy_voltage()));
  }
  if (auto e = override_at(cfg.ebar_overrides, k)) {
    out.ebar = *e;
  } else {
    out.ebar = to_internal(cfg, cfg.ebar_screening * squid_coupling(q.ej0, q.flux_x));
  }
  return out;
}

Operator single_qubit_hamiltonian(const DeviceConfig& cfg, int i) {
  check_index(cfg, i);
  require_spectators_idle(cfg, i, i);
  const auto c = effective_coefficients(cfg, i);
  return Operator(Matrix(c.epsilon * pauli::z() - c.ebar * pauli::x()));
}

Operator pair_hamiltonian(const DeviceConfig& cfg, int i, int j) {
  check_index(cfg, i);
  check_index(cfg, j);
  if (i == j) throw DimensionError("pair_hamiltonian: boxes must differ");
  require_spectators_idle(cfg, i, j);
  if (!cfg.pi_override) {
    throw BiasError("pair_hamiltonian: interbit coupling Pi has no closed form here; set pi_override");
  }
  const auto ci = effective_coefficients(cfg, i);
  const auto cj = effective_coefficients(cfg, j);
  const Matrix2 id = pauli::identity();
  const Matrix2 x = pauli::x();
  const Matrix2 z = pauli::z();
  auto kron = [](const Matrix2& a, const Matrix2& b) { return tensor(Operator(Matrix(a)), Operator(Matrix(b))).matrix(); };
  Matrix h = ci.epsilon * kron(z, id) - ci.ebar * kron(x, id) + cj.epsilon * kron(id, z) - cj.ebar * kron(id, x) +
             *cfg.pi_override * kron(x, x);
  return Operator(std::move(h));
}

}  // namespace jcq::device
