#include "jcq/noise.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "jcq/dynamics.hpp"
#include "jcq/kernels.hpp"

namespace jcq::noise {

void NoiseParams::validate() const {
  if (!(dephasing_time > 0.0) || !(op_time_single > 0.0) || !(entangle_time > 0.0)) {
    throw std::invalid_argument("noise times must be positive");
  }
}

DensityMatrix dephase(const DensityMatrix& rho, int site, double gamma_t) {
  if (!(gamma_t >= 0.0)) throw std::invalid_argument("dephase: exposure must be non-negative");
  DensityMatrix out = rho;
  kernels::dephase(out.matrix(), out.n_qubits(), site, std::exp(-gamma_t));
  return out;
}

NoisyRun run_noisy_protocol(const protocol::ClusterSpec& spec, const NoiseParams& noise) {
  noise.validate();
  return run_noisy_protocol(spec, noise.step_exposure());
}

NoisyRun run_noisy_protocol(const protocol::ClusterSpec& spec, double step_exposure) {
  spec.validate();
  const int n = spec.n_qubits;
  if (n > kMaxDensityQubits) {
    throw DimensionError("run_noisy_protocol: density matrices are capped at " + std::to_string(kMaxDensityQubits) +
                         " qubits");
  }
  if (!(step_exposure >= 0.0)) throw std::invalid_argument("run_noisy_protocol: exposure must be non-negative");

  const Matrix4 gate = dynamics::entangling_gate(1.0, 1.0).matrix();
  const double factor = std::exp(-step_exposure);
  DensityMatrix rho = DensityMatrix::from_pure(protocol::initial_state(n));
  for (const auto& [i, j] : spec.pair_order) {
    kernels::conjugate_pair(rho.matrix(), n, i, j, gate);
    if (step_exposure > 0.0) {
      for (int q = 1; q <= n; ++q) kernels::dephase(rho.matrix(), n, q, factor);
    }
  }
  const double overlap = rho.expectation(protocol::ideal_cluster(n));
  return {std::move(rho), std::sqrt(std::max(0.0, std::min(1.0, overlap)))};
}

std::int64_t manipulation_budget(double dephasing_time, double op_time) {
  if (!(dephasing_time > 0.0) || !(op_time > 0.0)) throw std::invalid_argument("budget times must be positive");
  const double ratio = dephasing_time / op_time;
  const double nearest = std::nearbyint(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::floor(ratio));
}

std::int64_t manipulation_budget(const NoiseParams& noise) {
  return manipulation_budget(noise.dephasing_time, noise.op_time_single);
}

SweepResult timing_sweep(const protocol::ClusterSpec& spec, const std::vector<double>& deltas) {
  spec.validate();
  for (double d : deltas) {
    if (!std::isfinite(d)) throw std::invalid_argument("timing_sweep: deltas must be finite");
  }
  const StateVector ideal = protocol::ideal_cluster(spec.n_qubits);
  SweepResult result{"delta", deltas, std::vector<double>(deltas.size()),
                     "timing n=" + std::to_string(spec.n_qubits)};
  const auto count = static_cast<std::int64_t>(deltas.size());
  // Points are independent; each writes only its own slot.
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const Matrix4 gate = dynamics::entangling_gate(1.0 + deltas[idx], 1.0).matrix();
    result.fidelities[idx] = fidelity(ideal, protocol::generate_cluster(spec, gate));
  }
  return result;
}

SweepResult dephasing_sweep(const protocol::ClusterSpec& spec, const std::vector<double>& exposures) {
  spec.validate();
  // Exceptions cannot leave the parallel region, so reject bad input up front.
  if (spec.n_qubits > kMaxDensityQubits) {
    throw DimensionError("dephasing_sweep: density matrices are capped at " + std::to_string(kMaxDensityQubits) +
                         " qubits");
  }
  for (double e : exposures) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("dephasing_sweep: exposures must be finite and non-negative");
  }
  SweepResult result{"gamma_t", exposures, std::vector<double>(exposures.size()),
                     "dephasing n=" + std::to_string(spec.n_qubits)};
  const auto count = static_cast<std::int64_t>(exposures.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    result.fidelities[idx] = run_noisy_protocol(spec, exposures[idx]).fidelity;
  }
  return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  if (result.parameter_values.size() != result.fidelities.size()) {
    throw std::invalid_argument("write_csv: column length mismatch");
  }
  out << result.parameter_name << ",fidelity\n";
  char buf[64];
  for (std::size_t k = 0; k < result.fidelities.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", result.parameter_values[k], result.fidelities[k]);
    out << buf;
  }
}

}  // namespace jcq::noise
