#pragma once

// Pure dephasing in the charge basis, timing-error sweeps, and the
// coherent-manipulation budget.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jcq/hilbert.hpp"
#include "jcq/protocol.hpp"

namespace jcq::noise {

/// Density-matrix runs are capped at 2^8 x 2^8.
inline constexpr int kMaxDensityQubits = 8;

struct NoiseParams {
  double dephasing_time = 1e-4;   ///< tau_phi, s
  double op_time_single = 1e-10;  ///< single-bit switching time, s
  double entangle_time = 1e-10;   ///< physical duration of one entangling step, s

  /// Exposure gamma*t applied to each qubit after each step.
  double step_exposure() const { return entangle_time / dephasing_time; }
  void validate() const;
};

struct SweepResult {
  std::string parameter_name;  ///< "delta" or "gamma_t"; also the CSV column header
  std::vector<double> parameter_values;
  std::vector<double> fidelities;
  std::string metadata;
};

/// Multiplies the `site` coherences by exp(-gamma_t).
DensityMatrix dephase(const DensityMatrix& rho, int site, double gamma_t);

struct NoisyRun {
  DensityMatrix rho;
  double fidelity;  ///< sqrt(<ideal| rho |ideal>)
};

NoisyRun run_noisy_protocol(const protocol::ClusterSpec& spec, const NoiseParams& noise);
/// Same run, parameterized directly by the per-step exposure gamma*t.
NoisyRun run_noisy_protocol(const protocol::ClusterSpec& spec, double step_exposure);

/// floor(dephasing_time / op_time_single); ratios within 1e-9 of an integer snap to it.
std::int64_t manipulation_budget(const NoiseParams& noise);
std::int64_t manipulation_budget(double dephasing_time, double op_time);

/// Protocol with every step lasting tau (1 + delta), scored against the ideal cluster.
SweepResult timing_sweep(const protocol::ClusterSpec& spec, const std::vector<double>& deltas);
/// Noisy protocol over a grid of per-step exposures.
SweepResult dephasing_sweep(const protocol::ClusterSpec& spec, const std::vector<double>& exposures);

/// `<parameter_name>,fidelity` header, one row per point, 17 significant digits, LF endings.
void write_csv(const SweepResult& result, std::ostream& out);

}  // namespace jcq::noise
