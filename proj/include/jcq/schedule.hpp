#pragma once

// Timed device-control schedules: one entangling step per chain pair, each
// carrying the full per-box bias settings, plus the JSON document format
// used to store them.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "jcq/device.hpp"
#include "jcq/hilbert.hpp"
#include "jcq/protocol.hpp"

namespace jcq::schedule {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Active boxes are biased at zero SQUID flux (maximal Josephson coupling).
inline constexpr double kActiveFlux = 0.0;

/// Malformed schedule document. `path()` names the offending field, e.g. `steps[1].duration`.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Step whose bias settings break the idle/degeneracy prescription.
class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BoxSetting {
  double flux_x = 0.5;  ///< units of Phi0
  double v_x = 1.0;     ///< units of e / c_gate
  bool operator==(const BoxSetting&) const = default;
};

/// Energies pinned for the active pair, units of hbar / tau.
struct StepCoupling {
  double ebar_i = 0.0;
  double ebar_j = 0.0;
  double pi = 0.0;
  bool operator==(const StepCoupling&) const = default;
};

struct GateStep {
  protocol::QubitPair active_pair;
  double duration = 1.0;  ///< units of tau
  std::vector<BoxSetting> box_settings;
  StepCoupling coupling;
  cplx phase_correction = 1.0;
  bool operator==(const GateStep&) const = default;
};

struct Schedule {
  device::DeviceConfig device;
  std::vector<GateStep> steps;
  protocol::ClusterSpec target;
  bool operator==(const Schedule&) const = default;
};

Schedule compile_schedule(const protocol::ClusterSpec& spec, const device::DeviceConfig& device);

/// Throws ScheduleError if any step violates the bias prescription or the
/// active pairs do not cover the chain.
void validate_schedule(const Schedule& s);

/// Replays every step through the device Hamiltonian and returns the final state.
StateVector simulate_schedule(const Schedule& s);

Json export_schedule(const Schedule& s);
Schedule import_schedule(const Json& doc);

Json export_device(const device::DeviceConfig& cfg);
device::DeviceConfig import_device(const Json& doc, const std::string& path = "device");
/// Accepts either a bare device object or a document with a `device` field.
device::DeviceConfig load_device_document(const Json& doc);

}  // namespace jcq::schedule
