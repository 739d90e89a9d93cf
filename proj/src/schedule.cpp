#include "jcq/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "jcq/dynamics.hpp"
#include "jcq/kernels.hpp"

namespace jcq::schedule {

using device::DeviceConfig;
using device::QubitParams;

FormatError::FormatError(std::string path, const std::string& what)
    : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

namespace {

std::string idx_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }
std::string field_path(const std::string& base, const char* key) { return base.empty() ? key : base + "." + key; }

const Json& require(const Json& obj, const char* key, const std::string& base) {
  if (!obj.is_object()) throw FormatError(base.empty() ? "<root>" : base, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(field_path(base, key), "missing required field");
  return *it;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw FormatError(path, "expected a number");
  return v.get<double>();
}

double require_number(const Json& obj, const char* key, const std::string& base) {
  return number(require(obj, key, base), field_path(base, key));
}

int require_int(const Json& obj, const char* key, const std::string& base) {
  const Json& v = require(obj, key, base);
  if (!v.is_number_integer()) throw FormatError(field_path(base, key), "expected an integer");
  return v.get<int>();
}

const Json& require_array(const Json& obj, const char* key, const std::string& base) {
  const Json& v = require(obj, key, base);
  if (!v.is_array()) throw FormatError(field_path(base, key), "expected an array");
  return v;
}

protocol::QubitPair pair_from(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw FormatError(path, "expected a pair of integer qubit indices");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

Json optional_array(const std::vector<std::optional<double>>& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(x ? Json(*x) : Json(nullptr));
  return arr;
}

std::vector<std::optional<double>> optional_array_from(const Json& obj, const char* key, const std::string& base) {
  std::vector<std::optional<double>> out;
  auto it = obj.find(key);
  if (it == obj.end()) return out;
  const std::string path = field_path(base, key);
  if (!it->is_array()) throw FormatError(path, "expected an array of numbers or nulls");
  for (std::size_t k = 0; k < it->size(); ++k) {
    const Json& e = (*it)[k];
    if (e.is_null()) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(number(e, idx_path(path, k)));
    }
  }
  return out;
}

bool is_active(const GateStep& step, int k) { return step.active_pair.first == k || step.active_pair.second == k; }

void check_step(const Schedule& s, const GateStep& step, std::size_t index) {
  const std::string where = "step " + std::to_string(index + 1);
  if (step.box_settings.size() != s.device.qubits.size()) {
    throw ScheduleError(where + ": box_settings must cover all " + std::to_string(s.device.qubits.size()) + " boxes");
  }
  const auto [i, j] = step.active_pair;
  if (i < 1 || j < 1 || i > s.target.n_qubits || j > s.target.n_qubits || i == j) {
    throw ScheduleError(where + ": active pair out of range");
  }
  for (int k = 1; k <= s.device.size(); ++k) {
    QubitParams q = s.device.qubits[static_cast<std::size_t>(k - 1)];
    q.flux_x = step.box_settings[static_cast<std::size_t>(k - 1)].flux_x;
    q.v_x = step.box_settings[static_cast<std::size_t>(k - 1)].v_x;
    if (is_active(step, k)) {
      if (!device::at_degeneracy(q)) {
        throw ScheduleError(where + ": active box " + std::to_string(k) + " is not at the degeneracy voltage");
      }
    } else if (!device::idle_settings(q)) {
      throw ScheduleError(where + ": spectator box " + std::to_string(k) + " is not at idle bias");
    }
  }
  if (!(step.duration >= 0.0) || !std::isfinite(step.duration)) {
    throw ScheduleError(where + ": duration must be finite and non-negative");
  }
}

DeviceConfig step_device(const Schedule& s, const GateStep& step) {
  DeviceConfig cfg = s.device;
  for (std::size_t k = 0; k < cfg.qubits.size(); ++k) {
    cfg.qubits[k].flux_x = step.box_settings[k].flux_x;
    cfg.qubits[k].v_x = step.box_settings[k].v_x;
  }
  cfg.epsilon_overrides.clear();
  cfg.ebar_overrides.assign(cfg.qubits.size(), std::nullopt);
  cfg.ebar_overrides[static_cast<std::size_t>(step.active_pair.first - 1)] = step.coupling.ebar_i;
  cfg.ebar_overrides[static_cast<std::size_t>(step.active_pair.second - 1)] = step.coupling.ebar_j;
  cfg.pi_override = step.coupling.pi;
  return cfg;
}

}  // namespace

Schedule compile_schedule(const protocol::ClusterSpec& spec, const DeviceConfig& device) {
  spec.validate();
  device.validate();
  if (device.size() < spec.n_qubits) {
    throw std::invalid_argument("device has " + std::to_string(device.size()) + " boxes, cluster needs " +
                                std::to_string(spec.n_qubits));
  }
  const double pinned = -device::kPi / 4.0;  // -pi hbar / 4 tau in units of hbar / tau
  Schedule s{device, {}, spec};
  for (const auto& pair : spec.pair_order) {
    GateStep step;
    step.active_pair = pair;
    step.duration = 1.0;
    step.coupling = {pinned, pinned, pinned};
    step.phase_correction = dynamics::phase_correction();
    for (int k = 1; k <= device.size(); ++k) {
      const QubitParams& q = device.qubits[static_cast<std::size_t>(k - 1)];
      const bool active = k == pair.first || k == pair.second;
      step.box_settings.push_back({active ? kActiveFlux : 0.5, q.degeneracy_voltage()});
    }
    s.steps.push_back(std::move(step));
  }
  return s;
}

void validate_schedule(const Schedule& s) {
  try {
    s.target.validate();
    s.device.validate();
  } catch (const std::invalid_argument& e) {
    throw ScheduleError(e.what());
  }
  if (s.device.size() < s.target.n_qubits) throw ScheduleError("device has fewer boxes than the target cluster");
  std::multiset<protocol::QubitPair> pairs;
  for (std::size_t k = 0; k < s.steps.size(); ++k) {
    check_step(s, s.steps[k], k);
    auto p = s.steps[k].active_pair;
    if (p.first > p.second) std::swap(p.first, p.second);
    pairs.insert(p);
  }
  const auto chain = protocol::chain_pairs(s.target.n_qubits);
  if (pairs != std::multiset<protocol::QubitPair>(chain.begin(), chain.end())) {
    throw ScheduleError("active pairs must cover each chain pair exactly once");
  }
}

StateVector simulate_schedule(const Schedule& s) {
  validate_schedule(s);
  StateVector state = protocol::initial_state(s.target.n_qubits);
  for (const auto& step : s.steps) {
    const DeviceConfig cfg = step_device(s, step);
    Operator h = Operator::identity(4);
    try {
      h = device::pair_hamiltonian(cfg, step.active_pair.first, step.active_pair.second);
    } catch (const device::BiasError& e) {
      throw ScheduleError(e.what());
    }
    const Matrix4 u = step.phase_correction * expm_hermitian(h, step.duration).matrix();
    kernels::apply_pair(state.data(), state.n_qubits(), step.active_pair.first, step.active_pair.second, u);
  }
  return state;
}

Json export_device(const DeviceConfig& cfg) {
  Json d;
  d["tau_seconds"] = cfg.tau;
  d["inductance_henry"] = cfg.inductance;
  d["flux_e"] = cfg.flux_e;
  d["ebar_screening"] = cfg.ebar_screening;
  Json qubits = Json::array();
  for (const auto& q : cfg.qubits) {
    Json jq;
    jq["ej0_joule"] = q.ej0;
    jq["c_junction_farad"] = q.c_j;
    jq["c_gate_farad"] = q.c_gate;
    jq["n_offset"] = q.n_offset;
    jq["flux_x"] = q.flux_x;
    jq["v_x"] = q.v_x;
    qubits.push_back(std::move(jq));
  }
  d["qubits"] = std::move(qubits);
  d["epsilon_overrides"] = optional_array(cfg.epsilon_overrides);
  d["ebar_overrides"] = optional_array(cfg.ebar_overrides);
  d["pi_override"] = cfg.pi_override ? Json(*cfg.pi_override) : Json(nullptr);
  return d;
}

DeviceConfig import_device(const Json& doc, const std::string& path) {
  DeviceConfig cfg;
  cfg.tau = require_number(doc, "tau_seconds", path);
  cfg.inductance = require_number(doc, "inductance_henry", path);
  cfg.flux_e = require_number(doc, "flux_e", path);
  if (doc.contains("ebar_screening")) cfg.ebar_screening = require_number(doc, "ebar_screening", path);
  const Json& qubits = require_array(doc, "qubits", path);
  const std::string qpath = field_path(path, "qubits");
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    const std::string p = idx_path(qpath, k);
    QubitParams q;
    q.ej0 = require_number(qubits[k], "ej0_joule", p);
    q.c_j = require_number(qubits[k], "c_junction_farad", p);
    q.c_gate = require_number(qubits[k], "c_gate_farad", p);
    q.n_offset = require_int(qubits[k], "n_offset", p);
    q.flux_x = require_number(qubits[k], "flux_x", p);
    q.v_x = require_number(qubits[k], "v_x", p);
    cfg.qubits.push_back(q);
  }
  cfg.epsilon_overrides = optional_array_from(doc, "epsilon_overrides", path);
  cfg.ebar_overrides = optional_array_from(doc, "ebar_overrides", path);
  if (auto it = doc.find("pi_override"); it != doc.end() && !it->is_null()) {
    cfg.pi_override = number(*it, field_path(path, "pi_override"));
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(path, e.what());
  }
  return cfg;
}

DeviceConfig load_device_document(const Json& doc) {
  if (doc.is_object() && doc.contains("device")) {
    if (doc.contains("version")) {
      const Json& v = doc["version"];
      if (!v.is_number_integer() || v.get<int>() != kFormatVersion) throw FormatError("version", "unsupported version");
    }
    return import_device(doc["device"], "device");
  }
  return import_device(doc, "");
}

Json export_schedule(const Schedule& s) {
  Json doc;
  doc["version"] = kFormatVersion;
  doc["device"] = export_device(s.device);
  Json target;
  target["n_qubits"] = s.target.n_qubits;
  Json order = Json::array();
  for (const auto& [i, j] : s.target.pair_order) order.push_back(Json::array({i, j}));
  target["pair_order"] = std::move(order);
  doc["target"] = std::move(target);
  Json steps = Json::array();
  for (const auto& step : s.steps) {
    Json js;
    js["active_pair"] = Json::array({step.active_pair.first, step.active_pair.second});
    js["duration"] = step.duration;
    Json boxes = Json::array();
    for (const auto& b : step.box_settings) {
      Json jb;
      jb["flux_x"] = b.flux_x;
      jb["v_x"] = b.v_x;
      boxes.push_back(std::move(jb));
    }
    js["box_settings"] = std::move(boxes);
    Json coupling;
    coupling["ebar_i"] = step.coupling.ebar_i;
    coupling["ebar_j"] = step.coupling.ebar_j;
    coupling["pi"] = step.coupling.pi;
    js["coupling"] = std::move(coupling);
    js["phase_correction"] = Json::array({step.phase_correction.real(), step.phase_correction.imag()});
    steps.push_back(std::move(js));
  }
  doc["steps"] = std::move(steps);
  return doc;
}

Schedule import_schedule(const Json& doc) {
  const Json& version = require(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw FormatError("version", "unsupported schedule version " + version.dump());
  }
  Schedule s;
  s.device = import_device(require(doc, "device", ""), "device");

  const Json& target = require(doc, "target", "");
  s.target.n_qubits = require_int(target, "n_qubits", "target");
  const Json& order = require_array(target, "pair_order", "target");
  for (std::size_t k = 0; k < order.size(); ++k) {
    s.target.pair_order.push_back(pair_from(order[k], idx_path("target.pair_order", k)));
  }
  try {
    s.target.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError("target", e.what());
  }

  const Json& steps = require_array(doc, "steps", "");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const std::string p = idx_path("steps", k);
    const Json& js = steps[k];
    GateStep step;
    step.active_pair = pair_from(require(js, "active_pair", p), field_path(p, "active_pair"));
    step.duration = require_number(js, "duration", p);
    const Json& boxes = require_array(js, "box_settings", p);
    const std::string bpath = field_path(p, "box_settings");
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      const std::string bp = idx_path(bpath, b);
      step.box_settings.push_back({require_number(boxes[b], "flux_x", bp), require_number(boxes[b], "v_x", bp)});
    }
    const Json& c = require(js, "coupling", p);
    const std::string cp = field_path(p, "coupling");
    step.coupling = {require_number(c, "ebar_i", cp), require_number(c, "ebar_j", cp), require_number(c, "pi", cp)};
    const Json& ph = require(js, "phase_correction", p);
    const std::string php = field_path(p, "phase_correction");
    if (!ph.is_array() || ph.size() != 2) throw FormatError(php, "expected [real, imag]");
    step.phase_correction = cplx(number(ph[0], idx_path(php, 0)), number(ph[1], idx_path(php, 1)));
    s.steps.push_back(std::move(step));
  }
  return s;
}

}  // namespace jcq::schedule
