#include "jcq/state_io.hpp"

#include <stdexcept>

#include "jcq/dynamics.hpp"

namespace jcq::io {

Basis parse_basis(const std::string& name) {
  if (name == "computational") return Basis::Computational;
  if (name == "pm") return Basis::PlusMinus;
  throw std::invalid_argument("unknown basis '" + name + "' (expected computational or pm)");
}

std::string basis_name(Basis b) { return b == Basis::Computational ? "computational" : "pm"; }

nlohmann::ordered_json state_to_json(const StateVector& state, Basis basis) {
  const StateVector out = basis == Basis::PlusMinus ? dynamics::PlusMinusBasis::to_pm(state) : state;
  nlohmann::ordered_json doc;
  doc["n_qubits"] = out.n_qubits();
  doc["basis"] = basis_name(basis);
  auto amps = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < out.dim(); ++k) {
    amps.push_back(nlohmann::ordered_json::array({out[k].real(), out[k].imag()}));
  }
  doc["amplitudes"] = std::move(amps);
  return doc;
}

StateVector state_from_json(const nlohmann::ordered_json& doc) {
  if (!doc.is_object()) throw std::runtime_error("state file: expected an object");
  if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
    throw std::runtime_error("state file: n_qubits missing or not an integer");
  }
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
    throw std::runtime_error("state file: amplitudes missing or not an array");
  }
  const int n = doc["n_qubits"].get<int>();
  Basis basis = Basis::Computational;
  if (doc.contains("basis")) basis = parse_basis(doc["basis"].get<std::string>());
  const auto& amps = doc["amplitudes"];
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const auto& a = amps[k];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw std::runtime_error("state file: amplitudes[" + std::to_string(k) + "] must be [real, imag]");
    }
    v[static_cast<Eigen::Index>(k)] = cplx(a[0].get<double>(), a[1].get<double>());
  }
  StateVector state(n, std::move(v));
  return basis == Basis::PlusMinus ? dynamics::PlusMinusBasis::from_pm(state) : state;
}

}  // namespace jcq::io
