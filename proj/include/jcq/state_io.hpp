#pragma once

// JSON amplitude files:
//   {"n_qubits": n, "basis": "computational" | "pm", "amplitudes": [[re, im], ...]}
// Amplitudes are listed in basis-index order with qubit 1 most significant.
// In "pm" files bit value 0 is |+> and 1 is |->.

#include <string>

#include <json.hpp>

#include "jcq/hilbert.hpp"

namespace jcq::io {

enum class Basis { Computational, PlusMinus };

Basis parse_basis(const std::string& name);
std::string basis_name(Basis b);

/// `state` is in computational coordinates; it is converted when `basis` is PlusMinus.
nlohmann::ordered_json state_to_json(const StateVector& state, Basis basis);
/// Returns computational-basis amplitudes regardless of the file's basis. Throws std::runtime_error.
StateVector state_from_json(const nlohmann::ordered_json& doc);

}  // namespace jcq::io
