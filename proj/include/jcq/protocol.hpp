#pragma once

// Sequential linear-cluster generation, the closed-form target state, and
// the verification probes (stabilizers, local measurements, entropies).
//
// Stabilizer bookkeeping uses operators defined in the |+-> basis:
//   Zbar = |+><+| - |-><-|    (sigma_x in computational coordinates)
//   Xbar = |+><-| + |-><+|    (sigma_z in computational coordinates)

#include <span>
#include <utility>
#include <vector>

#include "jcq/hilbert.hpp"

namespace jcq::protocol {

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxQubits = 12;

using QubitPair = std::pair<int, int>;

struct ClusterSpec {
  int n_qubits = 2;
  std::vector<QubitPair> pair_order;

  /// Left-to-right chain order (1,2),(2,3),...
  static ClusterSpec chain(int n);
  static ClusterSpec with_order(int n, std::vector<QubitPair> order);

  /// Throws std::invalid_argument unless pair_order is a permutation of the chain pairs.
  void validate() const;

  bool operator==(const ClusterSpec&) const = default;
};

std::vector<QubitPair> chain_pairs(int n);

Matrix2 zbar();
Matrix2 xbar();

/// (|->+|+>)/sqrt2 on every qubit, i.e. |0...0>.
StateVector initial_state(int n);

StateVector generate_cluster(const ClusterSpec& spec);
/// Same sequence with an arbitrary 4x4 gate per step (timing-error studies).
StateVector generate_cluster(const ClusterSpec& spec, const Matrix4& step_gate);

/// Closed-form chain cluster state built from the |+-> sign rule.
StateVector ideal_cluster(int n);

/// <K_a> for a = 1..n, K_a = Xbar_a Zbar_{a-1} Zbar_{a+1}.
std::vector<double> stabilizer_expectations(const StateVector& state);

enum class MeasurementBasis { Zbar, Xbar };

struct ProbeResult {
  double probability;
  StateVector post_state;
};

/// Projects `site` onto the `outcome` (+1/-1) eigenspace of the chosen operator.
ProbeResult persistency_probe(const StateVector& state, int site, MeasurementBasis basis, int outcome);

/// Reduced density matrix on `subset` (1-based qubits, any order; sorted internally).
Matrix reduced_density(const StateVector& state, std::span<const int> subset);

/// Von Neumann entropy of the reduced state on `subset`, in bits.
double entanglement_entropy(const StateVector& state, std::span<const int> subset);
double entanglement_entropy(const StateVector& state, std::initializer_list<int> subset);

}  // namespace jcq::protocol
