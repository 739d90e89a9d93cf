#include "jcq/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "jcq/dynamics.hpp"
#include "jcq/kernels.hpp"

namespace jcq::protocol {
namespace {

void check_n(int n) {
  if (n < kMinQubits || n > kMaxQubits) {
    throw std::invalid_argument("n_qubits must be in " + std::to_string(kMinQubits) + ".." +
                                std::to_string(kMaxQubits) + ", got " + std::to_string(n));
  }
}

QubitPair normalized(QubitPair p) {
  if (p.first > p.second) std::swap(p.first, p.second);
  return p;
}

}  // namespace

std::vector<QubitPair> chain_pairs(int n) {
  std::vector<QubitPair> out;
  for (int j = 1; j < n; ++j) out.emplace_back(j, j + 1);
  return out;
}

ClusterSpec ClusterSpec::chain(int n) {
  check_n(n);
  return ClusterSpec{n, chain_pairs(n)};
}

ClusterSpec ClusterSpec::with_order(int n, std::vector<QubitPair> order) {
  ClusterSpec spec{n, std::move(order)};
  spec.validate();
  return spec;
}

void ClusterSpec::validate() const {
  check_n(n_qubits);
  if (pair_order.size() != static_cast<std::size_t>(n_qubits - 1)) {
    throw std::invalid_argument("pair_order must list each of the " + std::to_string(n_qubits - 1) +
                                " chain pairs exactly once");
  }
  std::set<QubitPair> seen;
  for (const auto& p : pair_order) {
    const auto q = normalized(p);
    if (q.first < 1 || q.second > n_qubits || q.second != q.first + 1) {
      throw std::invalid_argument("(" + std::to_string(p.first) + "," + std::to_string(p.second) +
                                  ") is not a chain pair");
    }
    if (!seen.insert(q).second) {
      throw std::invalid_argument("chain pair (" + std::to_string(q.first) + "," + std::to_string(q.second) +
                                  ") appears twice");
    }
  }
}

Matrix2 zbar() {
  const StateVector p = dynamics::PlusMinusBasis::plus();
  const StateVector m = dynamics::PlusMinusBasis::minus();
  return p.amplitudes() * p.amplitudes().adjoint() - m.amplitudes() * m.amplitudes().adjoint();
}

Matrix2 xbar() {
  const StateVector p = dynamics::PlusMinusBasis::plus();
  const StateVector m = dynamics::PlusMinusBasis::minus();
  return p.amplitudes() * m.amplitudes().adjoint() + m.amplitudes() * p.amplitudes().adjoint();
}

StateVector initial_state(int n) {
  check_n(n);
  return StateVector::basis(n, 0);
}

StateVector generate_cluster(const ClusterSpec& spec) {
  return generate_cluster(spec, dynamics::entangling_gate(1.0, 1.0).matrix());
}

StateVector generate_cluster(const ClusterSpec& spec, const Matrix4& step_gate) {
  spec.validate();
  StateVector state = initial_state(spec.n_qubits);
  for (const auto& [i, j] : spec.pair_order) {
    dynamics::apply_pair_gate_inplace(state, i, j, step_gate);
  }
  return state;
}

StateVector ideal_cluster(int n) {
  check_n(n);
  const std::size_t dim = std::size_t{1} << n;
  const double norm = std::ldexp(1.0, -n / 2) * ((n % 2) ? 1.0 / std::sqrt(2.0) : 1.0);
  Vector pm(static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    // Bit set = '-'. Adjacent '--' pairs each contribute a sign.
    const int c = std::popcount(s & (s >> 1));
    pm[static_cast<Eigen::Index>(s)] = (c % 2) ? -norm : norm;
  }
  return dynamics::PlusMinusBasis::from_pm(StateVector(n, std::move(pm)));
}

std::vector<double> stabilizer_expectations(const StateVector& state) {
  const int n = state.n_qubits();
  if (n < 2) throw std::invalid_argument("stabilizer_expectations needs at least 2 qubits");
  const StateVector pm = dynamics::PlusMinusBasis::to_pm(state);
  const auto& psi = pm.amplitudes();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int a = 1; a <= n; ++a) {
    const std::size_t flip = qubit_mask(a, n);
    std::size_t zmask = 0;
    if (a > 1) zmask |= qubit_mask(a - 1, n);
    if (a < n) zmask |= qubit_mask(a + 1, n);
    cplx acc = 0.0;
    for (std::size_t x = 0; x < pm.dim(); ++x) {
      const double sign = (std::popcount(x & zmask) % 2) ? -1.0 : 1.0;
      acc += std::conj(psi[static_cast<Eigen::Index>(x)]) * sign * psi[static_cast<Eigen::Index>(x ^ flip)];
    }
    out[static_cast<std::size_t>(a - 1)] = acc.real();
  }
  return out;
}

ProbeResult persistency_probe(const StateVector& state, int site, MeasurementBasis basis, int outcome) {
  if (site < 1 || site > state.n_qubits()) throw DimensionError("persistency_probe: site out of range");
  if (outcome != 1 && outcome != -1) throw std::invalid_argument("persistency_probe: outcome must be +1 or -1");
  const Matrix2 op = basis == MeasurementBasis::Zbar ? zbar() : xbar();
  const Matrix2 projector = 0.5 * (Matrix2::Identity() + static_cast<double>(outcome) * op);
  StateVector post = state;
  kernels::apply_single(post.data(), post.n_qubits(), site, projector);
  const double prob = post.amplitudes().squaredNorm();
  if (prob < 1e-14) {
    throw std::domain_error("persistency_probe: outcome has probability " + std::to_string(prob) +
                            " (null branch)");
  }
  post.amplitudes() /= std::sqrt(prob);
  return {prob, std::move(post)};
}

Matrix reduced_density(const StateVector& state, std::span<const int> subset_in) {
  const int n = state.n_qubits();
  std::vector<int> subset(subset_in.begin(), subset_in.end());
  std::sort(subset.begin(), subset.end());
  if (subset.empty() || static_cast<int>(subset.size()) >= n) {
    throw std::invalid_argument("partition must be a nonempty proper subset of the qubits");
  }
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    throw std::invalid_argument("partition lists a qubit twice");
  }
  if (subset.front() < 1 || subset.back() > n) throw std::invalid_argument("partition qubit out of range");

  std::vector<int> rest;
  for (int q = 1; q <= n; ++q) {
    if (!std::binary_search(subset.begin(), subset.end(), q)) rest.push_back(q);
  }
  auto compose = [n](const std::vector<int>& qs, std::size_t local) {
    std::size_t idx = 0;
    const int k = static_cast<int>(qs.size());
    for (int a = 0; a < k; ++a) {
      if (local & (std::size_t{1} << (k - 1 - a))) idx |= qubit_mask(qs[static_cast<std::size_t>(a)], n);
    }
    return idx;
  };
  const std::size_t ds = std::size_t{1} << subset.size();
  const std::size_t dr = std::size_t{1} << rest.size();
  Matrix a(static_cast<Eigen::Index>(ds), static_cast<Eigen::Index>(dr));
  for (std::size_t s = 0; s < ds; ++s) {
    const std::size_t hi = compose(subset, s);
    for (std::size_t r = 0; r < dr; ++r) {
      a(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) = state[hi | compose(rest, r)];
    }
  }
  return a * a.adjoint();
}

double entanglement_entropy(const StateVector& state, std::span<const int> subset) {
  const Matrix rho = reduced_density(state, subset);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()[k];
    if (p > 1e-14) s -= p * std::log2(p);
  }
  return s;
}

double entanglement_entropy(const StateVector& state, std::initializer_list<int> subset) {
  return entanglement_entropy(state, std::span<const int>(subset.begin(), subset.size()));
}

}  // namespace jcq::protocol
