#include "jcq/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jcq {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::size_t v) {
  if (!is_power_of_two(v)) {
    throw DimensionError("dimension " + std::to_string(v) + " is not a power of two");
  }
  int k = 0;
  while ((std::size_t{1} << k) < v) ++k;
  return k;
}

StateVector::StateVector(int n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw DimensionError("n_qubits must be in 1..30, got " + std::to_string(n_qubits));
  }
  if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_qubits)) {
    throw DimensionError("state of " + std::to_string(n_qubits) + " qubits needs " +
                         std::to_string(std::size_t{1} << n_qubits) + " amplitudes, got " +
                         std::to_string(amps_.size()));
  }
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return {n_qubits, std::move(v)};
}

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw DimensionError("operator must be square");
  if (!is_power_of_two(static_cast<std::size_t>(m_.rows()))) {
    throw DimensionError("operator dimension must be a power of two");
  }
}

Operator Operator::identity(std::size_t dim) {
  return Operator(Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

Operator Operator::operator*(const Operator& rhs) const {
  if (dim() != rhs.dim()) throw DimensionError("operator product dimension mismatch");
  return Operator(m_ * rhs.m_);
}

StateVector Operator::operator*(const StateVector& rhs) const {
  if (dim() != rhs.dim()) throw DimensionError("operator/state dimension mismatch");
  return {rhs.n_qubits(), m_ * rhs.amplitudes()};
}

double Operator::hermiticity_residual() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::unitarity_residual() const {
  return (m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(int n_qubits, Matrix entries)
    : n_qubits_(n_qubits), rho_(std::move(entries)) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw DimensionError("density matrix of " + std::to_string(n_qubits) +
                         " qubits must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return {psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

double DensityMatrix::hermiticity_residual() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::expectation(const StateVector& psi) const {
  if (psi.dim() != dim()) throw DimensionError("state/density dimension mismatch");
  return psi.amplitudes().dot(rho_ * psi.amplitudes()).real();
}

namespace pauli {
Matrix2 identity() { return Matrix2::Identity(); }
Matrix2 x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
Matrix2 y() {
  Matrix2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
Matrix2 z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

Operator tensor(const Operator& a, const Operator& b) {
  const auto da = a.matrix().rows();
  const auto db = b.matrix().rows();
  Matrix out(da * db, da * db);
  for (Eigen::Index r = 0; r < da; ++r) {
    for (Eigen::Index c = 0; c < da; ++c) {
      out.block(r * db, c * db, db, db) = a.matrix()(r, c) * b.matrix();
    }
  }
  return Operator(std::move(out));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const auto da = a.amplitudes().size();
  const auto db = b.amplitudes().size();
  Vector out(da * db);
  for (Eigen::Index r = 0; r < da; ++r) {
    out.segment(r * db, db) = a.amplitudes()[r] * b.amplitudes();
  }
  return {a.n_qubits() + b.n_qubits(), std::move(out)};
}

Operator embed_local(const Operator& op, std::span<const int> targets, int n) {
  const int k = static_cast<int>(targets.size());
  if (k == 0) throw DimensionError("embed_local needs at least one target");
  if (op.dim() != (std::size_t{1} << k)) {
    throw DimensionError("operator dimension does not match number of targets");
  }
  if ((std::size_t{1} << n) > kMaxDim) throw DimensionError("register too large to embed densely");
  std::vector<std::size_t> masks;
  std::size_t tmask = 0;
  for (int t : targets) {
    if (t < 1 || t > n) throw DimensionError("target qubit " + std::to_string(t) + " out of range 1.." + std::to_string(n));
    const std::size_t m = qubit_mask(t, n);
    if (tmask & m) throw DimensionError("duplicate target qubit " + std::to_string(t));
    tmask |= m;
    masks.push_back(m);
  }

  // Local index bit (k-1-a) corresponds to targets[a].
  auto gather = [&](std::size_t idx) {
    std::size_t s = 0;
    for (int a = 0; a < k; ++a) {
      if (idx & masks[static_cast<std::size_t>(a)]) s |= std::size_t{1} << (k - 1 - a);
    }
    return s;
  };
  auto scatter = [&](std::size_t s) {
    std::size_t idx = 0;
    for (int a = 0; a < k; ++a) {
      if (s & (std::size_t{1} << (k - 1 - a))) idx |= masks[static_cast<std::size_t>(a)];
    }
    return idx;
  };

  const std::size_t dim = std::size_t{1} << n;
  const std::size_t local = op.dim();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t rest = r & ~tmask;
    const std::size_t sr = gather(r);
    for (std::size_t sc = 0; sc < local; ++sc) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(rest | scatter(sc))) = op(sr, sc);
    }
  }
  return Operator(std::move(out));
}

Operator embed_local(const Operator& op, std::initializer_list<int> targets, int n) {
  return embed_local(op, std::span<const int>(targets.begin(), targets.size()), n);
}

Operator expm_hermitian(const Operator& h, double t, double hbar) {
  if (h.dim() > kMaxDim) throw DimensionError("Hamiltonian dimension exceeds cap");
  if (h.hermiticity_residual() > 1e-10) {
    throw std::invalid_argument("expm_hermitian: operator is not Hermitian");
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Matrix herm = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    phases[i] = std::exp(cplx(0.0, -w[i] * t / hbar));
  }
  const Matrix& v = es.eigenvectors();
  return Operator(v * phases.asDiagonal() * v.adjoint());
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity: dimension mismatch");
  return std::min(1.0, std::abs(a.amplitudes().dot(b.amplitudes())));
}

}  // namespace jcq
