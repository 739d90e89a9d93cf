#pragma once

// Dense complex linear algebra for small qubit registers.
//
// Basis convention: qubits are numbered 1..n and qubit 1 is the most
// significant bit of the basis index, so tensor(a, b) puts `a` in the
// high-order block. Time is measured in units of the entangling period and
// hbar = 1 unless a call says otherwise.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace jcq {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

/// Thrown when operand shapes or qubit indices do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest Hilbert-space dimension the dense routines accept.
inline constexpr std::size_t kMaxDim = std::size_t{1} << 12;

/// Bit mask of qubit `q` (1-based) in an `n`-qubit basis index.
constexpr std::size_t qubit_mask(int q, int n) {
  return std::size_t{1} << (n - q);
}

bool is_power_of_two(std::size_t v);
int log2_exact(std::size_t v);

class StateVector {
 public:
  StateVector(int n_qubits, Vector amplitudes);

  /// Computational basis state |index>.
  static StateVector basis(int n_qubits, std::size_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Vector& amplitudes() { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  std::span<cplx> data() { return {amps_.data(), dim()}; }
  std::span<const cplx> data() const { return {amps_.data(), dim()}; }

  double norm() const { return amps_.norm(); }

 private:
  int n_qubits_;
  Vector amps_;
};

class Operator {
 public:
  explicit Operator(Matrix entries);

  static Operator identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  int n_qubits() const { return log2_exact(dim()); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  Operator operator*(const Operator& rhs) const;
  StateVector operator*(const StateVector& rhs) const;

  Operator adjoint() const { return Operator(m_.adjoint()); }

  /// max |(H - H^dagger)_ij|
  double hermiticity_residual() const;
  /// max |(U^dagger U - I)_ij|
  double unitarity_residual() const;

 private:
  Matrix m_;
};

class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, Matrix entries);
  static DensityMatrix from_pure(const StateVector& psi);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  Matrix& matrix() { return rho_; }

  cplx trace() const { return rho_.trace(); }
  double hermiticity_residual() const;
  double min_eigenvalue() const;
  /// <psi|rho|psi>, real part.
  double expectation(const StateVector& psi) const;

 private:
  int n_qubits_;
  Matrix rho_;
};

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
}  // namespace pauli

Operator tensor(const Operator& a, const Operator& b);
StateVector tensor(const StateVector& a, const StateVector& b);

/// Lifts a 2x2 or 4x4 operator onto `targets` (1-based, first target is
/// the most significant factor of `op`) in an `n`-qubit register.
Operator embed_local(const Operator& op, std::span<const int> targets, int n);
Operator embed_local(const Operator& op, std::initializer_list<int> targets, int n);

/// exp(-i H t / hbar) via Hermitian eigendecomposition.
Operator expm_hermitian(const Operator& h, double t, double hbar = 1.0);

/// |<a|b>|
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace jcq
