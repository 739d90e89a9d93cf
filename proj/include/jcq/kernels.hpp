#pragma once

// In-place data-parallel kernels over dense amplitude vectors and density
// matrices. Every kernel exists twice: the default OpenMP version, and a
// plain serial version in `reference` that the tests compare against.
//
// Qubit indices are 1-based; qubit 1 is the most significant bit.

#include <cstddef>
#include <span>

#include "jcq/hilbert.hpp"

namespace jcq::kernels {

/// Dimension below which kernels stay on the calling thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 11;

void apply_single(std::span<cplx> amps, int n, int q, const Matrix2& u);
/// `u` acts on (i, j) with `i` as the high-order local bit.
void apply_pair(std::span<cplx> amps, int n, int i, int j, const Matrix4& u);
/// Walsh-Hadamard on every qubit, i.e. H^{(x)n}.
void hadamard_all(std::span<cplx> amps, int n);

/// rho -> U rho U^dagger with `u` on pair (i, j).
void conjugate_pair(Matrix& rho, int n, int i, int j, const Matrix4& u);
/// Scales every rho_ab whose bit `q` differs between a and b by `factor`.
void dephase(Matrix& rho, int n, int q, double factor);

namespace reference {
void apply_single(std::span<cplx> amps, int n, int q, const Matrix2& u);
void apply_pair(std::span<cplx> amps, int n, int i, int j, const Matrix4& u);
void hadamard_all(std::span<cplx> amps, int n);
void conjugate_pair(Matrix& rho, int n, int i, int j, const Matrix4& u);
void dephase(Matrix& rho, int n, int q, double factor);
}  // namespace reference

}  // namespace jcq::kernels
