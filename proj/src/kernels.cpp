#include "jcq/kernels.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace jcq::kernels {
namespace {

void check_register(std::span<const cplx> amps, int n) {
  if (amps.size() != (std::size_t{1} << n)) throw DimensionError("kernel: amplitude count does not match n");
}

void check_qubit(int q, int n) {
  if (q < 1 || q > n) throw DimensionError("kernel: qubit index out of range");
}

void check_pair(int i, int j, int n) {
  check_qubit(i, n);
  check_qubit(j, n);
  if (i == j) throw DimensionError("kernel: pair targets must differ");
}

// Inserts a zero bit at position `bit` of `v`.
constexpr std::size_t insert_zero(std::size_t v, int bit) {
  const std::size_t low = v & ((std::size_t{1} << bit) - 1);
  return ((v >> bit) << (bit + 1)) | low;
}

inline void mix4(std::span<cplx> amps, const std::array<std::size_t, 4>& idx, const Matrix4& u) {
  const cplx a0 = amps[idx[0]], a1 = amps[idx[1]], a2 = amps[idx[2]], a3 = amps[idx[3]];
  for (int r = 0; r < 4; ++r) {
    amps[idx[static_cast<std::size_t>(r)]] = u(r, 0) * a0 + u(r, 1) * a1 + u(r, 2) * a2 + u(r, 3) * a3;
  }
}

}  // namespace

void apply_single(std::span<cplx> amps, int n, int q, const Matrix2& u) {
  check_register(amps, n);
  check_qubit(q, n);
  const int bit = n - q;
  const std::size_t mask = std::size_t{1} << bit;
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t g = 0; g < half; ++g) {
    const std::size_t i0 = insert_zero(static_cast<std::size_t>(g), bit);
    const std::size_t i1 = i0 | mask;
    const cplx a0 = amps[i0], a1 = amps[i1];
    amps[i0] = u00 * a0 + u01 * a1;
    amps[i1] = u10 * a0 + u11 * a1;
  }
}

void apply_pair(std::span<cplx> amps, int n, int i, int j, const Matrix4& u) {
  check_register(amps, n);
  check_pair(i, j, n);
  const int bi = n - i;
  const int bj = n - j;
  const std::size_t mi = std::size_t{1} << bi;
  const std::size_t mj = std::size_t{1} << bj;
  const int lo = bi < bj ? bi : bj;
  const int hi = bi < bj ? bj : bi;
  const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
  // Local copy so the gate stays in registers inside the outlined region.
  std::array<cplx, 16> m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[static_cast<std::size_t>(4 * r + c)] = u(r, c);
  cplx* const a = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t g = 0; g < quarter; ++g) {
    const std::size_t base = insert_zero(insert_zero(static_cast<std::size_t>(g), lo), hi);
    const std::size_t idx[4] = {base, base | mj, base | mi, base | mi | mj};
    const cplx a0 = a[idx[0]], a1 = a[idx[1]], a2 = a[idx[2]], a3 = a[idx[3]];
    for (int r = 0; r < 4; ++r) {
      const cplx* row = &m[static_cast<std::size_t>(4 * r)];
      a[idx[r]] = row[0] * a0 + row[1] * a1 + row[2] * a2 + row[3] * a3;
    }
  }
}

void hadamard_all(std::span<cplx> amps, int n) {
  check_register(amps, n);
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  const double s = 1.0 / std::sqrt(2.0);
  for (int bit = 0; bit < n; ++bit) {
    const std::size_t mask = std::size_t{1} << bit;
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t g = 0; g < half; ++g) {
      const std::size_t i0 = insert_zero(static_cast<std::size_t>(g), bit);
      const std::size_t i1 = i0 | mask;
      const cplx a0 = amps[i0], a1 = amps[i1];
      amps[i0] = a0 + a1;
      amps[i1] = a0 - a1;
    }
  }
  // Scale once at the end; for even n this is an exact power of two.
  const double scale = (n % 2 == 0) ? std::ldexp(1.0, -n / 2) : std::ldexp(1.0, -(n - 1) / 2) * s;
  for (auto& a : amps) a *= scale;
}

void conjugate_pair(Matrix& rho, int n, int i, int j, const Matrix4& u) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  if (rho.rows() != dim || rho.cols() != dim) throw DimensionError("kernel: density matrix does not match n");
  check_pair(i, j, n);
  // U rho U^dagger = (U (U rho)^dagger)^dagger, two column sweeps.
  for (int pass = 0; pass < 2; ++pass) {
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) >= kParallelThreshold)
    for (Eigen::Index c = 0; c < dim; ++c) {
      std::span<cplx> col(rho.col(c).data(), static_cast<std::size_t>(dim));
      reference::apply_pair(col, n, i, j, u);
    }
    rho.adjointInPlace();
  }
}

void dephase(Matrix& rho, int n, int q, double factor) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  if (rho.rows() != dim || rho.cols() != dim) throw DimensionError("kernel: density matrix does not match n");
  check_qubit(q, n);
  const auto mask = static_cast<Eigen::Index>(std::size_t{1} << (n - q));
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) >= kParallelThreshold)
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      if ((r ^ c) & mask) rho(r, c) *= factor;
    }
  }
}

namespace reference {

void apply_single(std::span<cplx> amps, int n, int q, const Matrix2& u) {
  check_register(amps, n);
  check_qubit(q, n);
  const std::size_t mask = qubit_mask(q, n);
  for (std::size_t i0 = 0; i0 < amps.size(); ++i0) {
    if (i0 & mask) continue;
    const std::size_t i1 = i0 | mask;
    const cplx a0 = amps[i0], a1 = amps[i1];
    amps[i0] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[i1] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void apply_pair(std::span<cplx> amps, int n, int i, int j, const Matrix4& u) {
  check_register(amps, n);
  check_pair(i, j, n);
  const std::size_t mi = qubit_mask(i, n);
  const std::size_t mj = qubit_mask(j, n);
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (base & (mi | mj)) continue;
    mix4(amps, {base, base | mj, base | mi, base | mi | mj}, u);
  }
}

void hadamard_all(std::span<cplx> amps, int n) {
  Matrix2 h;
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  for (int q = 1; q <= n; ++q) apply_single(amps, n, q, h);
}

void conjugate_pair(Matrix& rho, int n, int i, int j, const Matrix4& u) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  if (rho.rows() != dim || rho.cols() != dim) throw DimensionError("kernel: density matrix does not match n");
  const std::size_t mi = qubit_mask(i, n);
  const std::size_t mj = qubit_mask(j, n);
  check_pair(i, j, n);
  auto local = [&](std::size_t idx) { return ((idx & mi) ? 2 : 0) + ((idx & mj) ? 1 : 0); };
  auto with_local = [&](std::size_t idx, int l) {
    std::size_t out = idx & ~(mi | mj);
    if (l & 2) out |= mi;
    if (l & 1) out |= mj;
    return out;
  };
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t r = 0; r < static_cast<std::size_t>(dim); ++r) {
    for (std::size_t c = 0; c < static_cast<std::size_t>(dim); ++c) {
      cplx acc = 0.0;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          acc += u(local(r), a) * rho(static_cast<Eigen::Index>(with_local(r, a)), static_cast<Eigen::Index>(with_local(c, b))) *
                 std::conj(u(local(c), b));
        }
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  }
  rho = std::move(out);
}

void dephase(Matrix& rho, int n, int q, double factor) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  if (rho.rows() != dim || rho.cols() != dim) throw DimensionError("kernel: density matrix does not match n");
  check_qubit(q, n);
  const auto mask = static_cast<Eigen::Index>(qubit_mask(q, n));
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if ((r & mask) != (c & mask)) rho(r, c) *= factor;
    }
  }
}

}  // namespace reference
}  // namespace jcq::kernels
