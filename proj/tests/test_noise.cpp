#include <doctest.h>

#include <limits>
#include <random>
#include <sstream>

#include "jcq/dynamics.hpp"
#include "jcq/noise.hpp"
#include "oracles.hpp"

using namespace jcq;
using namespace jcq::noise;
using protocol::ClusterSpec;

namespace {

DensityMatrix random_density(int n, std::mt19937_64& rng) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (auto& x : a.reshaped()) x = cplx(g(rng), g(rng));
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(n, rho);
}

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> v;
  for (int k = 0; k < points; ++k) v.push_back(lo + (hi - lo) * k / (points - 1));
  return v;
}

}  // namespace

TEST_CASE("dephase at zero exposure is the identity map") {
  std::mt19937_64 rng(1);
  const DensityMatrix rho = random_density(3, rng);
  for (int q = 1; q <= 3; ++q) CHECK(dephase(rho, q, 0.0).matrix() == rho.matrix());
}

TEST_CASE("dephase at large exposure kills the site coherences") {
  std::mt19937_64 rng(2);
  const DensityMatrix rho = random_density(3, rng);
  const DensityMatrix out = dephase(rho, 2, 50.0);
  for (Eigen::Index r = 0; r < 8; ++r) {
    for (Eigen::Index c = 0; c < 8; ++c) {
      const bool differ = oracle::bit_of(static_cast<std::size_t>(r), 2, 3) != oracle::bit_of(static_cast<std::size_t>(c), 2, 3);
      if (differ) {
        CHECK(std::abs(out.matrix()(r, c)) < 1e-20);
      } else {
        CHECK(out.matrix()(r, c) == rho.matrix()(r, c));
      }
    }
  }
}

TEST_CASE("dephasing |+> gives fidelity sqrt((1 + e^{-gt}) / 2)") {
  const double s = 1.0 / std::sqrt(2.0);
  const StateVector plus(1, Vector{{cplx(s), cplx(s)}});
  for (double gt : {0.0, 0.1, 0.5, 1.0, 3.0}) {
    const DensityMatrix out = dephase(DensityMatrix::from_pure(plus), 1, gt);
    CHECK(std::sqrt(out.expectation(plus)) == doctest::Approx(std::sqrt((1.0 + std::exp(-gt)) / 2.0)).epsilon(1e-14));
  }
}

TEST_CASE("dephase matches the Kraus-operator oracle and preserves trace and Hermiticity") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const DensityMatrix rho = random_density(n, rng);
      const int q = 1 + trial % n;
      const double gt = u(rng);
      const DensityMatrix out = dephase(rho, q, gt);
      CHECK(oracle::max_abs_diff(out.matrix(), oracle::kraus_dephase(rho.matrix(), q, n, gt)) < 1e-14);
      CHECK(std::abs(out.trace() - 1.0) < 1e-13);
      CHECK(out.hermiticity_residual() < 1e-14);
      CHECK(out.min_eigenvalue() > -1e-12);
    }
  }
}

TEST_CASE("dephasing on different sites commutes") {
  std::mt19937_64 rng(4);
  const DensityMatrix rho = random_density(3, rng);
  const Matrix ab = dephase(dephase(rho, 1, 0.3), 3, 1.2).matrix();
  const Matrix ba = dephase(dephase(rho, 3, 1.2), 1, 0.3).matrix();
  CHECK(oracle::max_abs_diff(ab, ba) < 1e-15);
  CHECK_THROWS_AS(dephase(rho, 1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(dephase(rho, 4, 0.1), DimensionError);
}

TEST_CASE("noiseless density-matrix run equals the pure-state run") {
  for (int n = 2; n <= 6; ++n) {
    const ClusterSpec spec = ClusterSpec::chain(n);
    const StateVector psi = protocol::generate_cluster(spec);
    const Matrix pure = psi.amplitudes() * psi.amplitudes().adjoint();
    const NoisyRun r = run_noisy_protocol(spec, 0.0);
    CHECK(oracle::max_abs_diff(r.rho.matrix(), pure) < 1e-12);
    CHECK(r.fidelity >= 1.0 - 1e-12);

    NoiseParams inf;
    inf.dephasing_time = std::numeric_limits<double>::infinity();
    CHECK(oracle::max_abs_diff(run_noisy_protocol(spec, inf).rho.matrix(), pure) < 1e-12);
  }
}

TEST_CASE("noisy run matches a dense Kraus replay") {
  const int n = 3;
  const double gt = 0.2;
  const Matrix g = oracle::embed_outer_products(dynamics::entangling_gate(1.0, 1.0).matrix(), {1, 2}, n);
  const Matrix h = oracle::embed_outer_products(dynamics::entangling_gate(1.0, 1.0).matrix(), {2, 3}, n);
  Matrix rho = Matrix::Zero(8, 8);
  rho(0, 0) = 1.0;
  for (const Matrix* u : {&g, &h}) {
    rho = (*u) * rho * u->adjoint();
    for (int q = 1; q <= n; ++q) rho = oracle::kraus_dephase(rho, q, n, gt);
  }
  CHECK(oracle::max_abs_diff(run_noisy_protocol(ClusterSpec::chain(n), gt).rho.matrix(), rho) < 1e-13);
}

TEST_CASE("fidelity is monotone in exposure") {
  const std::vector<double> exposures = grid(0.0, 1.0, 10);
  for (int n : {2, 4}) {
    const SweepResult r = dephasing_sweep(ClusterSpec::chain(n), exposures);
    REQUIRE(r.fidelities.size() == exposures.size());
    CHECK(r.parameter_name == "gamma_t");
    CHECK(r.fidelities.front() >= 1.0 - 1e-12);
    for (std::size_t k = 1; k < r.fidelities.size(); ++k) CHECK(r.fidelities[k] <= r.fidelities[k - 1] + 1e-15);
    CHECK(r.fidelities.back() < 0.9);
  }
}

TEST_CASE("default parameters leave the four-qubit cluster essentially intact") {
  const NoiseParams defaults;
  CHECK(defaults.step_exposure() == doctest::Approx(1e-6));
  CHECK(run_noisy_protocol(ClusterSpec::chain(4), defaults).fidelity >= 1.0 - 1e-5);
  CHECK(run_noisy_protocol(ClusterSpec::chain(4), std::log(2.0)).fidelity < 0.9);
}

TEST_CASE("density runs are capped") {
  CHECK_THROWS_AS(run_noisy_protocol(ClusterSpec::chain(9), 0.0), DimensionError);
  CHECK_THROWS_AS(dephasing_sweep(ClusterSpec::chain(9), {0.0}), DimensionError);
  CHECK_THROWS_AS(dephasing_sweep(ClusterSpec::chain(3), {-1.0}), std::invalid_argument);
  NoiseParams bad;
  bad.dephasing_time = 0.0;
  CHECK_THROWS_AS(run_noisy_protocol(ClusterSpec::chain(2), bad), std::invalid_argument);
}

TEST_CASE("manipulation budget") {
  CHECK(manipulation_budget(NoiseParams{}) == 1000000);
  CHECK(manipulation_budget(2e-9, 1e-10) == 20);
  CHECK(manipulation_budget(1e-4, 1e-10) == 1000000);
  CHECK(manipulation_budget(2.5e-9, 1e-9) == 2);
  CHECK(manipulation_budget(0.3, 0.1) == 3);  // 2.9999999999999996 snaps
  CHECK(manipulation_budget(1e-10, 2e-10) == 0);
  CHECK_THROWS_AS(manipulation_budget(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(manipulation_budget(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("timing sweep matches the closed form") {
  const std::vector<double> deltas = grid(-1.0, 1.0, 41);
  const SweepResult r = timing_sweep(ClusterSpec::chain(2), deltas);
  CHECK(r.parameter_name == "delta");
  REQUIRE(r.fidelities.size() == 41);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    CHECK(std::abs(r.fidelities[k] - oracle::timing_fidelity_closed_form(deltas[k])) < 1e-10);
    CHECK(std::abs(r.fidelities[k] - r.fidelities[deltas.size() - 1 - k]) < 1e-12);
  }
  CHECK(std::abs(r.fidelities[20] - 1.0) < 1e-12);
  CHECK(std::abs(r.fidelities.front() - 0.5) < 1e-12);
  CHECK(std::abs(r.fidelities.back() - 0.5) < 1e-12);
}

TEST_CASE("timing sweep on longer chains decays with the error") {
  const SweepResult r = timing_sweep(ClusterSpec::chain(5), {0.0, 0.1, 0.2, 0.4});
  CHECK(r.fidelities[0] >= 1.0 - 1e-12);
  for (std::size_t k = 1; k < r.fidelities.size(); ++k) CHECK(r.fidelities[k] < r.fidelities[k - 1]);
  CHECK_THROWS_AS(timing_sweep(ClusterSpec::chain(2), {std::nan("")}), std::invalid_argument);
}

TEST_CASE("csv output") {
  SweepResult r{"delta", {0.0, 0.5}, {1.0, 0.25}, ""};
  std::ostringstream out;
  write_csv(r, out);
  CHECK(out.str() == "delta,fidelity\n0,1\n0.5,0.25\n");

  const SweepResult t = timing_sweep(ClusterSpec::chain(2), {-0.3, 0.7});
  std::ostringstream a, b;
  write_csv(t, a);
  write_csv(timing_sweep(ClusterSpec::chain(2), {-0.3, 0.7}), b);
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "delta,fidelity");
  std::getline(in, line);
  CHECK(std::stod(line.substr(line.find(',') + 1)) == t.fidelities[0]);

  r.fidelities.pop_back();
  CHECK_THROWS_AS(write_csv(r, out), std::invalid_argument);
}
