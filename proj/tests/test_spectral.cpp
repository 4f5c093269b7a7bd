#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gtherm/models.hpp"
#include "gtherm/spectral.hpp"
#include "test_util.hpp"

using namespace gtherm;

TEST_CASE("validate_hermitian accepts Pauli-x") {
  Eigen::MatrixXcd m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  const HermitianOperator h = validate_hermitian(m, 1e-12);
  CHECK(h.dim() == 2);
  CHECK((h.mat - m).norm() == 0.0);
}

TEST_CASE("validate_hermitian rejects the nilpotent matrix and names the entry") {
  Eigen::MatrixXcd m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_WITH_AS(validate_hermitian(m, 1e-12), doctest::Contains("(0,1)"), Error);
}

TEST_CASE("validate_hermitian symmetrizes below tolerance") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, Complex(0.0, 1e-15), 0.0, 1.0;
  const HermitianOperator h = validate_hermitian(m);
  CHECK((h.mat - h.mat.adjoint()).norm() == 0.0);
  CHECK(h.mat(0, 1) == std::conj(h.mat(1, 0)));
}

TEST_CASE("validate_hermitian rejects non-square input") {
  CHECK_THROWS_AS(validate_hermitian(Eigen::MatrixXcd::Zero(2, 3), 1e-12), Error);
}

TEST_CASE("decompose clusters a fully degenerate spectrum") {
  const HermitianOperator h{Eigen::MatrixXcd::Identity(2, 2)};
  const SpectralData s = decompose(h, 1e-8);
  REQUIRE(s.structure.count() == 1);
  CHECK(s.structure.clusters[0].count == 2);
  CHECK(s.structure.clusters[0].value == doctest::Approx(1.0));
}

TEST_CASE("decompose separates distinct eigenvalues") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(1, 1) = 1.0;
  const SpectralData s = decompose(HermitianOperator{m}, 1e-8);
  REQUIRE(s.structure.count() == 2);
  CHECK(s.structure.clusters[0].count == 1);
  CHECK(s.structure.clusters[1].count == 1);
  CHECK(s.eigenvalues(0) == doctest::Approx(0.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("LZ eigenvalues are +-sqrt(gamma0^2 + eps^2)") {
  const LZParams p{2.0, 1.0, 0.001, 0.0};  // gamma0 = -0.5
  const SpectralData s = decompose(lz_hamiltonian(p), 1e-8);
  const double lam = std::sqrt(0.25 + 1e-6);
  CHECK(s.eigenvalues(0) == doctest::Approx(-lam).epsilon(1e-14));
  CHECK(s.eigenvalues(1) == doctest::Approx(lam).epsilon(1e-14));
}

TEST_CASE("to_energy_basis leaves a co-diagonal state alone") {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
  h.diagonal() << -1.0, 0.5, 2.0;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(3, 3);
  rho.diagonal() << 0.2, 0.3, 0.5;
  const SpectralData s = decompose(HermitianOperator{h}, 1e-8);
  const DensityMatrix rho_e = to_energy_basis(DensityMatrix{rho}, s);
  CHECK((rho_e.mat - rho).norm() < 1e-14);
}

TEST_CASE("to_energy_basis matches the closed-form LZ energy-basis state") {
  // post-quench basis applied to the pre-quench ground state
  const double a = 2.0, delta = 1.0, eps = 0.001, g0 = 0.3, dg = 0.1;
  const double gamma0 = a * g0 - delta / 2.0;
  const double lam0 = std::hypot(gamma0, eps);
  const double lam = std::hypot(a * dg + gamma0, eps);
  const double phi = lam + a * dg + gamma0;

  const GroundState gs = ground_state(lz_hamiltonian({a, delta, eps, g0}), 1e-8);
  const SpectralData post = decompose(lz_hamiltonian({a, delta, eps, g0 + dg}), 1e-8);
  const DensityMatrix rho_e = to_energy_basis(gs.state, post);

  const double rho11 = (lam * lam0 + ((phi - lam) * gamma0 + eps * eps)) / (2.0 * lam * lam0);
  const double rho12 = -a * dg * eps / (2.0 * lam * lam0);
  CHECK(rho_e.mat(0, 0).real() == doctest::Approx(rho11).epsilon(1e-12));
  CHECK(std::abs(rho_e.mat(0, 1)) == doctest::Approx(std::abs(rho12)).epsilon(1e-10));
  CHECK(std::abs(rho_e.mat(0, 1) - rho_e.mat(1, 0)) < 1e-14);  // real symmetric here
}

TEST_CASE("to_energy_basis preserves trace and spectrum") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(it % 5);
    const DensityMatrix rho = test::random_density(d, rng);
    const SpectralData s = decompose(test::random_hermitian(d, rng), 1e-8);
    const DensityMatrix rho_e = to_energy_basis(rho, s);
    CHECK(std::abs(rho_e.mat.trace().real() - 1.0) < 1e-13);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> before(rho.mat, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> after(rho_e.mat, Eigen::EigenvaluesOnly);
    CHECK((before.eigenvalues() - after.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("projector examples") {
  SUBCASE("rank-1 ground projector for a non-degenerate spectrum") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h.diagonal() << 0.0, 1.0;
    const SpectralData s = decompose(HermitianOperator{h}, 1e-8);
    const Eigen::MatrixXcd p = projector(s, 0);
    CHECK(p(0, 0) == Complex(1.0, 0.0));
    CHECK(p.trace() == Complex(1.0, 0.0));
  }
  SUBCASE("fully degenerate level projects onto everything") {
    const SpectralData s = decompose(HermitianOperator{Eigen::MatrixXcd::Identity(3, 3)}, 1e-8);
    CHECK((projector(s, 0) - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
  }
  SUBCASE("forced block structure diag(0,0,1)") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    h(2, 2) = 1.0;
    const SpectralData s = decompose(HermitianOperator{h}, 1e-8);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
    expect(0, 0) = 1.0;
    expect(1, 1) = 1.0;
    CHECK((projector(s, 0) - expect).norm() == 0.0);
  }
  SUBCASE("out of range") {
    const SpectralData s = decompose(HermitianOperator{Eigen::MatrixXcd::Identity(2, 2)}, 1e-8);
    CHECK_THROWS_AS(projector(s, 1), Error);
  }
}

TEST_CASE("reconstruction, unitarity and projector completeness") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 25; ++it) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(it % 6);
    const HermitianOperator h =
        (it % 2 == 0) ? test::random_hermitian(d, rng)
                      : test::hermitian_with_pattern(test::random_pattern(d, rng), rng);
    const SpectralData s = decompose(h, 1e-6);
    const Eigen::MatrixXcd rebuilt = s.basis * s.eigenvalues.asDiagonal() * s.basis.adjoint();
    CHECK((rebuilt - h.mat).norm() <= 1e-10 * std::max(1.0, h.mat.norm()));
    CHECK((s.basis.adjoint() * s.basis - Eigen::MatrixXcd::Identity(d, d)).norm() < 1e-12);

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index k = 0; k < s.structure.count(); ++k) {
      const Eigen::MatrixXcd pk = projector(s, k);
      CHECK((pk * pk - pk).norm() < 1e-14);
      for (Eigen::Index l = 0; l < k; ++l) CHECK((pk * projector(s, l)).norm() < 1e-14);
      sum += pk;
    }
    CHECK((sum - Eigen::MatrixXcd::Identity(d, d)).norm() == 0.0);
  }
}

TEST_CASE("clustering is monotone in the tolerance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    Eigen::VectorXd w(8);
    for (int i = 0; i < 8; ++i) w(i) = uni(rng);
    std::sort(w.data(), w.data() + w.size());
    Eigen::Index prev = 9;
    for (double tol : {1e-4, 1e-2, 0.1, 0.3, 1.0}) {
      const Eigen::Index p = cluster_eigenvalues(w, tol).count();
      CHECK(p <= prev);
      prev = p;
    }
  }
}

TEST_CASE("decompose is deterministic") {
  std::mt19937_64 rng(31);
  const HermitianOperator h = test::hermitian_with_pattern({2, 3, 1}, rng);
  const SpectralData s1 = decompose(h, 1e-6);
  const SpectralData s2 = decompose(h, 1e-6);
  CHECK((s1.basis - s2.basis).norm() == 0.0);
  CHECK((s1.eigenvalues - s2.eigenvalues).norm() == 0.0);
}

TEST_CASE("default clustering tolerance follows the spectral range") {
  Eigen::VectorXd w(3);
  w << 0.0, 0.5, 1.0;
  CHECK(default_clustering_tol(w) == doctest::Approx(1e-8));
  w << 0.0, 50.0, 100.0;
  CHECK(default_clustering_tol(w) == doctest::Approx(1e-6));
}
