#include <doctest.h>

#include "bogofock/fock.hpp"
#include "oracles.hpp"

using namespace bogofock;

namespace {

Vector e(int modes, int j) { return unit_vector(modes, j); }

FockVector deterministic_state(int modes, int nmax, int top, int variant) {
  FockVector out = FockVector::zero(modes, nmax);
  for (int n = 0; n <= top; ++n) {
    Vector& sector = out.sector(n);
    for (Eigen::Index r = 0; r < sector.size(); ++r)
      sector(r) = Complex(0.3 + 0.07 * double(r) - 0.05 * n + 0.11 * variant,
                          -0.2 + 0.03 * double(r) + 0.02 * variant);
  }
  return out;
}

}  // namespace

TEST_CASE("occupation basis enumeration and ranking") {
  const auto& basis = OccupationBasis::get(3, 2);
  REQUIRE(basis.size() == sector_dimension(3, 2));
  const std::vector<std::vector<int>> expected = {{0, 0, 2}, {0, 1, 1}, {0, 2, 0},
                                                  {1, 0, 1}, {1, 1, 0}, {2, 0, 0}};
  for (Eigen::Index r = 0; r < basis.size(); ++r) {
    CHECK(basis.state(r) == expected[static_cast<std::size_t>(r)]);
    CHECK(basis.rank(basis.state(r)) == r);
  }
  CHECK(sector_dimension(4, 6) == 84);
}

TEST_CASE("vacuum") {
  const FockVector omega = vacuum(2, 4);
  CHECK(norm(omega) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(omega.sector(1).cwiseAbs().maxCoeff() == 0.0);
  for (int j = 0; j < 2; ++j) CHECK(norm(annihilate(e(2, j), omega)) == 0.0);
}

TEST_CASE("creation on basis states") {
  const FockVector omega = vacuum(2, 4);
  const FockVector one = create(e(2, 0), omega);
  CHECK(one.sector(1)(OccupationBasis::get(2, 1).rank({1, 0})) == Complex(1.0, 0.0));

  const FockVector two = create(e(2, 0), one);
  CHECK(std::abs(two.sector(2)(OccupationBasis::get(2, 2).rank({2, 0})) - std::sqrt(2.0)) < 1e-15);

  const FockVector mixed = create(Vector(e(2, 0) + e(2, 1)), omega);
  CHECK(mixed.sector(1)(OccupationBasis::get(2, 1).rank({1, 0})) == Complex(1.0, 0.0));
  CHECK(mixed.sector(1)(OccupationBasis::get(2, 1).rank({0, 1})) == Complex(1.0, 0.0));
}

TEST_CASE("annihilation on basis states") {
  const FockVector one = basis_state({1, 0}, 4);
  CHECK(norm(annihilate(e(2, 0), one) - vacuum(2, 4)) == 0.0);
  CHECK(norm(annihilate(e(2, 1), one)) == 0.0);
  const FockVector two = basis_state({2, 0}, 4);
  CHECK(norm(annihilate(e(2, 0), two) - std::sqrt(2.0) * basis_state({1, 0}, 4)) < 1e-15);
}

TEST_CASE("create and annihilate are adjoint below the truncation edge") {
  const int modes = 3, nmax = 5;
  const FockVector psi = deterministic_state(modes, nmax, nmax, 0);
  const FockVector phi_state = deterministic_state(modes, nmax, nmax - 1, 1);
  Vector f(modes);
  f << Complex(0.4, 0.2), Complex(-0.3, 0.6), Complex(0.1, -0.5);
  const Complex lhs = inner(annihilate(f, psi), phi_state);
  const Complex rhs = inner(psi, create(f, phi_state));
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("truncation sets the lossy flag") {
  const int modes = 2, nmax = 3;
  FockVector top = basis_state({2, 1}, nmax);
  const FockVector pushed = create(e(modes, 0), top);
  CHECK(pushed.lossy);
  CHECK(norm(pushed) == 0.0);
  const FockVector safe = create(e(modes, 0), vacuum(modes, nmax));
  CHECK_FALSE(safe.lossy);
}

TEST_CASE("canonical commutation relations") {
  SUBCASE("diagonal pair on small probes") {
    std::vector<FockVector> probes = {vacuum(2, 4), basis_state({1, 0}, 4)};
    CHECK(ccr_residual(e(2, 0), e(2, 0), probes) < 1e-15);
    CHECK(ccr_residual(e(2, 0), e(2, 1), {vacuum(2, 4)}) == 0.0);
  }
  SUBCASE("dense vectors against the matrix-commutator oracle") {
    const int modes = 4, nmax = 6;
    Vector f(modes), g(modes);
    f << Complex(0.3, -0.4), Complex(0.9, 0.1), Complex(-0.2, 0.7), Complex(0.5, 0.0);
    g << Complex(-0.6, 0.2), Complex(0.4, 0.4), Complex(0.1, -0.9), Complex(0.0, 0.3);
    std::vector<FockVector> probes;
    for (int n = 0; n <= 3; ++n) {
      const auto& basis = OccupationBasis::get(modes, n);
      for (Eigen::Index r = 0; r < basis.size(); ++r) probes.push_back(basis_state(basis.state(r), nmax));
    }
    CHECK(ccr_residual(f, g, probes) < 1e-12);

    // independent path: dense matrices of a(f), a(g) and their adjoints
    const Matrix af = oracle::annihilation_matrix(f, modes, nmax);
    const Matrix ag = oracle::annihilation_matrix(g, modes, nmax);
    const Matrix commutator = af * ag.adjoint() - ag.adjoint() * af;
    const Eigen::Index guarded = [&] {
      Eigen::Index dim = 0;
      for (int n = 0; n <= nmax - 2; ++n) dim += sector_dimension(modes, n);
      return dim;
    }();
    const Matrix defect =
        commutator.topLeftCorner(guarded, guarded) -
        f.dot(g) * Matrix::Identity(guarded, guarded);
    CHECK(defect.cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("probe too close to the truncation edge is rejected") {
    CHECK_THROWS_AS(ccr_residual(e(2, 0), e(2, 0), {basis_state({2, 1}, 4)}), std::invalid_argument);
  }
}

TEST_CASE("number operator multiplies sectors") {
  for (int modes = 1; modes <= 4; ++modes) {
    const int nmax = 5;
    for (int n = 0; n <= nmax; ++n) {
      const auto& basis = OccupationBasis::get(modes, n);
      for (Eigen::Index r = 0; r < basis.size(); ++r) {
        const FockVector state = basis_state(basis.state(r), nmax);
        FockVector counted = FockVector::zero(modes, nmax);
        for (int j = 0; j < modes; ++j)
          counted = counted + create(e(modes, j), annihilate(e(modes, j), state));
        CHECK(norm(counted - double(n) * state) < 1e-12);
        CHECK(norm(number_apply(state) - double(n) * state) == 0.0);
      }
    }
  }
}

TEST_CASE("symmetrization") {
  SUBCASE("two-slot delta") {
    PointwiseSector sector{2, 2, Vector::Zero(4)};
    sector.values(oracle::encode_tuple({1, 2}, 2)) = 1.0;
    const PointwiseSector sym = symmetrize(sector);
    CHECK(sym.values(oracle::encode_tuple({1, 2}, 2)) == Complex(0.5, 0.0));
    CHECK(sym.values(oracle::encode_tuple({2, 1}, 2)) == Complex(0.5, 0.0));
    CHECK((symmetrize(sym).values - sym.values).norm() == 0.0);
  }
  SUBCASE("three-slot delta spreads over the orbit") {
    PointwiseSector sector{3, 3, Vector::Zero(27)};
    sector.values(oracle::encode_tuple({1, 2, 3}, 3)) = 1.0;
    const PointwiseSector sym = symmetrize(sector);
    const std::vector<std::vector<int>> orbit = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                                 {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (const auto& tuple : orbit)
      CHECK(std::abs(sym.values(oracle::encode_tuple(tuple, 3)) - Complex(1.0 / 6.0, 0.0)) < 1e-16);
  }
  SUBCASE("agrees with the permutation-enumeration oracle") {
    PointwiseSector sector{3, 3, Vector(27)};
    for (Eigen::Index i = 0; i < 27; ++i) sector.values(i) = Complex(0.1 * double(i), -0.02 * double(i) + 0.3);
    const PointwiseSector brute = oracle::symmetrize_brute(sector);
    CHECK((symmetrize(sector).values - brute.values).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("projection never increases the norm") {
    PointwiseSector sector{2, 4, Vector(16)};
    for (Eigen::Index i = 0; i < 16; ++i)
      sector.values(i) = Complex(std::sin(1.7 * double(i)), std::cos(0.9 * double(i) + 0.4));
    const PointwiseSector sym = symmetrize(sector);
    CHECK(sym.values.norm() <= sector.values.norm() + 1e-14);
    CHECK((symmetrize(sym).values - sym.values).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("pointwise conversion law") {
  const int nmax = 4;
  SUBCASE("frozen values derived from repeated creation") {
    // apply a+ twice in the pointwise picture; |n> = prod (a+)^{n_j} /
    // sqrt(n_j!) vacuum, so only repeated modes pick up a normalization
    PointwiseSector zero{2, 0, Vector::Constant(1, Complex(1.0, 0.0))};
    const PointwiseSector one = oracle::pointwise_create(e(2, 0), zero);
    const PointwiseSector two_a = oracle::pointwise_create(e(2, 0), one);
    const PointwiseSector two_b = oracle::pointwise_create(e(2, 1), one);
    // |2,0> at tuple (1,1) and |1,1> at tuple (1,2)
    CHECK(std::abs(two_a.values(oracle::encode_tuple({1, 1}, 2)) / std::sqrt(2.0) -
                   to_pointwise(basis_state({2, 0}, nmax), 2).values(oracle::encode_tuple({1, 1}, 2))) <
          1e-15);
    CHECK(std::abs(to_pointwise(basis_state({2, 0}, nmax), 2).values(oracle::encode_tuple({1, 1}, 2)) -
                   Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(to_pointwise(basis_state({1, 1}, nmax), 2).values(oracle::encode_tuple({1, 2}, 2)) -
                   Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
    CHECK(std::abs(two_b.values(oracle::encode_tuple({1, 2}, 2)) -
                   Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  }
  SUBCASE("vacuum scalar") {
    CHECK(to_pointwise(vacuum(3, 2), 0).values(0) == Complex(1.0, 0.0));
  }
  SUBCASE("round trip and norm preservation") {
    const FockVector psi = deterministic_state(3, 4, 4, 2);
    for (int n = 0; n <= 4; ++n) {
      const PointwiseSector sector = to_pointwise(psi, n);
      const FockVector back = from_pointwise(sector, 4);
      CHECK((back.sector(n) - psi.sector(n)).norm() < 1e-13);
      CHECK(sector.values.norm() == doctest::Approx(psi.sector(n).norm()).epsilon(1e-12));
    }
  }
  SUBCASE("non-symmetric input is symmetrized first") {
    PointwiseSector raw{2, 2, Vector::Zero(4)};
    raw.values(oracle::encode_tuple({1, 2}, 2)) = 1.0;  // asymmetric
    const FockVector converted = from_pointwise(raw, 2);
    const FockVector converted_sym = from_pointwise(symmetrize(raw), 2);
    CHECK(norm(converted - converted_sym) == 0.0);
  }
}

TEST_CASE("pointwise picture matches the occupation implementation") {
  const int modes = 3, nmax = 4;
  const FockVector psi = deterministic_state(modes, nmax, 3, 3);
  Vector f(modes);
  f << Complex(0.6, -0.1), Complex(-0.4, 0.3), Complex(0.2, 0.5);
  for (int n = 0; n < nmax; ++n) {
    const PointwiseSector created = oracle::pointwise_create(f, to_pointwise(psi, n));
    CHECK((created.values - to_pointwise(create(f, psi), n + 1).values).cwiseAbs().maxCoeff() < 1e-13);
  }
  for (int n = 1; n <= nmax; ++n) {
    const PointwiseSector annihilated = oracle::pointwise_annihilate(f, to_pointwise(psi, n));
    CHECK((annihilated.values - to_pointwise(annihilate(f, psi), n - 1).values).cwiseAbs().maxCoeff() <
          1e-13);
  }
}
