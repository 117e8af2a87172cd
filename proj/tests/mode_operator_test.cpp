#include <doctest.h>

#include "bogofock/mode_operator.hpp"
#include "bogofock/quadratic.hpp"
#include "bogofock/shale.hpp"
#include "oracles.hpp"

using namespace bogofock;

namespace {

BogoliubovMap squeeze_map(double r) {
  Matrix u(1, 1), v(1, 1);
  u(0, 0) = std::cosh(r);
  v(0, 0) = std::sinh(r);
  return make_map(u, v);
}

// Two-mode squeeze pairing mode 1 with mode 2.
BogoliubovMap swap_squeeze_map(double r) {
  Matrix u = std::cosh(r) * Matrix::Identity(2, 2);
  Matrix v(2, 2);
  v << 0.0, std::sinh(r), std::sinh(r), 0.0;
  return make_map(u, v);
}

}  // namespace

TEST_CASE("conjugation operator") {
  const ModeOperator j = conjugation_j(2);
  Vector phi(2);
  phi << Complex(1.0, 2.0), Complex(3.0, 0.0);
  const Vector conjugated = j.apply(phi);
  CHECK(conjugated(0) == Complex(1.0, -2.0));
  CHECK(conjugated(1) == Complex(3.0, 0.0));

  const ModeOperator jj = compose(j, j);
  CHECK_FALSE(jj.antilinear);
  CHECK((jj.apply(phi) - phi).norm() == 0.0);

  Vector real_vec(2);
  real_vec << 1.0, 0.0;
  CHECK((j.apply(real_vec) - real_vec).norm() == 0.0);
}

TEST_CASE("composition flag algebra") {
  Matrix a(2, 2), b(2, 2);
  a << Complex(1, 1), Complex(0, 2), Complex(3, 0), Complex(1, -1);
  b << Complex(0, 1), Complex(2, 0), Complex(1, 1), Complex(0, -2);
  const ModeOperator lin_a = linear_op(a);
  const ModeOperator anti_b{b, true};
  CHECK(compose(lin_a, anti_b).antilinear);
  CHECK(compose(anti_b, lin_a).antilinear);
  CHECK_FALSE(compose(anti_b, anti_b).antilinear);

  // Composition agrees with applying the factors in sequence.
  Vector phi(2);
  phi << Complex(0.4, -0.3), Complex(-1.2, 0.8);
  CHECK((compose(anti_b, lin_a).apply(phi) - anti_b.apply(lin_a.apply(phi))).norm() < 1e-14);
  CHECK((compose(lin_a, anti_b).apply(phi) - lin_a.apply(anti_b.apply(phi))).norm() < 1e-14);

  // Finite-dimensional involutions hold exactly.
  CHECK((Matrix(a.transpose().transpose()) - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK((Matrix(a.adjoint().adjoint()) - a).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(Matrix(Matrix::Zero(3, 3))) == 0.0);
  CHECK(operator_norm(Matrix(Matrix::Identity(2, 2))) == doctest::Approx(1.0).epsilon(1e-14));
  const PairOperator pair = pair_operator(squeeze_map(2.0));
  CHECK(std::abs(operator_norm(pair.op) - 0.48201379003790845) < 1e-12);
  CHECK(operator_norm(pair.op) < 0.5);
}

TEST_CASE("bogoliubov relation residuals") {
  CHECK(bogoliubov_residuals(identity_map(3)).max() == 0.0);
  CHECK(bogoliubov_residuals(squeeze_map(1.0)).max() < 1e-12);

  // Hand-checked defect: u = v = 1 leaves both metric relations off by one.
  const BogoliubovMap bad = make_map(Matrix::Identity(2, 2), Matrix::Identity(2, 2));
  const RelationResiduals r = bogoliubov_residuals(bad);
  CHECK(r.in_metric == doctest::Approx(1.0));
  CHECK(r.in_pairing == 0.0);
  CHECK(r.out_metric == doctest::Approx(1.0));
  CHECK(r.out_pairing == 0.0);

  Matrix u(2, 2), v(1, 1);
  u.setIdentity();
  v.setZero();
  CHECK_THROWS_AS(make_map(u, v), std::invalid_argument);
}

TEST_CASE("pair operator closed form") {
  SUBCASE("no pairing") {
    const PairOperator pair = pair_operator(identity_map(3));
    CHECK(pair.kernel.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("single-mode squeeze") {
    for (double r : {0.1, 0.7, 2.0}) {
      const PairOperator pair = pair_operator(squeeze_map(r));
      CHECK(std::abs(pair.kernel(0, 0) - Complex(-0.5 * std::tanh(r), 0.0)) < 1e-12);
    }
    // frozen closed-form values
    CHECK(std::abs(pair_operator(squeeze_map(0.1)).kernel(0, 0).real() - (-0.04983399731247791)) < 1e-12);
    CHECK(std::abs(pair_operator(squeeze_map(0.7)).kernel(0, 0).real() - (-0.3021838885585818)) < 1e-12);
    CHECK(std::abs(pair_operator(squeeze_map(2.0)).kernel(0, 0).real() - (-0.48201379003790845)) < 1e-12);
  }
  SUBCASE("two-mode squeeze has the swap kernel") {
    const double r = 0.9;
    const PairOperator pair = pair_operator(swap_squeeze_map(r));
    Matrix expected(2, 2);
    expected << 0.0, -0.5 * std::tanh(r), -0.5 * std::tanh(r), 0.0;
    CHECK((pair.kernel - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((pair.kernel - pair.kernel.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("invalid map is rejected") {
    const BogoliubovMap bad = make_map(Matrix::Identity(2, 2), Matrix::Identity(2, 2));
    CHECK_THROWS_AS(pair_operator(bad), std::invalid_argument);
  }
}

TEST_CASE("pair operator spectral path agrees") {
  // The two-mode swap squeeze has a degenerate spectrum, so this also checks
  // basis independence of the spectral assembly.
  const Matrix spectral = pair_operator_spectral(swap_squeeze_map(0.9));
  const PairOperator closed = pair_operator(swap_squeeze_map(0.9));
  CHECK((spectral - closed.kernel).cwiseAbs().maxCoeff() < 1e-12);

  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    for (int modes : {1, 2, 3, 4}) {
      const BogoliubovMap map = generate_bogoliubov(modes, seed, 1.2);
      const PairOperator pair = pair_operator(map);
      CHECK((pair_operator_spectral(map) - pair.kernel).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((pair.kernel - pair.kernel.transpose()).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(operator_norm(pair.op) < 0.5);
      CHECK(pair_relation_residual(map, pair.op) < 1e-10);
    }
  }
}

TEST_CASE("shale-stinespring probe") {
  const std::vector<int> sizes = {8, 16, 32, 64};
  SUBCASE("zero family") {
    const auto probe = shale_stinespring_probe([](int m) { return Matrix(Matrix::Zero(m, m)); }, sizes);
    CHECK(probe.verdict == Verdict::convergent);
    for (double t : probe.partial_traces) CHECK(t == 0.0);
  }
  SUBCASE("summable diagonal 1/j") {
    const auto family = [](int m) {
      Matrix v = Matrix::Zero(m, m);
      for (int j = 1; j <= m; ++j) v(j - 1, j - 1) = 1.0 / double(j);
      return v;
    };
    const auto probe = shale_stinespring_probe(family, sizes);
    CHECK(probe.verdict == Verdict::convergent);
    for (std::size_t i = 0; i < sizes.size(); ++i)
      CHECK(probe.partial_traces[i] ==
            doctest::Approx(oracle::partial_sum(sizes[i], 2.0)).epsilon(1e-12));
  }
  SUBCASE("harmonic diagonal 1/sqrt(j)") {
    const auto family = [](int m) {
      Matrix v = Matrix::Zero(m, m);
      for (int j = 1; j <= m; ++j) v(j - 1, j - 1) = 1.0 / std::sqrt(double(j));
      return v;
    };
    const auto probe = shale_stinespring_probe(family, sizes);
    CHECK(probe.verdict == Verdict::divergent);
    for (std::size_t i = 0; i < sizes.size(); ++i)
      CHECK(probe.partial_traces[i] ==
            doctest::Approx(oracle::partial_sum(sizes[i], 1.0)).epsilon(1e-12));
  }
  SUBCASE("sizes must ascend") {
    CHECK_THROWS_AS(
        shale_stinespring_probe([](int m) { return Matrix(Matrix::Zero(m, m)); }, {8, 8}),
        std::invalid_argument);
  }
}
