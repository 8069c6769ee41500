#include <catch2/catch.hpp>

#include <random>

#include "speclab/operators.hpp"
#include "test_support.hpp"

using namespace speclab;

namespace {
double dist(const FinSuppVector& x, const FinSuppVector& y) { return (x - y).norm(); }
}  // namespace

TEST_CASE("shift action on basis vectors") {
  WeightedShift unit(WeightSequence::constant(1.0));
  CHECK(dist(unit.apply(FinSuppVector::basis(5)), FinSuppVector::basis(4)) == 0.0);

  WeightedShift T(theorem1_weights());
  CHECK(dist(T.apply(FinSuppVector::basis(3)), FinSuppVector::basis(2, 0.5)) <= 1e-16);

  const FinSuppVector u = FinSuppVector::basis(0) + FinSuppVector::basis(1);
  const FinSuppVector expected = FinSuppVector::basis(-1) + FinSuppVector::basis(0);
  CHECK(dist(T.apply(u), expected) == 0.0);  // rho_j = 1 for j <= 1
}

TEST_CASE("output window shifts by one") {
  WeightedShift T(theorem1_weights());
  std::mt19937_64 rng(7);
  const FinSuppVector u = test::random_finsupp(rng, -4, 9);
  const FinSuppVector v = T.apply(u);
  CHECK(v.lo() == u.lo() - 1);
  CHECK(v.hi() == u.hi() - 1);
}

TEST_CASE("adjoint consistency <Tu, v> = <u, T*v>") {
  WeightedShift T(theorem1_weights());
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const FinSuppVector u = test::random_finsupp(rng, -6, 6);
    const FinSuppVector v = test::random_finsupp(rng, -5, 8);
    const cxd lhs = T.apply(u).inner(v);
    const cxd rhs = u.inner(T.apply_adjoint(v));
    CHECK(std::abs(lhs - rhs) <= 1e-14 * (1.0 + std::abs(lhs)));
  }
  CHECK(dist(T.apply_adjoint(FinSuppVector::basis(2)), FinSuppVector::basis(3, 0.5)) <= 1e-16);
}

TEST_CASE("defect diagonal entries") {
  WeightedShift unit(WeightSequence::constant(1.0));
  CHECK(defect_operator(unit).entry(17) == 0.0);

  WeightedShift T(theorem1_weights());
  CHECK(defect_operator(T).entry(2) == Approx(std::sqrt(3.0 / 4.0)).margin(1e-15));

  WeightedShift H(WeightSequence::harmonic());
  CHECK(defect_operator(H).entry(1) == Approx(std::sqrt(3.0 / 4.0)).margin(1e-15));
}

TEST_CASE("I - T*T acts diagonally with the shifted entry family") {
  WeightedShift T(theorem1_weights());
  const DiagonalOperator D = one_minus_tstar_t(T);
  for (std::int64_t j = -8; j <= 8; ++j) {
    const FinSuppVector e = FinSuppVector::basis(j);
    const FinSuppVector lhs = e - T.apply_adjoint(T.apply(e));
    const double rj = T.weights()(j - 1);
    CHECK(dist(lhs, FinSuppVector::basis(j, 1.0 - rj * rj)) <= 1e-16);
    CHECK(D.entry(j) == Approx(1.0 - rj * rj).margin(1e-16));
  }
  // the finite section is the same diagonal restricted to the window
  const Eigen::MatrixXcd S = finite_section(D, 6);
  for (std::int64_t j = -6; j <= 6; ++j) {
    const double rj = T.weights()(j - 1);
    CHECK(std::abs(S(j + 6, j + 6) - cxd(1.0 - rj * rj)) == 0.0);
  }
  CHECK(S.cwiseAbs().sum() == Approx(S.diagonal().cwiseAbs().sum()));
}

TEST_CASE("similarity diagonal takes the stated values and rejects bad families") {
  const DiagonalOperator W = build_similarity(theorem1_weights());
  CHECK(W.entry(3) == Approx(2.0).margin(1e-15));  // 1/a_1
  CHECK(W.entry(0) == 1.0);
  CHECK(W.entry(4) == 1.0);
  CHECK(W.entry(-3) == 1.0);
  CHECK_THROWS_AS(build_similarity(WeightSequence::harmonic()), std::invalid_argument);
}

TEST_CASE("conjugation collapses the interleaved shift onto the unweighted one") {
  WeightedShift T(theorem1_weights());
  const DiagonalOperator W = build_similarity(T.weights());
  CHECK(conjugate_check(T, W, -100, 100) <= 1e-12);

  WeightedShift unit(WeightSequence::constant(1.0));
  CHECK(conjugate_check(unit, DiagonalOperator::identity(), -50, 50) == 0.0);

  // an identity similarity must expose the weight mismatch at j = 3
  CHECK(conjugate_check(T, DiagonalOperator::identity(), -100, 100) >= 0.5 - 1e-12);
}

TEST_CASE("block action") {
  BlockShiftOperator B(WeightSequence::harmonic());
  const BlockVector a = B.apply({FinSuppVector::basis(0), FinSuppVector::zero()});
  CHECK(dist(a.top, FinSuppVector::basis(1)) == 0.0);
  CHECK(a.bottom.empty());

  const BlockVector b = B.apply({FinSuppVector::zero(), FinSuppVector::basis(0)});
  CHECK(dist(b.top, FinSuppVector::basis(0)) == 0.0);  // rho_0 = 1
  CHECK(dist(b.bottom, FinSuppVector::basis(1)) == 0.0);

  const BlockVector c = B.apply({FinSuppVector::zero(), FinSuppVector::basis(3)});
  CHECK(dist(c.top, FinSuppVector::basis(3, 0.25)) <= 1e-16);
  CHECK(dist(c.bottom, FinSuppVector::basis(4)) == 0.0);
}

TEST_CASE("unitary part and perturbation recompose the block operator") {
  BlockShiftOperator B(WeightSequence::harmonic());
  const BlockDecomposition parts = perturbation_part(B);

  const BlockVector t0 = parts.unitary({FinSuppVector::basis(0), FinSuppVector::basis(0)});
  CHECK(dist(t0.top, FinSuppVector::basis(1)) == 0.0);
  CHECK(dist(t0.bottom, FinSuppVector::basis(1)) == 0.0);

  const BlockVector s = parts.perturbation({FinSuppVector::basis(0), FinSuppVector::basis(5)});
  CHECK(dist(s.top, FinSuppVector::basis(5, 1.0 / 6.0)) <= 1e-16);
  CHECK(s.bottom.empty());

  const BlockVector s2 = parts.perturbation({FinSuppVector::zero(), FinSuppVector::basis(2)});
  CHECK(dist(s2.top, FinSuppVector::basis(2, 1.0 / 3.0)) <= 1e-16);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const BlockVector u{test::random_finsupp(rng, -5, 5), test::random_finsupp(rng, -4, 6)};
    const BlockVector direct = B.apply(u);
    const BlockVector recomposed = parts.unitary(u) + parts.perturbation(u);
    CHECK(dist(direct.top, recomposed.top) == 0.0);
    CHECK(dist(direct.bottom, recomposed.bottom) == 0.0);
  }
}

TEST_CASE("finite sections materialize the expected entries") {
  WeightedShift unit(WeightSequence::constant(1.0));
  const Eigen::MatrixXcd S1 = finite_section(unit, 1);
  CHECK(S1.rows() == 3);
  CHECK(S1(0, 1) == cxd(1.0));
  CHECK(S1(1, 2) == cxd(1.0));
  CHECK(std::abs(S1.sum() - cxd(2.0)) == 0.0);

  WeightedShift T(theorem1_weights());
  const Eigen::MatrixXcd S2 = finite_section(T, 2);
  // coordinate pair (1, 2) sits at matrix indices (1 + N, 2 + N)
  CHECK(S2(1 + 2, 2 + 2) == cxd(1.0));  // rho_1 = 1
  CHECK(S2(0 + 2, 1 + 2) == cxd(1.0));  // rho_0 = 1
  CHECK(S2(-1 + 2, 0 + 2) == cxd(1.0));

  const DiagonalOperator D = defect_operator(T);
  const Eigen::MatrixXcd S3 = finite_section(D, 5);
  for (std::int64_t j = -5; j <= 5; ++j) {
    CHECK(std::abs(S3(j + 5, j + 5) - cxd(D.entry(j))) == 0.0);
  }

  CHECK_THROWS_AS(finite_section(T, 5000), std::invalid_argument);
}

TEST_CASE("S*S acts diagonally with squared coupling entries") {
  BlockShiftOperator B(WeightSequence::harmonic());
  const BlockDecomposition parts = perturbation_part(B);
  for (std::int64_t n = -6; n <= 6; ++n) {
    const BlockVector e{FinSuppVector::zero(), FinSuppVector::basis(n)};
    // S* S e = (0, rho_{|n|}^2 e_n): apply S then its adjoint (0, R x_top)
    const BlockVector se = parts.perturbation(e);
    const BlockVector sstar_se{FinSuppVector::zero(), B.apply_coupling(se.top)};
    const double expected = B.coupling_at(n) * B.coupling_at(n);
    CHECK(dist(sstar_se.bottom, FinSuppVector::basis(n, expected)) <= 1e-16);
  }
}
