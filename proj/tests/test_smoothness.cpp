#include <catch2/catch.hpp>

#include "speclab/smoothness.hpp"

using namespace speclab;

TEST_CASE("weak classification of the unweighted shift") {
  WeightedShift unit(WeightSequence::constant(1.0));
  const SmoothnessVerdict v = classify_weak_disk(unit, FinSuppVector::basis(0), 50);
  CHECK(v.kind == SmoothKind::WeakSmoothEvidence);
  CHECK(v.sup_norm == Approx(1.0).margin(1e-14));
  CHECK(v.window_bounded);
}

TEST_CASE("weak classification of the interleaved shift meets the similarity bound") {
  WeightedShift T(theorem1_weights());
  const DiagonalOperator W = build_similarity(T.weights());
  const SmoothnessVerdict v = classify_weak_disk(T, FinSuppVector::basis(0), 200, &W);
  CHECK(v.kind == SmoothKind::WeakSmoothEvidence);
  CHECK(v.window_bounded);
  CHECK(v.sup_norm <= 2.0 + 1e-6);
  REQUIRE(v.analytic_bound.has_value());
  CHECK(v.sup_norm <= *v.analytic_bound + 1e-6);
  // the bound is attained (at j = 3 the prefix product dips to a_1)
  CHECK(v.sup_norm == Approx(2.0).margin(1e-12));
}

TEST_CASE("coupling the block bottom component produces one-sided growth") {
  BlockShiftOperator B(WeightSequence::harmonic());
  const SmoothnessVerdict v =
      classify_weak_disk(B, {FinSuppVector::zero(), FinSuppVector::basis(0)}, 50);
  CHECK_FALSE(v.window_bounded);
  // inside-condition norms grow toward j -> -infinity
  auto norm_at = [&](std::int64_t j, int col) {
    for (const auto& row : v.table) {
      if (row.j == j) return row.norms[static_cast<std::size_t>(col)];
    }
    return -1.0;
  };
  CHECK(norm_at(-50, 0) > norm_at(-25, 0));
  CHECK(norm_at(-25, 0) > norm_at(-12, 0));
  // outside-condition norms grow toward j -> +infinity
  CHECK(norm_at(50, 2) > norm_at(25, 2));
  CHECK(norm_at(25, 2) > norm_at(12, 2));
}

TEST_CASE("strong classification separates the families") {
  WeightedShift unit(WeightSequence::constant(1.0));
  const SmoothnessVerdict a = classify_strong_shift(unit, FinSuppVector::basis(0), 2000);
  CHECK(a.kind == SmoothKind::StrongSmoothEvidence);

  WeightedShift T(theorem1_weights());
  const SmoothnessVerdict b = classify_strong_shift(T, FinSuppVector::basis(0), 20000);
  CHECK(b.kind == SmoothKind::NotStrongSmooth);
  REQUIRE(b.forward_series.has_value());
  CHECK(b.forward_series->verdict == SeriesVerdict::DivergenceEvidence);
  REQUIRE(b.forward_series->divergence_fit.has_value());
  CHECK(b.forward_series->divergence_fit->slope > 1.0);

  std::vector<double> vals;
  for (int n = 1; n <= 50; ++n) vals.push_back(1.0 + std::pow(2.0, -n));
  WeightedShift G(WeightSequence::user_table(1, vals, 1.0));
  const SmoothnessVerdict c = classify_strong_shift(G, FinSuppVector::basis(0), 500);
  CHECK(c.kind == SmoothKind::StrongSmoothEvidence);
  CHECK(c.forward_series->tail_certified);

  const SmoothnessVerdict z = classify_strong_shift(T, FinSuppVector::zero(), 100);
  CHECK(z.kind == SmoothKind::StrongSmoothEvidence);
  CHECK(z.trivial_vector);
}

TEST_CASE("strong verdict is scaling invariant and the sums scale quadratically") {
  WeightedShift T(theorem1_weights());
  const FinSuppVector u = FinSuppVector::basis(0) + FinSuppVector::basis(1, 0.5);
  const SmoothnessVerdict base = classify_strong_shift(T, u, 4000);
  const SmoothnessVerdict scaled = classify_strong_shift(T, cxd(3.0) * u, 4000);
  CHECK(base.kind == scaled.kind);
  CHECK(scaled.forward_series->partial_sum ==
        Approx(9.0 * base.forward_series->partial_sum).epsilon(1e-12));
}

TEST_CASE("strong verdict is invariant under joint index translation") {
  // a windowed copy of the interleaved weights, then the same window shifted
  std::vector<double> vals;
  const WeightSequence rho = theorem1_weights();
  for (std::int64_t j = -40; j <= 80; ++j) vals.push_back(rho(j));
  const WeightSequence table = WeightSequence::user_table(-40, vals, 1.0);
  const WeightSequence shifted = WeightSequence::user_table(-35, vals, 1.0);
  const SeriesCertificate a = strong_series_certificate(table, 0, 30);
  const SeriesCertificate b = strong_series_certificate(shifted, 5, 35);
  CHECK(a.partial_sum == Approx(b.partial_sum).epsilon(1e-12));
}

TEST_CASE("strong evidence implies weak evidence on every tested window") {
  std::vector<double> vals;
  for (int n = 1; n <= 50; ++n) vals.push_back(1.0 + std::pow(2.0, -n));
  WeightedShift G(WeightSequence::user_table(1, vals, 1.0));
  const SmoothnessVerdict strong = classify_strong_shift(G, FinSuppVector::basis(0), 500);
  REQUIRE(strong.kind == SmoothKind::StrongSmoothEvidence);
  for (std::int64_t window : {25LL, 50LL, 100LL}) {
    const SmoothnessVerdict weak = classify_weak_disk(G, FinSuppVector::basis(0), window);
    CHECK(weak.window_bounded);
    CHECK(weak.sup_norm < 10.0);
  }
}

TEST_CASE("jump probe detects the unimodular boundary jumps of the block adjoint") {
  BlockShiftOperator B(WeightSequence::harmonic());
  const BlockVector zero{FinSuppVector::zero(), FinSuppVector::zero()};
  const SmoothnessVerdict trivial = singular_jump_probe(B, zero, {zero});
  CHECK(trivial.kind == SmoothKind::NoJumpDetected);
  CHECK(trivial.trivial_vector);

  const BlockVector e_top{FinSuppVector::basis(0), FinSuppVector::zero()};
  const SmoothnessVerdict top = singular_jump_probe(B, e_top, {e_top});
  CHECK(top.kind == SmoothKind::SingularJumpDetected);
  CHECK(top.detected_angles == 32);
  // the jump of the shift matrix element is unimodular at every angle
  for (const auto& s : top.jumps) CHECK(s.jump_abs == Approx(1.0).margin(1e-6));

  const BlockVector e_bot{FinSuppVector::zero(), FinSuppVector::basis(0)};
  const SmoothnessVerdict bot = singular_jump_probe(B, e_bot, {e_bot});
  CHECK(bot.kind == SmoothKind::SingularJumpDetected);
  CHECK(bot.detected_angles >= 16);
}

TEST_CASE("jump probe stays quiet on a function analytic across the circle") {
  // resolvent matrix element of a nilpotent single Jordan block: -1/z^2
  auto F = [](const SpectralPoint& p) { return -1.0 / (p.z * p.z); };
  const SmoothnessVerdict v = singular_jump_probe_core(F);
  CHECK(v.kind == SmoothKind::NoJumpDetected);
  CHECK(v.detected_angles == 0);
}

TEST_CASE("membership probe separates the decoupled and coupled components") {
  BlockShiftOperator B(WeightSequence::harmonic());
  const CnProbeResult top =
      cn_membership_probe(B, {FinSuppVector::basis(0), FinSuppVector::zero()}, 50);
  CHECK(top.inside_bounded);
  CHECK(top.outside_bounded);

  const CnProbeResult bot =
      cn_membership_probe(B, {FinSuppVector::zero(), FinSuppVector::basis(0)}, 50);
  CHECK_FALSE(bot.inside_bounded);
  CHECK_FALSE(bot.outside_bounded);

  const CnProbeResult mixed =
      cn_membership_probe(B, {FinSuppVector::basis(0), FinSuppVector::basis(0)}, 50);
  CHECK_FALSE(mixed.inside_bounded);
  CHECK_FALSE(mixed.outside_bounded);
}
