#include <catch2/catch.hpp>

#include <random>

#include "speclab/hardy.hpp"
#include "test_support.hpp"

using namespace speclab;

TEST_CASE("exact Parseval norms of simple series") {
  CHECK(h2_norm_exact(CoefficientSeries::finite({1.0})).estimate == 1.0);

  WeightedShift unit(WeightSequence::constant(1.0));
  const FinSuppVector e0 = FinSuppVector::basis(0);
  for (std::int64_t j = -4; j <= 6; ++j) {
    const double n = h2_norm_exact(shift_inside_element(unit, e0, j)).estimate;
    CHECK(n == Approx(j >= 1 ? 1.0 : 0.0).margin(1e-15));
  }

  const double q = 0.5;
  CoefficientSeries geo = CoefficientSeries::generated(
      [q](std::int64_t s) { return std::pow(q, static_cast<double>(s)); }, 120);
  auto tail = [q](std::int64_t S) {
    return std::pow(q, 2.0 * (S + 1.0)) / (1.0 - q * q);
  };
  const HardyNormResult r = h2_norm_exact(geo, tail);
  CHECK(r.estimate == Approx(std::sqrt(4.0 / 3.0)).margin(1e-12));
  CHECK(r.lower_bound <= r.estimate);
  CHECK(r.upper_bound >= r.estimate);
  CHECK_THROWS_AS(h2_norm_exact(geo), std::domain_error);
}

TEST_CASE("circle quadrature reproduces closed-form means") {
  const HardyNormResult one = hp_norm_quadrature([](cxd) { return cxd(1.0); }, 1.3);
  CHECK(one.estimate == Approx(1.0).margin(1e-12));

  const HardyNormResult zk = hp_norm_quadrature([](cxd z) { return std::pow(z, 3); }, 1.0);
  CHECK(zk.estimate <= 1.0 + 1e-12);
  CHECK(zk.estimate >= 1.0 - 1e-5);

  RadialSchedule deep{32};
  const HardyNormResult quad =
      hp_norm_quadrature([](cxd z) { return 1.0 / (1.0 - 0.5 * z); }, 2.0, deep);
  CHECK(quad.estimate == Approx(std::sqrt(4.0 / 3.0)).margin(1e-8));
  CHECK(quad.converged);

  const HardyNormResult sub = hp_norm_quadrature([](cxd) { return cxd(1.0); }, 0.5);
  CHECK(sub.not_a_norm);
}

TEST_CASE("defect-weighted series: unit weights give exactly zero") {
  const SeriesCertificate c = strong_series_certificate(WeightSequence::constant(1.0), 0, 512);
  CHECK(c.converged());
  CHECK(c.partial_sum == 0.0);
  CHECK(c.tail_certified);
}

TEST_CASE("defect-weighted series for the interleaved family diverges like 4 ln J") {
  const WeightSequence rho = theorem1_weights();
  const SeriesCertificate at1e3 = strong_series_certificate(rho, 0, 2000);
  const SeriesCertificate at1e4 = strong_series_certificate(rho, 0, 20000);
  REQUIRE(at1e4.verdict == SeriesVerdict::DivergenceEvidence);
  // both parities of the interleaved family contribute ~2/j per pair
  CHECK((at1e4.partial_sum - at1e3.partial_sum) / std::log(10.0) == Approx(4.0).margin(0.08));
  REQUIRE(at1e4.divergence_fit.has_value());
  CHECK(at1e4.divergence_fit->slope == Approx(4.0).margin(0.2));
}

TEST_CASE("defect-weighted series converges for a summable user table") {
  std::vector<double> vals;
  for (int n = 1; n <= 50; ++n) vals.push_back(1.0 + std::pow(2.0, -n));
  const WeightSequence rho = WeightSequence::user_table(1, vals, 1.0);
  const SeriesCertificate c = strong_series_certificate(rho, 0, 200);
  CHECK(c.converged());
  CHECK(c.tail_certified);
  CHECK(c.tail_bound.value_or(-1.0) == 0.0);
  CHECK(c.partial_sum > 0.0);
}

TEST_CASE("backward defect series vanishes identically for interleaved families") {
  const SeriesCertificate c = adjoint_strong_series_certificate(theorem1_weights(), 0, 4096);
  CHECK(c.converged());
  CHECK(c.partial_sum == 0.0);
  CHECK(c.tail_certified);
}

TEST_CASE("weighted double sum reduces to the single series on basis vectors") {
  const WeightSequence rho = theorem1_weights();
  const WeightedSumCertificate w = strong_h2_weighted_sum(rho, FinSuppVector::basis(0), 5000);
  const SeriesCertificate single = strong_series_certificate(rho, 0, 5000);
  CHECK(w.total.partial_sum == Approx(single.partial_sum).margin(1e-12));
  CHECK(w.total.verdict == SeriesVerdict::DivergenceEvidence);

  const WeightedSumCertificate zero = strong_h2_weighted_sum(rho, FinSuppVector::zero(), 100);
  CHECK(zero.total.partial_sum == 0.0);
  CHECK(zero.total.converged());

  const WeightedSumCertificate unit =
      strong_h2_weighted_sum(WeightSequence::constant(1.0), FinSuppVector::basis(3), 100);
  CHECK(unit.total.partial_sum == 0.0);
  CHECK(unit.total.converged());
}

TEST_CASE("duality series: single-term closed form at negative offsets") {
  const WeightSequence coupling = WeightSequence::harmonic();
  const FinSuppVector u2 = FinSuppVector::basis(0);
  CHECK(duality_h2_norm(coupling, FinSuppVector::zero(), -5, 100).partial_sum == 0.0);

  const SeriesCertificate c = duality_h2_norm(coupling, u2, -12, 1000);
  double h12 = 0.0;
  for (int k = 1; k <= 12; ++k) h12 += 1.0 / k;
  CHECK(c.partial_sum == Approx((h12 - 1.0) * (h12 - 1.0)).margin(1e-12));
  CHECK(c.tail_certified);
}

TEST_CASE("duality series matches the brute-force coefficient expansion") {
  BlockShiftOperator B(WeightSequence::harmonic());
  std::mt19937_64 rng(67);
  const FinSuppVector u2 =
      FinSuppVector::basis(0) + FinSuppVector::basis(2, cxd(0.5, -0.25));
  for (std::int64_t j : {-9LL, -5LL, -2LL, 1LL}) {
    const auto coeffs = test::chained_element_coeffs_bruteforce(B, u2, j, 40);
    const double brute = test::coeff_norm_sq(coeffs);
    const double series = duality_h2_norm(B.coupling(), u2, j, 40).partial_sum;
    CHECK(std::abs(series - brute) <= 1e-10 * (1.0 + brute));
  }
}

TEST_CASE("duality series grows like (ln |j|)^2 toward minus infinity") {
  const WeightSequence coupling = WeightSequence::harmonic();
  const FinSuppVector u2 = FinSuppVector::basis(0);
  std::vector<double> x, y;
  for (std::int64_t j : {-100LL, -1000LL, -10000LL}) {
    const double lj = std::log(static_cast<double>(-j));
    x.push_back(lj * lj);
    y.push_back(duality_h2_norm(coupling, u2, j, 1 << 20).partial_sum);
  }
  const ScaleFit fit = fit_scale(x, y);
  CHECK(fit.coefficient == Approx(0.9).margin(0.1));
  CHECK(fit.r_squared >= 0.99);
}

TEST_CASE("cauchy transform of the box density has the closed-form value") {
  const std::size_t n = 513;
  RealGrid grid{0.0, 1.0 / static_cast<double>(n - 1), n};
  std::vector<cxd> ones(n, cxd(1.0));
  const CauchyResult r = cauchy_transform(grid, ones, cxd(0.0, 1.0));
  const cxd expected = std::log((cxd(1.0, -1.0)) / cxd(0.0, -1.0));
  CHECK(std::abs(r.value - expected) <= 1e-8);
  CHECK(std::abs(r.value - expected) <= 4.0 * r.error_estimate + 1e-9);

  std::vector<cxd> zeros(n, cxd(0.0));
  CHECK(std::abs(cauchy_transform(grid, zeros, cxd(0.0, 1.0)).value) == 0.0);

  CHECK_THROWS_AS(cauchy_transform(grid, ones, cxd(0.5, 1e-4)), std::domain_error);
}

TEST_CASE("boundary jump recovers a smooth density") {
  auto density = [](double t) { return std::exp(-8.0 * t * t); };
  const RealGrid grid{-4.0, 8.0 / 8192.0, 8193};
  std::vector<cxd> samples;
  for (std::size_t i = 0; i < grid.count; ++i) samples.emplace_back(density(grid.x(i)), 0.0);
  const std::vector<double> eps = {0.2, 0.1, 0.05, 0.025, 0.0125};
  for (double x : {0.0, 0.35, -0.8}) {
    const JumpResult jr = plemelj_jump(grid, samples, x, eps);
    CHECK(std::abs(jr.jump - cxd(density(x))) <= 1e-4);
  }
}

TEST_CASE("integral means are monotone in the exponent") {
  const HolderCheckResult flat =
      holder_inclusion_check([](cxd) { return cxd(0.7); }, 2.0, 1.5, RadialSchedule{10});
  CHECK(flat.ok);
  CHECK(std::abs(flat.min_margin) <= 1e-10);

  const HolderCheckResult strict = holder_inclusion_check(
      [](cxd z) { return 1.0 / (1.0 - 0.9 * z); }, 2.0, 1.5, RadialSchedule{8});
  CHECK(strict.ok);
  CHECK(strict.min_margin > 0.0);
  CHECK(strict.margins.back().second > 0.01);  // wide margin at r = 1 - 2^-8

  const HolderCheckResult mono =
      holder_inclusion_check([](cxd z) { return z; }, 2.0, 1.0, RadialSchedule{10});
  CHECK(mono.ok);
  CHECK(std::abs(mono.min_margin) <= 1e-9);  // |z| has constant modulus r on each circle
}

TEST_CASE("integral means are nondecreasing in the radius") {
  RadialSchedule radii{16};
  for (double p : {1.0, 2.0}) {
    double prev = -1.0;
    for (double r : radii.radii()) {
      const double m =
          detail::integral_mean([](cxd z) { return 1.0 / (1.0 - 0.7 * z); }, p, r, 256, 1e-10,
                                1 << 16)
              .estimate;
      CHECK(m >= prev - 1e-9 * std::max(1.0, m));
      prev = m;
    }
  }
}

TEST_CASE("coefficient and quadrature routes agree on closed forms") {
  RadialSchedule deep{32};
  const std::vector<cxd> qs = {0.3, cxd(0.0, 0.5), -0.6};
  for (const cxd& q : qs) {
    CoefficientSeries s = CoefficientSeries::generated(
        [q](std::int64_t k) { return std::pow(q, static_cast<double>(k)); }, 220);
    const double aq = std::abs(q);
    const HardyNormResult exact = h2_norm_exact(s, [aq](std::int64_t S) {
      return std::pow(aq, 2.0 * (S + 1.0)) / (1.0 - aq * aq);
    });
    const HardyNormResult quad =
        hp_norm_quadrature([q](cxd z) { return 1.0 / (1.0 - q * z); }, 2.0, deep);
    CHECK(std::abs(exact.estimate - quad.estimate) <= 1e-8);
  }
}
