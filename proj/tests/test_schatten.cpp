#include <catch2/catch.hpp>

#include "speclab/oracle.hpp"
#include "speclab/schatten.hpp"

using namespace speclab;

TEST_CASE("defect spectrum of the unitary shift is identically zero") {
  WeightedShift unit(WeightSequence::constant(1.0));
  const SchattenReport rep = defect_spectrum(unit, 64);
  for (const auto& e : rep.entries) CHECK(e.value == 0.0);
  for (const auto& [p, cert] : rep.p_verdicts) {
    CHECK(cert.converged());
    CHECK(cert.partial_sum == 0.0);
    CHECK(cert.tail_certified);
  }
}

TEST_CASE("interleaved defect spectrum: p = 1 diverges, p > 1 converges certified") {
  WeightedShift T(theorem1_weights());
  const SchattenReport rep = defect_spectrum(T, 100000, {1.0, 1.5});
  const SeriesCertificate& p1 = rep.p_verdicts.at(1.0);
  REQUIRE(p1.verdict == SeriesVerdict::DivergenceEvidence);
  REQUIRE(p1.divergence_fit.has_value());
  CHECK(p1.divergence_fit->slope == Approx(4.0).margin(0.2));
  CHECK(p1.divergence_fit->r_squared >= 0.99);

  const SeriesCertificate& p15 = rep.p_verdicts.at(1.5);
  CHECK(p15.converged());
  CHECK(p15.tail_certified);
  CHECK(p15.tail_bound.value_or(1e9) < 1.0);

  // values equal 1 - rho_j^2 exactly, no numerical eigensolve involved
  const WeightSequence& rho = T.weights();
  for (const auto& e : rep.entries) {
    const double r = rho(e.index);
    CHECK(e.value == 1.0 - r * r);
  }
}

TEST_CASE("pi-dominated defect values are dominated after sorting") {
  const PiTable pi = PiTable::harmonic();
  WeightedShift T(pi_dominated_weights(pi));
  const SchattenReport rep = defect_spectrum(T, 10000, {1.5}, &pi);
  REQUIRE(rep.domination.has_value());
  CHECK(rep.domination->ok);
  CHECK(rep.domination->worst_margin >= 0.0);
}

TEST_CASE("sorting is by modulus with index tie-break") {
  const WeightSequence rho = WeightSequence::user_table(2, {0.5, 1.0, 1.0, 0.5}, 1.0);
  WeightedShift T(rho);
  const SchattenReport rep = defect_spectrum(T, 8);
  REQUIRE(rep.entries.size() >= 2);
  CHECK(std::abs(rep.entries[0].value) == Approx(0.75));
  CHECK(std::abs(rep.entries[1].value) == Approx(0.75));
  CHECK(rep.entries[0].index == 2);
  CHECK(rep.entries[1].index == 5);
}

TEST_CASE("perturbation singular values: multiset, floor inequality, summability") {
  BlockShiftOperator B(WeightSequence::harmonic());
  const PerturbationReport rep = perturbation_singular_values(B, 100);
  const auto mu = rep.schatten.moduli();
  CHECK(mu[0] == Approx(1.0));
  CHECK(mu[1] == Approx(0.5));
  CHECK(mu[2] == Approx(0.5));
  CHECK(mu[3] == Approx(1.0 / 3.0));
  CHECK(mu[4] == Approx(1.0 / 3.0));
  CHECK(rep.floor_inequality_ok);
  CHECK(rep.schatten.p_verdicts.at(1.0).verdict == SeriesVerdict::DivergenceEvidence);

  const double dev = dense_svd_check(perturbation_section(B, 64),
                                     perturbation_singular_values(B, 64).schatten.moduli());
  CHECK(dev <= 1e-10);
}

TEST_CASE("summability verdicts for explicit value lists") {
  std::vector<double> geo;
  for (int n = 0; n <= 48; ++n) geo.push_back(std::pow(2.0, -n));
  const SeriesCertificate g = summability_verdict(geo, 1.0);
  CHECK(g.converged());
  CHECK(g.partial_sum <= 2.0);
  CHECK(g.partial_sum + g.tail_bound.value_or(0.0) >= 2.0 - 1e-9);

  std::vector<double> harm;
  for (int n = 0; n < 200000; ++n) harm.push_back(1.0 / (n + 1.0));
  const SeriesCertificate h1 = summability_verdict(harm, 1.0);
  REQUIRE(h1.verdict == SeriesVerdict::DivergenceEvidence);
  CHECK(h1.divergence_fit->slope == Approx(1.0).margin(0.1));

  const SeriesCertificate h2 = summability_verdict(harm, 2.0);
  CHECK(h2.converged());
  const double zeta2 = kPi * kPi / 6.0;  // sanity anchor only
  CHECK(h2.partial_sum + h2.tail_bound.value_or(0.0) == Approx(zeta2).epsilon(0.02));
  CHECK(h2.partial_sum <= zeta2);
}

TEST_CASE("verdicts are stable under window enlargement") {
  const PiTable pi = PiTable::harmonic();
  WeightedShift T(pi_dominated_weights(pi));
  const SchattenReport small = defect_spectrum(T, 1000, {1.5});
  const SchattenReport big = defect_spectrum(T, 4000, {1.5});
  const SeriesCertificate& cs = small.p_verdicts.at(1.5);
  const SeriesCertificate& cb = big.p_verdicts.at(1.5);
  CHECK(cs.converged());
  CHECK(cb.converged());
  CHECK(cb.partial_sum >= cs.partial_sum);
  // the certified bound at the small window covers the larger partial sum
  CHECK(cb.partial_sum <= cs.partial_sum + cs.tail_bound.value_or(0.0));
}
