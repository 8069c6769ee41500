#ifndef SPECLAB_SCHATTEN_HPP
#define SPECLAB_SCHATTEN_HPP

// Singular-value diagnostics: the defect spectrum of the weighted shift, the
// singular values of the block perturbation, l^p summability verdicts, and
// domination scans against a prescribed monotone sequence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "speclab/operators.hpp"
#include "speclab/series.hpp"
#include "speclab/weights.hpp"

namespace speclab {

struct SpectrumEntry {
  double value = 0.0;      // signed eigenvalue (defect case) or singular value
  std::int64_t index = 0;  // originating coordinate / coupling index
};

struct DominationCheck {
  bool ok = true;
  double worst_margin = std::numeric_limits<double>::infinity();  // min(pi_n - |v_n|)
  std::int64_t first_violation = -1;
};

struct SchattenReport {
  std::vector<SpectrumEntry> entries;  // sorted by modulus, nonincreasing
  std::map<double, SeriesCertificate> p_verdicts;
  std::optional<DominationCheck> domination;

  std::vector<double> moduli() const {
    std::vector<double> m;
    m.reserve(entries.size());
    for (const auto& e : entries) m.push_back(std::abs(e.value));
    return m;
  }
};

inline const std::vector<double>& default_p_grid() {
  static const std::vector<double> grid = {1.0, 1.1, 1.5, 2.0};
  return grid;
}

// Partial sums of the p-th powers of a modulus-sorted value list.  A
// certified tail forces convergence; otherwise a power-law fit of the decay
// provides an integral-test tail estimate (flagged as fitted, not certified)
// or the generic growth analysis yields divergence evidence.
inline SeriesCertificate summability_verdict(const std::vector<double>& sorted_moduli, double p,
                                             std::optional<double> certified_tail = std::nullopt) {
  if (!(p > 0)) throw std::invalid_argument("summability_verdict: need p > 0");
  PartialSumTracer tracer;
  // the zero suffix of a sorted window contributes nothing and would only
  // flatten the growth fit
  std::size_t n_eff = sorted_moduli.size();
  while (n_eff > 0 && sorted_moduli[n_eff - 1] == 0.0) --n_eff;
  for (std::size_t i = 0; i < n_eff; ++i) {
    const double v = sorted_moduli[i];
    if (v < 0) throw std::invalid_argument("summability_verdict: values must be nonnegative");
    tracer.add(std::pow(v, p));
  }
  SeriesCertificate cert = make_certificate(tracer, certified_tail, "l^p partial sums");
  if (!certified_tail && cert.converged() && n_eff > 0) {
    // power-law decay fit over the last decade of nonzero values
    std::vector<double> lx, ly;
    for (std::size_t i = n_eff / 10 > 0 ? n_eff - n_eff / 10 : n_eff / 2; i < n_eff; ++i) {
      if (sorted_moduli[i] > 0) {
        lx.push_back(std::log(static_cast<double>(i + 1)));
        ly.push_back(std::log(sorted_moduli[i]));
      }
    }
    if (lx.size() >= 3) {
      const LineFit decay = fit_line(lx, ly);
      const double beta = -decay.slope;
      if (beta * p > 1.05) {
        const double vN = sorted_moduli[n_eff - 1];
        cert.tail_bound = std::pow(vN, p) * static_cast<double>(n_eff) / (beta * p - 1.0);
        cert.tail_certified = false;
        cert.note += "; fitted decay exponent " + std::to_string(beta);
      }
    }
  }
  return cert;
}

inline DominationCheck check_domination(const std::vector<double>& sorted_moduli,
                                        const PiTable& pi, double slack = 1e-12) {
  DominationCheck out;
  for (std::size_t n = 0; n < sorted_moduli.size(); ++n) {
    const double margin = pi(static_cast<std::int64_t>(n)) - sorted_moduli[n];
    if (margin < out.worst_margin) out.worst_margin = margin;
    if (margin < -slack && out.first_violation < 0) {
      out.ok = false;
      out.first_violation = static_cast<std::int64_t>(n);
    }
  }
  return out;
}

namespace detail {

inline void sort_by_modulus(std::vector<SpectrumEntry>& entries) {
  // modulus decreasing; ties broken by ascending index for determinism
  std::stable_sort(entries.begin(), entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    const double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    return a.index < b.index;
  });
}

// Certified tail for sum of defect-value p-th powers beyond the window of an
// interleaved family: both values of pair k are <= C/(k+1) with C = 2/a_1^2.
inline std::optional<double> defect_tail_bound(const WeightSequence& rho, double p,
                                               std::int64_t window) {
  if (rho.family() == WeightFamily::Constant) {
    std::int64_t lo, hi;
    return rho.unit_outside(lo, hi) ? std::optional<double>(0.0) : std::nullopt;
  }
  if (!rho.is_interleaved()) {
    std::int64_t lo, hi;
    if (rho.unit_outside(lo, hi) && window >= std::max(std::abs(lo), std::abs(hi))) return 0.0;
    return std::nullopt;
  }
  if (p <= 1.0) return std::nullopt;
  const double a1 = rho.interleaved_a(1);
  const double C = 2.0 / (a1 * a1);
  // the boundary pair may straddle the window edge; start the tail one pair early
  const std::int64_t K = std::max<std::int64_t>(1, window / 2 - 1);
  const auto base = power_tail_bound(C, p, K);
  if (!base) return std::nullopt;
  return 2.0 * *base;
}

}  // namespace detail

// Eigenvalues of the defect family {1 - rho_j^2} over the coordinate window,
// sorted by modulus, with p-grid summability and an optional domination scan.
inline SchattenReport defect_spectrum(const WeightedShift& T, std::int64_t window,
                                      const std::vector<double>& p_grid = default_p_grid(),
                                      const PiTable* dominating_pi = nullptr) {
  if (window < 1) throw std::invalid_argument("defect_spectrum: need window >= 1");
  const WeightSequence& rho = T.weights();
  SchattenReport rep;
  rep.entries.reserve(static_cast<std::size_t>(2 * window + 1));
  for (std::int64_t j = -window; j <= window; ++j) {
    const double r = rho(j);
    rep.entries.push_back({1.0 - r * r, j});
  }
  detail::sort_by_modulus(rep.entries);
  const auto moduli = rep.moduli();
  for (double p : p_grid) {
    rep.p_verdicts.emplace(p, summability_verdict(moduli, p, detail::defect_tail_bound(rho, p, window)));
  }
  if (dominating_pi != nullptr) rep.domination = check_domination(moduli, *dominating_pi);
  return rep;
}

// Singular values of the block perturbation S over the coupling window:
// S*S is diagonal with entries rho_{|n|}^2, so the multiset is
// {rho_0} + {rho_n taken twice, 1 <= n <= window}; the report also scans the
// floor inequality mu_n <= rho_{floor(n/2)}.
struct PerturbationReport {
  SchattenReport schatten;
  bool floor_inequality_ok = true;    // mu_n <= rho_{floor(n/2)}
  double floor_worst_margin = std::numeric_limits<double>::infinity();
};

inline PerturbationReport perturbation_singular_values(
    const BlockShiftOperator& B, std::int64_t window,
    const std::vector<double>& p_grid = default_p_grid()) {
  if (window < 1) throw std::invalid_argument("perturbation_singular_values: need window >= 1");
  PerturbationReport out;
  auto& rep = out.schatten;
  rep.entries.push_back({B.coupling_at(0), 0});
  for (std::int64_t n = 1; n <= window; ++n) {
    rep.entries.push_back({B.coupling_at(n), -n});
    rep.entries.push_back({B.coupling_at(n), n});
  }
  detail::sort_by_modulus(rep.entries);
  const auto moduli = rep.moduli();
  for (double p : p_grid) {
    rep.p_verdicts.emplace(p, summability_verdict(moduli, p));
  }
  for (std::size_t n = 0; n < moduli.size(); ++n) {
    const double bound = B.coupling_at(static_cast<std::int64_t>(n / 2));
    const double margin = bound - moduli[n];
    out.floor_worst_margin = std::min(out.floor_worst_margin, margin);
    if (margin < -1e-12) out.floor_inequality_ok = false;
  }
  return out;
}

}  // namespace speclab

#endif  // SPECLAB_SCHATTEN_HPP
