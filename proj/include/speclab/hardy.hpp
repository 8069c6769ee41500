#ifndef SPECLAB_HARDY_HPP
#define SPECLAB_HARDY_HPP

// Hardy-space norms of the scalar analytic functions that arise as resolvent
// matrix elements, plus the Cauchy-transform jump machinery.
//
// For finitely supported vectors every matrix-element Taylor series below has
// finitely many nonzero coefficients, so the H^2 norms are exact Parseval
// sums.  The circle-quadrature path exists for cross-validation and for
// p != 2.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "speclab/operators.hpp"
#include "speclab/series.hpp"
#include "speclab/vectors.hpp"
#include "speclab/weights.hpp"

namespace speclab {

// ---------------------------------------------------------------------------
// Coefficient series

class CoefficientSeries {
 public:
  // Series with all coefficients beyond the stored prefix exactly zero.
  static CoefficientSeries finite(std::vector<cxd> coeffs) {
    CoefficientSeries s;
    s.c_ = std::move(coeffs);
    s.exact_ = true;
    return s;
  }

  // Series generated on demand; prefix_len coefficients are materialized.
  static CoefficientSeries generated(std::function<cxd(std::int64_t)> gen,
                                     std::int64_t prefix_len) {
    CoefficientSeries s;
    s.gen_ = std::move(gen);
    s.exact_ = false;
    s.c_.reserve(static_cast<std::size_t>(prefix_len));
    for (std::int64_t k = 0; k < prefix_len; ++k) s.c_.push_back(s.gen_(k));
    return s;
  }

  std::int64_t prefix_length() const { return static_cast<std::int64_t>(c_.size()); }
  bool exact_finite() const { return exact_; }

  cxd coeff(std::int64_t s) const {
    if (s < 0) return 0.0;
    if (s < prefix_length()) return c_[static_cast<std::size_t>(s)];
    return exact_ ? cxd(0.0) : gen_(s);
  }

  void extend(std::int64_t new_len) {
    if (exact_) return;
    for (std::int64_t k = prefix_length(); k < new_len; ++k) c_.push_back(gen_(k));
  }

  // Horner evaluation of the materialized prefix.
  cxd eval_prefix(cxd z) const {
    cxd acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

 private:
  std::vector<cxd> c_;
  bool exact_ = true;
  std::function<cxd(std::int64_t)> gen_;
};

enum class NormMethod { CoefficientExact, CircleQuadrature };

struct HardyNormResult {
  double p = 2.0;
  double estimate = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  NormMethod method = NormMethod::CoefficientExact;
  // quadrature diagnostics
  std::int64_t nodes = 0;
  double refine_delta = 0.0;
  bool converged = true;
  bool not_a_norm = false;  // advisory flag for p < 1
};

// Parseval norm of a coefficient series.  Exact-finite series need no tail
// rule; generated series require a bound on sum_{s > S} |c_s|^2.
inline HardyNormResult h2_norm_exact(
    const CoefficientSeries& f,
    std::optional<std::function<double(std::int64_t)>> tail_bound_rule = std::nullopt) {
  HardyNormResult r;
  r.p = 2.0;
  r.method = NormMethod::CoefficientExact;
  KahanSum acc;
  for (std::int64_t s = 0; s < f.prefix_length(); ++s) acc.add(std::norm(f.coeff(s)));
  double tail = 0.0;
  if (!f.exact_finite()) {
    if (!tail_bound_rule) {
      throw std::domain_error("h2_norm_exact: no tail bound available; use the quadrature path");
    }
    tail = (*tail_bound_rule)(f.prefix_length() - 1);
  }
  r.lower_bound = std::sqrt(acc.value());
  r.upper_bound = std::sqrt(acc.value() + tail);
  r.estimate = r.lower_bound;
  return r;
}

// ---------------------------------------------------------------------------
// Circle quadrature

// Geometric approach to the boundary: r_m = 1 - 2^-m, m = 1..levels.
struct RadialSchedule {
  int levels = 20;
  std::vector<double> radii() const {
    std::vector<double> r;
    r.reserve(static_cast<std::size_t>(levels));
    for (int m = 1; m <= levels; ++m) r.push_back(1.0 - std::pow(2.0, -m));
    return r;
  }
};

namespace detail {

// Integral mean M_p(r) by the periodic trapezoid rule with node doubling.
inline HardyNormResult integral_mean(const std::function<cxd(cxd)>& f, double p, double r,
                                     int initial_nodes, double rel_tol, int max_nodes) {
  HardyNormResult out;
  out.p = p;
  out.method = NormMethod::CircleQuadrature;
  out.not_a_norm = p < 1.0;
  double prev = -1.0;
  int n = initial_nodes;
  while (true) {
    KahanSum acc;
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * kPi * (k + 0.5) / n;
      const cxd z = r * cxd(std::cos(th), std::sin(th));
      acc.add(std::pow(std::abs(f(z)), p));
    }
    const double mean = std::pow(acc.value() / n, 1.0 / p);
    out.nodes = n;
    if (prev >= 0.0) {
      out.refine_delta = std::abs(mean - prev);
      if (out.refine_delta <= rel_tol * std::max(1.0, std::abs(mean))) {
        out.estimate = mean;
        out.converged = true;
        break;
      }
    }
    prev = mean;
    if (n >= max_nodes) {
      out.estimate = mean;
      out.converged = false;
      break;
    }
    n *= 2;
  }
  out.lower_bound = std::max(0.0, out.estimate - out.refine_delta);
  out.upper_bound = out.estimate + out.refine_delta;
  return out;
}

}  // namespace detail

// sup over the radial schedule of the p-integral means.  Non-convergent node
// refinement is reported through `converged`, never silently accepted.
inline HardyNormResult hp_norm_quadrature(const std::function<cxd(cxd)>& f, double p,
                                          const RadialSchedule& radii = {},
                                          int initial_nodes = 256, double rel_tol = 1e-9,
                                          int max_nodes = 1 << 17) {
  if (!(p > 0.0 && p <= 2.0)) {
    throw std::invalid_argument("hp_norm_quadrature: need 0 < p <= 2");
  }
  HardyNormResult best;
  best.p = p;
  best.method = NormMethod::CircleQuadrature;
  best.not_a_norm = p < 1.0;
  bool first = true;
  for (double r : radii.radii()) {
    HardyNormResult mr = detail::integral_mean(f, p, r, initial_nodes, rel_tol, max_nodes);
    if (!mr.converged) best.converged = false;
    if (first || mr.estimate > best.estimate) {
      const bool conv = best.converged;
      best = mr;
      best.converged = conv && mr.converged;
      first = false;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Matrix-element coefficient series
//
// With A = (T - z)^{-1} expanded inside the disk and B the block operator,
// each matrix element below is a polynomial for finitely supported vectors.

// <(T - z)^{-1} u, e_j>:  c_s = u_{j-s-1} / prod_{i=j-s-1}^{j-1} rho_i.
inline CoefficientSeries shift_inside_element(const WeightedShift& T, const FinSuppVector& u,
                                              std::int64_t j) {
  const WeightSequence& rho = T.weights();
  std::vector<cxd> c;
  const std::int64_t s_max = j - 1 - u.lo();
  double log_prod = 0.0;  // log prod_{i=j-s-1}^{j-1} rho_i, updated as s grows
  for (std::int64_t s = 0; s <= s_max; ++s) {
    log_prod += std::log(rho(j - s - 1));
    const cxd uk = u.at(j - s - 1);
    c.push_back(uk == cxd(0.0) ? cxd(0.0) : uk * std::exp(-log_prod));
  }
  return CoefficientSeries::finite(std::move(c));
}

// <(I - z T)^{-1} u, e_j>:  c_s = u_{j+s} * prod_{i=j}^{j+s-1} rho_i.
inline CoefficientSeries shift_outside_element(const WeightedShift& T, const FinSuppVector& u,
                                               std::int64_t j) {
  const WeightSequence& rho = T.weights();
  std::vector<cxd> c;
  const std::int64_t s_max = u.hi() - j;
  double log_prod = 0.0;
  for (std::int64_t s = 0; s <= s_max; ++s) {
    if (s > 0) log_prod += std::log(rho(j + s - 1));
    const cxd uk = u.at(j + s);
    c.push_back(uk == cxd(0.0) ? cxd(0.0) : uk * std::exp(log_prod));
  }
  return CoefficientSeries::finite(std::move(c));
}

// <(B - z)^{-1} u, (e_j, 0)>:
//   c_s = u1_{j+s+1} - u2_{j+s+2} * sum_{m=j+1}^{j+s+1} rho_{|m|}.
inline CoefficientSeries block_inside_element_top(const BlockShiftOperator& B,
                                                  const BlockVector& u, std::int64_t j) {
  std::vector<cxd> c;
  const std::int64_t s_max =
      std::max(u.top.empty() ? -1 : u.top.hi() - j - 1,
               u.bottom.empty() ? -1 : u.bottom.hi() - j - 2);
  double coupling_sum = 0.0;  // sum_{m=j+1}^{j+s+1} rho_{|m|}
  for (std::int64_t s = 0; s <= s_max; ++s) {
    coupling_sum += B.coupling_at(j + s + 1);
    const cxd c1 = u.top.at(j + s + 1);
    const cxd c2 = u.bottom.at(j + s + 2);
    c.push_back(c1 - c2 * coupling_sum);
  }
  return CoefficientSeries::finite(std::move(c));
}

// <(B - z)^{-1} u, (0, e_j)>:  c_s = u2_{j+s+1}.
inline CoefficientSeries block_inside_element_bottom(const BlockShiftOperator&,
                                                     const BlockVector& u, std::int64_t j) {
  std::vector<cxd> c;
  const std::int64_t s_max = u.bottom.empty() ? -1 : u.bottom.hi() - j - 1;
  for (std::int64_t s = 0; s <= s_max; ++s) c.push_back(u.bottom.at(j + s + 1));
  return CoefficientSeries::finite(std::move(c));
}

// <(I - z B)^{-1} u, (e_j, 0)>:
//   c_0 = u1_j,  c_s = u1_{j-s} + u2_{j-s+1} * sum_{m=j-s+1}^{j} rho_{|m|}  (s >= 1).
inline CoefficientSeries block_outside_element_top(const BlockShiftOperator& B,
                                                   const BlockVector& u, std::int64_t j) {
  std::vector<cxd> c;
  const std::int64_t s_max =
      std::max(u.top.empty() ? -1 : j - u.top.lo(),
               u.bottom.empty() ? -1 : j + 1 - u.bottom.lo());
  double coupling_sum = 0.0;  // sum_{m=j-s+1}^{j} rho_{|m|}
  for (std::int64_t s = 0; s <= s_max; ++s) {
    if (s >= 1) coupling_sum += B.coupling_at(j - s + 1);
    const cxd c1 = u.top.at(j - s);
    const cxd c2 = s >= 1 ? u.bottom.at(j - s + 1) : cxd(0.0);
    c.push_back(c1 + c2 * coupling_sum);
  }
  return CoefficientSeries::finite(std::move(c));
}

// <(I - z B)^{-1} u, (0, e_j)>:  c_s = u2_{j-s}.
inline CoefficientSeries block_outside_element_bottom(const BlockShiftOperator&,
                                                      const BlockVector& u, std::int64_t j) {
  std::vector<cxd> c;
  const std::int64_t s_max = u.bottom.empty() ? -1 : j - u.bottom.lo();
  for (std::int64_t s = 0; s <= s_max; ++s) c.push_back(u.bottom.at(j - s));
  return CoefficientSeries::finite(std::move(c));
}

// ---------------------------------------------------------------------------
// Defect-weighted series

// Partial sums of sum_{k < n <= N} |1 - rho_n^2| / prod_{j=k}^{n-1} rho_j^2.
// Finiteness of this series is exactly membership of the defect-weighted
// resolvent orbit of e_k in H^2 of the disk.
inline SeriesCertificate strong_series_certificate(const WeightSequence& rho, std::int64_t k,
                                                   std::int64_t N) {
  if (N < 1) throw std::invalid_argument("strong_series_certificate: need N >= 1");
  PartialSumTracer tracer;
  double log_prod = 0.0;  // log prod_{j=k}^{n-1} rho_j
  for (std::int64_t n = k + 1; n <= N; ++n) {
    log_prod += std::log(rho(n - 1));
    const double r = rho(n);
    tracer.add(std::abs(1.0 - r * r) * std::exp(-2.0 * log_prod));
  }
  std::optional<double> certified;
  std::int64_t lo, hi;
  if (rho.unit_outside(lo, hi) && N >= hi) certified = 0.0;
  return make_certificate(tracer, certified,
                          "defect-weighted forward series from k = " + std::to_string(k));
}

// Companion series for the (I - zT)^{-1} condition:
//   sum_{k - N <= n <= k} |1 - rho_n^2| * prod_{j=n}^{k-1} rho_j^2.
// For families with rho_j = 1 below a fixed index the sum is exactly finite.
inline SeriesCertificate adjoint_strong_series_certificate(const WeightSequence& rho,
                                                           std::int64_t k, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("adjoint_strong_series_certificate: need N >= 1");
  PartialSumTracer tracer;
  double log_prod = 0.0;  // log prod_{j=n}^{k-1} rho_j, grows as n decreases
  std::optional<double> certified;
  const auto unit_floor = rho.unit_below();
  for (std::int64_t n = k; n >= k - N; --n) {
    if (unit_floor && n <= *unit_floor) {
      certified = 0.0;  // every remaining term vanishes
      break;
    }
    const double r = rho(n);
    tracer.add(std::abs(1.0 - r * r) * std::exp(2.0 * log_prod));
    log_prod += std::log(rho(n - 1));
  }
  return make_certificate(tracer, certified,
                          "defect-weighted backward series from k = " + std::to_string(k));
}

struct WeightedSumCertificate {
  SeriesCertificate total;
  std::vector<std::pair<std::int64_t, SeriesCertificate>> inner;
};

// sum_k |f_k|^2 * (defect-weighted series from k), truncated at N.  The inner
// series converge or diverge for all k simultaneously, so the verdict is
// finite iff every inner certificate on supp f is.
inline WeightedSumCertificate strong_h2_weighted_sum(const WeightSequence& rho,
                                                     const FinSuppVector& f, std::int64_t N) {
  WeightedSumCertificate out;
  PartialSumTracer tracer;
  bool all_converged = true;
  bool all_certified = true;
  double tail = 0.0;
  for (std::int64_t k = f.lo(); k <= f.hi() && !f.empty(); ++k) {
    const double w = std::norm(f.at(k));
    if (w == 0.0) continue;
    SeriesCertificate inner = strong_series_certificate(rho, k, N);
    tracer.add(w * inner.partial_sum);
    all_converged = all_converged && inner.converged();
    all_certified = all_certified && inner.tail_certified;
    tail += w * inner.tail_bound.value_or(0.0);
    out.inner.emplace_back(k, std::move(inner));
  }
  out.total = make_certificate(
      tracer, (all_converged && all_certified) ? std::optional<double>(tail) : std::nullopt,
      "defect-weighted double sum");
  if (!all_converged) {
    out.total.verdict = SeriesVerdict::DivergenceEvidence;
    for (const auto& [k, cert] : out.inner) {
      if (!cert.converged() && cert.divergence_fit) {
        out.total.divergence_fit = cert.divergence_fit;
        break;
      }
    }
  }
  return out;
}

// H^2 norm (squared) of the chained matrix element
// <(U - l)^{-1} R (U - l)^{-1} u2, e_j> as the explicit series
//   sum_s |u2_{s+j+2}|^2 * ( sum_{m=j+1}^{j+s+1} rho_{|m|} )^2,
// truncated at s = N.  For finitely supported u2 the series terminates and
// the result is exact.
inline SeriesCertificate duality_h2_norm(const WeightSequence& coupling, const FinSuppVector& u2,
                                         std::int64_t j, std::int64_t N) {
  PartialSumTracer tracer;
  auto coupling_at = [&](std::int64_t m) { return coupling(m < 0 ? -m : m); };
  std::optional<double> certified;
  if (u2.empty()) {
    certified = 0.0;
    return make_certificate(tracer, certified, "duality series: zero vector");
  }
  const std::int64_t s_support_max = u2.hi() - j - 2;
  double coupling_sum = 0.0;
  for (std::int64_t s = 0; s <= std::min(N, std::max<std::int64_t>(s_support_max, -1)); ++s) {
    coupling_sum += coupling_at(j + s + 1);
    tracer.add(std::norm(u2.at(s + j + 2)) * coupling_sum * coupling_sum);
  }
  if (N >= s_support_max) certified = 0.0;  // exact: all later terms vanish
  return make_certificate(tracer, certified,
                          "duality series at j = " + std::to_string(j));
}

// ---------------------------------------------------------------------------
// Cauchy transform and boundary jumps

struct RealGrid {
  double x0 = 0.0;
  double h = 1.0;
  std::size_t count = 0;
  double x(std::size_t i) const { return x0 + h * static_cast<double>(i); }
  double x_end() const { return x(count - 1); }
};

struct CauchyResult {
  cxd value{};
  double error_estimate = 0.0;
};

// F(z) = int f(t) / (t - z) dt over the grid span, composite Simpson with a
// stride-doubling error gauge.  z must keep clear of the integration segment.
inline CauchyResult cauchy_transform(const RealGrid& grid, const std::vector<cxd>& f, cxd z) {
  if (grid.count < 5 || f.size() != grid.count) {
    throw std::invalid_argument("cauchy_transform: need a grid with >= 5 samples");
  }
  const double re = z.real(), im = z.imag();
  double dist;
  if (re < grid.x0) {
    dist = std::hypot(grid.x0 - re, im);
  } else if (re > grid.x_end()) {
    dist = std::hypot(re - grid.x_end(), im);
  } else {
    dist = std::abs(im);
  }
  if (dist < 2.0 * grid.h) {
    throw std::domain_error("cauchy_transform: z too close to the grid for the spacing");
  }
  auto integrate = [&](std::size_t stride) {
    // composite Simpson over samples 0, stride, 2*stride, ...; a trapezoid
    // panel absorbs a trailing odd panel.
    const double hh = grid.h * static_cast<double>(stride);
    std::size_t n_samples = (grid.count - 1) / stride + 1;
    cxd acc = 0.0;
    std::size_t i = 0;
    while (i + 2 < n_samples) {
      const cxd f0 = f[i * stride] / (grid.x(i * stride) - z);
      const cxd f1 = f[(i + 1) * stride] / (grid.x((i + 1) * stride) - z);
      const cxd f2 = f[(i + 2) * stride] / (grid.x((i + 2) * stride) - z);
      acc += hh / 3.0 * (f0 + 4.0 * f1 + f2);
      i += 2;
    }
    if (i + 1 < n_samples) {
      const cxd f0 = f[i * stride] / (grid.x(i * stride) - z);
      const cxd f1 = f[(i + 1) * stride] / (grid.x((i + 1) * stride) - z);
      acc += hh / 2.0 * (f0 + f1);
    }
    return acc;
  };
  CauchyResult r;
  r.value = integrate(1);
  r.error_estimate = std::abs(r.value - integrate(2));
  return r;
}

struct JumpResult {
  cxd jump{};
  double error_estimate = 0.0;
};

// (F(x + i eps) - F(x - i eps)) / (2 pi i), Richardson-extrapolated along the
// eps schedule.  Recovers the density at x for integrable densities.
inline JumpResult plemelj_jump(const RealGrid& grid, const std::vector<cxd>& f, double x,
                               const std::vector<double>& eps_schedule) {
  if (eps_schedule.size() < 2) {
    throw std::invalid_argument("plemelj_jump: need at least two eps levels");
  }
  std::vector<double> hs;
  std::vector<cxd> ys;
  for (double e : eps_schedule) {
    const cxd up = cauchy_transform(grid, f, cxd(x, e)).value;
    const cxd dn = cauchy_transform(grid, f, cxd(x, -e)).value;
    hs.push_back(e);
    ys.push_back((up - dn) / (2.0 * kPi * cxd(0.0, 1.0)));
  }
  const auto ex = neville_to_zero(hs, ys);
  return {ex.value, ex.error_estimate};
}

// ---------------------------------------------------------------------------
// Integral-mean monotonicity in the exponent

struct HolderCheckResult {
  bool ok = true;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> margins;  // (r, M_p1 - M_p2)
};

// On the normalized circle measure M_{p2}(r) <= M_{p1}(r) for p2 <= p1; the
// check evaluates both means on a shared node set and reports the minimum
// margin over the radial schedule.
inline HolderCheckResult holder_inclusion_check(const std::function<cxd(cxd)>& f, double p1,
                                                double p2, const RadialSchedule& radii = {},
                                                double slack = 1e-9) {
  if (!(1.0 <= p2 && p2 <= p1 && p1 <= 2.0)) {
    throw std::invalid_argument("holder_inclusion_check: need 1 <= p2 <= p1 <= 2");
  }
  HolderCheckResult out;
  for (double r : radii.radii()) {
    const double m1 = detail::integral_mean(f, p1, r, 256, 1e-10, 1 << 16).estimate;
    const double m2 = detail::integral_mean(f, p2, r, 256, 1e-10, 1 << 16).estimate;
    const double margin = m1 - m2;
    out.margins.emplace_back(r, margin);
    out.min_margin = std::min(out.min_margin, margin);
    if (margin < -slack * std::max(1.0, m1)) out.ok = false;
  }
  return out;
}

}  // namespace speclab

#endif  // SPECLAB_HARDY_HPP
