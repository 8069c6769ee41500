#ifndef SPECLAB_LINEMODEL_HPP
#define SPECLAB_LINEMODEL_HPP

// The real-line model: a bounded potential q that is conditionally integrable
// but not absolutely integrable (default q(x) = sin x / x), the similarity
// weight exp(-int_{-inf}^x q), the growth functional int |q|, the exact
// translation-group identity behind it, and the cell-wise Schatten summation
// criterion.
//
// Oscillatory integrals of the sinc potential are summed per pi-period panel;
// conditionally convergent tails use the alternating panel structure with
// iterated averaging, never naive adaptive quadrature.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "speclab/hardy.hpp"  // RealGrid
#include "speclab/numeric.hpp"
#include "speclab/series.hpp"

namespace speclab {

inline double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

enum class PotentialKind { SincDefault, UserSampled };

// Sampled potentials are piecewise constant on sample-centered cells
// [x_i - h/2, x_i + h/2), which makes their integrals exact cell sums and
// lets box densities integrate exactly when edges align with cell walls.
class PotentialFunction {
 public:
  static PotentialFunction sinc_default() {
    PotentialFunction q;
    q.kind_ = PotentialKind::SincDefault;
    return q;
  }

  static PotentialFunction sampled(RealGrid grid, std::vector<double> values) {
    if (grid.count < 2 || values.size() != grid.count) {
      throw std::invalid_argument("PotentialFunction::sampled: grid/value size mismatch");
    }
    if (!(grid.h > 0)) throw std::invalid_argument("PotentialFunction::sampled: spacing must be positive");
    PotentialFunction q;
    q.kind_ = PotentialKind::UserSampled;
    q.grid_ = grid;
    q.values_ = std::move(values);
    return q;
  }

  PotentialKind kind() const { return kind_; }
  bool is_sinc() const { return kind_ == PotentialKind::SincDefault; }

  double operator()(double x) const {
    if (kind_ == PotentialKind::SincDefault) return sinc(x);
    const double rel = (x - grid_.x0) / grid_.h;
    const std::int64_t i = static_cast<std::int64_t>(std::floor(rel + 0.5));
    if (i < 0 || i >= static_cast<std::int64_t>(grid_.count)) return 0.0;
    return values_[static_cast<std::size_t>(i)];
  }

  // Support of a sampled potential as cell boundaries; sinc is unbounded.
  std::optional<std::pair<double, double>> compact_support() const {
    if (kind_ == PotentialKind::SincDefault) return std::nullopt;
    return std::make_pair(grid_.x0 - grid_.h / 2.0,
                          grid_.x_end() + grid_.h / 2.0);
  }

  // Signed integral over [lo, hi].
  double integral(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    if (kind_ == PotentialKind::UserSampled) return cell_integral_(lo, hi, false);
    return panel_integral_(lo, hi, false);
  }

  // Integral of |q| over [lo, hi].
  double abs_integral(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    if (kind_ == PotentialKind::UserSampled) return cell_integral_(lo, hi, true);
    return panel_integral_(lo, hi, true);
  }

 private:
  double cell_integral_(double lo, double hi, bool absolute) const {
    // exact for the piecewise-constant reconstruction
    double acc = 0.0;
    for (std::size_t i = 0; i < grid_.count; ++i) {
      const double cl = grid_.x(i) - grid_.h / 2.0;
      const double cr = cl + grid_.h;
      const double a = std::max(lo, cl), b = std::min(hi, cr);
      if (b > a) acc += (absolute ? std::abs(values_[i]) : values_[i]) * (b - a);
    }
    return acc;
  }

  double panel_integral_(double lo, double hi, bool absolute) const {
    // pi-aligned panels keep |sin| smooth inside each panel
    auto f = [&](double t) { return absolute ? std::abs(sinc(t)) : sinc(t); };
    const double start = std::ceil(lo / kPi) * kPi;
    KahanSum acc;
    if (start >= hi) return gauss_integrate(f, lo, hi, 16);
    if (start > lo) acc.add(gauss_integrate(f, lo, start, 16));
    double a = start;
    while (a + kPi <= hi) {
      acc.add(gauss_integrate(f, a, a + kPi, 16));
      a += kPi;
    }
    if (a < hi) acc.add(gauss_integrate(f, a, hi, 16));
    return acc.value();
  }

  PotentialKind kind_ = PotentialKind::SincDefault;
  RealGrid grid_;
  std::vector<double> values_;
};

namespace detail {

// Limit of an alternating sequence of partial sums by iterated averaging.
// Returns {limit, error gauge}.
inline std::pair<double, double> averaged_limit(std::vector<double> S) {
  if (S.empty()) return {0.0, 0.0};
  double prev = S.back();
  while (S.size() > 1) {
    prev = S[0];
    for (std::size_t i = 0; i + 1 < S.size(); ++i) S[i] = 0.5 * (S[i] + S[i + 1]);
    S.pop_back();
  }
  return {S[0], std::abs(S[0] - prev)};
}

// int_{-inf}^{-A} sinc, A = K*pi: alternating pi-panel sums, averaged.
inline std::pair<double, double> sinc_tail_below(double A, int panels = 48) {
  std::vector<double> partials;
  partials.reserve(static_cast<std::size_t>(panels));
  KahanSum acc;
  double prev_mag = std::numeric_limits<double>::infinity();
  int bad = 0;
  for (int k = 0; k < panels; ++k) {
    const double b = -A - k * kPi;
    const double a = b - kPi;
    const double I = gauss_integrate([](double t) { return sinc(t); }, a, b, 16);
    if (std::abs(I) > prev_mag * (1.0 + 1e-9)) {
      if (++bad > 8) throw std::runtime_error("sinc tail: panel magnitudes fail to decay");
    }
    prev_mag = std::abs(I);
    acc.add(I);
    partials.push_back(acc.value());
  }
  return averaged_limit(std::move(partials));
}

}  // namespace detail

struct SimilarityWeightResult {
  double weight = 1.0;           // exp(-Q(x))
  double primitive = 0.0;        // Q(x) = int_{-inf}^x q
  double error_estimate = 0.0;   // on the primitive
};

// Multiplier weight exp(-int_{-inf}^x q).  For the sinc default the
// conditionally convergent lower tail is summed per period with averaging;
// sampled potentials have compact support and integrate exactly.
inline SimilarityWeightResult similarity_weight_detail(const PotentialFunction& q, double x) {
  SimilarityWeightResult out;
  if (const auto supp = q.compact_support()) {
    out.primitive = q.integral(supp->first, std::min(x, supp->second));
    out.error_estimate = 0.0;
  } else {
    const double K = std::max(96.0, std::ceil(std::abs(x) / kPi) + 8.0);
    const double A = K * kPi;
    const auto [tail, tail_err] = detail::sinc_tail_below(A);
    out.primitive = tail + q.integral(-A, x);
    out.error_estimate = tail_err + 1e-14 * (std::abs(x) + A);
  }
  out.weight = std::exp(-out.primitive);
  return out;
}

inline double similarity_weight(const PotentialFunction& q, double x) {
  return similarity_weight_detail(q, x).weight;
}

// int_{-X}^{X} |q|: the growth functional whose unboundedness in X carries
// the strong-subspace obstruction (the test-vector dependence factors out as
// ||g||^2 exactly).
inline double strong_growth_functional(const PotentialFunction& q, double X) {
  if (!(X > 0)) throw std::invalid_argument("strong_growth_functional: need X > 0");
  return q.abs_integral(-X, X);
}

// Complex-valued samples on a uniform grid with trapezoid L2 norm.
struct GridFunction {
  RealGrid grid;
  std::vector<cxd> values;

  static GridFunction on(RealGrid g, const std::function<cxd(double)>& f) {
    GridFunction gf;
    gf.grid = g;
    gf.values.reserve(g.count);
    for (std::size_t i = 0; i < g.count; ++i) gf.values.push_back(f(g.x(i)));
    return gf;
  }

  // prefix[i] = int_{x0}^{x_i} |g|^2 (trapezoid)
  std::vector<double> abs2_prefix() const {
    std::vector<double> p(grid.count, 0.0);
    for (std::size_t i = 1; i < grid.count; ++i) {
      p[i] = p[i - 1] + 0.5 * grid.h * (std::norm(values[i - 1]) + std::norm(values[i]));
    }
    return p;
  }

  double norm_sq() const { return abs2_prefix().back(); }

  // support by nonzero samples, as grid coordinates
  std::pair<double, double> support() const {
    std::size_t a = 0, b = grid.count;
    while (a < b && values[a] == cxd(0.0)) ++a;
    while (b > a && values[b - 1] == cxd(0.0)) --b;
    if (a == b) return {0.0, 0.0};
    return {grid.x(a), grid.x(b - 1)};
  }
};

struct ParsevalComparison {
  double direct = 0.0;    // double integral over the truncated (x, t) box
  double factored = 0.0;  // ||g||^2 * int_{-T}^{T} |q|
};

// Both sides of int int |q(x)| |g(x-t)|^2 dx dt = ||g||^2 int |q|, evaluated
// on the truncated box t in [-T, T], x in [-X, X].  The factored side uses
// the swept window [-T, T], so for compactly supported q inside the box the
// two sides agree to quadrature accuracy, while slowly decaying q exposes the
// truncation honestly.
inline ParsevalComparison parseval_crosscheck(const PotentialFunction& q, const GridFunction& g,
                                              double T_max, double X) {
  if (!(T_max > 0) || !(X > 0)) throw std::invalid_argument("parseval_crosscheck: need T, X > 0");
  const auto [s_lo, s_hi] = g.support();
  if (s_lo - T_max < -X || s_hi + T_max > X) {
    throw std::invalid_argument("parseval_crosscheck: support violation (supp g +- T must fit in [-X, X])");
  }
  const auto prefix = g.abs2_prefix();
  const double g_norm_sq = prefix.back();
  auto window_mass = [&](double x) {
    // int_{x-T}^{x+T} |g|^2 via the trapezoid prefix, linear between samples
    auto eval_prefix = [&](double s) {
      if (s <= g.grid.x0) return 0.0;
      if (s >= g.grid.x_end()) return g_norm_sq;
      const double rel = (s - g.grid.x0) / g.grid.h;
      const std::size_t i = static_cast<std::size_t>(rel);
      const double frac = rel - static_cast<double>(i);
      return prefix[i] + frac * (prefix[i + 1] - prefix[i]);
    };
    return eval_prefix(x + T_max) - eval_prefix(x - T_max);
  };

  ParsevalComparison out;
  if (const auto supp = q.compact_support()) {
    // midpoint rule on the potential's own cells: exact for the piecewise-
    // constant reconstruction whenever the window mass is locally constant
    const double lo = std::max(supp->first, -X), hi = std::min(supp->second, X);
    const int cells = static_cast<int>(std::ceil((hi - lo) / 0.015625));
    const double h = (hi - lo) / cells;
    KahanSum acc;
    for (int i = 0; i < cells; ++i) {
      const double xm = lo + (i + 0.5) * h;
      acc.add(std::abs(q(xm)) * window_mass(xm) * h);
    }
    out.direct = acc.value();
  } else {
    KahanSum acc;
    const double panel = kPi;
    const double start = -std::ceil(X / panel) * panel;
    for (double a = start; a < X; a += panel) {
      const double b = std::min(a + panel, X);
      acc.add(gauss_integrate([&](double t) { return std::abs(q(t)) * window_mass(t); },
                              std::max(a, -X), b, 16));
    }
    out.direct = acc.value();
  }
  out.factored = g_norm_sq * q.abs_integral(-T_max, T_max);
  return out;
}

// Cell-wise summation criterion: partial sums of
//   sum_{|n| <= N} ( int_n^{n+1} f^2 )^(delta/2),
// cells ordered by ascending |n| (negative first at ties).  When a decay
// envelope |f(t)| <= envelope_coeff / |t| is supplied the tail is certified
// by the integral test.
inline SeriesCertificate birman_solomyak_certificate(
    const std::function<double(double)>& f, double delta, std::int64_t N,
    std::optional<double> envelope_coeff = std::nullopt) {
  if (!(delta > 1.0 && delta < 2.0)) {
    throw std::invalid_argument("birman_solomyak_certificate: need 1 < delta < 2");
  }
  if (N < 1) throw std::invalid_argument("birman_solomyak_certificate: need N >= 1");
  PartialSumTracer tracer;
  auto cell = [&](std::int64_t n) {
    const double a = static_cast<double>(n);
    return gauss_integrate([&](double t) { return f(t) * f(t); }, a, a + 1.0, 16);
  };
  tracer.add(std::pow(std::max(0.0, cell(0)), delta / 2.0));
  for (std::int64_t n = 1; n <= N; ++n) {
    tracer.add(std::pow(std::max(0.0, cell(-n)), delta / 2.0));
    tracer.add(std::pow(std::max(0.0, cell(n)), delta / 2.0));
  }
  std::optional<double> certified;
  if (envelope_coeff) {
    // remaining cells have |t| >= N, so int_cell f^2 <= c^2 / N^2 per side
    const auto base = power_tail_bound(1.0, delta, std::max<std::int64_t>(1, N - 1));
    if (base) certified = 2.0 * std::pow(*envelope_coeff, delta) * *base;
  }
  return make_certificate(tracer, certified, "cell-wise l^delta(L2) sum, delta = " +
                                                 std::to_string(delta));
}

}  // namespace speclab

#endif  // SPECLAB_LINEMODEL_HPP
