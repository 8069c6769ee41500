#ifndef SPECLAB_WEIGHTS_HPP
#define SPECLAB_WEIGHTS_HPP

// Weight-sequence families for the bilateral shift constructions.
//
// The central family interleaves a monotone sequence a_j in (0,1) with its
// reciprocals:
//
//   rho_j = 1            j <= 1,
//   rho_{2j}   = a_j     j >= 1,
//   rho_{2j+1} = 1/a_j   j >= 1,
//
// so consecutive even/odd pair products are exactly 1 and the sequence
// accumulates at 1 from both sides.  Every family is immutable and pure to
// evaluate, and exposes certified window/tail statistics that the resolvent
// truncation logic relies on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "speclab/series.hpp"

namespace speclab {

enum class WeightFamily { Constant, Theorem1Interleaved, Harmonic, PiDominated, UserTable };

// Monotone decreasing positive target sequence pi_n with a summability
// declaration.  The generator must be valid for all n >= 0.
class PiTable {
 public:
  PiTable(std::function<double(std::int64_t)> values, bool non_summable, std::string label)
      : values_(std::move(values)), non_summable_(non_summable), label_(std::move(label)) {
    validate();
  }

  static PiTable harmonic() {
    return PiTable([](std::int64_t n) { return 1.0 / static_cast<double>(n + 1); }, true,
                   "pi_n = 1/(n+1)");
  }
  static PiTable constant(double c) {
    if (!(c > 0)) throw std::invalid_argument("PiTable::constant: c must be positive");
    return PiTable([c](std::int64_t) { return c; }, true, "pi_n = const");
  }
  static PiTable geometric(double q) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("PiTable::geometric: need 0 < q < 1");
    return PiTable([q](std::int64_t n) { return std::pow(q, static_cast<double>(n)); }, false,
                   "pi_n = q^n");
  }

  double operator()(std::int64_t n) const { return values_(n); }
  bool non_summable() const { return non_summable_; }
  const std::string& label() const { return label_; }

 private:
  void validate() const {
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t n = 0; n < 512; ++n) {
      const double v = values_(n);
      if (!(v > 0)) throw std::invalid_argument("PiTable: values must be positive");
      if (v > prev * (1.0 + 1e-12)) {
        throw std::invalid_argument("PiTable: values must be monotone nonincreasing");
      }
      prev = v;
    }
  }

  std::function<double(std::int64_t)> values_;
  bool non_summable_;
  std::string label_;
};

// Certified one-sided statistics of a weight family over a half line.
// `inf`/`sup` bound single weights, `pair_inf`/`pair_sup` bound products of
// adjacent weights rho_s * rho_{s+1} for pairs contained in the half line.
// inf == 0 signals that no positive floor can be certified.
struct WeightTailStats {
  double inf = 0.0;
  double sup = std::numeric_limits<double>::infinity();
  double pair_inf = 0.0;
  double pair_sup = std::numeric_limits<double>::infinity();
};

class WeightSequence {
 public:
  static WeightSequence constant(double c) {
    if (!(c > 0)) throw std::invalid_argument("WeightSequence::constant: weight must be positive");
    WeightSequence w;
    w.family_ = WeightFamily::Constant;
    w.const_value_ = c;
    w.label_ = c == 1.0 ? "constant 1" : "constant " + std::to_string(c);
    return w;
  }

  // Interleaved family with a_j = 1 - 1/(j+1) = j/(j+1).  The offset keeps
  // a_1 = 1/2 strictly positive; pair products a_j * (1/a_j) are exactly 1.
  static WeightSequence theorem1();

  // Interleaved family dominated by a prescribed non-summable pi table; see
  // pi_dominated_weights below.
  static WeightSequence pi_dominated(const PiTable& pi);

  // rho_j = 1/(|j| + 1 + offset).  Decays to zero; used as the coupling of
  // the block construction, never as shift weights.
  static WeightSequence harmonic(std::int64_t offset = 0) {
    if (offset < 0) throw std::invalid_argument("WeightSequence::harmonic: offset must be >= 0");
    WeightSequence w;
    w.family_ = WeightFamily::Harmonic;
    w.offset_ = offset;
    w.label_ = "harmonic";
    return w;
  }

  // Explicit table on [lo, lo + values.size()), `fill` elsewhere (default 1).
  static WeightSequence user_table(std::int64_t lo, std::vector<double> values, double fill = 1.0) {
    if (values.empty()) throw std::invalid_argument("WeightSequence::user_table: empty table");
    if (!(fill > 0)) throw std::invalid_argument("WeightSequence::user_table: fill must be positive");
    for (double v : values) {
      if (!(v > 0)) throw std::invalid_argument("WeightSequence::user_table: weights must be positive");
    }
    WeightSequence w;
    w.family_ = WeightFamily::UserTable;
    w.table_lo_ = lo;
    w.table_ = std::make_shared<std::vector<double>>(std::move(values));
    w.fill_ = fill;
    w.label_ = "user table";
    return w;
  }

  WeightFamily family() const { return family_; }
  const std::string& label() const { return label_; }

  double operator()(std::int64_t j) const {
    switch (family_) {
      case WeightFamily::Constant:
        return const_value_;
      case WeightFamily::Theorem1Interleaved:
      case WeightFamily::PiDominated: {
        if (j <= 1) return 1.0;
        const std::int64_t k = j / 2;
        const double a = a_of_(k);
        return (j % 2 == 0) ? a : 1.0 / a;
      }
      case WeightFamily::Harmonic: {
        const std::int64_t aj = j < 0 ? -j : j;
        return 1.0 / static_cast<double>(aj + 1 + offset_);
      }
      case WeightFamily::UserTable: {
        const std::int64_t idx = j - table_lo_;
        if (idx >= 0 && idx < static_cast<std::int64_t>(table_->size())) {
          return (*table_)[static_cast<std::size_t>(idx)];
        }
        return fill_;
      }
    }
    return 1.0;
  }

  bool is_interleaved() const {
    return family_ == WeightFamily::Theorem1Interleaved || family_ == WeightFamily::PiDominated;
  }

  // a_j for interleaved families (j >= 1).
  double interleaved_a(std::int64_t j) const {
    if (!is_interleaved()) throw std::logic_error("interleaved_a: not an interleaved family");
    if (j < 1) throw std::invalid_argument("interleaved_a: j must be >= 1");
    return a_of_(j);
  }

  double inf_window(std::int64_t lo, std::int64_t hi) const {
    double m = std::numeric_limits<double>::infinity();
    for (std::int64_t j = lo; j <= hi; ++j) m = std::min(m, (*this)(j));
    return m;
  }
  double sup_window(std::int64_t lo, std::int64_t hi) const {
    double m = 0.0;
    for (std::int64_t j = lo; j <= hi; ++j) m = std::max(m, (*this)(j));
    return m;
  }

  // Certified statistics over { j : j >= j0 }.
  WeightTailStats tail_up(std::int64_t j0) const {
    WeightTailStats s;
    switch (family_) {
      case WeightFamily::Constant:
        s.inf = s.sup = const_value_;
        s.pair_inf = s.pair_sup = const_value_ * const_value_;
        return s;
      case WeightFamily::Theorem1Interleaved:
      case WeightFamily::PiDominated: {
        // Even entries a_k increase toward 1, odd entries 1/a_k decrease, so
        // the extremes over a half line sit at its smallest admissible k.
        // kf floors the first pair index met at or after j0; using a smaller
        // k only loosens the bounds.
        const std::int64_t first_even_k = std::max<std::int64_t>(1, (j0 + 1) / 2);
        const std::int64_t kf =
            j0 <= 3 ? 1 : std::max<std::int64_t>(1, (j0 - 1) / 2);
        s.inf = std::min(1.0, a_of_(first_even_k));
        s.sup = std::max(1.0, 1.0 / a_of_(kf));
        // Pairs aligned on even starts multiply to exactly 1; odd starts give
        // a_{k+1}/a_k in [1, 1/a_k]; the boundary pair (1,2) gives a_1.
        s.pair_inf = j0 <= 1 ? a_of_(1) : 1.0;
        s.pair_sup = std::max(1.0, 1.0 / a_of_(kf));
        return s;
      }
      case WeightFamily::Harmonic:
        s.inf = 0.0;  // no positive floor
        s.sup = j0 >= 0 ? (*this)(j0) : 1.0 / static_cast<double>(1 + offset_);
        s.pair_inf = 0.0;
        s.pair_sup = s.sup * s.sup;
        return s;
      case WeightFamily::UserTable: {
        double lo = fill_, hi = fill_;
        const std::int64_t tlo = std::max(j0, table_lo_);
        const std::int64_t thi = table_lo_ + static_cast<std::int64_t>(table_->size()) - 1;
        for (std::int64_t j = tlo; j <= thi; ++j) {
          lo = std::min(lo, (*this)(j));
          hi = std::max(hi, (*this)(j));
        }
        s.inf = lo;
        s.sup = hi;
        s.pair_inf = lo * lo;
        s.pair_sup = hi * hi;
        return s;
      }
    }
    return s;
  }

  // Certified statistics over { j : j <= j0 } (pairs (s, s+1) with s+1 <= j0).
  WeightTailStats tail_down(std::int64_t j0) const {
    WeightTailStats s;
    switch (family_) {
      case WeightFamily::Constant:
        s.inf = s.sup = const_value_;
        s.pair_inf = s.pair_sup = const_value_ * const_value_;
        return s;
      case WeightFamily::Theorem1Interleaved:
      case WeightFamily::PiDominated: {
        s.inf = j0 >= 2 ? a_of_(1) : 1.0;
        s.sup = j0 >= 3 ? 1.0 / a_of_(1) : 1.0;
        s.pair_inf = j0 >= 2 ? a_of_(1) : 1.0;
        // Pairs fully inside {j <= j0}: even starts multiply to 1, the
        // boundary pair (1,2) gives a_1 < 1, odd starts (2k+1, 2k+2) give
        // a_{k+1}/a_k < 1/a_1 and appear only once j0 >= 4.
        s.pair_sup = j0 >= 4 ? 1.0 / a_of_(1) : 1.0;
        return s;
      }
      case WeightFamily::Harmonic:
        s.inf = 0.0;
        s.sup = j0 <= 0 ? (*this)(j0) : 1.0 / static_cast<double>(1 + offset_);
        s.pair_inf = 0.0;
        s.pair_sup = s.sup * s.sup;
        return s;
      case WeightFamily::UserTable: {
        double lo = fill_, hi = fill_;
        const std::int64_t tlo = table_lo_;
        const std::int64_t thi = std::min(j0, table_lo_ + static_cast<std::int64_t>(table_->size()) - 1);
        for (std::int64_t j = tlo; j <= thi; ++j) {
          lo = std::min(lo, (*this)(j));
          hi = std::max(hi, (*this)(j));
        }
        s.inf = lo;
        s.sup = hi;
        s.pair_inf = lo * lo;
        s.pair_sup = hi * hi;
        return s;
      }
    }
    return s;
  }

  // Certified envelope for |rho_j - 1|, nonincreasing along each parity
  // chain.  Returns +inf when no useful envelope exists.
  double deviation_envelope(std::int64_t j) const {
    switch (family_) {
      case WeightFamily::Constant:
        return std::abs(const_value_ - 1.0);
      case WeightFamily::Theorem1Interleaved:
      case WeightFamily::PiDominated: {
        if (j <= 1) return 0.0;
        const std::int64_t k = j / 2;
        const double d = 1.0 - a_of_(k);
        // |1/a - 1| = d/a <= d / a_1
        return d / a_of_(1);
      }
      case WeightFamily::Harmonic:
        return std::numeric_limits<double>::infinity();
      case WeightFamily::UserTable: {
        const std::int64_t idx = j - table_lo_;
        if (idx >= 0 && idx < static_cast<std::int64_t>(table_->size())) {
          return std::abs((*table_)[static_cast<std::size_t>(idx)] - 1.0);
        }
        return std::abs(fill_ - 1.0);
      }
    }
    return std::numeric_limits<double>::infinity();
  }

  // Largest J such that rho_j == 1 exactly for all j <= J, when one exists.
  std::optional<std::int64_t> unit_below() const {
    switch (family_) {
      case WeightFamily::Constant:
        return const_value_ == 1.0
                   ? std::optional<std::int64_t>(std::numeric_limits<std::int64_t>::max() / 4)
                   : std::nullopt;
      case WeightFamily::Theorem1Interleaved:
      case WeightFamily::PiDominated:
        return 1;
      case WeightFamily::UserTable:
        return fill_ == 1.0 ? std::optional<std::int64_t>(table_lo_ - 1) : std::nullopt;
      default:
        return std::nullopt;
    }
  }

  // True when rho_j == 1 exactly outside [lo, hi]; reports that range.
  bool unit_outside(std::int64_t& lo, std::int64_t& hi) const {
    switch (family_) {
      case WeightFamily::Constant:
        if (const_value_ == 1.0) {
          lo = 0;
          hi = -1;  // empty: the sequence is identically 1
          return true;
        }
        return false;
      case WeightFamily::UserTable:
        if (fill_ == 1.0) {
          lo = table_lo_;
          hi = table_lo_ + static_cast<std::int64_t>(table_->size()) - 1;
          return true;
        }
        return false;
      default:
        return false;
    }
  }

  // Certified bound on sum_{|j| > N} |rho_j - 1|^p, when the family admits
  // one.  For interleaved families |rho_j - 1| <= C / (j/2) with
  // C = 1/a_1 * sup_k k*d_k <= 1/a_1, giving an integral-test tail for p > 1.
  std::optional<double> star_tail_bound(double p, std::int64_t N) const {
    switch (family_) {
      case WeightFamily::Constant:
        return const_value_ == 1.0 ? std::optional<double>(0.0) : std::nullopt;
      case WeightFamily::UserTable: {
        std::int64_t lo, hi;
        if (unit_outside(lo, hi) && N >= std::max(std::abs(lo), std::abs(hi))) return 0.0;
        return std::nullopt;
      }
      case WeightFamily::Theorem1Interleaved:
      case WeightFamily::PiDominated: {
        if (p <= 1.0) return std::nullopt;
        const std::int64_t K = std::max<std::int64_t>(1, N / 2);
        // pair k >= K+1 contributes d_k^p (1 + a_1^-p), d_k <= 1/(k+1)
        const double a1 = a_of_(1);
        const double factor = 1.0 + std::pow(1.0 / a1, p);
        const auto base = power_tail_bound(1.0, p, K);
        if (!base) return std::nullopt;
        return factor * *base;
      }
      default:
        return std::nullopt;
    }
  }

  // Certified envelope for the pair of defect values
  // { |1 - a_k^2|, |1 - a_k^-2| } of interleaved families.
  std::optional<double> defect_pair_envelope(std::int64_t k) const {
    if (!is_interleaved() || k < 1) return std::nullopt;
    const double a = a_of_(k);
    const double d = 1.0 - a;
    return d * (2.0 - d) / (a * a);  // = max of the two values
  }

  std::string describe() const { return label_; }

 private:
  double a_of_(std::int64_t k) const {
    if (family_ == WeightFamily::Theorem1Interleaved) {
      return 1.0 - 1.0 / static_cast<double>(k + 1);
    }
    // PiDominated: d_k = min(pi_{2k+1}/5, 1/(k+1), 1/3).  The pi index is
    // subsampled at 2k+1 because pair k lands at sorted positions ~2k of the
    // defect spectrum, and the factor 1/5 absorbs the 1/a^2 amplification of
    // the odd entries, so max(1-a^2, a^-2-1) <= pi_{2k} always.
    const double d = std::min({(*pi_)(2 * k + 1) / 5.0, 1.0 / static_cast<double>(k + 1), 1.0 / 3.0});
    return 1.0 - d;
  }

  WeightFamily family_ = WeightFamily::Constant;
  double const_value_ = 1.0;
  std::int64_t offset_ = 0;
  std::shared_ptr<PiTable> pi_;
  std::int64_t table_lo_ = 0;
  std::shared_ptr<std::vector<double>> table_;
  double fill_ = 1.0;
  std::string label_;

  friend WeightSequence theorem1_weights();
  friend WeightSequence pi_dominated_weights(const PiTable& pi);
};

// The interleaved family with a_j = 1 - 1/(j+1).  The naive choice 1 - 1/j
// would give a_1 = 0 and a vanishing weight; shifting the index keeps every
// weight strictly positive while preserving all the asymptotics (p-summable
// deviations for p > 1, divergent absolute deviations).
inline WeightSequence theorem1_weights() {
  WeightSequence w;
  w.family_ = WeightFamily::Theorem1Interleaved;
  w.label_ = "interleaved a_j = 1 - 1/(j+1)";
  return w;
}

inline WeightSequence WeightSequence::theorem1() { return theorem1_weights(); }

// Interleaved family whose defect values are dominated, after sorting by
// modulus, by a prescribed monotone non-summable pi table.
inline WeightSequence pi_dominated_weights(const PiTable& pi) {
  if (!pi.non_summable()) {
    throw std::invalid_argument(
        "pi_dominated_weights: pi table is summable; the construction requires a "
        "non-summable target");
  }
  WeightSequence w;
  w.family_ = WeightFamily::PiDominated;
  w.pi_ = std::make_shared<PiTable>(pi);
  w.label_ = "pi-dominated interleaved (" + pi.label() + ")";
  return w;
}

inline WeightSequence WeightSequence::pi_dominated(const PiTable& pi) {
  return pi_dominated_weights(pi);
}

// Partial sums of sum_{|j| <= N} |rho_j - 1|^p with a certified tail bound
// when the family admits one.
inline SeriesCertificate condition_star_certificate(const WeightSequence& rho, double p,
                                                    std::int64_t N) {
  if (!(p >= 1.0)) throw std::invalid_argument("condition_star_certificate: need p >= 1");
  if (N < 1) throw std::invalid_argument("condition_star_certificate: need N >= 1");
  PartialSumTracer tracer;
  // Terms ordered by ascending |j|, negative index first at ties.
  tracer.add(std::pow(std::abs(rho(0) - 1.0), p));
  for (std::int64_t j = 1; j <= N; ++j) {
    tracer.add(std::pow(std::abs(rho(-j) - 1.0), p));
    tracer.add(std::pow(std::abs(rho(j) - 1.0), p));
  }
  return make_certificate(tracer, rho.star_tail_bound(p, N),
                          "sum over |j| <= " + std::to_string(N) + " of |rho_j - 1|^" +
                              std::to_string(p));
}

}  // namespace speclab

#endif  // SPECLAB_WEIGHTS_HPP
