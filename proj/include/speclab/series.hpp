#ifndef SPECLAB_SERIES_HPP
#define SPECLAB_SERIES_HPP

// Partial-sum certificates for nonnegative series.  A certificate records a
// log-spaced trace of partial sums together with either a tail bound
// (convergent verdict) or a fitted growth model (divergence evidence).
// Divergence is never claimed as proven: the evidence verdict stores the fit
// of partial sums against log N and its R^2.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "speclab/numeric.hpp"

namespace speclab {

enum class SeriesVerdict { Converged, DivergenceEvidence };

struct SeriesCheckpoint {
  std::int64_t n = 0;
  double partial_sum = 0.0;
};

struct SeriesCertificate {
  SeriesVerdict verdict = SeriesVerdict::Converged;
  double partial_sum = 0.0;             // final partial sum
  std::int64_t terms = 0;               // number of terms accumulated
  std::optional<double> tail_bound;     // bound on the discarded tail, if any
  bool tail_certified = false;          // true when the bound is analytic, not fitted
  std::optional<LineFit> divergence_fit;  // partial sums vs ln n
  std::vector<SeriesCheckpoint> trace;  // log-spaced partial sums
  std::string note;

  bool converged() const { return verdict == SeriesVerdict::Converged; }
  // Upper estimate of the full sum when convergent.
  double sum_upper() const { return partial_sum + tail_bound.value_or(0.0); }
};

// Accumulates nonnegative terms and keeps a log-spaced trace of partial sums.
class PartialSumTracer {
 public:
  void add(double term) {
    acc_.add(term);
    ++count_;
    if (count_ >= next_mark_) {
      trace_.push_back({count_, acc_.value()});
      next_mark_ = next_mark_ < 8 ? next_mark_ + 1 : (next_mark_ * 5) / 4;
    }
  }
  std::int64_t count() const { return count_; }
  double sum() const { return acc_.value(); }
  std::vector<SeriesCheckpoint> trace() const {
    auto t = trace_;
    if (t.empty() || t.back().n != count_) t.push_back({count_, acc_.value()});
    return t;
  }

 private:
  KahanSum acc_;
  std::int64_t count_ = 0;
  std::int64_t next_mark_ = 1;
  std::vector<SeriesCheckpoint> trace_;
};

// Fits the partial-sum trace against ln n over (roughly) the last two decades.
inline std::optional<LineFit> fit_log_growth(const std::vector<SeriesCheckpoint>& trace) {
  std::vector<double> x, y;
  if (trace.empty()) return std::nullopt;
  const std::int64_t n_max = trace.back().n;
  const std::int64_t n_min = std::max<std::int64_t>(4, n_max / 100);
  for (const auto& cp : trace) {
    if (cp.n >= n_min && cp.n > 0) {
      x.push_back(std::log(static_cast<double>(cp.n)));
      y.push_back(cp.partial_sum);
    }
  }
  if (x.size() < 3) return std::nullopt;
  return fit_line(x, y);
}

// Assembles a certificate from a traced sum.  `certified_tail`, when present,
// is an analytic bound on the discarded tail and forces a Converged verdict.
// Otherwise the verdict is decided from the growth of the partial sums: if
// they track c*ln(n) with a visibly positive slope the series is flagged as
// divergence evidence; if they plateau, the series is reported convergent
// with a fitted (uncertified) tail estimate.
inline SeriesCertificate make_certificate(const PartialSumTracer& tracer,
                                          std::optional<double> certified_tail,
                                          std::string note = {}) {
  SeriesCertificate cert;
  cert.partial_sum = tracer.sum();
  cert.terms = tracer.count();
  cert.trace = tracer.trace();
  cert.note = std::move(note);
  if (certified_tail) {
    cert.verdict = SeriesVerdict::Converged;
    cert.tail_bound = *certified_tail;
    cert.tail_certified = true;
    return cert;
  }
  const auto fit = fit_log_growth(cert.trace);
  if (fit) {
    // Divergence evidence needs growth that persists across decades, not
    // just a positive tail increment: a convergent p-series has per-decade
    // increments collapsing geometrically, while log-divergence keeps them
    // level.  Compare the increments of the last two decades.
    auto sum_at_or_before = [&](std::int64_t n) {
      double s = 0.0;
      for (const auto& cp : cert.trace) {
        if (cp.n <= n) s = cp.partial_sum;
      }
      return s;
    };
    const std::int64_t n_max = cert.trace.back().n;
    const double s_full = sum_at_or_before(n_max);
    const double s_tenth = sum_at_or_before(n_max / 10);
    const double s_hundredth = sum_at_or_before(n_max / 100);
    const double inc_last = s_full - s_tenth;
    const double inc_prev = s_tenth - s_hundredth;
    const double scale = std::max(1e-300, std::abs(s_full));
    const bool growing = n_max >= 100 && inc_last > 1e-6 * scale &&
                         inc_last >= 0.6 * inc_prev && fit->r_squared > 0.5;
    if (growing) {
      cert.verdict = SeriesVerdict::DivergenceEvidence;
      cert.divergence_fit = fit;
      return cert;
    }
  }
  cert.verdict = SeriesVerdict::Converged;
  cert.divergence_fit = fit;
  // Fitted tail estimate from the final increments (not certified).
  if (cert.trace.size() >= 2) {
    const auto& a = cert.trace[cert.trace.size() - 2];
    const auto& b = cert.trace.back();
    const std::int64_t dn = b.n - a.n;
    if (dn > 0) {
      const double rate = (b.partial_sum - a.partial_sum) / static_cast<double>(dn);
      cert.tail_bound = std::max(0.0, rate) * static_cast<double>(b.n);
      cert.tail_certified = false;
    }
  }
  return cert;
}

// Tail of sum_{k > K} (c/k)^p by the integral test, valid for p > 1, c >= 0.
inline std::optional<double> power_tail_bound(double c, double p, std::int64_t K) {
  if (p <= 1.0 || K < 1) return std::nullopt;
  return std::pow(c, p) * std::pow(static_cast<double>(K), 1.0 - p) / (p - 1.0);
}

}  // namespace speclab

#endif  // SPECLAB_SERIES_HPP
