#ifndef SPECLAB_NUMERIC_HPP
#define SPECLAB_NUMERIC_HPP

// Small numerical toolbox shared across the library: least-squares line fits,
// Richardson/Neville extrapolation, Gauss-Legendre rules, Kahan accumulation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace speclab {

using cxd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Compensated accumulator.  Enough for the long diagnostic sums where naive
// accumulation would lose the tail of 1e5+ small terms.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

// Ordinary least squares y = intercept + slope * x.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need at least two paired samples");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (f.intercept + f.slope * x[i]);
      ss_res += r * r;
    }
    f.r_squared = 1.0 - ss_res / syy;
  }
  return f;
}

// One-parameter least squares y = c * x (no intercept).
struct ScaleFit {
  double coefficient = 0.0;
  double r_squared = 1.0;
};

inline ScaleFit fit_scale(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("fit_scale: need paired samples");
  }
  double sxy = 0, sxx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    sy += y[i];
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_scale: degenerate abscissae");
  ScaleFit f;
  f.coefficient = sxy / sxx;
  const double my = sy / static_cast<double>(x.size());
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.coefficient * x[i];
    ss_res += r * r;
    const double d = y[i] - my;
    ss_tot += d * d;
  }
  f.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

// Neville polynomial extrapolation of samples (h_i, y_i) to h = 0.
// Returns the extrapolated value and a heuristic error estimate (the size of
// the last correction in the tableau).
template <typename T>
struct Extrapolated {
  T value{};
  double error_estimate = 0.0;
};

template <typename T>
Extrapolated<T> neville_to_zero(const std::vector<double>& h, const std::vector<T>& y) {
  if (h.size() != y.size() || h.empty()) {
    throw std::invalid_argument("neville_to_zero: need nonempty paired samples");
  }
  // P_{i..i+m}(0) = (h_i P_{i+1..i+m}(0) - h_{i+m} P_{i..i+m-1}(0)) / (h_i - h_{i+m})
  auto table_to_zero = [](const std::vector<double>& hh, std::vector<T> tab) {
    for (std::size_t m = 1; m < tab.size(); ++m) {
      for (std::size_t i = 0; i + m < tab.size(); ++i) {
        const double denom = hh[i] - hh[i + m];
        tab[i] = (tab[i + 1] * hh[i] - tab[i] * hh[i + m]) / denom;
      }
    }
    return tab[0];
  };
  Extrapolated<T> out;
  out.value = table_to_zero(h, y);
  if (y.size() > 1) {
    std::vector<double> h2(h.begin(), h.end() - 1);
    std::vector<T> y2(y.begin(), y.end() - 1);
    out.error_estimate = std::abs(out.value - table_to_zero(h2, y2));
  }
  return out;
}

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on the
// Legendre recurrence.  Accurate to machine precision for n <= 64.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline const GaussRule& gauss_legendre(int n) {
  static thread_local std::vector<std::pair<int, GaussRule>> cache;
  for (auto& entry : cache) {
    if (entry.first == n) return entry.second;
  }
  if (n < 1 || n > 128) throw std::invalid_argument("gauss_legendre: order out of range");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  cache.emplace_back(n, std::move(rule));
  return cache.back().second;
}

// Integrate f over [a, b] with a fixed-order Gauss rule.
template <typename F>
double gauss_integrate(F&& f, double a, double b, int order = 16) {
  const GaussRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s += rule.weights[i] * f(mid + rad * rule.nodes[i]);
  }
  return s * rad;
}

// Sine integral Si(x) = int_0^x sin(t)/t dt.
//
// Power series for small |x|; for larger arguments E1(ix) is evaluated with a
// modified Lentz continued fraction and Si recovered from its imaginary part.
// Absolute accuracy is ~1e-15 over the real line.
inline double sine_integral(double x) {
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  double si;
  if (ax <= 2.0) {
    // sum_k (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
    double s = 0.0, t = ax, sign = 1.0;
    for (int k = 0; k < 64; ++k) {
      const double add = sign * t / (2.0 * k + 1.0);
      s += add;
      if (std::abs(add) < 1e-18 * std::abs(s)) break;
      // t holds x^(2k+1)/(2k+1)!  ->  advance to x^(2k+3)/(2k+3)!
      t *= ax * ax / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
      sign = -sign;
    }
    si = s;
  } else {
    // Modified Lentz for the continued fraction of E1(z) e^z, z = i*ax.
    const cxd z(0.0, ax);
    const double tiny = 1e-290;
    cxd b = z + 1.0;
    cxd c = 1.0 / tiny;
    cxd d = 1.0 / b;
    cxd h = d;
    for (int i = 1; i < 300; ++i) {
      const double a = -static_cast<double>(i) * static_cast<double>(i);
      b += 2.0;
      d = 1.0 / (a * d + b);
      c = b + a / c;
      const cxd del = c * d;
      h *= del;
      if (std::abs(del - 1.0) < 1e-16) break;
    }
    const cxd e1 = h * std::exp(-z);
    si = kPi / 2.0 + e1.imag();
  }
  return x > 0 ? si : -si;
}

}  // namespace speclab

#endif  // SPECLAB_NUMERIC_HPP
