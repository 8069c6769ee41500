#ifndef SPECLAB_RESOLVENT_HPP
#define SPECLAB_RESOLVENT_HPP

// Closed-form resolvents with certified truncation.
//
// For the weighted shift T e_j = rho_{j-1} e_{j-1} and f of finite support,
//
//   ((T - l)^{-1} f)_m =  sum_{k < m}  f_k l^{m-k-1} / prod_{j=k}^{m-1} rho_j    |l| < 1
//   ((T - l)^{-1} f)_m = -sum_{k >= m} f_k prod_{j=m}^{k-1} rho_j / l^{k-m+1}    |l| > 1
//
// (both fixed by the residual identity (T - l) v = f, which every evaluation
// checks).  Beyond the support of f the coordinates obey the exact one-step
// ratio recurrence, so the discarded tail admits a geometric bound built from
// certified pair-product statistics of the weight family: interleaved weights
// oscillate around 1 but their adjacent pair products stay near 1, so the
// two-step contraction |l|^2 / (rho_s rho_{s+1}) is the right certificate.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "speclab/operators.hpp"
#include "speclab/vectors.hpp"

namespace speclab {

inline constexpr double kHardGapFloor = 1e-6;
inline constexpr double kDefaultMinGap = 1e-3;
inline constexpr double kDefaultResolventTol = 1e-12;
inline constexpr std::int64_t kResolventWindowCap = 2'000'000;

enum class DiskRegion { InsideDisk, OutsideDisk };

struct SpectralPoint {
  cxd z;
  DiskRegion region = DiskRegion::InsideDisk;
  double gap = 0.0;           // | |z| - 1 |
  bool near_circle = false;   // gap below the comparison floor but allowed

  static SpectralPoint at(cxd z, double min_gap = kDefaultMinGap, bool allow_near_circle = false) {
    SpectralPoint p;
    p.z = z;
    const double az = std::abs(z);
    p.gap = std::abs(az - 1.0);
    p.region = az < 1.0 ? DiskRegion::InsideDisk : DiskRegion::OutsideDisk;
    if (p.gap < kHardGapFloor) {
      throw std::domain_error("SpectralPoint: gap below the hard floor 1e-6; no override");
    }
    if (p.gap < min_gap) {
      if (!allow_near_circle) {
        throw std::domain_error("SpectralPoint: gap below the configured minimum");
      }
      p.near_circle = true;
    }
    return p;
  }

  bool inside() const { return region == DiskRegion::InsideDisk; }
};

struct TruncatedVector {
  FinSuppVector v;
  double tail_bound = 0.0;   // certified bound on the l2 mass of dropped coordinates
  double residual = 0.0;     // || (T - l) v - f || over the computed window
  bool near_circle = false;

  double norm_upper() const { return v.norm() + tail_bound; }
  double norm_lower() const { return v.norm(); }
};

namespace detail {

// Log prefix products: L[m - lo] = sum_{j = lo}^{m - 1} ln rho_j.
inline std::vector<double> log_prefix(const WeightSequence& rho, std::int64_t lo, std::int64_t hi) {
  std::vector<double> L(static_cast<std::size_t>(hi - lo + 2), 0.0);
  for (std::int64_t m = lo; m <= hi; ++m) {
    L[static_cast<std::size_t>(m - lo + 1)] =
        L[static_cast<std::size_t>(m - lo)] + std::log(rho(m));
  }
  return L;
}

struct TailCertificate {
  bool ok = false;
  double bound_sq = 0.0;
};

// l2 bound on two interleaved geometric chains launched from the last two
// computed coordinates, with two-step ratio q2 < 1.
inline TailCertificate chain_tail(double head1, double head2, double q2) {
  TailCertificate c;
  if (!(q2 < 1.0) || !(q2 >= 0.0)) return c;
  c.ok = true;
  c.bound_sq = (head1 * head1 + head2 * head2) / (1.0 - q2 * q2);
  return c;
}

}  // namespace detail

// Residual ||(T - l) v - f|| over the union of windows (exact operator
// application; this is the oracle every resolvent evaluation is checked by).
inline double resolvent_residual(const WeightedShift& T, cxd lambda, const FinSuppVector& v,
                                 const FinSuppVector& f) {
  FinSuppVector r = T.apply(v) + (cxd(-lambda) * v) - f;
  return r.norm();
}

// (T - l)^{-1} f for the weighted shift, both spectral branches, with the
// discarded-coordinate mass certified <= tol * max(1, ||f||).
inline TruncatedVector shift_resolvent(const WeightedShift& T, const SpectralPoint& lambda,
                                       const FinSuppVector& f,
                                       double tol = kDefaultResolventTol) {
  if (!(tol > 0)) throw std::invalid_argument("shift_resolvent: tol must be positive");
  TruncatedVector out;
  out.near_circle = lambda.near_circle;
  if (f.empty()) return out;

  const WeightSequence& rho = T.weights();
  const double scale = std::max(1.0, f.norm());
  const double tol_abs = tol * scale;
  const cxd l = lambda.z;
  const double al = std::abs(l);
  if (al == 0.0) {
    // (T - 0)^{-1} = T^{-1}: e_j -> e_{j+1} / rho_j, exact
    FinSuppVector v;
    for (std::int64_t j = f.lo(); j <= f.hi(); ++j) {
      const cxd c = f.at(j);
      if (c != cxd(0.0)) v.set(j + 1, c / rho(j));
    }
    out.v = std::move(v);
    out.residual = resolvent_residual(T, l, out.v, f);
    return out;
  }
  const cxd log_l = std::log(l);
  const std::int64_t a = f.lo();
  const std::int64_t b = f.hi();

  if (lambda.inside()) {
    // Coordinates live on [a+1, M]; beyond the support v_{m+1} = (l/rho_m) v_m.
    const auto L = detail::log_prefix(rho, a, b + 1);
    auto logP = [&](std::int64_t m) { return L[static_cast<std::size_t>(m - a)]; };
    std::vector<cxd> coeffs;
    coeffs.reserve(static_cast<std::size_t>(b - a + 2));
    for (std::int64_t m = a + 1; m <= b + 1; ++m) {
      cxd s = 0.0;
      for (std::int64_t k = a; k < m && k <= b; ++k) {
        const cxd fk = f.at(k);
        if (fk == cxd(0.0)) continue;
        const cxd expo = static_cast<double>(m - k - 1) * log_l - (logP(m) - logP(k));
        s += fk * std::exp(expo);
      }
      coeffs.push_back(s);
    }
    std::int64_t M = b + 1;
    cxd v_last = coeffs.back();
    while (true) {
      const WeightTailStats st = rho.tail_up(M + 1);
      double q2 = st.pair_inf > 0 ? al * al / st.pair_inf : 2.0;
      if (q2 < 1.0) {
        const cxd v_next = v_last * l / rho(M);  // v_{M+1}, exact
        const cxd v_next2 = v_next * l / rho(M + 1);
        const auto cert = detail::chain_tail(std::abs(v_next), std::abs(v_next2), q2);
        if (cert.ok && cert.bound_sq <= tol_abs * tol_abs) {
          out.tail_bound = std::sqrt(cert.bound_sq);
          break;
        }
      } else if (st.pair_inf <= 0.0) {
        throw std::domain_error(
            "shift_resolvent: weight family admits no contraction certificate inside the disk");
      }
      // extend the window
      const std::int64_t grow = std::max<std::int64_t>(16, (M - a) / 2);
      for (std::int64_t step = 0; step < grow; ++step) {
        v_last = v_last * l / rho(M);
        ++M;
        coeffs.push_back(v_last);
      }
      if (M - a > kResolventWindowCap) {
        throw std::domain_error("shift_resolvent: window cap exceeded (gap too small)");
      }
    }
    out.v = FinSuppVector(a + 1, std::move(coeffs)).trimmed();
  } else {
    // Coordinates live on [M, b]; below the support v_{m-1} = (rho_{m-1}/l) v_m.
    const auto L = detail::log_prefix(rho, a, b);
    auto logP = [&](std::int64_t m) { return L[static_cast<std::size_t>(m - a)]; };
    std::vector<cxd> coeffs(static_cast<std::size_t>(b - a + 1), cxd(0.0));
    for (std::int64_t m = a; m <= b; ++m) {
      cxd s = 0.0;
      for (std::int64_t k = m; k <= b; ++k) {
        const cxd fk = f.at(k);
        if (fk == cxd(0.0)) continue;
        const cxd expo = (logP(k) - logP(m)) - static_cast<double>(k - m + 1) * log_l;
        s -= fk * std::exp(expo);
      }
      coeffs[static_cast<std::size_t>(m - a)] = s;
    }
    std::vector<cxd> below;  // coordinates a-1, a-2, ...
    std::int64_t M = a;
    cxd v_last = coeffs.front();
    while (true) {
      const WeightTailStats st = rho.tail_down(M - 1);
      const double q2 =
          std::isfinite(st.pair_sup) ? st.pair_sup / (al * al) : 2.0;
      if (q2 < 1.0) {
        const cxd v_prev = v_last * rho(M - 1) / l;  // v_{M-1}, exact
        const cxd v_prev2 = v_prev * rho(M - 2) / l;
        const auto cert = detail::chain_tail(std::abs(v_prev), std::abs(v_prev2), q2);
        if (cert.ok && cert.bound_sq <= tol_abs * tol_abs) {
          out.tail_bound = std::sqrt(cert.bound_sq);
          break;
        }
      }
      const std::int64_t grow = std::max<std::int64_t>(16, (b - M) / 2);
      for (std::int64_t step = 0; step < grow; ++step) {
        v_last = v_last * rho(M - 1) / l;
        --M;
        below.push_back(v_last);
      }
      if (b - M > kResolventWindowCap) {
        throw std::domain_error("shift_resolvent: window cap exceeded (gap too small)");
      }
    }
    std::vector<cxd> all;
    all.reserve(below.size() + coeffs.size());
    for (auto it = below.rbegin(); it != below.rend(); ++it) all.push_back(*it);
    for (const cxd& c : coeffs) all.push_back(c);
    out.v = FinSuppVector(M, std::move(all)).trimmed();
  }

  out.residual = resolvent_residual(T, l, out.v, f);
  return out;
}

// ---------------------------------------------------------------------------
// Right shift U e_n = e_{n+1}.  U = J T1 J with T1 the unweighted down-shift
// and J the index reflection, so its resolvent reduces to shift_resolvent.

inline TruncatedVector right_shift_resolvent(const SpectralPoint& lambda, const FinSuppVector& f,
                                             double tol = kDefaultResolventTol) {
  static const WeightedShift unit_shift{WeightSequence::constant(1.0)};
  TruncatedVector r = shift_resolvent(unit_shift, lambda, f.reflected(), tol);
  r.v = r.v.reflected();
  return r;
}

struct BlockResolvent {
  TruncatedVector top;
  TruncatedVector bottom;

  double norm_upper() const {
    return std::sqrt(top.norm_upper() * top.norm_upper() +
                     bottom.norm_upper() * bottom.norm_upper());
  }
};

inline double block_resolvent_residual(const BlockShiftOperator& B, cxd lambda,
                                       const BlockVector& v, const BlockVector& f) {
  BlockVector r = B.apply(v) - f;
  r.top = r.top + cxd(-lambda) * v.top;
  r.bottom = r.bottom + cxd(-lambda) * v.bottom;
  return r.norm();
}

// (B - l)^{-1} (f1, f2) = ( A f1 - A R A f2 , A f2 ),  A = (U - l)^{-1}.
inline BlockResolvent block_resolvent(const BlockShiftOperator& B, const SpectralPoint& lambda,
                                      const BlockVector& f, double tol = kDefaultResolventTol) {
  const double coupling_sup = std::max(B.coupling().tail_up(0).sup, B.coupling_at(0));
  const double stage_tol = tol * std::min(1.0, lambda.gap) / (8.0 * std::max(1.0, coupling_sup));

  BlockResolvent out;
  out.bottom = right_shift_resolvent(lambda, f.bottom, stage_tol);
  TruncatedVector a_f1 = right_shift_resolvent(lambda, f.top, stage_tol);
  const FinSuppVector r_mid = B.apply_coupling(out.bottom.v);
  TruncatedVector chained = right_shift_resolvent(lambda, r_mid, stage_tol);
  out.top.v = a_f1.v - chained.v;
  // propagated certificate: tails of the two stages plus the bottom-stage
  // tail pushed through R and A (operator norms coupling_sup and 1/gap)
  out.top.tail_bound = a_f1.tail_bound + chained.tail_bound +
                       coupling_sup * out.bottom.tail_bound / lambda.gap;
  out.top.near_circle = lambda.near_circle;
  out.bottom.near_circle = lambda.near_circle;
  out.top.residual = block_resolvent_residual(B, lambda.z, {out.top.v, out.bottom.v}, f);
  return out;
}

// <(T* - l)^{-1} f, g> for the block operator, assembled from the closed-form
// expansion of the adjoint:
//
//   <(U* - l)^{-1} f1, g1> + <(U* - l)^{-1} f2 - (U* - l)^{-1} R (U* - l)^{-1} f1, g2>
inline cxd adjoint_block_matrix_element(const BlockShiftOperator& B, const SpectralPoint& lambda,
                                        const BlockVector& f, const BlockVector& g,
                                        double tol = kDefaultResolventTol) {
  static const WeightedShift unit_shift{WeightSequence::constant(1.0)};
  const double coupling_sup = std::max(B.coupling().tail_up(0).sup, B.coupling_at(0));
  const double stage_tol = tol * std::min(1.0, lambda.gap) / (8.0 * std::max(1.0, coupling_sup));

  cxd result = 0.0;
  if (!f.top.empty() && !g.top.empty()) {
    result += shift_resolvent(unit_shift, lambda, f.top, stage_tol).v.inner(g.top);
  }
  if (!g.bottom.empty()) {
    if (!f.bottom.empty()) {
      result += shift_resolvent(unit_shift, lambda, f.bottom, stage_tol).v.inner(g.bottom);
    }
    if (!f.top.empty()) {
      const FinSuppVector inner_stage =
          B.apply_coupling(shift_resolvent(unit_shift, lambda, f.top, stage_tol).v);
      result -= shift_resolvent(unit_shift, lambda, inner_stage, stage_tol).v.inner(g.bottom);
    }
  }
  return result;
}

// sup over the grid of gap(z) * ||(T - z)^{-1} u||.
inline double resolvent_growth_probe(const WeightedShift& T, const FinSuppVector& u,
                                     const std::vector<SpectralPoint>& grid,
                                     double tol = kDefaultResolventTol) {
  double probe = 0.0;
  for (const SpectralPoint& z : grid) {
    probe = std::max(probe, z.gap * shift_resolvent(T, z, u, tol).norm_upper());
  }
  return probe;
}

inline double resolvent_growth_probe(const BlockShiftOperator& B, const BlockVector& u,
                                     const std::vector<SpectralPoint>& grid,
                                     double tol = kDefaultResolventTol) {
  double probe = 0.0;
  for (const SpectralPoint& z : grid) {
    probe = std::max(probe, z.gap * block_resolvent(B, z, u, tol).norm_upper());
  }
  return probe;
}

}  // namespace speclab

#endif  // SPECLAB_RESOLVENT_HPP
