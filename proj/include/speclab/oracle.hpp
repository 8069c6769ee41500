#ifndef SPECLAB_ORACLE_HPP
#define SPECLAB_ORACLE_HPP

// Brute-force verification layer: dense linear algebra on finite
// materializations of the operators, plus finite-dimensional checks of the
// dissipative resolvent identities.
//
// Resolvent oracles use *periodized* sections rather than plain compressions:
// the compression of a pure shift is triangular, so for every spectral point
// it inverts onto the one-sided branch and can never reproduce the two-sided
// closed form.  Wrapping the shift around the window puts the section's
// spectrum on the unit circle and makes the interior coordinates of the
// solve agree with the bi-infinite resolvent up to a |lambda|^(wrap distance)
// error, which is the scaling the checks assert.  Compression semantics are
// kept for everything spectral (SVD, diagonal sections).

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "speclab/operators.hpp"
#include "speclab/resolvent.hpp"

namespace speclab {

// ---------------------------------------------------------------------------
// Periodized sections

inline Eigen::MatrixXcd periodized_section(const WeightedShift& T, std::int64_t N) {
  check_section_width(N);
  const std::int64_t M = 2 * N + 1;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(M, M);
  for (std::int64_t j = -N + 1; j <= N; ++j) S(j - 1 + N, j + N) = T.weights()(j - 1);
  S(N + N, -N + N) = T.weights()(-N - 1);  // wrap: e_{-N} -> e_{N}
  return S;
}

inline Eigen::MatrixXcd periodized_section(const BlockShiftOperator& B, std::int64_t N) {
  check_section_width(N);
  const std::int64_t M = 2 * N + 1;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
  for (std::int64_t n = -N; n <= N - 1; ++n) {
    S(n + 1 + N, n + N) = 1.0;
    S(M + n + 1 + N, M + n + N) = 1.0;
  }
  S(-N + N, N + N) = 1.0;          // wrap of U, top block
  S(M - N + N, M + N + N) = 1.0;   // wrap of U, bottom block
  for (std::int64_t n = -N; n <= N; ++n) S(n + N, M + n + N) = B.coupling_at(n);
  return S;
}

// ---------------------------------------------------------------------------
// Resolvent cross-checks

struct ResolventCheckResult {
  double max_rel_error = 0.0;   // against the sup norm of the closed form
  double solve_residual = 0.0;  // dense solve sanity
};

namespace detail {

inline void require_interior_support(std::int64_t lo, std::int64_t hi, std::int64_t N,
                                     std::int64_t margin) {
  if (lo < -(N - margin) || hi > N - margin) {
    throw std::invalid_argument("dense_resolvent_check: f must be supported in the interior");
  }
}

}  // namespace detail

inline ResolventCheckResult dense_resolvent_check(const WeightedShift& T,
                                                  const SpectralPoint& lambda,
                                                  const FinSuppVector& f, std::int64_t N,
                                                  std::int64_t margin) {
  if (lambda.gap < kDefaultMinGap) {
    throw std::domain_error("dense_resolvent_check: gap below the oracle comparison floor");
  }
  if (margin < 1 || margin >= N) throw std::invalid_argument("dense_resolvent_check: bad margin");
  detail::require_interior_support(f.lo(), f.hi(), N, margin);

  const std::int64_t M = 2 * N + 1;
  Eigen::MatrixXcd A = periodized_section(T, N) - lambda.z * Eigen::MatrixXcd::Identity(M, M);
  const Eigen::VectorXcd rhs = section_vector(f, N);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::VectorXcd x = lu.solve(rhs);
  ResolventCheckResult out;
  out.solve_residual = (A * x - rhs).norm() / std::max(1e-300, rhs.norm());
  if (out.solve_residual > 1e-6) {
    throw std::runtime_error("dense_resolvent_check: near-singular section");
  }

  const TruncatedVector closed = shift_resolvent(T, lambda, f, 1e-13);
  double scale = 0.0;
  for (std::int64_t j = -(N - margin); j <= N - margin; ++j) {
    scale = std::max(scale, std::abs(closed.v.at(j)));
  }
  scale = std::max(scale, 1e-300);
  for (std::int64_t j = -(N - margin); j <= N - margin; ++j) {
    out.max_rel_error = std::max(out.max_rel_error, std::abs(x(j + N) - closed.v.at(j)) / scale);
  }
  return out;
}

inline ResolventCheckResult dense_resolvent_check(const BlockShiftOperator& B,
                                                  const SpectralPoint& lambda,
                                                  const BlockVector& f, std::int64_t N,
                                                  std::int64_t margin) {
  if (lambda.gap < kDefaultMinGap) {
    throw std::domain_error("dense_resolvent_check: gap below the oracle comparison floor");
  }
  if (margin < 1 || margin >= N) throw std::invalid_argument("dense_resolvent_check: bad margin");
  if (!f.top.empty()) detail::require_interior_support(f.top.lo(), f.top.hi(), N, margin);
  if (!f.bottom.empty()) detail::require_interior_support(f.bottom.lo(), f.bottom.hi(), N, margin);

  const std::int64_t M = 2 * N + 1;
  Eigen::MatrixXcd A =
      periodized_section(B, N) - lambda.z * Eigen::MatrixXcd::Identity(2 * M, 2 * M);
  const Eigen::VectorXcd rhs = section_vector(f, N);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::VectorXcd x = lu.solve(rhs);
  ResolventCheckResult out;
  out.solve_residual = (A * x - rhs).norm() / std::max(1e-300, rhs.norm());
  if (out.solve_residual > 1e-6) {
    throw std::runtime_error("dense_resolvent_check: near-singular section");
  }

  const BlockResolvent closed = block_resolvent(B, lambda, f, 1e-13);
  double scale = 1e-300;
  for (std::int64_t j = -(N - margin); j <= N - margin; ++j) {
    scale = std::max({scale, std::abs(closed.top.v.at(j)), std::abs(closed.bottom.v.at(j))});
  }
  for (std::int64_t j = -(N - margin); j <= N - margin; ++j) {
    out.max_rel_error =
        std::max(out.max_rel_error, std::abs(x(j + N) - closed.top.v.at(j)) / scale);
    out.max_rel_error =
        std::max(out.max_rel_error, std::abs(x(M + j + N) - closed.bottom.v.at(j)) / scale);
  }
  return out;
}

// Matrix element of the adjoint block resolvent against a dense periodized solve.
inline cxd dense_adjoint_matrix_element(const BlockShiftOperator& B, const SpectralPoint& lambda,
                                        const BlockVector& f, const BlockVector& g,
                                        std::int64_t N) {
  const std::int64_t M = 2 * N + 1;
  Eigen::MatrixXcd A = periodized_section(B, N).adjoint() -
                       lambda.z * Eigen::MatrixXcd::Identity(2 * M, 2 * M);
  const Eigen::VectorXcd rhs = section_vector(f, N);
  const Eigen::VectorXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(A).solve(rhs);
  const Eigen::VectorXcd gv = section_vector(g, N);
  return gv.adjoint() * x;  // <x, g>
}

// ---------------------------------------------------------------------------
// Dense SVD checks

// Max deviation between the sorted singular values of a dense section and an
// expected sorted list (padded with zeros as needed).
inline double dense_svd_check(const Eigen::MatrixXcd& section, std::vector<double> expected) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(section);
  const auto& sv = svd.singularValues();
  std::sort(expected.begin(), expected.end(), std::greater<double>());
  expected.resize(static_cast<std::size_t>(sv.size()), 0.0);
  double dev = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    dev = std::max(dev, std::abs(sv(i) - expected[static_cast<std::size_t>(i)]));
  }
  return dev;
}

// ---------------------------------------------------------------------------
// Dissipative test operators

struct DissipativeTestOperator {
  Eigen::MatrixXcd A;  // Hermitian
  Eigen::MatrixXcd V;  // positive semidefinite

  Eigen::MatrixXcd L() const { return A + cxd(0.0, 1.0) * V; }

  void validate() const {
    if ((A - A.adjoint()).norm() > 1e-12 * std::max(1.0, A.norm())) {
      throw std::invalid_argument("DissipativeTestOperator: A must be Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(V);
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, V.norm())) {
      throw std::invalid_argument("DissipativeTestOperator: V must be positive semidefinite");
    }
  }
};

// A = (M + M*)/2, V = G*G with standard complex normal entries, both rescaled
// to unit spectral norm so that moderate tau schedules already sit in the
// asymptotic regime of the strong-convergence probe.
inline DissipativeTestOperator random_dissipative(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_matrix = [&] {
    Eigen::MatrixXcd M(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) M(i, j) = cxd(normal(rng), normal(rng)) / std::sqrt(2.0);
    }
    return M;
  };
  const Eigen::MatrixXcd M = random_matrix();
  const Eigen::MatrixXcd G = random_matrix();
  DissipativeTestOperator op;
  op.A = 0.5 * (M + M.adjoint());
  op.V = G.adjoint() * G;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(op.A), ev(op.V);
  const double na = ea.eigenvalues().cwiseAbs().maxCoeff();
  const double nv = ev.eigenvalues().cwiseAbs().maxCoeff();
  if (na > 0) op.A /= na;
  if (nv > 0) op.V /= nv;
  return op;
}

inline Eigen::VectorXcd random_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd u(dim);
  for (int i = 0; i < dim; ++i) u(i) = cxd(normal(rng), normal(rng)) / std::sqrt(2.0);
  return u;
}

// || V^(1/2) (L-l)^{-1} u ||^2 = Im(l) ||(L-l)^{-1} u||^2 - Im <(L-l)^{-1}u, u>
// holds exactly for L = A + iV; the residual measures only conditioning.
inline double dissipative_identity_check(const DissipativeTestOperator& op,
                                         const Eigen::VectorXcd& u, cxd lambda) {
  if (!(lambda.imag() > 0)) {
    throw std::invalid_argument("dissipative_identity_check: need Im(lambda) > 0");
  }
  const Eigen::MatrixXcd L = op.L();
  const Eigen::Index n = L.rows();
  const Eigen::MatrixXcd A = L - lambda * Eigen::MatrixXcd::Identity(n, n);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::VectorXcd w = lu.solve(u);
  if ((A * w - u).norm() > 1e-8 * std::max(1.0, u.norm())) {
    throw std::runtime_error("dissipative_identity_check: near-singular solve");
  }
  const double lhs = (w.adjoint() * (op.V * w)).real()(0);
  const cxd f_uu = (u.adjoint() * w)(0);  // <(L-l)^{-1} u, u>
  const double rhs = lambda.imag() * w.squaredNorm() - f_uu.imag();
  return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

struct StrongConvergenceProbe {
  std::vector<std::pair<double, double>> table;  // (tau, || i tau (L + i tau)^{-1} u - u ||)
  LineFit loglog_fit;                            // log(dev) vs log(tau)
};

// i tau (L + i tau)^{-1} -> I strongly; the deviation decays like ||L u||/tau.
inline StrongConvergenceProbe strong_convergence_probe(const DissipativeTestOperator& op,
                                                       const Eigen::VectorXcd& u,
                                                       const std::vector<double>& taus) {
  if (taus.size() < 2) throw std::invalid_argument("strong_convergence_probe: need >= 2 taus");
  StrongConvergenceProbe out;
  const Eigen::MatrixXcd L = op.L();
  const Eigen::Index n = L.rows();
  std::vector<double> lx, ly;
  for (double tau : taus) {
    const Eigen::MatrixXcd A = L + cxd(0.0, tau) * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::VectorXcd w = A.partialPivLu().solve(cxd(0.0, tau) * u);
    const double dev = (w - u).norm();
    out.table.emplace_back(tau, dev);
    if (dev > 0) {
      lx.push_back(std::log(tau));
      ly.push_back(std::log(dev));
    }
  }
  if (lx.size() >= 2) out.loglog_fit = fit_line(lx, ly);
  return out;
}

// ---------------------------------------------------------------------------
// Operator-norm probe via power iteration on fast periodized solves

// gap * ||(B_per - z)^{-1}|| estimated by power iteration on R R*, where the
// resolvent applies in O(n) through cyclic bidiagonal solves.  Used for the
// growth tables that exhibit unbounded resolvent growth.
class PeriodizedBlockResolventNorm {
 public:
  PeriodizedBlockResolventNorm(const BlockShiftOperator& B, std::int64_t N) : B_(&B), N_(N) {
    if (N < 1 || N > (std::int64_t{1} << 20)) {
      throw std::invalid_argument("PeriodizedBlockResolventNorm: bad window");
    }
  }

  double operator()(cxd z, int iterations = 60, std::uint64_t seed = 12345) const {
    const std::int64_t M = 2 * N_ + 1;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd v(2 * M);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cxd(normal(rng), normal(rng));
    v /= v.norm();
    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
      Eigen::VectorXcd w = apply_resolvent(v, z);
      w = apply_resolvent_adjoint(w, z);
      const double nw = w.norm();
      if (nw == 0) return 0.0;
      sigma = std::sqrt(nw);  // ||R||^2 eigenvalue of R R*
      v = w / nw;
    }
    return sigma;
  }

 private:
  // (U_c - z) x = f  solved cyclically in O(n): x_{m-1} - z x_m = f_m.
  static Eigen::VectorXcd cyclic_shift_solve(const Eigen::VectorXcd& f, cxd z) {
    // U_c is the cyclic permutation; (U_c - z)^{-1} = sum_k U_c^{k+1} z^k / (1 - z^M)
    // evaluated directly via the geometric recursion below.
    const Eigen::Index M = f.size();
    Eigen::VectorXcd x(M);
    // particular solution by backward recursion x_m = (x_{m-1} - f_m)/z is
    // unstable for |z|<1; use the convolution form instead:
    // x_m = (1/(1 - z^M)) * sum_{k=0}^{M-1} z^k f_{(m+k+1) mod M}
    // computed in O(M) with a running geometric prefix.
    // s_m = sum_k z^k f_{(m+k+1) mod M}; s_{m-1} = z s_m + f_m (1 - z^M)?  We
    // evaluate s_0 once and roll: s_{m-1} = z*s_m - z^M f_m + f_m.
    const cxd zM = std::pow(z, static_cast<double>(M));
    cxd s = 0.0;
    for (Eigen::Index k = M - 1; k >= 0; --k) {
      s = s * z + f((0 + k + 1) % M);
    }
    x(0) = s / (1.0 - zM);
    for (Eigen::Index m = 0; m > 1 - M; --m) {
      const Eigen::Index mm = (m % M + M) % M;
      const Eigen::Index prev = ((m - 1) % M + M) % M;
      s = z * s + f(mm) * (1.0 - zM);
      x(prev) = s / (1.0 - zM);
    }
    return x;
  }

  Eigen::VectorXcd apply_resolvent(const Eigen::VectorXcd& f, cxd z) const {
    const Eigen::Index M = 2 * N_ + 1;
    const Eigen::VectorXcd f1 = f.head(M), f2 = f.tail(M);
    const Eigen::VectorXcd x2 = cyclic_shift_solve(f2, z);
    Eigen::VectorXcd rx2(M);
    for (Eigen::Index i = 0; i < M; ++i) rx2(i) = B_->coupling_at(i - N_) * x2(i);
    const Eigen::VectorXcd x1 = cyclic_shift_solve(f1 - rx2, z);
    Eigen::VectorXcd out(2 * M);
    out << x1, x2;
    return out;
  }

  Eigen::VectorXcd apply_resolvent_adjoint(const Eigen::VectorXcd& f, cxd z) const {
    // ((B - z)^{-1})* = (B* - conj(z))^{-1}; B* swaps the coupling to the
    // bottom-left block and U to U*.  Solving with U* cyclically is the same
    // routine on the reversed index order.
    const Eigen::Index M = 2 * N_ + 1;
    const Eigen::VectorXcd f1 = f.head(M), f2 = f.tail(M);
    auto conj_solve_adjoint = [&](const Eigen::VectorXcd& g) {
      // (U_c* - conj(z))^{-1} g = reverse( (U_c - conj(z))^{-1} reverse(g) )
      Eigen::VectorXcd gr = g.reverse();
      Eigen::VectorXcd xr = cyclic_shift_solve(gr, std::conj(z));
      return Eigen::VectorXcd(xr.reverse());
    };
    const Eigen::VectorXcd y1 = conj_solve_adjoint(f1);
    Eigen::VectorXcd ry1(M);
    for (Eigen::Index i = 0; i < M; ++i) ry1(i) = B_->coupling_at(i - N_) * y1(i);
    const Eigen::VectorXcd y2 = conj_solve_adjoint(f2 - ry1);
    Eigen::VectorXcd out(2 * M);
    out << y1, y2;
    return out;
  }

  const BlockShiftOperator* B_;
  std::int64_t N_;
};

}  // namespace speclab

#endif  // SPECLAB_ORACLE_HPP
