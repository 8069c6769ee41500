#ifndef SPECLAB_OPERATORS_HPP
#define SPECLAB_OPERATORS_HPP

// The operators under study, acting exactly on finitely supported vectors:
//
//   * WeightedShift        T e_j = rho_{j-1} e_{j-1} on l2(Z)
//   * DiagonalOperator     (D u)_j = d_j u_j
//   * BlockShiftOperator   T = (U R; 0 U) on l2(Z) (+) l2(Z), with
//                          U e_n = e_{n+1} and R e_n = rho_{|n|} e_n
//
// Finite sections are orthogonal compressions to a symmetric coordinate
// window, materialized as dense Eigen matrices for the oracle layer.

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "speclab/vectors.hpp"
#include "speclab/weights.hpp"

namespace speclab {

inline constexpr std::int64_t kMaxSectionHalfWidth = 4096;

class WeightedShift {
 public:
  explicit WeightedShift(WeightSequence rho) : rho_(std::move(rho)) {}

  const WeightSequence& weights() const { return rho_; }

  // T e_j = rho_{j-1} e_{j-1}; output window is the input window shifted by -1.
  FinSuppVector apply(const FinSuppVector& u) const {
    FinSuppVector out;
    for (std::int64_t j = u.lo(); j <= u.hi(); ++j) {
      const cxd c = u.at(j);
      if (c != cxd(0.0)) out.set(j - 1, rho_(j - 1) * c);
    }
    return out;
  }

  // T* e_j = rho_j e_{j+1}.
  FinSuppVector apply_adjoint(const FinSuppVector& u) const {
    FinSuppVector out;
    for (std::int64_t j = u.lo(); j <= u.hi(); ++j) {
      const cxd c = u.at(j);
      if (c != cxd(0.0)) out.set(j + 1, rho_(j) * c);
    }
    return out;
  }

 private:
  WeightSequence rho_;
};

inline FinSuppVector apply_shift(const WeightedShift& T, const FinSuppVector& u) {
  return T.apply(u);
}

class DiagonalOperator {
 public:
  explicit DiagonalOperator(std::function<double(std::int64_t)> entries)
      : entries_(std::move(entries)) {}

  static DiagonalOperator identity() {
    return DiagonalOperator([](std::int64_t) { return 1.0; });
  }

  double entry(std::int64_t j) const { return entries_(j); }

  FinSuppVector apply(const FinSuppVector& u) const {
    FinSuppVector out;
    for (std::int64_t j = u.lo(); j <= u.hi(); ++j) {
      const cxd c = u.at(j);
      if (c != cxd(0.0)) out.set(j, entries_(j) * c);
    }
    return out;
  }

  DiagonalOperator inverse() const {
    auto e = entries_;
    return DiagonalOperator([e](std::int64_t j) {
      const double d = e(j);
      if (d == 0.0) throw std::domain_error("DiagonalOperator::inverse: zero entry");
      return 1.0 / d;
    });
  }

  double sup_window(std::int64_t lo, std::int64_t hi) const {
    double m = 0.0;
    for (std::int64_t j = lo; j <= hi; ++j) m = std::max(m, std::abs(entries_(j)));
    return m;
  }

 private:
  std::function<double(std::int64_t)> entries_;
};

// Defect diagonal d_n = |1 - rho_n^2|^(1/2), indexed by the weight index: the
// entry at n is the defect carried by the coupling e_{n+1} -> e_n.  As an
// operator identity this equals |I - T T*|^(1/2); the companion
// one_minus_tstar_t below gives I - T*T, whose diagonal is the same family
// evaluated one slot lower.
inline DiagonalOperator defect_operator(const WeightedShift& T) {
  WeightSequence rho = T.weights();
  return DiagonalOperator([rho](std::int64_t n) {
    const double r = rho(n);
    return std::sqrt(std::abs(1.0 - r * r));
  });
}

// (I - T*T) e_j = (1 - rho_{j-1}^2) e_j.
inline DiagonalOperator one_minus_tstar_t(const WeightedShift& T) {
  WeightSequence rho = T.weights();
  return DiagonalOperator([rho](std::int64_t j) {
    const double r = rho(j - 1);
    return 1.0 - r * r;
  });
}

// Diagonal similarity W with w_{2j+1} = a_j^{-1} for j >= 1 and w_j = 1
// otherwise; conjugation W^{-1} T W collapses the interleaved weights onto
// the unweighted shift.
inline DiagonalOperator build_similarity(const WeightSequence& rho) {
  if (!rho.is_interleaved()) {
    throw std::invalid_argument("build_similarity: requires an interleaved weight family");
  }
  return DiagonalOperator([rho](std::int64_t j) {
    if (j >= 3 && j % 2 == 1) return 1.0 / rho.interleaved_a(j / 2);
    return 1.0;
  });
}

// max_j || W^{-1} T W e_j - e_{j-1} || over the window.  For a correct W the
// deviation telescopes to zero; each basis image costs O(1).
inline double conjugate_check(const WeightedShift& T, const DiagonalOperator& W, std::int64_t lo,
                              std::int64_t hi) {
  double dev = 0.0;
  for (std::int64_t j = lo; j <= hi; ++j) {
    const double wj = W.entry(j);
    const double wp = W.entry(j - 1);
    if (wp == 0.0) throw std::domain_error("conjugate_check: W not invertible on window");
    dev = std::max(dev, std::abs(T.weights()(j - 1) * wj / wp - 1.0));
  }
  return dev;
}

class BlockShiftOperator {
 public:
  explicit BlockShiftOperator(WeightSequence coupling) : coupling_(std::move(coupling)) {}

  const WeightSequence& coupling() const { return coupling_; }

  double coupling_at(std::int64_t n) const { return coupling_(n < 0 ? -n : n); }

  // U e_n = e_{n+1} on each component; R couples bottom into top.
  BlockVector apply(const BlockVector& u) const {
    return {shift_up(u.top) + apply_coupling(u.bottom), shift_up(u.bottom)};
  }

  // T* = (U* 0; R U*).
  BlockVector apply_adjoint(const BlockVector& u) const {
    return {shift_down(u.top), apply_coupling(u.top) + shift_down(u.bottom)};
  }

  // Unitary part T0 = diag(U, U).
  BlockVector apply_unitary_part(const BlockVector& u) const {
    return {shift_up(u.top), shift_up(u.bottom)};
  }

  // Perturbation S = T - T0: only the (1,2) entry R survives.
  BlockVector apply_perturbation(const BlockVector& u) const {
    return {apply_coupling(u.bottom), FinSuppVector::zero()};
  }

  FinSuppVector apply_coupling(const FinSuppVector& u) const {
    FinSuppVector out;
    for (std::int64_t n = u.lo(); n <= u.hi(); ++n) {
      const cxd c = u.at(n);
      if (c != cxd(0.0)) out.set(n, coupling_at(n) * c);
    }
    return out;
  }

  static FinSuppVector shift_up(const FinSuppVector& u) { return u.shifted(1); }
  static FinSuppVector shift_down(const FinSuppVector& u) { return u.shifted(-1); }

 private:
  WeightSequence coupling_;
};

inline BlockVector block_apply(const BlockShiftOperator& B, const BlockVector& u) {
  return B.apply(u);
}

struct BlockDecomposition {
  const BlockShiftOperator* op;
  BlockVector unitary(const BlockVector& u) const { return op->apply_unitary_part(u); }
  BlockVector perturbation(const BlockVector& u) const { return op->apply_perturbation(u); }
};

inline BlockDecomposition perturbation_part(const BlockShiftOperator& B) { return {&B}; }

// ---------------------------------------------------------------------------
// Finite sections (orthogonal compression to |j| <= N).

inline void check_section_width(std::int64_t N) {
  if (N < 1) throw std::invalid_argument("finite_section: need N >= 1");
  if (N > kMaxSectionHalfWidth) {
    throw std::invalid_argument("finite_section: N exceeds the resource guard");
  }
}

// Section of the weighted shift: entry (j-1, j) = rho_{j-1}.
inline Eigen::MatrixXcd finite_section(const WeightedShift& T, std::int64_t N) {
  check_section_width(N);
  const std::int64_t M = 2 * N + 1;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(M, M);
  for (std::int64_t j = -N + 1; j <= N; ++j) {
    S(j - 1 + N, j + N) = T.weights()(j - 1);
  }
  return S;
}

inline Eigen::MatrixXcd finite_section(const DiagonalOperator& D, std::int64_t N) {
  check_section_width(N);
  const std::int64_t M = 2 * N + 1;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(M, M);
  for (std::int64_t j = -N; j <= N; ++j) S(j + N, j + N) = D.entry(j);
  return S;
}

// Block section, dimension 2(2N+1); the top component occupies the first
// 2N+1 coordinates.
inline Eigen::MatrixXcd finite_section(const BlockShiftOperator& B, std::int64_t N) {
  check_section_width(N);
  const std::int64_t M = 2 * N + 1;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
  for (std::int64_t n = -N; n <= N - 1; ++n) {
    S(n + 1 + N, n + N) = 1.0;          // U in the top block
    S(M + n + 1 + N, M + n + N) = 1.0;  // U in the bottom block
  }
  for (std::int64_t n = -N; n <= N; ++n) {
    S(n + N, M + n + N) = B.coupling_at(n);  // R coupling
  }
  return S;
}

// Section of the perturbation S = T - T0 alone.
inline Eigen::MatrixXcd perturbation_section(const BlockShiftOperator& B, std::int64_t N) {
  check_section_width(N);
  const std::int64_t M = 2 * N + 1;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
  for (std::int64_t n = -N; n <= N; ++n) S(n + N, M + n + N) = B.coupling_at(n);
  return S;
}

inline Eigen::VectorXcd section_vector(const FinSuppVector& f, std::int64_t N) {
  const std::int64_t M = 2 * N + 1;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(M);
  for (std::int64_t j = std::max(f.lo(), -N); j <= std::min(f.hi(), N); ++j) {
    v(j + N) = f.at(j);
  }
  return v;
}

inline Eigen::VectorXcd section_vector(const BlockVector& f, std::int64_t N) {
  const std::int64_t M = 2 * N + 1;
  Eigen::VectorXcd v(2 * M);
  v.head(M) = section_vector(f.top, N);
  v.tail(M) = section_vector(f.bottom, N);
  return v;
}

}  // namespace speclab

#endif  // SPECLAB_OPERATORS_HPP
