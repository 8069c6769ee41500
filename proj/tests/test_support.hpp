#ifndef SPECLAB_TEST_SUPPORT_HPP
#define SPECLAB_TEST_SUPPORT_HPP

// Test-only oracles, independent of the closed forms they check: matrix
// elements are expanded through raw operator powers, integrals through
// quadrature on a second route.

#include <random>
#include <vector>

#include "speclab/operators.hpp"
#include "speclab/vectors.hpp"

namespace speclab::test {

// T^{-1} e_j = e_{j+1} / rho_j for invertible weights.
inline FinSuppVector shift_inverse_apply(const WeightedShift& T, const FinSuppVector& u) {
  FinSuppVector out;
  for (std::int64_t j = u.lo(); j <= u.hi(); ++j) {
    const cxd c = u.at(j);
    if (c != cxd(0.0)) out.set(j + 1, c / T.weights()(j));
  }
  return out;
}

// Taylor coefficients of <(T - z)^{-1} u, e_j> through operator powers:
// (T - z)^{-1} = sum_s z^s T^{-s-1}.
inline std::vector<cxd> inside_element_coeffs_bruteforce(const WeightedShift& T,
                                                         const FinSuppVector& u, std::int64_t j,
                                                         std::int64_t S) {
  std::vector<cxd> c;
  FinSuppVector w = shift_inverse_apply(T, u);
  for (std::int64_t s = 0; s <= S; ++s) {
    c.push_back(w.at(j));
    w = shift_inverse_apply(T, w);
  }
  return c;
}

// Taylor coefficients of <(U - z)^{-1} R (U - z)^{-1} u2, e_j> through raw
// powers of U^{-1} (the down shift) around both resolvent factors.
inline std::vector<cxd> chained_element_coeffs_bruteforce(const BlockShiftOperator& B,
                                                          const FinSuppVector& u2, std::int64_t j,
                                                          std::int64_t S) {
  std::vector<cxd> c(static_cast<std::size_t>(S + 1), cxd(0.0));
  for (std::int64_t b = 0; b <= S; ++b) {
    // U^{-b-1} u2, then R
    const FinSuppVector w = B.apply_coupling(u2.shifted(-(b + 1)));
    for (std::int64_t a = 0; a + b <= S; ++a) {
      // coefficient of z^(a+b) picks <U^{-a-1} (R U^{-b-1} u2), e_j>
      c[static_cast<std::size_t>(a + b)] += w.at(j + a + 1);
    }
  }
  return c;
}

inline double coeff_norm_sq(const std::vector<cxd>& c) {
  double s = 0.0;
  for (const cxd& v : c) s += std::norm(v);
  return s;
}

inline FinSuppVector random_finsupp(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  std::normal_distribution<double> normal(0.0, 1.0);
  FinSuppVector u;
  for (std::int64_t j = lo; j <= hi; ++j) u.set(j, cxd(normal(rng), normal(rng)));
  return u;
}

}  // namespace speclab::test

#endif  // SPECLAB_TEST_SUPPORT_HPP
