#pragma once

#include <span>

#include "rmt/bigrat.hpp"
#include "rmt/types.hpp"

namespace rmt::identities {

// Exact rational multiple of (2 pi i)^{two_pi_i_power}.
struct GammaDetValue {
  exact::BigRat coeff;
  int two_pi_i_power = 0;
};

Complex to_complex(const GammaDetValue& v);

// (K-1)! * det[ 1/Gamma(2K-3-(i-1)-2(j-1)) ], entries at non-positive
// arguments are the exact rational 0.
GammaDetValue m_gamma_det(int k);

// (-1)^{(K-1)(K-2)/2} (K-1)! prod_{j=1}^{K-2} 1/(2j-1)!!
GammaDetValue m_closed_form(int k);

// (-1)^{(K-1)(K-2)/2} (2 pi i)^{K-1} 2^{(K-1)(K-3)/2} G(K)
//    sqrt(Gamma(2K-1) Gamma(K)) / sqrt(G(2K-1)), floating point.
Complex m_barnes_form(int k);

// Same determinant with the final row's Gamma arguments jumped by 2.
GammaDetValue j_gamma_det(int k);

// (K-1)(K-2)/2 * det(M matrix) == det(J matrix), exactly.
bool interesting_det_relation_check(int k);

// Heineman's Theorem I: det(rows 1, x, ..., x^{n-2}, x^n) ==
// (sum x) * det(Vandermonde), exactly.  Values must be distinct.
bool vandermondian_check(std::span<const std::int64_t> x);

// The K x K reciprocal-Gamma matrix whose final column has arguments <= -1
// has determinant exactly 0.
bool all_zero_det_check(int k);

}  // namespace rmt::identities
