#pragma once

#include "sierp/rational.hpp"

namespace sierp {

// Walk dimension d_w = log5/log2 and Hausdorff dimension d_h = log3/log2.
// At dyadic scales the powers below are exact rationals:
//   (2^k)^{d_w} = 5^k,  (2^k)^{d_w - d_h} = (5/3)^k.
// Elsewhere they are certified upper bounds computed with 256-bit directed
// rounding, so that every verdict built on them stays conservative.

/// True iff r == 2^k for some integer k (reported through *k when non-null).
bool dyadic_power(const Rational& r, long* k);

/// Upper bound of d^{d_w - d_h} given the exact squared distance d^2.
/// Exact when d^2 == 4^k. Returns 0 for d2 == 0.
Rational dist_pow_upper(const Rational& d2);

/// Upper bound of r^{d_w} for r > 0; exact (5^k) when r == 2^k.
Rational radius_pow_upper(const Rational& r);

}  // namespace sierp
