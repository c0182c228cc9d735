#pragma once

#include <gmpxx.h>

#include "gwcalc/rational.hpp"

namespace gwcalc {

// Truncated binomial coefficient: C(p,q) for 0 <= q <= p, and 0 for every
// other integer pair (including p < 0). The summed intersection formulas
// in this engine rely on the out-of-range cases being exactly zero; the
// negative-upper-index extension is deliberately not used.
inline Rational binomial(long p, long q) {
    if (q < 0 || p < 0 || q > p) return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(q));
    return Rational(r);
}

}  // namespace gwcalc
