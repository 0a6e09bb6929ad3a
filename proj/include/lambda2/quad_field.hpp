#pragma once

#include <vector>

#include "lambda2/core.hpp"

namespace lambda2 {

/* Real quadratic field Q(sqrt D), D > 1 squarefree. */
struct QuadraticField {
    Int D;
    Int disc;                      /* D if D = 1 mod 4, else 4D */
    std::vector<Int> disc_primes;  /* ascending prime divisors of disc */
};

QuadraticField make_field(const Int& D);

/* Fundamental unit of the maximal order, written (x + y sqrt D)/2 when halved
 * (x, y both odd), x + y sqrt D otherwise.  x, y > 0. */
struct FundamentalUnit {
    Int x, y;
    bool halved = false;
    int norm = 0; /* +1 or -1 */
};

FundamentalUnit fundamental_unit(const Int& D);

/* Norm of the fundamental unit, by direct evaluation. */
int unit_norm(const Int& D);

/* True iff 2 splits in Q(sqrt D): D = 1 mod 8. */
bool splits_at_2(const Int& D);

/* For eps_{2D} = r + s sqrt(2D) of norm +1 (r odd, s even), the factorization
 * r +- 1 = d1 s1^2, r -+ 1 = 2 d2 s2^2 with d1 d2 = D, s1 s2 = s.
 * plus_on_d1 records which sign carries the odd-square side: d1 s1^2 = r + 1
 * when true, r - 1 when false. */
struct Epsilon2DDecomposition {
    Int r, s;
    Int d1, s1, d2, s2;
    bool plus_on_d1 = false;
};

/* Requires N(eps_{2D}) = +1 (else norm_minus_one); throws
 * decomposition_failure if no divisor split works (would falsify the
 * underlying two-class-group argument). */
Epsilon2DDecomposition eps2d_decompose(const Int& D);

/* Image of the fundamental unit of Q(sqrt D), D = 1 mod 8, in Z_2 under the
 * splitting embedding sqrt(D) -> canonical 2-adic root; returns the unit's
 * residue mod 8.  k = working 2-adic precision, doubled on precision loss. */
Int eps_image_mod8(const Int& D, unsigned k = 64);

}  // namespace lambda2
