#pragma once

#include <utility>
#include <vector>

#include "lambda2/core.hpp"

namespace lambda2 {

/* floor(sqrt(n)), n >= 0 */
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n);

/* Miller-Rabin.  Deterministic witness set {2..37} below 3.3e24 (covers the
 * 3e18 contract bound with margin); 40 extra derandomized rounds beyond. */
bool is_prime(const Int& n);

/* prime factorization as (prime, exponent) pairs, primes ascending.
 * Trial division, then Brent rho; sized for desk scale (<= ~1e12). */
std::vector<std::pair<Int, int>> factorize(const Int& n);

bool is_squarefree(const Int& n);

Int mod_pow(const Int& base, const Int& exp, const Int& mod);
Int mod_inv(const Int& a, const Int& mod);

/* Tonelli-Shanks.  Returns the smaller of the two roots of x^2 = a (mod p),
 * p an odd prime.  Throws not_a_residue when (a/p) != +1. */
Int sqrt_mod_p(const Int& a, const Int& p);

/* Canonical 2-adic square root: the unique s with s^2 = a (mod 2^k) that is
 * the reduction of the 2-adic root = 1 (mod 4).  Requires a = 1 (mod 8),
 * k >= 3.  Results are compatible across precisions: the k-bit value reduced
 * mod 2^j equals the j-bit value for 3 <= j <= k. */
Int hensel_sqrt_2adic(const Int& a, unsigned k);

/* Continued fraction of sqrt(D) (use_half = false) or (1+sqrt(D))/2
 * (use_half = true, requires D = 1 mod 4).  D squarefree, D > 1.
 * The expansion is a0 followed by a purely periodic tail. */
struct CFExpansion {
    Int a0;
    std::vector<Int> period;
    bool half = false;
    std::size_t period_length() const { return period.size(); }
};

CFExpansion cf_quadratic(const Int& D, bool use_half);

}  // namespace lambda2
