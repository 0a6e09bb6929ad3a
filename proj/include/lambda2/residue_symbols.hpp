#pragma once

#include "lambda2/core.hpp"

namespace lambda2 {

/* All symbols return an int in {+1, -1, 0} (0 only where Kronecker allows it). */

/* Kronecker symbol (a/n), fully general. */
int kronecker(const Int& a, const Int& n);

/* Rational quartic residue power: (a/p)_4 = a^((p-1)/4) mod p in {+1,-1}.
 * Defined only for p prime, p = 1 mod 4, with (a/p) = +1; else undefined_symbol. */
int quartic_mod_p(const Int& a, const Int& p);

/* (D/2)_4 in the one-sided convention: +1 if D = 1 mod 16, -1 if D = 9 mod 16.
 * Defined only for D = 1 mod 8; else undefined_symbol. */
int quartic_over_2(const Int& D);

/* (a/n)_4 extended multiplicatively over the odd prime factorization of n > 0.
 * Every factor must itself be defined; errors propagate.  Even n rejected. */
int quartic_multiplicative(const Int& a, const Int& n);

/* ((1+sqrt2)/p) for p = 1 mod 8: Legendre of 1+s where s^2 = 2 mod p.
 * Independent of the root choice; equals (2/p)_4 (p/2)_4 by reciprocity. */
int scholz_symbol(const Int& p);

/* (2/D)_4 (D/2)_4 for odd squarefree D = 1 mod 8, first factor multiplicative
 * over the primes of D.  This is the piece deciding whether the fundamental
 * unit of Q(sqrt D) is a norm from the first tower layer. */
int quartic_product(const Int& D);

}  // namespace lambda2
