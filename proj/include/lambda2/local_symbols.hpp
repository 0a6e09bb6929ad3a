#pragma once

#include <vector>

#include "lambda2/core.hpp"

namespace lambda2 {

/* Hilbert symbol (r, s)_p over the p-adic rationals, p an odd prime. */
int hilbert_qp(const Rat& r, const Rat& s, const Int& p);
/* Dyadic Hilbert symbol (r, s)_2. */
int hilbert_q2(const Rat& r, const Rat& s);
/* Archimedean symbol: -1 iff both arguments are negative. */
int hilbert_qinf(const Rat& r, const Rat& s);
/* Evaluates the symbol at every place dividing 2 r s and at infinity and
 * checks the product is +1. */
bool hilbert_q_product_check(const Rat& r, const Rat& s);

/* Element x + y sqrt(2) of the real quadratic field of radicand 2. */
struct Q1Element {
    Rat x, y;
    bool is_zero() const { return x == 0 && y == 0; }
    Rat norm() const { return x * x - 2 * y * y; }
    Q1Element conj() const { return {x, -y}; }
    Q1Element operator*(const Q1Element& o) const {
        return {x * o.x + 2 * y * o.y, x * o.y + y * o.x};
    }
    bool operator==(const Q1Element&) const = default;
};

Q1Element q1_of(long x, long y);

/* Places: split(p, s) with sqrt2 ≡ s the chosen root of 2 mod p (p ≡ ±1 mod 8),
 * inert(p) (p ≡ ±3 mod 8), the single ramified dyadic place, and the two real
 * embeddings sqrt2 -> ±sqrt2. */
enum class Q1PlaceKind { Split, Inert, Ramified, RealPlus, RealMinus };

struct Q1Place {
    Q1PlaceKind kind;
    Int p;     /* rational prime below (finite kinds), else 0 */
    Int sqrt2; /* split only: the root selecting the prime ideal */
    bool operator==(const Q1Place&) const = default;
};

/* Places above a rational prime: two (conjugate, smaller root first) when p
 * splits, one when inert, the ramified place for p = 2. */
std::vector<Q1Place> q1_prime_above(const Int& p);
Q1Place q1_conjugate_place(const Q1Place& v);

/* Sign of the image of e under the embedding sqrt2 -> +sqrt2 / -sqrt2. */
int q1_embedding_sign(const Q1Element& e, bool plus_embedding);

/* Hilbert symbol of the completion at v.  Split places embed into the p-adic
 * rationals by Hensel-lifting the chosen root; inert places use the tame
 * formula with residue field of size p^2; the ramified dyadic symbol is the
 * product of the symbols at all other places. */
int hilbert_q1(const Q1Element& a, const Q1Element& b, const Q1Place& v);

/* Independent route for the ramified dyadic place: classifies both arguments
 * modulo squares in the completion and decides norm-group membership by
 * enumerating values of the associated binary form over a finite quotient. */
int hilbert_q1_ramified_oracle(const Q1Element& a, const Q1Element& b);

/* Product over all places with the ramified symbol taken from the oracle. */
bool q1_product_check(const Q1Element& a, const Q1Element& b);

/* Generator of the prime ideal above split p selected by sqrt2 -> s, via
 * norm-Euclidean gcd; the result has norm ±p. */
Q1Element q1_ideal_generator(const Int& p, const Int& s);

}  // namespace lambda2
