#include "lambda2/quad_field.hpp"

#include <cassert>

#include "lambda2/core_arith.hpp"

namespace lambda2 {

QuadraticField make_field(const Int& D) {
    if (D <= 1) throw precondition_violation("make_field: need D > 1");
    if (!is_squarefree(D)) throw not_squarefree("make_field: D not squarefree");
    QuadraticField f;
    f.D = D;
    f.disc = (D % 4 == 1) ? D : 4 * D;
    for (auto& [p, e] : factorize(f.disc)) f.disc_primes.push_back(p);
    return f;
}

namespace {

/* minimal (x, y), y >= 1, with x^2 - D y^2 = (-1)^(period of sqrt D) */
void pell_min(const Int& D, Int& x, Int& y, int& norm) {
    CFExpansion cf = cf_quadratic(D, false);
    Int h1 = 1, h0 = cf.a0, k1 = 0, k0 = 1;
    for (std::size_t i = 0; i + 1 < cf.period.size(); ++i) {
        const Int& ai = cf.period[i];
        Int h = ai * h0 + h1, k = ai * k0 + k1;
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
    }
    x = h0;
    y = k0;
    norm = (cf.period.size() % 2) ? -1 : 1;
    if (x * x - D * y * y != norm)
        throw precondition_violation("pell_min: convergent identity failed");
}

}  // namespace

FundamentalUnit fundamental_unit(const Int& D) {
    if (D <= 1) throw precondition_violation("fundamental_unit: need D > 1");
    if (!is_squarefree(D)) throw not_squarefree("fundamental_unit: D not squarefree");
    Int x, y;
    int n;
    pell_min(D, x, y, n);
    if (D % 4 == 1) {
        /* the unit of the full ring of integers may be a cube root:
         * (a + b sqrt D)/2 with a, b odd and 2x = a^3 - 3na */
        Int t;
        Int twox = 2 * x;
        mpz_root(t.get_mpz_t(), twox.get_mpz_t(), 3);
        for (Int a = t - 2; a <= t + 2; ++a) {
            if (a <= 0 || a % 2 == 0) continue;
            if (a * a * a - 3 * Int(n) * a != twox) continue;
            Int bb_num = a * a - 4 * Int(n);
            if (bb_num <= 0 || bb_num % D != 0) continue;
            Int bb = bb_num / D;
            if (!is_perfect_square(bb)) continue;
            Int b = isqrt(bb);
            if (b % 2 == 0) continue;
            FundamentalUnit u{a, b, true, n};
            assert((a * a - D * b * b) == 4 * Int(n));
            return u;
        }
    }
    return FundamentalUnit{x, y, false, n};
}

int unit_norm(const Int& D) { return fundamental_unit(D).norm; }

bool splits_at_2(const Int& D) {
    Int m = D % 8;
    if (m < 0) m += 8;
    return m == 1;
}

Epsilon2DDecomposition eps2d_decompose(const Int& D) {
    if (D <= 1 || D % 2 == 0)
        throw precondition_violation("eps2d_decompose: need odd D > 1");
    FundamentalUnit u = fundamental_unit(2 * D); /* 2D = 2 mod 4: never halved */
    if (u.norm != 1) throw norm_minus_one("eps2d_decompose: unit norm is -1");
    Int r = u.x, s = u.y;
    if (r % 2 != 1 || s % 2 != 0)
        throw decomposition_failure("eps2d_decompose: unexpected unit parities");

    std::vector<Int> divisors{1};
    for (auto& [p, e] : factorize(D)) {
        std::size_t sz = divisors.size();
        Int pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) divisors.push_back(divisors[j] * pk);
        }
    }
    for (int sign = 0; sign < 2; ++sign) {
        Int plus = sign == 0 ? Int(r + 1) : Int(r - 1);   /* candidate d1 s1^2 side */
        Int minus = sign == 0 ? Int(r - 1) : Int(r + 1);  /* candidate 2 d2 s2^2 side */
        for (const Int& d1 : divisors) {
            Int d2 = D / d1;
            if (plus % d1 != 0 || minus % (2 * d2) != 0) continue;
            Int q1 = plus / d1, q2 = minus / (2 * d2);
            if (!is_perfect_square(q1) || !is_perfect_square(q2)) continue;
            Int s1 = isqrt(q1), s2 = isqrt(q2);
            if (s1 * s2 != s) continue;
            Epsilon2DDecomposition out;
            out.r = r;
            out.s = s;
            out.d1 = d1;
            out.s1 = s1;
            out.d2 = d2;
            out.s2 = s2;
            out.plus_on_d1 = (sign == 0);
            return out;
        }
    }
    throw decomposition_failure("eps2d_decompose: no divisor split matches");
}

Int eps_image_mod8(const Int& D, unsigned k) {
    if (k < 6) throw precondition_violation("eps_image_mod8: need k >= 6");
    if (!splits_at_2(D))
        throw precondition_violation("eps_image_mod8: 2 must split (D = 1 mod 8)");
    FundamentalUnit u = fundamental_unit(D);
    for (int attempt = 0; attempt < 5; ++attempt, k *= 2) {
        Int s = hensel_sqrt_2adic(D, k);
        Int mod = Int(1) << k;
        Int num = (u.x + u.y * s) % mod;
        if (num < 0) num += mod;
        if (!u.halved) {
            /* integral unit of odd norm: already a 2-adic unit */
            Int res = num % 8;
            assert(res % 2 == 1);
            return res;
        }
        /* halved: conjugate numerators multiply to +-4, so valuation is 1 */
        if (num == 0) continue; /* precision loss: retry doubled */
        unsigned long v = mpz_scan1(num.get_mpz_t(), 0);
        if (v + 3 > k) continue;
        if (v != 1) throw precision_loss("eps_image_mod8: unexpected valuation");
        return (num >> 1) % 8;
    }
    throw precision_loss("eps_image_mod8: precision exhausted");
}

}  // namespace lambda2
