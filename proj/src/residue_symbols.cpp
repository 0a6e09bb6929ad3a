#include "lambda2/residue_symbols.hpp"

#include "lambda2/core_arith.hpp"

namespace lambda2 {

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int quartic_mod_p(const Int& a, const Int& p) {
    if (!is_prime(p) || p % 4 != 1)
        throw undefined_symbol("quartic_mod_p: modulus must be prime, 1 mod 4");
    if (kronecker(a, p) != 1)
        throw undefined_symbol("quartic_mod_p: base must be a quadratic residue");
    Int r = mod_pow(a % p + p, (p - 1) / 4, p);
    if (r == 1) return 1;
    if (r == p - 1) return -1;
    throw undefined_symbol("quartic_mod_p: impossible power value");
}

int quartic_over_2(const Int& D) {
    Int m = D % 16;
    if (m < 0) m += 16;
    if (m == 1) return 1;
    if (m == 9) return -1;
    throw undefined_symbol("quartic_over_2: argument not 1 mod 8");
}

int quartic_multiplicative(const Int& a, const Int& n) {
    if (n <= 0 || n % 2 == 0)
        throw undefined_symbol("quartic_multiplicative: modulus must be odd positive");
    int s = 1;
    for (auto& [p, e] : factorize(n)) {
        if (p == 1) continue;
        int f = quartic_mod_p(a, p);
        if (e % 2) s *= f;
    }
    return s;
}

int scholz_symbol(const Int& p) {
    if (!is_prime(p) || p % 8 != 1)
        throw undefined_symbol("scholz_symbol: argument must be prime, 1 mod 8");
    Int s = sqrt_mod_p(2, p);
    /* 1+s never vanishes mod p: s = -1 would force 2 = 1 mod p */
    return kronecker(1 + s, p);
}

int quartic_product(const Int& D) {
    return quartic_multiplicative(2, D) * quartic_over_2(D);
}

}  // namespace lambda2
