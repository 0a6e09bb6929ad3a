#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lambda2/core_arith.hpp"
#include "lambda2/residue_symbols.hpp"

using namespace lambda2;

TEST_CASE("kronecker on fixed values") {
    CHECK(kronecker(2, 7) == 1);
    CHECK(kronecker(2, 17) == 1);
    CHECK(kronecker(3, 5) == -1);
    CHECK(kronecker(5, 17) == -1);
    CHECK(kronecker(6, 3) == 0);
    CHECK(kronecker(7, 2) == 1);  /* 7 = -1 mod 8 */
    CHECK(kronecker(3, 2) == -1); /* 3 = 3 mod 8 */
    CHECK(kronecker(-1, 5) == 1);
    CHECK(kronecker(-1, 7) == -1);
}

TEST_CASE("kronecker is multiplicative and obeys quadratic reciprocity") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        Int a = 1 + Int(rng() % 5000);
        Int b = 1 + Int(rng() % 5000);
        Int n = 2 * Int(rng() % 2500) + 1;
        CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
        Int m = 2 * Int(rng() % 2500) + 1;
        Int g;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
        if (g != 1) continue;
        int sign = (m % 4 == 3 && n % 4 == 3) ? -1 : 1;
        CHECK(kronecker(m, n) * kronecker(n, m) == sign);
    }
}

TEST_CASE("rational quartic symbol mod p on frozen values") {
    CHECK(quartic_mod_p(2, 17) == -1);
    CHECK(quartic_mod_p(2, 41) == -1);
    CHECK(quartic_mod_p(2, 73) == 1);
    CHECK(quartic_mod_p(2, 89) == 1);
    CHECK(quartic_mod_p(2, 97) == -1);
    CHECK(quartic_mod_p(13, 17) == 1);
    CHECK(quartic_mod_p(17, 13) == -1);
}

TEST_CASE("quartic symbol domain: p = 1 mod 4 and (a/p) = +1") {
    CHECK_THROWS_AS((void)quartic_mod_p(2, 7), undefined_symbol);  /* p = 3 mod 4 */
    CHECK_THROWS_AS((void)quartic_mod_p(3, 17), undefined_symbol); /* (3/17) = -1 */
    CHECK_THROWS_AS((void)quartic_mod_p(2, 15), undefined_symbol); /* not prime */
}

TEST_CASE("quartic symbol squares to the quadratic one and is multiplicative") {
    std::mt19937_64 rng(29);
    int checked = 0;
    for (Int p = 5; p < 4000; p += 4) {
        if (!is_prime(p)) continue;
        for (int i = 0; i < 6; ++i) {
            Int a = 1 + Int(rng() % 500);
            Int b = 1 + Int(rng() % 500);
            if (kronecker(a, p) != 1 || kronecker(b, p) != 1) continue;
            int qa = quartic_mod_p(a, p);
            int qb = quartic_mod_p(b, p);
            CHECK(qa * qa == 1);
            if (a * b % p != 0)
                CHECK(quartic_mod_p(a * b, p) == qa * qb);
            ++checked;
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("dyadic quartic symbol: 1 vs 9 mod 16, domain 1 mod 8") {
    CHECK(quartic_over_2(17) == 1);
    CHECK(quartic_over_2(41) == -1);
    CHECK(quartic_over_2(97) == 1);   /* 97 = 1 mod 16 */
    CHECK(quartic_over_2(89) == -1);  /* 89 = 9 mod 16 */
    CHECK(quartic_over_2(697) == -1); /* 697 = 9 mod 16 */
    CHECK(quartic_over_2(3977) == -1);
    CHECK(quartic_over_2(3649) == 1);
    CHECK_THROWS_AS((void)quartic_over_2(5), undefined_symbol);
    CHECK_THROWS_AS((void)quartic_over_2(21), undefined_symbol);
}

TEST_CASE("multiplicative quartic extension over composite denominators") {
    CHECK(quartic_multiplicative(2, 17) == -1);
    CHECK(quartic_multiplicative(2, 697) == 1); /* (-1)(-1) over 17 * 41 */
    CHECK_THROWS_AS((void)quartic_multiplicative(2, 15), undefined_symbol);
    CHECK_THROWS_AS((void)quartic_multiplicative(2, 34), undefined_symbol);
}

TEST_CASE("symbol of 1+sqrt2 on frozen primes") {
    CHECK(scholz_symbol(17) == -1);
    CHECK(scholz_symbol(73) == -1);  /* (2/73)4 = +1, (73/2)4 = -1 */
    CHECK(scholz_symbol(113) == 1);  /* both quartics +1 */
}

TEST_CASE("symbol of 1+sqrt2 equals the quartic product (reciprocity)") {
    for (Int p = 17; p < 20000; p += 8) {
        if (!is_prime(p)) continue;
        CHECK(scholz_symbol(p) == quartic_mod_p(2, p) * quartic_over_2(p));
    }
}

TEST_CASE("quartic product over a two-prime radicand") {
    CHECK(quartic_product(17) == -1);
    CHECK(quartic_product(41) == 1); /* (-1)(-1) */
    CHECK(quartic_product(697) == -1);
    CHECK_THROWS_AS((void)quartic_product(5), undefined_symbol);
}
