#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lambda2/core_arith.hpp"

using namespace lambda2;

TEST_CASE("isqrt on fixed values and near-square boundaries") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(1) == 1);
    CHECK(isqrt(2) == 1);
    CHECK(isqrt(99) == 9);
    CHECK(isqrt(100) == 10);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Int n = Int(rng() % 1000000007) * Int(rng() % 1000000007);
        Int s = isqrt(n);
        CHECK(s * s <= n);
        CHECK((s + 1) * (s + 1) > n);
    }
}

TEST_CASE("is_perfect_square") {
    CHECK(is_perfect_square(0));
    CHECK(is_perfect_square(1));
    CHECK(is_perfect_square(144));
    CHECK(!is_perfect_square(2));
    CHECK(!is_perfect_square(143));
    CHECK(!is_perfect_square(145));
}

TEST_CASE("is_prime on fixed primes, composites, and a Carmichael number") {
    for (long p : {2L, 3L, 5L, 17L, 41L, 89L, 97L, 7919L}) CHECK(is_prime(Int(p)));
    for (long c : {0L, 1L, 4L, 341L, 561L, 1105L, 7917L}) CHECK(!is_prime(Int(c)));
    CHECK(is_prime(Int("2305843009213693951"))); /* 2^61 - 1 */
    CHECK(!is_prime(Int("147573952589676412927"))); /* 2^67 - 1 = 193707721 * ... */
}

TEST_CASE("factorize recovers the input and emits ascending primes") {
    CHECK(factorize(1).empty());
    auto f = factorize(60);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Int, int>{2, 2});
    CHECK(f[1] == std::pair<Int, int>{3, 1});
    CHECK(f[2] == std::pair<Int, int>{5, 1});
    auto g = factorize(697);
    REQUIRE(g.size() == 2);
    CHECK(g[0].first == 17);
    CHECK(g[1].first == 41);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Int n = 2 + Int(rng() % 5000000);
        Int back = 1;
        Int prev = 0;
        for (const auto& [p, e] : factorize(n)) {
            CHECK(is_prime(p));
            CHECK(p > prev);
            prev = p;
            for (int k = 0; k < e; ++k) back *= p;
        }
        CHECK(back == n);
    }
}

TEST_CASE("is_squarefree") {
    for (long n : {1L, 2L, 3L, 30L, 697L, 2026L}) CHECK(is_squarefree(Int(n)));
    for (long n : {4L, 12L, 18L, 50L, 75L, 697L * 17L}) CHECK(!is_squarefree(Int(n)));
}

TEST_CASE("mod_pow and mod_inv") {
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_pow(5, 0, 7) == 1);
    CHECK(mod_inv(3, 7) == 5);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        Int p = 1000003;
        Int a = 1 + Int(rng() % 1000002);
        CHECK(mod_pow(a, p - 1, p) == 1); /* Fermat */
        CHECK(a * mod_inv(a, p) % p == 1);
    }
}

TEST_CASE("sqrt_mod_p returns the smaller root and rejects non-residues") {
    CHECK(sqrt_mod_p(2, 7) == 3);
    CHECK(sqrt_mod_p(2, 17) == 6);
    CHECK_THROWS_AS((void)sqrt_mod_p(3, 7), not_a_residue);
    std::mt19937_64 rng(17);
    for (long p : {11L, 101L, 1009L, 65537L, 1000003L}) {
        for (int i = 0; i < 20; ++i) {
            Int a = 1 + Int(rng() % (p - 1));
            if (mod_pow(a, (Int(p) - 1) / 2, p) != 1) continue;
            Int r = sqrt_mod_p(a, p);
            CHECK(r * r % p == a);
            CHECK(r <= p - r);
        }
    }
}

TEST_CASE("2-adic square root: canonical branch and precision compatibility") {
    CHECK(hensel_sqrt_2adic(17, 5) == 9);
    std::mt19937_64 rng(19);
    for (int i = 0; i < 50; ++i) {
        Int a = 8 * Int(rng() % 100000) + 1;
        Int s = hensel_sqrt_2adic(a, 40);
        CHECK(s % 4 == 1);
        Int m = Int(1) << 40;
        CHECK(s * s % m == a % m);
        for (unsigned j : {3u, 8u, 16u, 39u})
            CHECK(hensel_sqrt_2adic(a, j) == s % (Int(1) << j));
    }
    CHECK_THROWS_AS((void)hensel_sqrt_2adic(3, 8), no_two_adic_root);
    CHECK_THROWS_AS((void)hensel_sqrt_2adic(5, 8), no_two_adic_root);
}

TEST_CASE("continued fractions of sqrt(D) on worked expansions") {
    auto e2 = cf_quadratic(2, false);
    CHECK(e2.a0 == 1);
    CHECK(e2.period == std::vector<Int>{2});
    auto e3 = cf_quadratic(3, false);
    CHECK(e3.a0 == 1);
    CHECK(e3.period == std::vector<Int>{1, 2});
    auto e7 = cf_quadratic(7, false);
    CHECK(e7.a0 == 2);
    CHECK(e7.period == std::vector<Int>{1, 1, 1, 4});
    auto e13 = cf_quadratic(13, false);
    CHECK(e13.a0 == 3);
    CHECK(e13.period == std::vector<Int>{1, 1, 1, 1, 6});
    auto e19 = cf_quadratic(19, false);
    CHECK(e19.a0 == 4);
    CHECK(e19.period == std::vector<Int>{2, 1, 3, 1, 2, 8});
}

TEST_CASE("continued fractions of (1+sqrt(D))/2 on worked expansions") {
    auto e5 = cf_quadratic(5, true);
    CHECK(e5.a0 == 1);
    CHECK(e5.period == std::vector<Int>{1});
    auto e13 = cf_quadratic(13, true);
    CHECK(e13.a0 == 2);
    CHECK(e13.period == std::vector<Int>{3});
    auto e17 = cf_quadratic(17, true);
    CHECK(e17.a0 == 2);
    CHECK(e17.period == std::vector<Int>{1, 1, 3});
}

TEST_CASE("period shape: palindrome body, last term tied to a0") {
    for (long D = 2; D < 300; ++D) {
        if (!is_squarefree(Int(D))) continue;
        auto e = cf_quadratic(D, false);
        auto& p = e.period;
        REQUIRE(!p.empty());
        CHECK(p.back() == 2 * e.a0);
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            CHECK(p[i] == p[p.size() - 2 - i]);
        if (D % 4 == 1) {
            auto h = cf_quadratic(D, true);
            REQUIRE(!h.period.empty());
            CHECK(h.period.back() == 2 * h.a0 - 1);
        }
    }
}
