#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lambda2/core_arith.hpp"
#include "lambda2/local_symbols.hpp"
#include "lambda2/residue_symbols.hpp"

using namespace lambda2;

namespace {

Rat rand_rat(std::mt19937_64& rng) {
    long num = (long)(rng() % 4001) - 2000;
    if (num == 0) num = 1;
    long den = 1 + (long)(rng() % 60);
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Q1Element rand_q1(std::mt19937_64& rng) {
    for (;;) {
        long x = (long)(rng() % 51) - 25;
        long y = (long)(rng() % 51) - 25;
        if (x != 0 || y != 0) return q1_of(x, y);
    }
}

}  // namespace

TEST_CASE("odd-place Hilbert symbol on worked pairs") {
    CHECK(hilbert_qp(2, 5, 5) == -1);  /* (2/5) = -1 */
    CHECK(hilbert_qp(5, 5, 5) == 1);   /* (5,5) = (-1,5), (-1/5) = 1 */
    CHECK(hilbert_qp(3, 7, 7) == -1);  /* (3/7) = -1 */
    CHECK(hilbert_qp(3, 7, 5) == 1);   /* both units at 5 */
    CHECK(hilbert_qp(Rat(1, 5), 10, 5) == -1); /* = (5,10) = (5,2): (2/5) = -1 */
}

TEST_CASE("dyadic Hilbert symbol on worked pairs") {
    CHECK(hilbert_q2(2, 5) == -1); /* (2/5) pattern: 5 = -3 mod 8 */
    CHECK(hilbert_q2(2, 7) == 1);  /* 7 = -1 mod 8 */
    CHECK(hilbert_q2(5, 5) == 1);
    CHECK(hilbert_q2(3, 3) == -1);
    CHECK(hilbert_q2(-1, -1) == -1);
    CHECK(hilbert_q2(-1, 3) == -1);
    CHECK(hilbert_q2(-1, 5) == 1);
    CHECK(hilbert_q2(2, -1) == 1);
}

TEST_CASE("real-place symbol") {
    CHECK(hilbert_qinf(-1, -1) == -1);
    CHECK(hilbert_qinf(1, -1) == 1);
    CHECK(hilbert_qinf(Rat(-3), Rat(-7, 2)) == -1);
    CHECK(hilbert_qinf(2, -5) == 1);
}

TEST_CASE("rational Hilbert symbols are symmetric, bilinear, and satisfy Steinberg") {
    std::mt19937_64 rng(31);
    std::vector<Int> odd_primes = {3, 5, 7, 11, 13, 17};
    for (int i = 0; i < 400; ++i) {
        Rat a = rand_rat(rng), b = rand_rat(rng), c = rand_rat(rng);
        for (const Int& p : odd_primes) {
            CHECK(hilbert_qp(a, b, p) == hilbert_qp(b, a, p));
            CHECK(hilbert_qp(a, b * c, p) == hilbert_qp(a, b, p) * hilbert_qp(a, c, p));
            CHECK(hilbert_qp(a, -a, p) == 1);
            if (a != 1) CHECK(hilbert_qp(a, 1 - a, p) == 1);
        }
        CHECK(hilbert_q2(a, b) == hilbert_q2(b, a));
        CHECK(hilbert_q2(a, b * c) == hilbert_q2(a, b) * hilbert_q2(a, c));
        CHECK(hilbert_q2(a, -a) == 1);
        if (a != 1) CHECK(hilbert_q2(a, 1 - a) == 1);
        CHECK(hilbert_qinf(a, -a) == 1);
        CHECK(hilbert_qinf(a, b) == hilbert_qinf(b, a));
    }
}

TEST_CASE("product formula over the rationals") {
    CHECK(hilbert_q_product_check(2, 5));
    CHECK(hilbert_q_product_check(-1, -1));
    CHECK(hilbert_q_product_check(Rat(3, 7), Rat(-14, 5)));
    std::mt19937_64 rng(37);
    for (int i = 0; i < 500; ++i)
        CHECK(hilbert_q_product_check(rand_rat(rng), rand_rat(rng)));
}

TEST_CASE("arithmetic in the radicand-2 field") {
    Q1Element u = q1_of(1, 1); /* 1 + sqrt2 */
    CHECK(u.norm() == -1);
    CHECK(u.conj() == q1_of(1, -1));
    CHECK((u * u.conj()).x == -1);
    CHECK((u * u).x == 3);
    CHECK((u * u).y == 2);
    CHECK(q1_embedding_sign(u, true) == 1);
    CHECK(q1_embedding_sign(u.conj(), true) == -1);
    CHECK(q1_embedding_sign(u.conj(), false) == 1);
}

TEST_CASE("places above rational primes") {
    auto v7 = q1_prime_above(7);
    REQUIRE(v7.size() == 2);
    CHECK(v7[0].kind == Q1PlaceKind::Split);
    CHECK(v7[0].sqrt2 == 3);
    CHECK(v7[1].sqrt2 == 4);
    CHECK(q1_conjugate_place(v7[0]) == v7[1]);

    auto v17 = q1_prime_above(17);
    REQUIRE(v17.size() == 2);
    CHECK(v17[0].sqrt2 == 6);
    CHECK(v17[1].sqrt2 == 11);

    auto v3 = q1_prime_above(3);
    REQUIRE(v3.size() == 1);
    CHECK(v3[0].kind == Q1PlaceKind::Inert);
    CHECK(q1_conjugate_place(v3[0]) == v3[0]);

    auto v2 = q1_prime_above(2);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].kind == Q1PlaceKind::Ramified);
}

TEST_CASE("ramified dyadic symbol: worked values via the product formula") {
    Q1Element s2 = q1_of(0, 1);
    Q1Element u = q1_of(1, 1);
    /* only the minus real embedding contributes -1 for each pair */
    CHECK(hilbert_q1_ramified_oracle(s2, s2) == -1);
    CHECK(hilbert_q1_ramified_oracle(u, u) == -1);
    CHECK(hilbert_q1_ramified_oracle(q1_of(1, 0), s2) == 1);
}

TEST_CASE("ramified oracle is symmetric and bilinear on square classes") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 60; ++i) {
        Q1Element a = rand_q1(rng), b = rand_q1(rng), c = rand_q1(rng);
        int ab = hilbert_q1_ramified_oracle(a, b);
        CHECK(ab == hilbert_q1_ramified_oracle(b, a));
        CHECK(hilbert_q1_ramified_oracle(a, b * c) ==
              ab * hilbert_q1_ramified_oracle(a, c));
    }
}

TEST_CASE("completion symbols at split, inert, and real places") {
    std::mt19937_64 rng(43);
    std::vector<Q1Place> places;
    for (Int p : {3, 5, 7, 17, 23}) {
        for (const auto& v : q1_prime_above(p)) places.push_back(v);
    }
    places.push_back(Q1Place{Q1PlaceKind::RealPlus, 0, 0});
    places.push_back(Q1Place{Q1PlaceKind::RealMinus, 0, 0});
    for (int i = 0; i < 60; ++i) {
        Q1Element a = rand_q1(rng), b = rand_q1(rng), c = rand_q1(rng);
        for (const auto& v : places) {
            int ab = hilbert_q1(a, b, v);
            CHECK(ab == hilbert_q1(b, a, v));
            CHECK(hilbert_q1(a, b * c, v) == ab * hilbert_q1(a, c, v));
            Q1Element ma{-a.x, -a.y};
            CHECK(hilbert_q1(a, ma, v) == 1); /* (a, -a) = 1 */
        }
    }
}

TEST_CASE("Galois symmetry: conjugating both arguments swaps conjugate places") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 40; ++i) {
        Q1Element a = rand_q1(rng), b = rand_q1(rng);
        for (Int p : {7, 17, 23, 31}) {
            auto v = q1_prime_above(p);
            REQUIRE(v.size() == 2);
            CHECK(hilbert_q1(a, b, v[0]) ==
                  hilbert_q1(a.conj(), b.conj(), v[1]));
        }
    }
}

TEST_CASE("product formula over the radicand-2 field") {
    CHECK(q1_product_check(q1_of(1, 1), q1_of(3, 0)));
    CHECK(q1_product_check(q1_of(0, 1), q1_of(5, 2)));
    std::mt19937_64 rng(53);
    for (int i = 0; i < 150; ++i)
        CHECK(q1_product_check(rand_q1(rng), rand_q1(rng)));
}

TEST_CASE("ideal generators above split primes") {
    for (Int p = 3; p < 200; p += 2) {
        if (!is_prime(p) || kronecker(2, p) != 1) continue;
        auto places = q1_prime_above(p);
        REQUIRE(places.size() == 2);
        for (const auto& v : places) {
            Q1Element g = q1_ideal_generator(p, v.sqrt2);
            Rat n = g.norm();
            CHECK((n == p || n == -p));
            /* membership in (p, sqrt2 - s): x + y s = 0 mod p */
            Int num = g.x.get_num() * g.y.get_den() +
                      g.y.get_num() * g.x.get_den() * v.sqrt2;
            CHECK(num % p == 0);
        }
    }
}

TEST_CASE("zero arguments are rejected everywhere") {
    CHECK_THROWS_AS((void)hilbert_qp(0, 3, 5), zero_argument);
    CHECK_THROWS_AS((void)hilbert_q2(3, 0), zero_argument);
    CHECK_THROWS_AS((void)hilbert_qinf(0, 0), zero_argument);
    CHECK_THROWS_AS((void)hilbert_q1(Q1Element{0, 0}, q1_of(1, 0),
                                     q1_prime_above(3)[0]),
                    zero_argument);
}
