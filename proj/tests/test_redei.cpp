#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lambda2/core_arith.hpp"
#include "lambda2/form_class_group.hpp"
#include "lambda2/redei.hpp"

using namespace lambda2;

TEST_CASE("matrix basics over the two-element field") {
    F2Matrix m(2, 3);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.get(1, 2) == 0);
    m.set(0, 1, 1);
    CHECK(m.get(0, 1) == 1);
    m.set_sign(1, 0, -1);
    CHECK(m.get(1, 0) == 1);
    m.set_sign(1, 0, 1);
    CHECK(m.get(1, 0) == 0);

    F2Matrix id(2, 2), ones(2, 2);
    id.set(0, 0, 1);
    id.set(1, 1, 1);
    ones.set(0, 0, 1);
    ones.set(0, 1, 1);
    ones.set(1, 0, 1);
    ones.set(1, 1, 1);
    CHECK(f2_rank(id) == 2);
    CHECK(f2_det(id) == 1);
    CHECK(f2_rank(ones) == 1);
    CHECK(f2_det(ones) == 0);
    CHECK(f2_rank(F2Matrix(3, 3)) == 0);
}

TEST_CASE("classical matrix: row sums vanish and worked 4-ranks") {
    /* 205 = 5 * 41, narrow group cyclic of order 4: 4-rank 1, so rank 0 */
    auto m205 = redei_matrix(205);
    CHECK(f2_rank(m205) == 0);
    CHECK(r4_narrow_via_redei(205) == 1);
    /* 30: narrow group [2,2]: 4-rank 0 */
    CHECK(r4_narrow_via_redei(30) == 1 + 1 - f2_rank(redei_matrix(30)));
    CHECK(r4_narrow_via_redei(30) == 0);

    for (long D = 2; D < 800; ++D) {
        if (!is_squarefree(Int(D))) continue;
        auto m = redei_matrix(D);
        for (int i = 0; i < m.rows(); ++i) {
            int s = 0;
            for (int j = 0; j < m.cols(); ++j) s ^= m.get(i, j);
            CHECK(s == 0);
        }
    }
}

TEST_CASE("matrix 4-rank agrees with the form class group") {
    long checked = 0;
    for (long D = 2; D < 1500; ++D) {
        if (!is_squarefree(Int(D))) continue;
        Int disc = D % 4 == 1 ? Int(D) : Int(4 * D);
        CHECK(r4_narrow_via_redei(D) ==
              narrow_class_group(disc).two_part().four_rank());
        ++checked;
    }
    CHECK(checked > 800);
}

TEST_CASE("tower matrices at the three golden pairs") {
    for (auto [p, q] : {std::pair<long, long>{17, 41}, {41, 89}, {97, 41}}) {
        auto t = generalized_redei_tower(p, q);
        CHECK(t.M.rows() == 5);
        CHECK(t.M.cols() == 2);
        CHECK(t.R.rows() == 4);
        CHECK(t.R.cols() == 4);
        CHECK(t.rank_R == 4);
        CHECK(t.r4_zero);
        CHECK(t.r2_narrow == 3);
        CHECK(t.r2_narrow == 5 - 1 - f2_rank(t.M));

        /* column sums of M vanish: the dyadic row closes the product formula */
        for (int j = 0; j < 2; ++j) {
            int s = 0;
            for (int i = 0; i < 5; ++i) s ^= t.M.get(i, j);
            CHECK(s == 0);
        }

        /* R carries the conjugation symmetry of the place/generator pairing */
        CHECK(t.R.get(0, 0) == t.R.get(1, 1));
        CHECK(t.R.get(0, 1) == t.R.get(1, 0));
        CHECK(t.R.get(0, 2) == t.R.get(1, 3));
        CHECK(t.R.get(0, 3) == t.R.get(1, 2));
        CHECK(t.R.get(2, 0) == t.R.get(3, 1));
        CHECK(t.R.get(2, 1) == t.R.get(3, 0));
        CHECK(t.R.get(2, 2) == t.R.get(2, 3));
        CHECK(t.R.get(3, 2) == t.R.get(3, 3));
        CHECK(t.R.get(2, 2) == t.R.get(3, 2));

        REQUIRE(t.places.size() == 5);
        CHECK(t.places[0].p == p);
        CHECK(t.places[1].p == p);
        CHECK(t.places[2].p == q);
        CHECK(t.places[3].p == q);
        CHECK(t.places[4].kind == Q1PlaceKind::Ramified);
        REQUIRE(t.generators.size() == 4);
        for (int i = 0; i < 4; ++i) {
            Rat n = t.generators[i].norm();
            Int want = i < 2 ? Int(p) : Int(q);
            CHECK((n == want || n == -want));
        }
    }
}

TEST_CASE("tower matrices reject pairs outside the congruence frame") {
    CHECK_THROWS_AS((void)generalized_redei_tower(5, 41), precondition_violation);
    CHECK_THROWS_AS((void)generalized_redei_tower(17, 97), precondition_violation);
    CHECK_THROWS_AS((void)generalized_redei_tower(17, 40), precondition_violation);
    /* (73/89): both 9 mod 16 but quadratic residues of each other */
    CHECK_THROWS_AS((void)generalized_redei_tower(73, 89), precondition_violation);
}
