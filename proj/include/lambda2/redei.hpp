#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lambda2/core.hpp"
#include "lambda2/local_symbols.hpp"

namespace lambda2 {

/* Dense matrix over the two-element field.  Sign convention throughout:
 * +1 maps to bit 0, -1 maps to bit 1. */
class F2Matrix {
  public:
    F2Matrix(int rows, int cols);
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int get(int i, int j) const;
    void set(int i, int j, int bit);
    void set_sign(int i, int j, int sign);
    bool operator==(const F2Matrix&) const = default;
    std::string to_string() const;

  private:
    int rows_, cols_;
    std::vector<std::uint64_t> words_; /* one word per row, cols <= 64 */
    friend int f2_rank(const F2Matrix&);
};

int f2_rank(const F2Matrix& m);
int f2_det(const F2Matrix& m); /* square matrices; 0 or 1 */

/* Classical matrix of quadratic-residue bits between the prime discriminant
 * factors of the field of radicand D; every row sums to zero. */
F2Matrix redei_matrix(const Int& D);

/* 4-rank of the narrow class group from the matrix: (number of prime
 * discriminants) - 1 - rank. */
long r4_narrow_via_redei(const Int& D);

/* The two matrices attached to the quadratic extension of the field of
 * radicand 2 generated by sqrt((2+sqrt2)pq): M has columns (-1, eps2) over the
 * five ramified places (the dyadic row via the product formula), R has columns
 * generated by the prime generators above p and q over the four odd ramified
 * places. */
struct GeneralizedRedeiTower {
    F2Matrix M;           /* 5 x 2 */
    F2Matrix R;           /* 4 x 4 */
    int r2_narrow;        /* 5 - 1 - rank(M) */
    int rank_R;
    bool r4_zero;         /* rank_R == 4 forces trivial 4-rank */
    std::vector<Q1Place> places; /* row order: p, p-bar, q, q-bar, dyadic */
    std::vector<Q1Element> generators; /* column order of R */
};

GeneralizedRedeiTower generalized_redei_tower(const Int& p, const Int& q);

}  // namespace lambda2
