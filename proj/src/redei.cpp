#include "lambda2/redei.hpp"

#include <algorithm>
#include <cassert>

#include "lambda2/core_arith.hpp"
#include "lambda2/residue_symbols.hpp"

namespace lambda2 {

F2Matrix::F2Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0 || cols > 64)
        throw precondition_violation("F2Matrix supports up to 64 columns");
    words_.assign((std::size_t)rows, 0);
}

int F2Matrix::get(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return (int)((words_[(std::size_t)i] >> j) & 1u);
}

void F2Matrix::set(int i, int j, int bit) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    std::uint64_t mask = 1ull << j;
    if (bit & 1)
        words_[(std::size_t)i] |= mask;
    else
        words_[(std::size_t)i] &= ~mask;
}

void F2Matrix::set_sign(int i, int j, int sign) {
    assert(sign == 1 || sign == -1);
    set(i, j, sign == -1 ? 1 : 0);
}

std::string F2Matrix::to_string() const {
    std::string out;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out.push_back(get(i, j) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

int f2_rank(const F2Matrix& m) {
    std::vector<std::uint64_t> rows = m.words_;
    int rank = 0;
    for (int col = 0; col < m.cols(); ++col) {
        std::uint64_t mask = 1ull << col;
        int pivot = -1;
        for (int i = rank; i < (int)rows.size(); ++i) {
            if (rows[(std::size_t)i] & mask) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[(std::size_t)rank], rows[(std::size_t)pivot]);
        for (int i = 0; i < (int)rows.size(); ++i)
            if (i != rank && (rows[(std::size_t)i] & mask))
                rows[(std::size_t)i] ^= rows[(std::size_t)rank];
        ++rank;
    }
    return rank;
}

int f2_det(const F2Matrix& m) {
    if (m.rows() != m.cols())
        throw precondition_violation("determinant needs a square matrix");
    return f2_rank(m) == m.rows() ? 1 : 0;
}

/* Prime discriminant factors of the discriminant of the field of radicand D:
 * l* = (-1)^((l-1)/2) l for odd l | D, and -4 / 8 / -8 for the dyadic factor
 * when D = 3 mod 4 / D = 2 mod 8 / D = 6 mod 8. */
namespace {

struct PrimeDisc {
    Int prime;
    Int disc;
};

std::vector<PrimeDisc> prime_discriminants(const Int& D) {
    std::vector<PrimeDisc> out;
    long m8 = mpz_fdiv_ui(D.get_mpz_t(), 8);
    if (m8 % 2 == 0) {
        out.push_back({2, (m8 == 2) ? Int(8) : Int(-8)});
    } else if (m8 % 4 == 3) {
        out.push_back({2, Int(-4)});
    }
    Int odd = D;
    while (odd % 2 == 0) odd /= 2;
    for (const auto& [p, e] : factorize(odd)) {
        (void)e;
        out.push_back({p, (mpz_fdiv_ui(p.get_mpz_t(), 4) == 1) ? p : Int(-p)});
    }
    std::sort(out.begin(), out.end(),
              [](const PrimeDisc& a, const PrimeDisc& b) { return a.prime < b.prime; });
    return out;
}

}  // namespace

F2Matrix redei_matrix(const Int& D) {
    if (D <= 1) throw precondition_violation("radicand must exceed 1");
    if (!is_squarefree(D)) throw not_squarefree("radicand must be squarefree");
    auto pd = prime_discriminants(D);
    int r = (int)pd.size();
    F2Matrix R(r, r);
    for (int i = 0; i < r; ++i) {
        int diag = 0;
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            int s = kronecker(pd[(std::size_t)j].disc, pd[(std::size_t)i].prime);
            assert(s == 1 || s == -1);
            int bit = (s == -1) ? 1 : 0;
            R.set(i, j, bit);
            diag ^= bit;
        }
        R.set(i, i, diag); /* zero row sums */
    }
    return R;
}

long r4_narrow_via_redei(const Int& D) {
    F2Matrix R = redei_matrix(D);
    return R.rows() - 1 - f2_rank(R);
}

GeneralizedRedeiTower generalized_redei_tower(const Int& p, const Int& q) {
    if (!is_prime(p) || !is_prime(q))
        throw precondition_violation("generalized matrix needs primes");
    if (mpz_fdiv_ui(p.get_mpz_t(), 8) != 1)
        throw precondition_violation("first prime must be 1 mod 8");
    if (mpz_fdiv_ui(q.get_mpz_t(), 16) != 9)
        throw precondition_violation("second prime must be 9 mod 16");
    if (kronecker(p, q) != -1)
        throw precondition_violation("primes must be quadratic non-residues of each other");

    Int pq = p * q;
    Q1Element delta{Rat(2 * pq), Rat(pq)}; /* (2 + sqrt2) p q */
    auto above_p = q1_prime_above(p);
    auto above_q = q1_prime_above(q);
    assert(above_p.size() == 2 && above_q.size() == 2);
    std::vector<Q1Place> places = {above_p[0], above_p[1], above_q[0], above_q[1],
                                   Q1Place{Q1PlaceKind::Ramified, 2, 0}};

    Q1Element minus_one = q1_of(-1, 0), eps2 = q1_of(1, 1);
    F2Matrix M(5, 2);
    for (int i = 0; i < 5; ++i) {
        M.set_sign(i, 0, hilbert_q1(minus_one, delta, places[(std::size_t)i]));
        M.set_sign(i, 1, hilbert_q1(eps2, delta, places[(std::size_t)i]));
    }

    Q1Element pi = q1_ideal_generator(p, above_p[0].sqrt2);
    Q1Element lam = q1_ideal_generator(q, above_q[0].sqrt2);
    std::vector<Q1Element> gens = {pi, pi.conj(), lam, lam.conj()};
    F2Matrix R(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            R.set_sign(i, j, hilbert_q1(gens[(std::size_t)j], delta, places[(std::size_t)i]));

    int rank_M = f2_rank(M);
    int rank_R = f2_rank(R);
    return GeneralizedRedeiTower{std::move(M), std::move(R), 5 - 1 - rank_M,
                              rank_R,       rank_R == 4,  std::move(places),
                              std::move(gens)};
}

}  // namespace lambda2
