#include "lambda2/core_arith.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace lambda2 {

Int isqrt(const Int& n) {
    if (n < 0) throw precondition_violation("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int mod_pow(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Int mod_inv(const Int& a, const Int& mod) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw precondition_violation("mod_inv: not invertible");
    return r;
}

namespace {

const int kSmallWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

/* one strong-probable-prime round; n odd > 2, n-1 = d*2^r */
bool sprp(const Int& n, const Int& a, const Int& d, unsigned long r) {
    Int b = a % n;
    if (b == 0) return true;
    Int x = mod_pow(b, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : kSmallWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    for (int a : kSmallWitnesses)
        if (!sprp(n, a, d, r)) return false;
    /* witness set {2..37} is deterministic below 3.317e24 ~ 2^81 */
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 81) return true;
    gmp_randstate_t st;
    gmp_randinit_mt(st);
    gmp_randseed_ui(st, 0x5eedu);
    Int a;
    bool ok = true;
    for (int i = 0; i < 40 && ok; ++i) {
        mpz_urandomm(a.get_mpz_t(), st, Int(n - 3).get_mpz_t());
        a += 2;
        ok = sprp(n, a, d, r);
    }
    gmp_randclear(st);
    return ok;
}

namespace {

Int brent_rho(const Int& n) {
    /* n composite, odd, no factor below the trial bound */
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto f = [&](const Int& v) { return (v * v + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            Int diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(const Int& n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    Int d = brent_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(const Int& n) {
    if (n <= 0) throw zero_argument("factorize: argument must be positive");
    std::map<Int, int> acc;
    Int m = n;
    for (unsigned long p = 2; p < 20000 && Int(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            acc[Int(p)]++;
            m /= p;
        }
    }
    factor_into(m, acc);
    return {acc.begin(), acc.end()};
}

bool is_squarefree(const Int& n) {
    if (n <= 0) return false;
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

Int sqrt_mod_p(const Int& a, const Int& p) {
    if (p < 3 || !is_prime(p) || p % 2 == 0)
        throw precondition_violation("sqrt_mod_p: modulus must be an odd prime");
    Int a0 = a % p;
    if (a0 < 0) a0 += p;
    if (a0 == 0 || mpz_legendre(a0.get_mpz_t(), p.get_mpz_t()) != 1)
        throw not_a_residue("sqrt_mod_p: not a quadratic residue");
    Int r;
    if (p % 4 == 3) {
        r = mod_pow(a0, (p + 1) / 4, p);
    } else {
        /* Tonelli-Shanks: p-1 = q*2^s, q odd */
        Int q = p - 1;
        unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
        mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
        Int z = 2;
        while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
        Int m = s, c = mod_pow(z, q, p), t = mod_pow(a0, q, p);
        r = mod_pow(a0, (q + 1) / 2, p);
        while (t != 1) {
            Int t2 = t;
            unsigned long i = 0;
            while (t2 != 1) {
                t2 = t2 * t2 % p;
                ++i;
            }
            Int b = c;
            for (Int j = 0; j < m - Int(i) - 1; ++j) b = b * b % p;
            m = Int(i);
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
    }
    Int other = p - r;
    return std::min(r, other);
}

Int hensel_sqrt_2adic(const Int& a, unsigned k) {
    if (k < 3) throw precondition_violation("hensel_sqrt_2adic: need k >= 3");
    Int mod_top = Int(1) << (k + 1);
    Int a0 = a % mod_top;
    if (a0 < 0) a0 += mod_top;
    if (a0 % 8 != 1) throw no_two_adic_root("hensel_sqrt_2adic: argument not 1 mod 8");
    /* lift bit by bit; working one bit past k pins the canonical value mod 2^k */
    Int x = 1;
    for (unsigned j = 3; j <= k; ++j) {
        Int t = (x * x - a0) % (Int(1) << (j + 1));
        if (t < 0) t += Int(1) << (j + 1);
        if (t != 0) x += Int(1) << (j - 1);
    }
    Int res = x % (Int(1) << k);
    assert((res * res - a0) % (Int(1) << k) == 0);
    assert(res % 4 == 1);
    return res;
}

CFExpansion cf_quadratic(const Int& D, bool use_half) {
    if (D <= 1) throw precondition_violation("cf_quadratic: need D > 1");
    if (!is_squarefree(D)) throw not_squarefree("cf_quadratic: D not squarefree");
    if (use_half && D % 4 != 1)
        throw precondition_violation("cf_quadratic: half expansion needs D = 1 mod 4");

    Int s0 = isqrt(D);
    Int P = use_half ? 1 : 0;
    Int Q = use_half ? 2 : 1;
    auto next_a = [&](const Int& Pk, const Int& Qk) {
        /* floor((P + sqrt(D))/Q); sqrt(D) irrational */
        Int num = Pk + s0;
        Int a;
        if (Qk > 0) {
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Qk.get_mpz_t());
        } else {
            Int num1 = num + 1;
            mpz_fdiv_q(a.get_mpz_t(), num1.get_mpz_t(), Qk.get_mpz_t());
        }
        return a;
    };

    CFExpansion out;
    out.half = use_half;
    out.a0 = next_a(P, Q);
    Int a = out.a0;
    std::map<std::pair<Int, Int>, std::size_t> seen;
    std::vector<Int> terms;
    for (std::size_t i = 1;; ++i) {
        P = a * Q - P;
        Q = (D - P * P) / Q;
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            /* classical expansions close at the first post-a0 state */
            if (it->second != 1)
                throw precondition_violation("cf_quadratic: unexpected preperiod");
            out.period.assign(terms.begin() + (it->second - 1), terms.end());
            return out;
        }
        seen.emplace(key, i);
        a = next_a(P, Q);
        terms.push_back(a);
        if (i > 2000000) throw precondition_violation("cf_quadratic: period overflow");
    }
}

}  // namespace lambda2
