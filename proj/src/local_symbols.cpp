#include "lambda2/local_symbols.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <utility>

#include "lambda2/core_arith.hpp"
#include "lambda2/residue_symbols.hpp"

namespace lambda2 {

namespace {

/* valuation and unit proxy of a nonzero rational at p: returns v, and sets
 * unit_nd = n*d where r = p^v n/d; n*d ≡ n/d for quadratic characters and
 * mod 8 (odd d is self-inverse mod 8) */
long rat_val_unit(const Rat& r, const Int& p, Int& unit_nd) {
    Int n = r.get_num(), d = r.get_den();
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    while (d % p == 0) {
        d /= p;
        --v;
    }
    unit_nd = n * d;
    return v;
}

int mod8_class(const Int& odd) {
    long u = mpz_fdiv_ui(odd.get_mpz_t(), 8);
    return (int)u;
}

int int_sign(const Rat& r) { return mpq_sgn(r.get_mpq_t()); }

/* square root of 2 mod p^k extending the root s mod p (Newton doubling) */
Int hensel_root2(const Int& p, long k, const Int& s) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), (unsigned long)k);
    Int x = s % p, mod = p;
    while (mod < pk) {
        mod = mod * mod;
        if (mod > pk) mod = pk;
        Int f = (x * x - 2) % mod;
        Int corr = (f * mod_inv((2 * x) % mod, mod)) % mod;
        x = ((x - corr) % mod + mod) % mod;
    }
    assert((x * x - 2) % pk == 0);
    return x % pk;
}

/* integral coordinates (X, Y) of e scaled by a square: X + Y sqrt2 lies in the
 * same square class of every completion */
void integral_coords(const Q1Element& e, Int& X, Int& Y) {
    Int d = lcm(Int(e.x.get_den()), Int(e.y.get_den()));
    Rat dd(d);
    Rat sx = e.x * dd * dd, sy = e.y * dd * dd;
    sx.canonicalize();
    sy.canonicalize();
    assert(sx.get_den() == 1 && sy.get_den() == 1);
    X = sx.get_num();
    Y = sy.get_num();
}

long int_val(Int& n, const Int& p) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/* valuation mod 2 data at the split place sqrt2 -> s over p: returns
 * (valuation, quadratic character of the unit part) */
std::pair<long, int> split_val_unit(Int X, Int Y, const Int& p, const Int& s) {
    long m = 0;
    if (X != 0 && Y != 0) {
        while (X % p == 0 && Y % p == 0) {
            X /= p;
            Y /= p;
            ++m;
        }
    } else if (X == 0) {
        m = int_val(Y, p);
    } else {
        m = int_val(X, p);
    }
    if (X == 0) return {m, kronecker((Y * s) % p, p)};
    if (Y == 0) return {m, kronecker(X % p, p)};
    Int N = X * X - 2 * Y * Y;
    long vn = int_val(N, p);
    if (vn == 0) {
        Int t = ((X + Y * s) % p + p) % p;
        return {m, kronecker(t, p)};
    }
    long k = vn + 1;
    Int sk = hensel_root2(p, k, s);
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), (unsigned long)k);
    Int t = ((X + Y * sk) % pk + pk) % pk;
    assert(t != 0); /* place valuation is at most vn < k */
    long v2 = int_val(t, p);
    return {m + v2, kronecker(t % p, p)};
}

/* inert place: valuation is the min coordinate valuation, character is the
 * Legendre symbol of the residue norm (quadratic character of F_{p^2}) */
std::pair<long, int> inert_val_unit(Int X, Int Y, const Int& p) {
    long vx = (X != 0) ? int_val(X, p) : -1;
    long vy = (Y != 0) ? int_val(Y, p) : -1;
    long v;
    if (vx < 0) {
        v = vy;
    } else if (vy < 0) {
        v = vx;
    } else {
        v = std::min(vx, vy);
        /* re-divide to the shared power only */
        if (vx > v)
            for (long i = 0; i < vx - v; ++i) X *= p;
        if (vy > v)
            for (long i = 0; i < vy - v; ++i) Y *= p;
    }
    Int Nm = ((X * X - 2 * Y * Y) % p + p) % p;
    assert(Nm != 0); /* 2 is a non-residue mod an inert prime */
    return {v, kronecker(Nm, p)};
}

int tame_combine(long va, int lega, long vb, int legb, bool odd_sign_factor) {
    int r = 1;
    if (odd_sign_factor && (va % 2) && (vb % 2)) r = -r;
    if (vb % 2) r *= lega;
    if (va % 2) r *= legb;
    return r;
}

int split_symbol(const Q1Element& a, const Q1Element& b, const Int& p, const Int& s) {
    Int Xa, Ya, Xb, Yb;
    integral_coords(a, Xa, Ya);
    integral_coords(b, Xb, Yb);
    auto [va, lega] = split_val_unit(Xa, Ya, p, s);
    auto [vb, legb] = split_val_unit(Xb, Yb, p, s);
    return tame_combine(va, lega, vb, legb, mpz_fdiv_ui(p.get_mpz_t(), 4) == 3);
}

int inert_symbol(const Q1Element& a, const Q1Element& b, const Int& p) {
    Int Xa, Ya, Xb, Yb;
    integral_coords(a, Xa, Ya);
    integral_coords(b, Xb, Yb);
    auto [va, lega] = inert_val_unit(Xa, Ya, p);
    auto [vb, legb] = inert_val_unit(Xb, Yb, p);
    /* residue field size p^2: (p^2-1)/2 is even, the sign factor vanishes */
    return tame_combine(va, lega, vb, legb, false);
}

std::vector<Int> odd_support(const Rat& r) {
    std::vector<Int> out;
    for (const Int& part : {Int(abs(r.get_num())), Int(r.get_den())}) {
        Int n = part;
        while (n % 2 == 0) n /= 2;
        for (const auto& [pr, e] : factorize(n)) {
            (void)e;
            out.push_back(pr);
        }
    }
    return out;
}

int ramified_via_product(const Q1Element& a, const Q1Element& b) {
    std::set<Int> primes;
    for (const Rat& nm : {a.norm(), b.norm()})
        for (const Int& p : odd_support(nm)) primes.insert(p);
    int prod = 1;
    for (const Int& p : primes)
        for (const Q1Place& v : q1_prime_above(p)) prod *= hilbert_q1(a, b, v);
    for (bool plus : {true, false}) {
        Q1Place v{plus ? Q1PlaceKind::RealPlus : Q1PlaceKind::RealMinus, 0, 0};
        prod *= hilbert_q1(a, b, v);
    }
    return prod;
}

/* ---- ramified-place oracle over the dyadic completion ---- */

/* Unit signatures live in (Z/8)* x Z/4 via u = a + b sqrt2 -> (a mod 8,
 * b mod 4); this is exactly the unit group modulo squares times a squares
 * subgroup of order 2, whose nontrivial element is (3, 2). */
struct Sig {
    int a, b;
    bool operator<(const Sig& o) const { return a < o.a || (a == o.a && b < o.b); }
    bool operator==(const Sig&) const = default;
};

Sig sig_mul(Sig s, Sig t) {
    return {(s.a * t.a + 2 * s.b * t.b) % 8, (s.a * t.b + s.b * t.a) % 4};
}

Sig sig_canon(Sig s) { return std::min(s, sig_mul(s, Sig{3, 2})); }

struct RamClass {
    int vpar;
    Sig raw;
    Sig canon;
};

int ram_encode(int vpar, Sig canon) { return vpar * 32 + canon.a * 4 + canon.b; }

bool ram_trivial(const RamClass& c) {
    return c.vpar == 0 && c.canon == sig_canon(Sig{1, 0});
}

/* exact class of nonzero A + B sqrt2: divide by sqrt2 while possible, then
 * read the unit signature */
template <typename T>
RamClass ram_class_of(T A, T B) {
    int v = 0;
    while (A % 2 == 0) { /* sqrt2 divides iff the rational coordinate is even */
        T t = A / 2;
        A = B;
        B = t;
        ++v;
    }
    int a8 = (int)((A % 8 + 8) % 8);
    int b4 = (int)((B % 4 + 4) % 4);
    Sig s{a8, b4};
    return {v % 2, s, sig_canon(s)};
}

RamClass ram_class_elem(const Q1Element& e) {
    Int X, Y;
    integral_coords(e, X, Y);
    long A = 0, B = 0;
    /* reduce exactly with arbitrary precision, then project */
    Int Ai = X, Bi = Y;
    int v = 0;
    while (Ai % 2 == 0) {
        Int t = Ai / 2;
        Ai = Bi;
        Bi = t;
        ++v;
    }
    A = mpz_fdiv_ui(Ai.get_mpz_t(), 8);
    B = mpz_fdiv_ui(Bi.get_mpz_t(), 4);
    Sig s{(int)A, (int)B};
    return {v % 2, s, sig_canon(s)};
}

}  // namespace

Q1Element q1_of(long x, long y) { return {Rat(Int(x)), Rat(Int(y))}; }

int hilbert_qp(const Rat& r, const Rat& s, const Int& p) {
    if (r == 0 || s == 0) throw zero_argument("hilbert_qp: zero argument");
    if (p <= 2 || p % 2 == 0)
        throw precondition_violation("hilbert_qp needs an odd prime");
    Int ur, us;
    long a = rat_val_unit(r, p, ur);
    long b = rat_val_unit(s, p, us);
    return tame_combine(a, kronecker(ur, p), b, kronecker(us, p),
                        mpz_fdiv_ui(p.get_mpz_t(), 4) == 3);
}

int hilbert_q2(const Rat& r, const Rat& s) {
    if (r == 0 || s == 0) throw zero_argument("hilbert_q2: zero argument");
    Int ur, us;
    long a = rat_val_unit(r, 2, ur);
    long b = rat_val_unit(s, 2, us);
    int u = mod8_class(ur), v = mod8_class(us);
    int eps_u = (u % 4 == 3) ? 1 : 0, eps_v = (v % 4 == 3) ? 1 : 0;
    int om_u = (u == 3 || u == 5) ? 1 : 0, om_v = (v == 3 || v == 5) ? 1 : 0;
    long e = (long)eps_u * eps_v + a * om_v + b * om_u;
    return (e % 2) ? -1 : 1;
}

int hilbert_qinf(const Rat& r, const Rat& s) {
    if (r == 0 || s == 0) throw zero_argument("hilbert_qinf: zero argument");
    return (r < 0 && s < 0) ? -1 : 1;
}

bool hilbert_q_product_check(const Rat& r, const Rat& s) {
    std::set<Int> primes;
    for (const Rat& x : {r, s})
        for (const Int& p : odd_support(x)) primes.insert(p);
    int prod = hilbert_q2(r, s) * hilbert_qinf(r, s);
    for (const Int& p : primes) prod *= hilbert_qp(r, s, p);
    return prod == 1;
}

std::vector<Q1Place> q1_prime_above(const Int& p) {
    if (!is_prime(p)) throw precondition_violation("q1_prime_above needs a prime");
    if (p == 2) return {Q1Place{Q1PlaceKind::Ramified, 2, 0}};
    long m = mpz_fdiv_ui(p.get_mpz_t(), 8);
    if (m == 1 || m == 7) {
        Int s = sqrt_mod_p(2, p);
        return {Q1Place{Q1PlaceKind::Split, p, s},
                Q1Place{Q1PlaceKind::Split, p, p - s}};
    }
    return {Q1Place{Q1PlaceKind::Inert, p, 0}};
}

Q1Place q1_conjugate_place(const Q1Place& v) {
    switch (v.kind) {
        case Q1PlaceKind::Split:
            return {Q1PlaceKind::Split, v.p, v.p - v.sqrt2};
        case Q1PlaceKind::RealPlus:
            return {Q1PlaceKind::RealMinus, 0, 0};
        case Q1PlaceKind::RealMinus:
            return {Q1PlaceKind::RealPlus, 0, 0};
        default:
            return v;
    }
}

int q1_embedding_sign(const Q1Element& e, bool plus_embedding) {
    if (e.is_zero()) throw zero_argument("q1_embedding_sign: zero element");
    Rat x = e.x, y = plus_embedding ? e.y : Rat(-e.y);
    int sx = int_sign(x), sy = int_sign(y);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    int sn = int_sign(x * x - 2 * y * y); /* nonzero: sqrt2 is irrational */
    return sx > 0 ? sn : -sn;
}

int hilbert_q1(const Q1Element& a, const Q1Element& b, const Q1Place& v) {
    if (a.is_zero() || b.is_zero()) throw zero_argument("hilbert_q1: zero argument");
    switch (v.kind) {
        case Q1PlaceKind::RealPlus:
        case Q1PlaceKind::RealMinus: {
            bool plus = v.kind == Q1PlaceKind::RealPlus;
            return (q1_embedding_sign(a, plus) < 0 && q1_embedding_sign(b, plus) < 0)
                       ? -1
                       : 1;
        }
        case Q1PlaceKind::Split:
            return split_symbol(a, b, v.p, v.sqrt2);
        case Q1PlaceKind::Inert:
            return inert_symbol(a, b, v.p);
        case Q1PlaceKind::Ramified:
            return ramified_via_product(a, b);
    }
    throw precondition_violation("hilbert_q1: unknown place kind");
}

int hilbert_q1_ramified_oracle(const Q1Element& a, const Q1Element& b) {
    if (a.is_zero() || b.is_zero())
        throw zero_argument("hilbert_q1_ramified_oracle: zero argument");
    RamClass ca = ram_class_elem(a), cb = ram_class_elem(b);
    if (ram_trivial(ca) || ram_trivial(cb)) return 1;

    /* small literal representative of the square class of a */
    long pa, pb;
    if (ca.vpar == 0) {
        pa = ca.raw.a;
        pb = ca.raw.b;
    } else { /* sqrt2 * (a + b sqrt2) = 2b + a sqrt2 */
        pa = 2 * ca.raw.b;
        pb = ca.raw.a;
    }

    /* Norms x^2 - alpha y^2 from the quadratic extension by sqrt(alpha) fill
     * an index-2 subgroup of the 16 square classes; enumerate representatives
     * until all 8 are seen, then decide membership of b's class. */
    std::set<int> achieved;
    const long R = 32;
    for (long xa = 0; xa < R && (long)achieved.size() < 8; ++xa)
        for (long xb = 0; xb < R && (long)achieved.size() < 8; ++xb)
            for (long ya = 0; ya < R && (long)achieved.size() < 8; ++ya)
                for (long yb = 0; yb < R; ++yb) {
                    long x2a = xa * xa + 2 * xb * xb, x2b = 2 * xa * xb;
                    long y2a = ya * ya + 2 * yb * yb, y2b = 2 * ya * yb;
                    long wa = x2a - (pa * y2a + 2 * pb * y2b);
                    long wb = x2b - (pa * y2b + pb * y2a);
                    if (wa == 0 && wb == 0) continue;
                    RamClass c = ram_class_of<long>(wa, wb);
                    achieved.insert(ram_encode(c.vpar, c.canon));
                    if ((long)achieved.size() == 8) break;
                }
    bool member = achieved.count(ram_encode(cb.vpar, cb.canon)) > 0;
    if (member) return 1;
    if (achieved.size() == 8) return -1;
    throw precision_loss("ramified oracle: norm classes not exhausted");
}

bool q1_product_check(const Q1Element& a, const Q1Element& b) {
    return ramified_via_product(a, b) == hilbert_q1_ramified_oracle(a, b);
}

namespace {

struct ZS2 {
    Int a, b; /* a + b sqrt2 */
};

Int zs2_norm(const ZS2& z) { return z.a * z.a - 2 * z.b * z.b; }

ZS2 zs2_mul(const ZS2& x, const ZS2& y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
}

ZS2 zs2_sub(const ZS2& x, const ZS2& y) { return {x.a - y.a, x.b - y.b}; }

Int round_div(const Int& n, Int d) {
    Int nn = n;
    if (d < 0) {
        d = -d;
        nn = -nn;
    }
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), nn.get_mpz_t(), d.get_mpz_t());
    if (2 * r >= d) q += 1;
    return q;
}

}  // namespace

Q1Element q1_ideal_generator(const Int& p, const Int& s) {
    if (!is_prime(p) || (s * s - 2) % p != 0)
        throw precondition_violation("q1_ideal_generator needs a prime with s^2 = 2 mod p");
    ZS2 x{p, 0}, y{-s, 1};
    while (zs2_norm(y) != 0) {
        /* nearest-integer division: the remainder norm strictly shrinks */
        ZS2 yc{y.a, -y.b};
        ZS2 num = zs2_mul(x, yc);
        Int Ny = zs2_norm(y);
        ZS2 q{round_div(num.a, Ny), round_div(num.b, Ny)};
        ZS2 r = zs2_sub(x, zs2_mul(q, y));
        x = y;
        y = r;
    }
    Int Nx = zs2_norm(x);
    assert(Nx == p || Nx == -p);
    /* generator lies in the kernel of sqrt2 -> s reduction */
    assert(((x.a + x.b * s) % p + p) % p == 0);
    return {Rat(x.a), Rat(x.b)};
}

}  // namespace lambda2
