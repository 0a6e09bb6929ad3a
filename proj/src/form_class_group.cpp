#include "lambda2/form_class_group.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "lambda2/core_arith.hpp"
#include "lambda2/residue_symbols.hpp"

namespace lambda2 {

namespace {

using ll = long;
using i128 = __int128;

ll isqrt_ll(ll n) {
    assert(n >= 0);
    ll r = (ll)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

ll to_ll(const i128 v) {
    assert(v <= (i128)9000000000000000000LL && v >= -(i128)9000000000000000000LL);
    return (ll)v;
}

ll gcd_ll(ll a, ll b) { return std::gcd(std::abs(a), std::abs(b)); }

bool primitive(const IndefiniteForm& f) {
    return std::gcd(gcd_ll(f.a, f.b), std::abs(f.c)) == 1;
}

/* u*a + v*b = g */
ll ext_gcd(ll a, ll b, ll& u, ll& v) {
    if (b == 0) {
        u = (a >= 0) ? 1 : -1;
        v = 0;
        return std::abs(a);
    }
    ll u1, v1;
    ll g = ext_gcd(b, a % b, u1, v1);
    u = v1;
    v = u1 - (a / b) * v1;
    return g;
}

/* distinct prime factors of |n| (n fits ll, desk scale) */
std::vector<ll> distinct_primes_ll(ll n) {
    n = std::abs(n);
    std::vector<ll> out;
    for (ll p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

void validate_fundamental(ll d) {
    if (d <= 0) throw non_fundamental_discriminant("discriminant must be positive");
    ll r = isqrt_ll(d);
    if (r * r == d) throw non_fundamental_discriminant("discriminant is a square");
    ll m = d % 4;
    if (m == 1) {
        if (!is_squarefree(Int(d)))
            throw non_fundamental_discriminant("odd discriminant not squarefree");
    } else if (m == 0) {
        ll q = d / 4;
        if (q % 4 == 1 || !is_squarefree(Int(q)))
            throw non_fundamental_discriminant("even discriminant not fundamental");
    } else {
        throw non_fundamental_discriminant("discriminant not 0 or 1 mod 4");
    }
}

}  // namespace

long AbelianGroup2Part::order() const {
    ll n = 1;
    for (ll d : divisors) n *= d;
    return n;
}
int AbelianGroup2Part::two_rank() const {
    return (int)std::count_if(divisors.begin(), divisors.end(),
                              [](ll d) { return d >= 2; });
}
int AbelianGroup2Part::four_rank() const {
    return (int)std::count_if(divisors.begin(), divisors.end(),
                              [](ll d) { return d >= 4; });
}
int AbelianGroup2Part::eight_rank() const {
    return (int)std::count_if(divisors.begin(), divisors.end(),
                              [](ll d) { return d >= 8; });
}

int two_rank(const AbelianGroup2Part& g) { return g.two_rank(); }
int four_rank(const AbelianGroup2Part& g) { return g.four_rank(); }
int eight_rank(const AbelianGroup2Part& g) { return g.eight_rank(); }

/* Reduced: 0 < b <= r and 2|a| - b <= r < 2|a| + b, with r = floor(sqrt(disc)).
 * Integer form of |sqrt(disc) - 2|a|| < b < sqrt(disc). */
bool FormClassGroup::is_reduced(const IndefiniteForm& f) const {
    if (f.b <= 0 || f.b > sq_) return false;
    ll t = 2 * std::abs(f.a);
    return t - f.b <= sq_ && t + f.b > sq_;
}

IndefiniteForm FormClassGroup::rho_step(const IndefiniteForm& f) const {
    ll an = f.c;
    assert(an != 0);
    ll m = 2 * std::abs(an);
    ll t = ((-f.b) % m + m) % m; /* b' ≡ -b (mod 2c), t in [0, m) */
    ll bp;
    if (std::abs(an) > sq_) {
        bp = (t <= std::abs(an)) ? t : t - m; /* b' in (-|c|, |c|] */
    } else {
        bp = sq_ - ((sq_ - t) % m + m) % m; /* largest b' <= sq */
    }
    i128 num = (i128)bp * bp - disc_;
    i128 den = 4 * (i128)an;
    assert(num % den == 0);
    return IndefiniteForm{an, bp, to_ll(num / den)};
}

IndefiniteForm FormClassGroup::reduce_form(IndefiniteForm f) const {
    for (int guard = 0; guard < 1000000; ++guard) {
        if (is_reduced(f)) return f;
        f = rho_step(f);
    }
    throw precondition_violation("form reduction did not terminate");
}

FormClassGroup FormClassGroup::narrow(const Int& disc, long cap) {
    if (!disc.fits_slong_p() || disc > 100000000)
        throw class_group_too_large("discriminant above supported range");
    ll d = disc.get_si();
    validate_fundamental(d);

    FormClassGroup g;
    g.disc_ = d;
    g.sq_ = isqrt_ll(d);

    /* Enumerate all reduced forms: pick b with b^2 ≡ disc (mod 4), b <= sq,
     * then a runs over divisors of (disc - b^2)/4 inside the window. */
    std::vector<IndefiniteForm> forms;
    for (ll b = (d % 2 == 0) ? 2 : 1; b <= g.sq_; b += 2) {
        ll m4 = (d - b * b) / 4;
        for (ll e = 1; e * e <= m4; ++e) {
            if (m4 % e != 0) continue;
            for (ll a : {e, m4 / e}) {
                if (2 * a - b > g.sq_ || 2 * a + b <= g.sq_) continue;
                ll c = -(m4 / a);
                for (IndefiniteForm f : {IndefiniteForm{a, b, c},
                                         IndefiniteForm{-a, b, -c}}) {
                    if (primitive(f)) forms.push_back(f);
                }
                if (e * e == m4) break; /* avoid double push when a repeats */
            }
        }
    }
    std::sort(forms.begin(), forms.end());
    forms.erase(std::unique(forms.begin(), forms.end()), forms.end());

    /* Partition into rho-cycles; each cycle is one narrow class. */
    std::map<IndefiniteForm, int> cyc;
    std::vector<IndefiniteForm> reps;
    for (const auto& f : forms) {
        if (cyc.count(f)) continue;
        int id = (int)reps.size();
        if ((ll)(id + 1) > cap)
            throw class_group_too_large("class number exceeds cap");
        IndefiniteForm best = f, cur = f;
        std::size_t steps = 0;
        do {
            assert(g.is_reduced(cur));
            cyc.emplace(cur, id);
            best = std::min(best, cur);
            cur = g.rho_step(cur);
            if (++steps > forms.size() + 1)
                throw precondition_violation("rho cycle escaped enumeration");
        } while (cur != f);
        reps.push_back(best);
    }

    /* Reindex so class ids follow the sorted canonical representatives. */
    std::vector<int> order_idx(reps.size());
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::sort(order_idx.begin(), order_idx.end(),
              [&](int x, int y) { return reps[x] < reps[y]; });
    std::vector<int> new_id(reps.size());
    for (std::size_t k = 0; k < order_idx.size(); ++k) new_id[order_idx[k]] = (int)k;
    g.reps_.resize(reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k) g.reps_[new_id[k]] = reps[k];
    for (auto& kv : cyc) kv.second = new_id[kv.second];
    g.form_cycle_ = std::move(cyc);

    ll b0 = (g.sq_ % 2 == d % 2) ? g.sq_ : g.sq_ - 1;
    g.identity_ = g.class_of_form(IndefiniteForm{1, b0, (b0 * b0 - d) / 4});
    return g;
}

int FormClassGroup::class_of_form(IndefiniteForm f) const {
    {
        i128 dd = (i128)f.b * f.b - 4 * (i128)f.a * f.c;
        if (dd != (i128)disc_)
            throw precondition_violation("form has wrong discriminant");
    }
    if (!primitive(f)) throw precondition_violation("form not primitive");
    f = reduce_form(f);
    auto it = form_cycle_.find(f);
    assert(it != form_cycle_.end());
    return it->second;
}

/* Gauss composition.  Bring the second form to a representative whose leading
 * coefficient is coprime to the first's, then glue with a CRT'd middle
 * coefficient (Dirichlet composition). */
int FormClassGroup::compose(int i, int j) const {
    const IndefiniteForm f1 = reps_.at(i);
    IndefiniteForm f2 = reps_.at(j);

    if (gcd_ll(f1.a, f2.a) != 1) {
        /* choose (x, y) with gcd(f2(x,y), f1.a) = 1 via residues per prime */
        ll n = std::abs(f1.a);
        ll M = 1, x = 0, y = 0;
        for (ll p : distinct_primes_ll(n)) {
            ll xr, yr;
            if (f2.a % p != 0) {
                xr = 1, yr = 0;
            } else if (f2.c % p != 0) {
                xr = 0, yr = 1;
            } else {
                xr = 1, yr = 1; /* f2(1,1) ≡ b2, and p ∤ b2 by primitivity */
            }
            if (M == 1) {
                x = xr, y = yr, M = p;
            } else {
                ll u, v;
                ext_gcd(M, p, u, v);
                /* combine component-wise mod M*p */
                i128 nm = (i128)M * p;
                i128 nx = ((i128)x * v % nm) * p + ((i128)xr * u % nm) * M;
                i128 ny = ((i128)y * v % nm) * p + ((i128)yr * u % nm) * M;
                x = (ll)(((nx % nm) + nm) % nm);
                y = (ll)(((ny % nm) + nm) % nm);
                M = (ll)nm;
            }
        }
        ll gxy = gcd_ll(x, y);
        if (gxy > 1) x /= gxy, y /= gxy; /* keeps f2(x,y) coprime to n */
        if (x == 0 && y == 0) x = 1;
        ll u, v;
        [[maybe_unused]] ll gg = ext_gcd(x, y, u, v);
        assert(gg == 1);
        ll z = -v, w = u; /* det (x z; y w) = 1 */
        i128 a2 = (i128)f2.a * x * x + (i128)f2.b * x * y + (i128)f2.c * y * y;
        i128 b2 = 2 * (i128)f2.a * x * z + (i128)f2.b * ((i128)x * w + (i128)y * z) +
                  2 * (i128)f2.c * y * w;
        i128 c2 = (i128)f2.a * z * z + (i128)f2.b * z * w + (i128)f2.c * w * w;
        assert(b2 * b2 - 4 * a2 * c2 == (i128)disc_);
        f2 = IndefiniteForm{to_ll(a2), to_ll(b2), to_ll(c2)};
        assert(gcd_ll(f1.a, f2.a) == 1);
    }

    /* B ≡ b1 (mod 2 a1), B ≡ b2 (mod 2 a2); moduli share exactly one 2. */
    ll a1 = f1.a, a2 = f2.a;
    assert((f1.b - f2.b) % 2 == 0);
    i128 A = (i128)a1 * a2;
    i128 B;
    if (std::abs(a2) == 1) {
        B = f1.b;
    } else {
        ll m2 = std::abs(a2);
        ll u, v;
        ext_gcd(((a1 % m2) + m2) % m2, m2, u, v);
        i128 diff = ((i128)f2.b - f1.b) / 2;
        i128 t = ((diff % m2) * (u % m2)) % m2;
        B = (i128)f1.b + 2 * (i128)a1 * t;
    }
    i128 twoA = 2 * (A < 0 ? -A : A);
    B = ((B % twoA) + twoA) % twoA;
    if (B > twoA / 2) B -= twoA; /* B in (-|A|, |A|] */
    i128 num = B * B - disc_;
    assert(num % (4 * A) == 0);
    IndefiniteForm prod{to_ll(A), to_ll(B), to_ll(num / (4 * A))};
    assert(primitive(prod));
    auto it = form_cycle_.find(reduce_form(prod));
    assert(it != form_cycle_.end());
    return it->second;
}

int FormClassGroup::inverse(int i) const {
    const IndefiniteForm& f = reps_.at(i);
    return class_of_form(IndefiniteForm{f.a, -f.b, f.c});
}

int FormClassGroup::power(int i, Int e) const {
    if (e < 0) {
        i = inverse(i);
        e = -e;
    }
    int acc = identity_, base = i;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = compose(acc, base);
        e >>= 1;
        if (e > 0) base = compose(base, base);
    }
    return acc;
}

long FormClassGroup::element_order(int i) const {
    ll h = class_number();
    std::vector<ll> divs;
    for (ll e = 1; e * e <= h; ++e) {
        if (h % e == 0) {
            divs.push_back(e);
            divs.push_back(h / e);
        }
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    for (ll e : divs)
        if (power(i, Int(e)) == identity_) return e;
    throw precondition_violation("element order not dividing group order");
}

int FormClassGroup::class_of_prime(const Int& p) const {
    if (!is_prime(p) || p == 2 || !p.fits_slong_p())
        throw precondition_violation("class_of_prime needs an odd desk-scale prime");
    ll pl = p.get_si();
    int kr = kronecker(Int(disc_), p);
    if (kr == -1)
        throw precondition_violation("prime is inert: no form with that leading coefficient");
    ll t;
    if (disc_ % pl == 0) {
        t = 0;
    } else {
        t = sqrt_mod_p(Int(disc_), p).get_si();
    }
    /* choose b ≡ ±t (mod p) with b^2 ≡ disc (mod 4p): fix parity via b or b+p */
    ll b = t;
    if ((b % 2 + 2) % 2 != (disc_ % 2 + 2) % 2) b = t + pl;
    i128 num = (i128)b * b - disc_;
    assert(num % (4 * (i128)pl) == 0);
    IndefiniteForm f{pl, b, to_ll(num / (4 * (i128)pl))};
    return class_of_form(f);
}

int FormClassGroup::minus_one_class() const {
    ll b0 = (sq_ % 2 == disc_ % 2) ? sq_ : sq_ - 1;
    return class_of_form(IndefiniteForm{-1, b0, (disc_ - b0 * b0) / 4});
}

/* Structure of the p-part by counting p^j-torsion: if N_j elements satisfy
 * x^(p^j) = id then log_p N_j - log_p N_{j-1} counts invariants >= p^j. */
std::vector<long> FormClassGroup::elementary_divisors() const {
    ll h = class_number();
    std::vector<ll> out;
    for (const auto& [pz, e] : factorize(Int(h))) {
        ll p = pz.get_si();
        (void)e;
        std::vector<int> ge; /* ge[j-1] = #invariants with exponent >= j */
        int prev = 0;
        for (Int pj = p;; pj *= p) {
            ll cnt = 0;
            for (int i = 0; i < (int)reps_.size(); ++i)
                if (power(i, pj) == identity_) ++cnt;
            int lg = 0;
            while (cnt > 1) {
                assert(cnt % p == 0);
                cnt /= p;
                ++lg;
            }
            if (lg == prev) break;
            ge.push_back(lg - prev);
            prev = lg;
            if (pj > h) break;
        }
        for (int j = (int)ge.size(); j >= 1; --j) {
            int exact = ge[j - 1] - (j < (int)ge.size() ? ge[j] : 0);
            ll val = 1;
            for (int k = 0; k < j; ++k) val *= p;
            for (int k = 0; k < exact; ++k) out.push_back(val);
        }
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

AbelianGroup2Part FormClassGroup::two_part_counting(bool quotient_by_minus_one) const {
    int m = minus_one_class();
    bool quot = quotient_by_minus_one && m != identity_;
    if (quot) assert(power(m, 2) == identity_);
    std::vector<int> ge;
    int prev = 0;
    ll h = class_number();
    for (Int pj = 2;; pj *= 2) {
        ll cnt = 0;
        for (int i = 0; i < (int)reps_.size(); ++i) {
            int r = power(i, pj);
            if (r == identity_ || (quot && r == m)) ++cnt;
        }
        if (quot) {
            assert(cnt % 2 == 0);
            cnt /= 2; /* cosets {x, xm} counted twice */
        }
        int lg = 0;
        while (cnt > 1) {
            assert(cnt % 2 == 0);
            cnt /= 2;
            ++lg;
        }
        if (lg == prev) break;
        ge.push_back(lg - prev);
        prev = lg;
        if (pj > h) break;
    }
    AbelianGroup2Part out;
    for (int j = (int)ge.size(); j >= 1; --j) {
        int exact = ge[j - 1] - (j < (int)ge.size() ? ge[j] : 0);
        for (int k = 0; k < exact; ++k) out.divisors.push_back(1L << j);
    }
    std::sort(out.divisors.rbegin(), out.divisors.rend());
    return out;
}

AbelianGroup2Part FormClassGroup::two_part() const { return two_part_counting(false); }

long FormClassGroup::wide_order() const {
    return class_number() / (minus_one_class() == identity_ ? 1 : 2);
}

AbelianGroup2Part FormClassGroup::wide_two_part() const {
    return two_part_counting(true);
}

FormClassGroup narrow_class_group(const Int& disc, long cap) {
    return FormClassGroup::narrow(disc, cap);
}

AbelianGroup2Part wide_class_group(const Int& disc) {
    return narrow_class_group(disc).wide_two_part();
}

}  // namespace lambda2
