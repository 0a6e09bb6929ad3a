#include "lambda2/classifier.hpp"

#include <algorithm>
#include <cassert>

#include <json.hpp>

#include "lambda2/core_arith.hpp"
#include "lambda2/quad_field.hpp"
#include "lambda2/residue_symbols.hpp"

namespace lambda2 {

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::TrivialZero: return "TrivialZero";
        case VerdictStatus::ProvenZero: return "ProvenZero";
        case VerdictStatus::Conditional: return "Conditional";
        case VerdictStatus::Open: return "Open";
        case VerdictStatus::OutOfScope: return "OutOfScope";
    }
    return "?";
}

std::string tag_name(TheoremTag t) {
    switch (t) {
        case TheoremTag::None: return "None";
        case TheoremTag::Trivial: return "Trivial";
        case TheoremTag::OzakiTaya1: return "OzakiTaya1";
        case TheoremTag::OzakiTaya2: return "OzakiTaya2";
        case TheoremTag::OzakiTaya3: return "OzakiTaya3";
        case TheoremTag::OzakiTaya4: return "OzakiTaya4";
        case TheoremTag::OzakiTaya5: return "OzakiTaya5";
        case TheoremTag::FukudaKomatsu: return "FukudaKomatsu";
        case TheoremTag::Kumakawa: return "Kumakawa";
        case TheoremTag::FiveOneCase1: return "FiveOneCase1";
        case TheoremTag::FiveOneCase2: return "FiveOneCase2";
        case TheoremTag::FiveOneCase3: return "FiveOneCase3";
        case TheoremTag::FiveOneCase4: return "FiveOneCase4";
        case TheoremTag::FiveOneNorm1: return "FiveOneNorm1";
        case TheoremTag::FiveOneNorm2: return "FiveOneNorm2";
        case TheoremTag::QuarticFamily: return "QuarticFamily";
    }
    return "?";
}

std::string tag_description(TheoremTag t) {
    switch (t) {
        case TheoremTag::None:
            return "no criterion";
        case TheoremTag::Trivial:
            return "radicand on the classical trivially-zero list";
        case TheoremTag::OzakiTaya1:
            return "prime 1 mod 8 with (2/p)4 (p/2)4 = -1 (Ozaki-Taya)";
        case TheoremTag::OzakiTaya2:
            return "pair (3,3) mod 8 (Ozaki-Taya)";
        case TheoremTag::OzakiTaya3:
            return "pair (3,5) mod 8 (Ozaki-Taya)";
        case TheoremTag::OzakiTaya4:
            return "pair (5,7) mod 8 (Ozaki-Taya)";
        case TheoremTag::OzakiTaya5:
            return "pair (5,5) mod 8 (Ozaki-Taya)";
        case TheoremTag::FukudaKomatsu:
            return "pair (3,1) mod 8, (q/p) = -1, (2/q)4 = -1 (Fukuda-Komatsu)";
        case TheoremTag::Kumakawa:
            return "pair (3,1) mod 8, (q/p) = -1, q = 9 mod 16, (2/q)4 = +1, "
                   "assuming level-two class group has 4-rank 1 (Kumakawa)";
        case TheoremTag::FiveOneCase1:
            return "pair (5,1) mod 8 with (p/q) = -1";
        case TheoremTag::FiveOneCase2:
            return "pair (5,1) mod 8, (p/q) = 1, (p/q)4 = (q/p)4 = -1";
        case TheoremTag::FiveOneCase3:
            return "pair (5,1) mod 8, (p/q) = 1, (p/q)4 = (q/p)4 = +1, N(eps_D) = -1";
        case TheoremTag::FiveOneCase4:
            return "pair (5,1) mod 8, (p/q) = 1, opposite quartic symbols, "
                   "q = 1 mod 16, N(eps_2D) = -1";
        case TheoremTag::FiveOneNorm1:
            return "pair (5,1) mod 8 with (p/q) = -1, via the unit-index route";
        case TheoremTag::FiveOneNorm2:
            return "pair (5,1) mod 8, (p/q) = 1, opposite quartic symbols, "
                   "N(eps_2D) = -1, via the unit-index route";
        case TheoremTag::QuarticFamily:
            return "pair (1,1) mod 8: p = 1 mod 8, q = 9 mod 16, (p/q) = -1, "
                   "(2/p)4 (2/q)4 (pq/2)4 = -1, and some (2/.)4 = -1";
    }
    return "?";
}

std::pair<Int, bool> normalize(const Int& D) {
    if (D <= 1) throw precondition_violation("normalize needs a radicand above 1");
    if (!is_squarefree(D)) throw not_squarefree("normalize needs a squarefree radicand");
    if (D % 2 == 0) return {D / 2, true};
    return {D, false};
}

namespace {

std::string sgn_str(int v) { return v > 0 ? "1" : (v < 0 ? "-1" : "undefined"); }

void push(Evidence& e, std::string name, std::string value) {
    e.emplace_back(std::move(name), std::move(value));
}

QuarticFamilyHypotheses eval_family(const Int& p, const Int& q) {
    QuarticFamilyHypotheses h;
    h.p = p;
    h.q = q;
    h.p_mod8_ok = mpz_fdiv_ui(p.get_mpz_t(), 8) == 1;
    h.q_mod16_ok = mpz_fdiv_ui(q.get_mpz_t(), 16) == 9;
    h.kron_minus = kronecker(p, q) == -1;
    if (mpz_fdiv_ui(p.get_mpz_t(), 8) == 1) h.quartic_2_p = quartic_mod_p(2, p);
    if (mpz_fdiv_ui(q.get_mpz_t(), 8) == 1) h.quartic_2_q = quartic_mod_p(2, q);
    Int pq = p * q;
    if (mpz_fdiv_ui(pq.get_mpz_t(), 8) == 1) h.quartic_pq_2 = quartic_over_2(pq);
    h.quartic_product_minus =
        h.quartic_2_p != 0 && h.quartic_2_q != 0 && h.quartic_pq_2 != 0 &&
        h.quartic_2_p * h.quartic_2_q * h.quartic_pq_2 == -1;
    h.some_quartic_minus = h.quartic_2_p == -1 || h.quartic_2_q == -1;
    return h;
}

}  // namespace

bool QuarticFamilyHypotheses::all() const {
    return p_mod8_ok && q_mod16_ok && kron_minus && quartic_product_minus &&
           some_quartic_minus;
}

Evidence QuarticFamilyHypotheses::evidence() const {
    Evidence e;
    push(e, "p", p.get_str());
    push(e, "q", q.get_str());
    push(e, "p_mod_8_is_1", p_mod8_ok ? "true" : "false");
    push(e, "q_mod_16_is_9", q_mod16_ok ? "true" : "false");
    push(e, "kronecker_p_q_is_minus", kron_minus ? "true" : "false");
    push(e, "quartic_2_p", sgn_str(quartic_2_p));
    push(e, "quartic_2_q", sgn_str(quartic_2_q));
    push(e, "quartic_pq_2", sgn_str(quartic_pq_2));
    push(e, "quartic_product_is_minus", quartic_product_minus ? "true" : "false");
    push(e, "some_quartic_is_minus", some_quartic_minus ? "true" : "false");
    return e;
}

QuarticFamilyHypotheses quartic_family_hypotheses(const Int& p, const Int& q) {
    if (p == q || p % 2 == 0 || q % 2 == 0 || !is_prime(p) || !is_prime(q))
        throw precondition_violation("hypotheses need two distinct odd primes");
    QuarticFamilyHypotheses a = eval_family(p, q);
    if (a.all()) return a;
    QuarticFamilyHypotheses b = eval_family(q, p);
    if (b.all()) return b;
    if (!a.q_mod16_ok && b.q_mod16_ok) return b;
    return a;
}

namespace {

Verdict finish_trivial(Verdict v) {
    v.status = VerdictStatus::TrivialZero;
    v.theorem = TheoremTag::Trivial;
    return v;
}

Verdict finish_proven(Verdict v, TheoremTag t) {
    v.status = VerdictStatus::ProvenZero;
    v.theorem = t;
    return v;
}

Verdict finish_open(Verdict v, std::string tag) {
    v.status = VerdictStatus::Open;
    v.open_case = std::move(tag);
    return v;
}

Verdict classify_single_prime(Verdict v, const Int& p) {
    long m8 = mpz_fdiv_ui(p.get_mpz_t(), 8);
    push(v.evidence, "p_mod_8", std::to_string(m8));
    if (m8 == 5 || m8 == 3 || m8 == 7) return finish_trivial(std::move(v));
    int a = quartic_mod_p(2, p);
    int b = quartic_over_2(p);
    push(v.evidence, "quartic_2_p", sgn_str(a));
    push(v.evidence, "quartic_p_2", sgn_str(b));
    if (a * b == -1) {
        push(v.evidence, "nu2", "zero");
        return finish_proven(std::move(v), TheoremTag::OzakiTaya1);
    }
    return finish_open(std::move(v), "single-prime-quartic-agree");
}

Verdict classify_three_one(Verdict v, const Int& p3, const Int& q1) {
    int kr = kronecker(q1, p3);
    push(v.evidence, "kronecker_q_p", sgn_str(kr));
    if (kr == 1) {
        push(v.evidence, "leftover_disjunct", "(q/p)=1");
        return finish_open(std::move(v), "three-one-leftover");
    }
    int q4 = quartic_mod_p(2, q1);
    push(v.evidence, "quartic_2_q", sgn_str(q4));
    if (q4 == -1) return finish_proven(std::move(v), TheoremTag::FukudaKomatsu);
    long q16 = mpz_fdiv_ui(q1.get_mpz_t(), 16);
    push(v.evidence, "q_mod_16", std::to_string(q16));
    if (q16 == 9) {
        v.status = VerdictStatus::Conditional;
        v.theorem = TheoremTag::Kumakawa;
        v.unverified = "level-two class group has 4-rank 1";
        push(v.evidence, "unverified_hypothesis", v.unverified);
        return v;
    }
    push(v.evidence, "leftover_disjunct", "(2/q)4=+1");
    return finish_open(std::move(v), "three-one-leftover");
}

Verdict classify_five_one(Verdict v, const Int& p5, const Int& q1, const Int& d) {
    int kr = kronecker(p5, q1);
    push(v.evidence, "kronecker_p_q", sgn_str(kr));
    if (kr == -1) return finish_proven(std::move(v), TheoremTag::FiveOneCase1);

    int pq4 = quartic_mod_p(p5, q1);
    int qp4 = quartic_mod_p(q1, p5);
    push(v.evidence, "quartic_p_q", sgn_str(pq4));
    push(v.evidence, "quartic_q_p", sgn_str(qp4));

    bool leftover_both_plus = false;
    if (pq4 == -1 && qp4 == -1)
        return finish_proven(std::move(v), TheoremTag::FiveOneCase2);
    if (pq4 == 1 && qp4 == 1) {
        int n = unit_norm(d);
        push(v.evidence, "norm_eps_d", sgn_str(n));
        if (n == -1) return finish_proven(std::move(v), TheoremTag::FiveOneCase3);
        leftover_both_plus = true;
    } else {
        int n2 = unit_norm(2 * d);
        push(v.evidence, "norm_eps_2d", sgn_str(n2));
        long q16 = mpz_fdiv_ui(q1.get_mpz_t(), 16);
        push(v.evidence, "q_mod_16", std::to_string(q16));
        if (n2 == -1) {
            if (q16 == 1) return finish_proven(std::move(v), TheoremTag::FiveOneCase4);
            return finish_proven(std::move(v), TheoremTag::FiveOneNorm2);
        }
    }

    int l2q = quartic_mod_p(2, q1);
    int lq2 = quartic_over_2(q1);
    push(v.evidence, "quartic_2_q", sgn_str(l2q));
    push(v.evidence, "quartic_q_2", sgn_str(lq2));
    if (l2q == lq2) return finish_open(std::move(v), "five-one-quartic-agree");
    if (leftover_both_plus)
        return finish_open(std::move(v), "five-one-quartics-plus-norm-plus");
    if (mpz_fdiv_ui(q1.get_mpz_t(), 16) == 1)
        return finish_open(std::move(v), "five-one-mixed-quartics-norm-plus");
    return finish_open(std::move(v), "five-one-mixed-quartics-q9");
}

Verdict classify_one_one(Verdict v, const Int& p, const Int& q) {
    QuarticFamilyHypotheses hyp = quartic_family_hypotheses(p, q);
    for (auto& kv : hyp.evidence()) v.evidence.push_back(kv);
    if (hyp.all()) {
        TowerUnitSquareCriterion c = tower_unit_square_criterion(hyp.p, hyp.q);
        push(v.evidence, "tower_unit_square", c.holds ? "true" : "false");
        push(v.evidence, "hasse_unit_index_bound", "2");
        return finish_proven(std::move(v), TheoremTag::QuarticFamily);
    }
    return finish_open(std::move(v), "one-one-leftover");
}

}  // namespace

Verdict classify(const Int& D) {
    if (D <= 1) throw precondition_violation("classify needs a radicand above 1");
    if (!is_squarefree(D)) throw not_squarefree("classify needs a squarefree radicand");

    Verdict v;
    v.normalized_from = 0;
    if (D == 2) {
        v.d = 2;
        push(v.evidence, "radicand", "2");
        return finish_trivial(std::move(v));
    }
    Int d = D;
    if (d % 2 == 0) {
        auto [dd, halved] = normalize(d);
        assert(halved);
        v.normalized_from = d;
        d = dd;
        push(v.evidence, "normalized_from", v.normalized_from.get_str());
    }
    v.d = d;

    auto fac = factorize(d);
    {
        std::string f;
        for (const auto& [pr, e] : fac) {
            if (!f.empty()) f += "*";
            f += pr.get_str();
            assert(e == 1);
        }
        push(v.evidence, "factorization", f);
    }

    if (fac.size() == 1) return classify_single_prime(std::move(v), d);
    if (fac.size() > 2) {
        push(v.evidence, "prime_factors", std::to_string(fac.size()));
        v.status = VerdictStatus::OutOfScope;
        return v;
    }

    Int a = fac[0].first, b = fac[1].first;
    long a8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
    long b8 = mpz_fdiv_ui(b.get_mpz_t(), 8);
    push(v.evidence, "pair_mod_8",
         std::to_string(std::min(a8, b8)) + "," + std::to_string(std::max(a8, b8)));

    auto with_res = [&](long r) -> Int { return (a8 == r) ? a : b; };
    long lo = std::min(a8, b8), hi = std::max(a8, b8);

    if (lo == 3 && hi == 7) return finish_trivial(std::move(v));
    if (lo == 3 && hi == 3) {
        push(v.evidence, "nu2", "zero");
        return finish_proven(std::move(v), TheoremTag::OzakiTaya2);
    }
    if (lo == 3 && hi == 5) {
        push(v.evidence, "nu2", "positive");
        return finish_proven(std::move(v), TheoremTag::OzakiTaya3);
    }
    if (lo == 5 && hi == 7) {
        push(v.evidence, "nu2", "positive");
        return finish_proven(std::move(v), TheoremTag::OzakiTaya4);
    }
    if (lo == 5 && hi == 5) {
        push(v.evidence, "nu2", "positive");
        return finish_proven(std::move(v), TheoremTag::OzakiTaya5);
    }
    if (lo == 1 && hi == 3) return classify_three_one(std::move(v), with_res(3), with_res(1));
    if (lo == 1 && hi == 5) return classify_five_one(std::move(v), with_res(5), with_res(1), d);
    if (lo == 1 && hi == 1) return classify_one_one(std::move(v), a, b);
    if (lo == 7 && hi == 7) return finish_open(std::move(v), "seven-seven");
    assert(lo == 1 && hi == 7);
    return finish_open(std::move(v), "pair-7-1-uninventoried");
}

std::vector<SearchHit> search_quartic_family(const Int& bound) {
    if (!bound.fits_slong_p())
        throw precondition_violation("search bound above supported range");
    long B = bound.get_si();

    std::vector<long> primes_1mod8, primes_9mod16;
    for (long n = 17; n < B; n += 8) {
        if (!is_prime(Int(n))) continue;
        primes_1mod8.push_back(n);
        if (n % 16 == 9) primes_9mod16.push_back(n);
    }

    std::vector<SearchHit> hits;
    for (long q : primes_9mod16) {
        for (long p : primes_1mod8) {
            if (p == q) continue;
            if (p % 16 == 9 && p > q) continue; /* unordered dedup */
            if (kronecker(Int(p), Int(q)) != -1) continue;
            QuarticFamilyHypotheses h = eval_family(Int(p), Int(q));
            if (h.all()) hits.push_back(SearchHit{Int(p), Int(q), h});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& x, const SearchHit& y) {
        Int px = x.p * x.q, py = y.p * y.q;
        if (px != py) return px < py;
        return x.p < y.p;
    });
    return hits;
}

TowerUnitSquareCriterion tower_unit_square_criterion(const Int& p, const Int& q) {
    Int pp = p, qq = q;
    auto ok = [](const Int& x, const Int& y) {
        return mpz_fdiv_ui(x.get_mpz_t(), 8) == 1 && mpz_fdiv_ui(y.get_mpz_t(), 16) == 9;
    };
    if (!ok(pp, qq)) {
        std::swap(pp, qq);
        if (!ok(pp, qq))
            throw precondition_violation("criterion needs p = 1 mod 8 and q = 9 mod 16");
    }
    int a2p = quartic_mod_p(2, pp), a2q = quartic_mod_p(2, qq);
    int ap2 = quartic_over_2(pp), aq2 = quartic_over_2(qq);
    return TowerUnitSquareCriterion{a2p == -1 || a2q == -1, a2p == 1 && a2q == 1,
                                    ap2 == 1 && aq2 == 1};
}

std::string verdict_json(const Verdict& v) {
    nlohmann::json j;
    if (v.d.fits_slong_p())
        j["d"] = static_cast<long>(v.d.get_si());
    else
        j["d"] = v.d.get_str();
    if (v.normalized_from == 0)
        j["normalized_from"] = nullptr;
    else if (v.normalized_from.fits_slong_p())
        j["normalized_from"] = static_cast<long>(v.normalized_from.get_si());
    else
        j["normalized_from"] = v.normalized_from.get_str();
    j["status"] = to_string(v.status);
    if (v.theorem == TheoremTag::None)
        j["theorem"] = nullptr;
    else
        j["theorem"] = tag_name(v.theorem);
    if (v.open_case.empty())
        j["case"] = nullptr;
    else
        j["case"] = v.open_case;
    nlohmann::json ev = nlohmann::json::array();
    for (const auto& [name, value] : v.evidence)
        ev.push_back(nlohmann::json{{"name", name}, {"value", value}});
    j["evidence"] = ev;
    return j.dump(2);
}

}  // namespace lambda2
