#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lambda2/core.hpp"

namespace lambda2 {

enum class VerdictStatus { TrivialZero, ProvenZero, Conditional, Open, OutOfScope };

/* Named criteria the classifier can cite.  OzakiTaya1..5 are the five cases of
 * the Ozaki-Taya theorem; FukudaKomatsu and Kumakawa the later single cases;
 * FiveOneCase1..4 the published (5,1) mod 8 list; FiveOneNorm1..2 the
 * unit-index route for the same congruence class; QuarticFamily the
 * two-primes-1-mod-8 family cut out by quartic residue conditions. */
enum class TheoremTag {
    None,
    Trivial,
    OzakiTaya1,
    OzakiTaya2,
    OzakiTaya3,
    OzakiTaya4,
    OzakiTaya5,
    FukudaKomatsu,
    Kumakawa,
    FiveOneCase1,
    FiveOneCase2,
    FiveOneCase3,
    FiveOneCase4,
    FiveOneNorm1,
    FiveOneNorm2,
    QuarticFamily,
};

std::string to_string(VerdictStatus s);
std::string tag_name(TheoremTag t);
/* one-line statement of the criterion the tag certifies */
std::string tag_description(TheoremTag t);

using Evidence = std::vector<std::pair<std::string, std::string>>;

struct Verdict {
    Int d;               /* classified radicand, after normalization */
    Int normalized_from; /* original even radicand, or 0 */
    VerdictStatus status = VerdictStatus::Open;
    TheoremTag theorem = TheoremTag::None;
    std::string open_case;  /* set when status == Open */
    std::string unverified; /* set when status == Conditional */
    Evidence evidence;
};

/* Halve an even squarefree radicand: the two fields share the relevant tower,
 * so verdicts agree.  Returns (odd radicand, whether halving happened). */
std::pair<Int, bool> normalize(const Int& D);

/* The five hypotheses cutting out the proven two-prime family with both primes
 * 1 mod 8: p = 1 mod 8, q = 9 mod 16, (p/q) = -1, the product of the three
 * quartic symbols (2/p)4 (2/q)4 (pq/2)4 = -1, and at least one of (2/p)4,
 * (2/q)4 = -1.  Roles of p and q are canonicalized; quartic values are 0 when
 * the defining congruence fails. */
struct QuarticFamilyHypotheses {
    Int p, q;
    bool p_mod8_ok = false;
    bool q_mod16_ok = false;
    bool kron_minus = false;
    bool quartic_product_minus = false;
    bool some_quartic_minus = false;
    int quartic_2_p = 0, quartic_2_q = 0, quartic_pq_2 = 0;
    bool all() const;
    Evidence evidence() const;
};

QuarticFamilyHypotheses quartic_family_hypotheses(const Int& p, const Int& q);

Verdict classify(const Int& D);

struct SearchHit {
    Int p, q;
    QuarticFamilyHypotheses hyp;
};

/* All unordered pairs of primes below bound passing every family hypothesis,
 * sorted by product. */
std::vector<SearchHit> search_quartic_family(const Int& bound);

/* Whether the unit lattice of the second tower layer meets the dyadic squares
 * only in squares: holds iff (2/p)4 = -1 or (2/q)4 = -1.  Also reports the two
 * norm sub-criteria for sqrt2 and 2+sqrt2. */
struct TowerUnitSquareCriterion {
    bool holds;
    bool sqrt2_is_norm;          /* (2/p)4 = (2/q)4 = +1 */
    bool two_plus_sqrt2_is_norm; /* (p/2)4 = (q/2)4 = +1 */
};

TowerUnitSquareCriterion tower_unit_square_criterion(const Int& p, const Int& q);

std::string verdict_json(const Verdict& v);

}  // namespace lambda2
