#pragma once

#include <compare>
#include <map>
#include <vector>

#include "lambda2/core.hpp"

namespace lambda2 {

/* Primitive integral binary quadratic form a x^2 + b x y + c y^2 of positive
 * non-square discriminant b^2 - 4ac.  Desk-scale coefficients. */
struct IndefiniteForm {
    long a = 0, b = 0, c = 0;
    auto operator<=>(const IndefiniteForm&) const = default;
};

/* 2-Sylow structure as elementary divisors (powers of 2, descending). */
struct AbelianGroup2Part {
    std::vector<long> divisors;
    long order() const;
    int two_rank() const;
    int four_rank() const;
    int eight_rank() const;
    bool operator==(const AbelianGroup2Part&) const = default;
};

int two_rank(const AbelianGroup2Part& g);
int four_rank(const AbelianGroup2Part& g);
int eight_rank(const AbelianGroup2Part& g);

/* Narrow (strict) class group of a fundamental positive discriminant, as
 * cycles of reduced forms under the reduction operator; composition is Gauss
 * composition followed by reduction into a cycle.  Class count capped. */
class FormClassGroup {
  public:
    static constexpr long kDefaultCap = 1 << 14;

    static FormClassGroup narrow(const Int& disc, long cap = kDefaultCap);

    long disc() const { return disc_; }
    long class_number() const { return (long)reps_.size(); }
    const std::vector<IndefiniteForm>& representatives() const { return reps_; }

    int identity() const { return identity_; }
    int compose(int i, int j) const;
    int inverse(int i) const;
    int power(int i, Int e) const;
    long element_order(int i) const;

    /* reduce an arbitrary primitive form of this discriminant into its cycle */
    int class_of_form(IndefiniteForm f) const;
    /* cycle of a form (p, b, c) with leading coefficient p (odd prime, with
     * disc a square mod 4p) */
    int class_of_prime(const Int& p) const;
    /* cycle of a form with leading coefficient -1 */
    int minus_one_class() const;

    /* full elementary divisors (all primes, descending) */
    std::vector<long> elementary_divisors() const;
    AbelianGroup2Part two_part() const;

    /* wide class group = narrow / <minus_one_class> */
    long wide_order() const;
    AbelianGroup2Part wide_two_part() const;

  private:
    long disc_ = 0, sq_ = 0;
    std::vector<IndefiniteForm> reps_;
    std::map<IndefiniteForm, int> form_cycle_;
    int identity_ = -1;

    bool is_reduced(const IndefiniteForm& f) const;
    IndefiniteForm rho_step(const IndefiniteForm& f) const;
    IndefiniteForm reduce_form(IndefiniteForm f) const;
    AbelianGroup2Part two_part_counting(bool quotient_by_minus_one) const;
};

FormClassGroup narrow_class_group(const Int& disc,
                                  long cap = FormClassGroup::kDefaultCap);
AbelianGroup2Part wide_class_group(const Int& disc);

}  // namespace lambda2
