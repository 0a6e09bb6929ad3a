#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lambda2 {

using Int = mpz_class;
using Rat = mpq_class;

/* Error taxonomy.  Every precondition failure throws a named type so callers
 * (and tests) can tell a mathematical impossibility from a usage bug. */
struct lambda2_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct zero_argument : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct not_a_residue : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct no_two_adic_root : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct not_squarefree : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct undefined_symbol : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct norm_minus_one : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct decomposition_failure : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct precision_loss : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct non_fundamental_discriminant : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct class_group_too_large : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct precondition_violation : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct unknown_suite : lambda2_error {
    using lambda2_error::lambda2_error;
};
struct cache_corruption : lambda2_error {
    using lambda2_error::lambda2_error;
};

}  // namespace lambda2
