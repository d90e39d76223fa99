#pragma once

#include "cayleyiso/cayley.hpp"
#include "cayleyiso/function.hpp"
#include "cayleyiso/rational.hpp"

#include <functional>
#include <optional>

namespace cayleyiso {

struct LittlewoodEstimate {
    double value = 0;                   // best (1/|F|) sum_{a,b in F} |f(a^-1 b)|
    std::optional<Rational> value_exact;// exact value when f is integer-valued
    std::vector<Element> witness;       // F attaining the value, canonical order
    bool exact = false;                 // finite group, F = whole group examined,
                                        // pool fully enumerated
    size_t candidates_evaluated = 0;
};

/// Maximizes the averaged kernel sum over candidate subsets: exhaustive on
/// pools of <= 24 vertices, nested balls and seeded local search beyond.
/// Always a valid lower bound for the subset supremum. The candidate pool is
/// the ball of cfg.pool_radius around the identity in the metric of the
/// symmetrized support of f.
LittlewoodEstimate nprime_lower(const Group& g, const FunctionD& f,
                                const SearchConfig& cfg);

struct BoxResult {
    double height = 0;
    std::vector<Element> support;  // the box, canonical order
    double q_norm = 0;             // height * n^{1/q}
    double f_p_norm = 0;
    double guarantee = 0;          // zeta(p/q)^{-1/p} * ||f||_p
    bool satisfied = false;        // q_norm >= guarantee
};

/// Extracts the best box (constant multiple of a characteristic function)
/// below f: sorts values descending and takes the n maximizing f_(n) n^{1/q}.
BoxResult box_trick(const FunctionD& f, double p, double q);

/// Riemann zeta for s > 1 by direct summation with an integral tail and
/// Euler-Maclaurin correction; absolute error below 1e-12 for s >= 1.2.
double zeta_value(double s);

struct DecompositionCertificate {
    int truncation = 0;
    long long row_sup = 0;  // sup_x sum_y of the shorter-target kernel
    long long col_sup = 0;  // sup_y sum_x of the remainder kernel
    long long t1_bound = 0; // row_sup + col_sup
};

/// Splits the kernel (x,y) -> 1_S(x^-1 y) by word length: pairs with
/// |y| <= |x| (ties included) go to the row-bounded part, the rest to the
/// column-bounded part. Sups are exact over ball(truncation)^2. For the
/// standard set both sups are 1.
DecompositionCertificate free_t1_certificate(const Group& g, const SymmetricSet& s,
                                             int truncation);

struct QuotientData {
    const Group* target;    // Lambda, where f lives
    const Group* source;    // Gamma
    std::function<Element(const Element&)> pi;       // Gamma -> Lambda
    std::function<Element(const Element&)> section;  // Lambda -> Gamma
};

/// Lifts f through the quotient: fl(x) = f(pi(x)) for x in the section image,
/// zero elsewhere. All lp norms are preserved exactly.
FunctionD quotient_lift(const FunctionD& f, const QuotientData& q);

} // namespace cayleyiso
