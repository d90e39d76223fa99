#pragma once

#include "cayleyiso/group.hpp"
#include "cayleyiso/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

namespace cayleyiso {

using BigInt = boost::multiprecision::cpp_int;

struct CogrowthCounts {
    int m = 0;                        // free rank
    std::vector<BigInt> counts;       // counts[k-1] = c_k, k = 1..k_max
    std::vector<bool> conserved;      // per k: total over all targets == 2m(2m-1)^{k-1}
};

/// Exact number of freely reduced words of each length 1..k_max whose image
/// under the generator assignment is the identity of the finite target.
/// Non-backtracking transfer recursion on (target element, last letter).
CogrowthCounts reduced_word_counts(int m, const std::vector<Element>& images,
                                   const Group& target, int k_max);

struct CogrowthEstimate {
    bool trivial_kernel = false;  // all counts zero up to k_max
    double alpha_root = 0;        // max_k c_k^{1/k}
    double alpha_ratio = 0;       // last sqrt(c_{k}/c_{k-2}) on the nonzero parity class
    int ratio_k = 0;              // the k used for the point estimate
    bool ratio_available = false;
    double ratio_fluctuation = 0;  // gap between the last two ratio points
    bool within_lower = false;  // alpha_ratio >= sqrt(2m-1), up to the fluctuation
    bool within_upper = false;  // alpha_ratio <= 2m-1, up to the fluctuation
};

CogrowthEstimate cogrowth_estimate(const CogrowthCounts& counts);

struct GrigorchukResult {
    double rho = 0;         // (sqrt(2m-1)/(2m)) (sqrt(2m-1)/alpha + alpha/sqrt(2m-1))
    double weak_bound = 0;  // min(alpha/m, 1)
    bool at_lower_boundary = false;  // alpha == sqrt(2m-1) up to 1e-9
};

/// Requires sqrt(2m-1) <= alpha <= 2m-1 (closed interval; the lower boundary
/// is accepted and flagged) and m >= 2.
GrigorchukResult grigorchuk_rho(double alpha, int m);

struct BurnsideBounds {
    int m = 0;
    long long a = 0;
    double delta = 0;
    double alpha_ub = 0;   // (2m-1)^delta
    double rho_ub = 0;     // min(alpha_ub/m, 1)
    Rational r_lb;         // 1/3
    Rational lit_lb;       // 3/2
};

/// Formula evaluator for the Burnside bounds; requires m >= 2, a >= 665, a odd.
BurnsideBounds burnside_bounds(int m, long long a,
                               std::optional<double> delta = std::nullopt);

} // namespace cayleyiso
