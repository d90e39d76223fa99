#pragma once

#include "cayleyiso/group.hpp"
#include "cayleyiso/rational.hpp"

#include <string>
#include <vector>

namespace cayleyiso {

/// Exact counts for a finite vertex set F in Cay(Gamma,S). Loops (edges
/// {x,x}, present exactly when the identity is in S) belong to the internal
/// edge set and are counted once.
struct SubsetStats {
    long long size = 0;
    long long boundary = 0;        // |dS F|
    long long internal_edges = 0;  // |E_S(F)|, loops included
    long long loops = 0;           // |L_S(F)|
    Rational ratio;                // boundary / size
    /// |F||S| == boundary + 2*internal - loops; recorded for report checks,
    /// always true when the counts themselves are consistent.
    bool count_identity_holds = false;
};

SubsetStats subset_stats(const Group& g, const SymmetricSet& s,
                         const std::vector<Element>& f);

struct SearchConfig {
    int pool_radius = 2;
    long long max_subset = 0;  // 0 = unlimited
    std::vector<std::string> strategies = {"exhaustive", "nested_balls", "local_search"};
    uint64_t seed = 1;
    int local_steps = 1000;
};

struct CheegerResult {
    Rational h;          // min ratio over all candidates examined: upper bound for h(Gamma,S)
    bool exact = false;  // true only when the group is finite and F = whole group was examined
    bool pool_optimal = false;  // exhaustive enumeration covered the configured pool
    std::string note;
    std::vector<Element> witness;   // an F attaining h, canonical order
    Rational e;                     // 1 - h/|S|  (lower bound for e unless exact)
    Rational mad;                   // |S| * e = |S| - h
    size_t candidates_evaluated = 0;
    size_t set_size = 0;
};

/// Minimizes |dS F|/|F| over candidate subsets of ball(pool_radius).
/// Strategies: "exhaustive" (connected subsets, pools <= 24 vertices),
/// "nested_balls", "local_search" (seeded add/remove), "boxes"
/// (free abelian backends: rectangular boxes, the interval family on Z).
CheegerResult cheeger_upper(const Group& g, const SymmetricSet& s,
                            const SearchConfig& cfg);

struct EAndMad {
    Rational e;
    Rational mad;
    bool exact = false;  // otherwise both are lower bounds
};

EAndMad e_and_mad(const CheegerResult& c, const SymmetricSet& s);

/// Exact h for the documented solvable instances: 0 for finite groups, 0 for
/// free abelian groups with the standard set, 2m-2 for the free group of
/// rank m with the standard set. Empty otherwise.
std::optional<Rational> analytic_h(const Group& g, const SymmetricSet& s);

} // namespace cayleyiso
