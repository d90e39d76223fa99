#pragma once

#include "cayleyiso/graph.hpp"
#include "cayleyiso/rational.hpp"

#include <optional>

namespace cayleyiso {

struct ColouringReport {
    int vertices = 0;
    int colours_used = 0;
    int degeneracy = 0;
    std::vector<int> assignment;
    bool proper = false;  // verified by a full edge scan
    std::optional<Rational> mad_bound;
    bool within_mad_bound = true;  // colours <= floor(mad) + 1 when a bound is given
};

/// Greedy colouring along the reverse of a minimum-degree elimination order;
/// uses at most degeneracy + 1 colours. Rejects graphs with loops. Peeling
/// ties break on tie_rank (vertex id by default), so the colour count only
/// depends on the graph together with that order.
ColouringReport degeneracy_colouring(const SimpleGraph& g,
                                     std::optional<Rational> mad_bound = std::nullopt,
                                     const std::vector<int>* tie_rank = nullptr);

struct ColourCorReport {
    ColouringReport colouring;
    double alpha = 0;
    long long set_size = 0;  // after identity removal
    long long target = 0;    // floor(|S|^{1/alpha})
    bool hit = false;        // colours <= target
};

/// Colours the subgraph induced on ball(radius) of Cay(Gamma, S \ {e}) and
/// reports whether floor(|S|^{1/alpha}) colours sufficed. Informative only:
/// the threshold is promised for well-chosen sets, not for every S.
ColourCorReport colourcor_experiment(const Group& g, const SymmetricSet& s,
                                     double alpha, int radius);

} // namespace cayleyiso
