#pragma once

#include "cayleyiso/graph.hpp"

#include <vector>

namespace cayleyiso {

struct UstMarginals {
    std::vector<double> edge_marginal;  // per edge of the graph, in edge order
    double total = 0;                   // should equal n - 1
};

/// Edge inclusion probabilities of the uniform spanning tree: the marginal
/// of edge uv equals the effective resistance between u and v at unit
/// conductances. Laplacian systems solved by Jacobi-preconditioned CG at
/// 1e-12 tolerance, one grounded vertex.
UstMarginals ust_marginals_exact(const SimpleGraph& g);

/// One uniform spanning tree by loop-erased random walks; same seed, same tree.
std::vector<std::pair<int, int>> wilson_sample(const SimpleGraph& g, uint64_t seed);

/// Empirical edge marginals over `samples` Wilson trees with per-sample
/// derived seeds; deterministic for a given (seed, samples) regardless of
/// thread count.
std::vector<double> monte_carlo_marginals(const SimpleGraph& g, int samples,
                                          uint64_t seed, int threads = 1);

/// The forest data a vertex-transitive Cayley graph induces: f(g) is the
/// probability that the edge {identity, g} lies in the tree.
struct ForestMarginals {
    std::vector<std::pair<Element, double>> f;  // per non-loop element of S
    double deg = 0;                             // sum of f
    long long width = 0;                        // #{g : f(g) > 0}
    double transitivity_deviation = 0;          // max over (v,g) of the marginal spread
    UstMarginals edge_marginals;
    bool transitive = false;
};

ForestMarginals forest_marginals(const Group& g, const SimpleGraph& graph);

struct ForestInequalityReport {
    double p = 0;
    double lhs = 0;    // ||f||_p
    double rhs = 0;    // deg * width^{-(p-1)/p}
    double slack = 0;  // lhs - rhs
    bool holds = false;
    double deg = 0;
    long long width = 0;
};

/// ||f||_p >= deg * width^{-(p-1)/p}; refuses non-transitive inputs.
ForestInequalityReport forest_inequality_check(const ForestMarginals& fm, double p);

} // namespace cayleyiso
