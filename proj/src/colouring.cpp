#include "cayleyiso/colouring.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <stdexcept>

namespace cayleyiso {

ColouringReport degeneracy_colouring(const SimpleGraph& g,
                                     std::optional<Rational> mad_bound,
                                     const std::vector<int>* tie_rank) {
    if (!g.loops.empty())
        throw std::invalid_argument("colouring input must be loop-free");
    if (tie_rank && (int)tie_rank->size() != g.n)
        throw std::invalid_argument("tie_rank must cover every vertex");
    ColouringReport rep;
    rep.vertices = g.n;
    if (g.n == 0) return rep;

    // peel minimum-degree vertices, ties by rank (vertex id by default)
    auto rank = [&](int v) { return tie_rank ? (*tie_rank)[v] : v; };
    std::vector<int> degree(g.n);
    for (int v = 0; v < g.n; ++v) degree[v] = (int)g.adj[v].size();
    std::set<std::tuple<int, int, int>> heap;  // (degree, rank, vertex)
    for (int v = 0; v < g.n; ++v) heap.insert({degree[v], rank(v), v});
    std::vector<char> removed(g.n, 0);
    std::vector<int> order;
    order.reserve(g.n);
    while (!heap.empty()) {
        auto [d, r, v] = *heap.begin();
        heap.erase(heap.begin());
        rep.degeneracy = std::max(rep.degeneracy, d);
        removed[v] = 1;
        order.push_back(v);
        for (int w : g.adj[v])
            if (!removed[w]) {
                heap.erase({degree[w], rank(w), w});
                degree[w] -= 1;
                heap.insert({degree[w], rank(w), w});
            }
    }

    rep.assignment.assign(g.n, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        std::vector<char> used(rep.degeneracy + 2, 0);
        for (int w : g.adj[v])
            if (rep.assignment[w] >= 0 && rep.assignment[w] <= rep.degeneracy + 1)
                used[rep.assignment[w]] = 1;
        int c = 0;
        while (used[c]) ++c;
        rep.assignment[v] = c;
        rep.colours_used = std::max(rep.colours_used, c + 1);
    }

    rep.proper = true;
    for (auto& [u, v] : g.edges)
        if (rep.assignment[u] == rep.assignment[v]) rep.proper = false;

    if (mad_bound) {
        rep.mad_bound = mad_bound;
        long long floor_mad = mad_bound->num() / mad_bound->den();
        rep.within_mad_bound = rep.colours_used <= floor_mad + 1;
    }
    return rep;
}

ColourCorReport colourcor_experiment(const Group& g, const SymmetricSet& s,
                                     double alpha, int radius) {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
    std::vector<Element> stripped;
    for (const Element& e : s.elems)
        if (!(e == g.identity())) stripped.push_back(e);
    if (stripped.empty())
        throw std::invalid_argument("set is empty after removing the identity");
    SymmetricSet s2 = make_symmetric_set(g, std::move(stripped));

    ColourCorReport rep;
    rep.alpha = alpha;
    rep.set_size = (long long)s2.size();
    rep.target = (long long)std::floor(std::pow((double)s2.size(), 1.0 / alpha) + 1e-12);
    SimpleGraph graph = ball_induced_graph(g, s2, radius);
    rep.colouring = degeneracy_colouring(graph);
    rep.hit = rep.colouring.colours_used <= rep.target;
    return rep;
}

} // namespace cayleyiso
