#include "cayleyiso/forests.hpp"

#include <Eigen/Sparse>
#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace cayleyiso {

UstMarginals ust_marginals_exact(const SimpleGraph& g) {
    if (g.n > 2000) throw std::invalid_argument("graph too large for exact marginals");
    if (!g.connected()) throw std::invalid_argument("graph must be connected");
    UstMarginals out;
    if (g.n == 1) return out;

    // reduced Laplacian with vertex 0 grounded
    int m = g.n - 1;
    std::vector<Eigen::Triplet<double>> trips;
    std::vector<double> deg(g.n, 0.0);
    for (auto& [u, v] : g.edges) {
        deg[u] += 1;
        deg[v] += 1;
        if (u != 0 && v != 0) {
            trips.push_back({u - 1, v - 1, -1.0});
            trips.push_back({v - 1, u - 1, -1.0});
        }
    }
    for (int i = 1; i < g.n; ++i) trips.push_back({i - 1, i - 1, deg[i]});
    Eigen::SparseMatrix<double> lap(m, m);
    lap.setFromTriplets(trips.begin(), trips.end());

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                             Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(1e-12);
    cg.setMaxIterations(20000);
    cg.compute(lap);

    for (auto& [u, v] : g.edges) {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
        if (u != 0) b[u - 1] = 1.0;
        if (v != 0) b[v - 1] = -1.0;
        Eigen::VectorXd x = cg.solve(b);
        double pu = u == 0 ? 0.0 : x[u - 1];
        double pv = v == 0 ? 0.0 : x[v - 1];
        out.edge_marginal.push_back(pu - pv);
        out.total += pu - pv;
    }
    return out;
}

std::vector<std::pair<int, int>> wilson_sample(const SimpleGraph& g, uint64_t seed) {
    if (!g.connected()) throw std::invalid_argument("graph must be connected");
    std::mt19937_64 rng(seed);
    std::vector<char> intree(g.n, 0);
    std::vector<int> next(g.n, -1);
    intree[0] = 1;
    std::vector<std::pair<int, int>> tree;
    for (int i = 1; i < g.n; ++i) {
        if (intree[i]) continue;
        int u = i;
        while (!intree[u]) {
            const auto& nb = g.adj[u];
            std::uniform_int_distribution<size_t> pick(0, nb.size() - 1);
            next[u] = nb[pick(rng)];
            u = next[u];
        }
        u = i;
        while (!intree[u]) {
            intree[u] = 1;
            tree.push_back({std::min(u, next[u]), std::max(u, next[u])});
            u = next[u];
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

namespace {

uint64_t derive_seed(uint64_t seed, uint64_t i) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

std::vector<double> monte_carlo_marginals(const SimpleGraph& g, int samples,
                                          uint64_t seed, int threads) {
    std::map<std::pair<int, int>, int> edge_idx;
    for (size_t i = 0; i < g.edges.size(); ++i) edge_idx[g.edges[i]] = (int)i;

    threads = std::max(1, threads);
    std::vector<std::vector<long long>> partial(threads,
                                                std::vector<long long>(g.edges.size(), 0));
    auto work = [&](int t) {
        for (int i = t; i < samples; i += threads) {
            auto tree = wilson_sample(g, derive_seed(seed, (uint64_t)i));
            for (auto& e : tree) partial[t][edge_idx.at(e)] += 1;
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    std::vector<double> out(g.edges.size(), 0.0);
    for (int t = 0; t < threads; ++t)
        for (size_t e = 0; e < out.size(); ++e) out[e] += (double)partial[t][e];
    for (double& v : out) v /= (double)samples;
    return out;
}

ForestMarginals forest_marginals(const Group& g, const SimpleGraph& graph) {
    ForestMarginals fm;
    fm.transitive = graph.cayley;
    fm.edge_marginals = ust_marginals_exact(graph);

    if (!graph.cayley) return fm;

    ElementMap<int> vindex;
    for (size_t i = 0; i < graph.vertex_elems.size(); ++i)
        vindex[graph.vertex_elems[i]] = (int)i;
    std::map<std::pair<int, int>, double> marg;
    for (size_t i = 0; i < graph.edges.size(); ++i)
        marg[graph.edges[i]] = fm.edge_marginals.edge_marginal[i];

    auto edge_between = [&](int a, int b) {
        return marg.at({std::min(a, b), std::max(a, b)});
    };

    int id = vindex.at(g.identity());
    for (const Element& e : graph.set_elems) {
        Element y = g.mul(g.identity(), e);
        if (y == g.identity()) continue;  // loop: never in a tree
        double value = edge_between(id, vindex.at(y));
        fm.f.push_back({e, value});
        fm.deg += value;
        if (value > 1e-12) fm.width += 1;
        // marginal of the g-edge should not depend on the base vertex
        for (int v = 0; v < graph.n; ++v) {
            Element w = g.mul(graph.vertex_elems[v], e);
            double dev = std::fabs(edge_between(v, vindex.at(w)) - value);
            fm.transitivity_deviation = std::max(fm.transitivity_deviation, dev);
        }
    }
    std::sort(fm.f.begin(), fm.f.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return fm;
}

ForestInequalityReport forest_inequality_check(const ForestMarginals& fm, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("forest inequality needs p >= 1");
    if (!fm.transitive)
        throw std::domain_error("forest inequality needs a vertex-transitive Cayley graph");
    ForestInequalityReport r;
    r.p = p;
    r.deg = fm.deg;
    r.width = fm.width;
    double psum = 0;
    for (auto& [e, v] : fm.f) psum += std::pow(v, p);
    r.lhs = std::pow(psum, 1.0 / p);
    r.rhs = fm.deg * std::pow((double)fm.width, -(p - 1.0) / p);
    r.slack = r.lhs - r.rhs;
    r.holds = r.lhs >= r.rhs - 1e-9;
    return r;
}

} // namespace cayleyiso
