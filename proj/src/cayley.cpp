#include "cayleyiso/cayley.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace cayleyiso {

SubsetStats subset_stats(const Group& g, const SymmetricSet& s,
                         const std::vector<Element>& f) {
    if (f.empty()) throw std::invalid_argument("subset F must be non-empty");
    ElementSet fs(f.begin(), f.end());
    if (fs.size() != f.size())
        throw std::invalid_argument("subset F has duplicate vertices");
    SubsetStats st;
    st.size = (long long)f.size();
    long long internal_incidences = 0;
    for (const Element& x : f) {
        for (const Element& e : s.elems) {
            Element y = g.mul(x, e);
            if (y == x) ++st.loops;
            else if (fs.count(y)) ++internal_incidences;
            else ++st.boundary;
        }
    }
    st.internal_edges = internal_incidences / 2 + st.loops;
    st.ratio = Rational(st.boundary, st.size);
    st.count_identity_holds =
        st.size * (long long)s.size() ==
        st.boundary + 2 * st.internal_edges - st.loops;
    return st;
}

namespace {

struct Candidate {
    Rational ratio;
    std::vector<int> indices;  // pool indices, sorted
};

// Tracks the best (smallest ratio, then smallest |F|, then lexicographically
// smallest index set) candidate seen; the deterministic merge order.
struct Best {
    bool has = false;
    Rational ratio;
    std::vector<int> indices;
    size_t evaluated = 0;

    void offer(const Rational& r, std::vector<int> idx) {
        ++evaluated;
        if (!has || r < ratio ||
            (r == ratio && (idx.size() < indices.size() ||
                            (idx.size() == indices.size() && idx < indices)))) {
            has = true;
            ratio = r;
            indices = std::move(idx);
        }
    }
};

struct PoolGraph {
    std::vector<Element> verts;
    std::vector<std::vector<int>> adj;  // non-loop neighbours within pool
    bool loop_per_vertex = false;       // identity in S
    long long set_size = 0;
    ElementMap<int> index;
};

PoolGraph build_pool(const Group& g, const SymmetricSet& s, int radius) {
    PoolGraph p;
    p.verts = ball(g, s, radius);
    p.set_size = (long long)s.size();
    p.loop_per_vertex = s.contains_identity;
    for (size_t i = 0; i < p.verts.size(); ++i) p.index[p.verts[i]] = (int)i;
    p.adj.resize(p.verts.size());
    for (size_t i = 0; i < p.verts.size(); ++i) {
        for (const Element& e : s.elems) {
            Element y = g.mul(p.verts[i], e);
            if (y == p.verts[i]) continue;
            auto it = p.index.find(y);
            if (it != p.index.end()) p.adj[i].push_back(it->second);
        }
        std::sort(p.adj[i].begin(), p.adj[i].end());
        p.adj[i].erase(std::unique(p.adj[i].begin(), p.adj[i].end()), p.adj[i].end());
    }
    return p;
}

bool pool_saturated(const Group& g, const SymmetricSet& s, const PoolGraph& p) {
    for (const Element& x : p.verts)
        for (const Element& e : s.elems)
            if (!p.index.count(g.mul(x, e))) return false;
    return true;
}

Rational mask_ratio(const PoolGraph& p, uint32_t mask,
                    const std::vector<uint32_t>& adj_mask) {
    long long size = std::popcount(mask);
    long long internal = 0;
    uint32_t m = mask;
    while (m) {
        int v = std::countr_zero(m);
        m &= m - 1;
        internal += std::popcount(adj_mask[v] & mask);
    }
    long long boundary = size * p.set_size - internal - (p.loop_per_vertex ? size : 0);
    return Rational(boundary, size);
}

std::vector<int> mask_indices(uint32_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

// Enumerates every connected subset of the pool exactly once (each set is
// visited from its minimum vertex) and offers it to `best`. A disconnected
// minimizer never beats its best component, so connected sets suffice.
void exhaustive_connected(const PoolGraph& p, long long max_subset, Best& best) {
    int n = (int)p.verts.size();
    std::vector<uint32_t> adj_mask(n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : p.adj[v]) adj_mask[v] |= (1u << w);

    struct Frame {
        uint32_t set, ext, banned;
    };
    for (int root = 0; root < n; ++root) {
        uint32_t allowed = ~((1u << root) - 1);  // indices >= root
        std::vector<Frame> stack;
        uint32_t rootbit = 1u << root;
        best.offer(mask_ratio(p, rootbit, adj_mask), {root});
        stack.push_back({rootbit, adj_mask[root] & allowed & ~rootbit, 0});
        while (!stack.empty()) {
            Frame fr = stack.back();
            stack.pop_back();
            uint32_t ext = fr.ext, banned = fr.banned;
            while (ext) {
                uint32_t vbit = ext & (~ext + 1);
                ext ^= vbit;
                int v = std::countr_zero(vbit);
                uint32_t nset = fr.set | vbit;
                if (max_subset == 0 || std::popcount(nset) <= max_subset) {
                    best.offer(mask_ratio(p, nset, adj_mask), mask_indices(nset));
                    if (max_subset == 0 || std::popcount(nset) < max_subset) {
                        uint32_t next_ext =
                            (ext | (adj_mask[v] & allowed)) & ~nset & ~banned & ~vbit;
                        stack.push_back({nset, next_ext, banned | vbit});
                    }
                }
                banned |= vbit;
            }
        }
    }
}

void nested_balls(const Group& g, const SymmetricSet& s, int radius, Best& best) {
    auto bd = ball_with_distances(g, s, radius);
    size_t i = 0;
    for (int r = 0; r <= radius; ++r) {
        while (i < bd.size() && bd[i].second <= r) ++i;
        std::vector<int> idx((size_t)i);
        for (size_t j = 0; j < i; ++j) idx[j] = (int)j;
        std::vector<Element> f;
        f.reserve(i);
        for (size_t j = 0; j < i; ++j) f.push_back(bd[j].first);
        SubsetStats st = subset_stats(g, s, f);
        best.offer(st.ratio, std::move(idx));
        if (i == bd.size()) break;
    }
}

void local_search(const PoolGraph& p, uint64_t seed, int steps,
                  long long max_subset, Best& best) {
    int n = (int)p.verts.size();
    std::mt19937_64 rng(seed);
    std::vector<char> in_set(n, 0);
    std::vector<int> members{0};
    in_set[0] = 1;
    long long internal = 0;  // sum over members of adjacent members
    auto ratio_of = [&](long long size, long long internal_inc) {
        long long boundary =
            size * p.set_size - internal_inc - (p.loop_per_vertex ? size : 0);
        return Rational(boundary, size);
    };
    Rational cur = ratio_of(1, 0);
    best.offer(cur, {0});
    std::uniform_int_distribution<int> dv(0, n - 1);
    auto connected_without = [&](int v) {
        if (members.size() <= 2) return true;
        int start = -1;
        for (int m : members)
            if (m != v) { start = m; break; }
        std::vector<char> vis(n, 0);
        std::vector<int> stack{start};
        vis[start] = 1;
        int count = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int w : p.adj[x])
                if (in_set[w] && w != v && !vis[w]) {
                    vis[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == (int)members.size() - 1;
    };
    for (int step = 0; step < steps; ++step) {
        int v = dv(rng);
        if (in_set[v]) {
            if (members.size() == 1) continue;
            if (!connected_without(v)) continue;
            long long adj_in = 0;
            for (int w : p.adj[v]) adj_in += in_set[w];
            long long ni = internal - 2 * adj_in;
            Rational r = ratio_of((long long)members.size() - 1, ni);
            if (r <= cur) {  // removal shrinks |F|, so ties are accepted
                in_set[v] = 0;
                members.erase(std::find(members.begin(), members.end(), v));
                internal = ni;
                cur = r;
                std::vector<int> idx = members;
                std::sort(idx.begin(), idx.end());
                best.offer(cur, std::move(idx));
            }
        } else {
            long long adj_in = 0;
            for (int w : p.adj[v]) adj_in += in_set[w];
            if (adj_in == 0) continue;  // keep the candidate connected
            if (max_subset > 0 && (long long)members.size() + 1 > max_subset) continue;
            long long ni = internal + 2 * adj_in;
            Rational r = ratio_of((long long)members.size() + 1, ni);
            if (r < cur) {
                in_set[v] = 1;
                members.push_back(v);
                internal = ni;
                cur = r;
                std::vector<int> idx = members;
                std::sort(idx.begin(), idx.end());
                best.offer(cur, std::move(idx));
            }
        }
    }
}

void box_family(const Group& g, const SymmetricSet& s, long long max_subset,
                Best& best, const PoolGraph& p) {
    int d = g.free_rank();
    long long side_cap = d == 1 ? 50 : (d == 2 ? 16 : 8);
    if (max_subset > 0) {
        long long cap = 1;
        while (true) {
            long long vol = 1;
            for (int i = 0; i < d; ++i) vol *= (cap + 1);
            if (vol > max_subset) break;
            ++cap;
        }
        side_cap = std::min(side_cap, cap);
    }
    for (long long L = 1; L <= side_cap; ++L) {
        std::vector<Element> f;
        std::vector<int32_t> v(d, 0);
        while (true) {
            f.push_back({v});
            int i = 0;
            while (i < d && ++v[i] == L) v[i++] = 0;
            if (i == d) break;
        }
        SubsetStats st = subset_stats(g, s, f);
        // box candidates live outside the pool; flag them with index -1
        best.offer(st.ratio, std::vector<int>{-(int)L});
    }
}

} // namespace

CheegerResult cheeger_upper(const Group& g, const SymmetricSet& s,
                            const SearchConfig& cfg) {
    if (cfg.pool_radius < 0) throw std::invalid_argument("pool radius must be >= 0");
    PoolGraph pool = build_pool(g, s, cfg.pool_radius);
    if (pool.verts.empty()) throw std::invalid_argument("empty candidate pool");
    bool saturated = pool_saturated(g, s, pool);

    Best best;
    bool exhaustive_done = false;
    for (const std::string& strat : cfg.strategies) {
        if (strat == "exhaustive") {
            if (pool.verts.size() <= 24) {
                exhaustive_connected(pool, cfg.max_subset, best);
                exhaustive_done = true;
            }
        } else if (strat == "nested_balls") {
            nested_balls(g, s, cfg.pool_radius, best);
        } else if (strat == "local_search") {
            local_search(pool, cfg.seed, cfg.local_steps, cfg.max_subset, best);
        } else if (strat == "boxes") {
            if (g.kind() == GroupKind::free_abelian)
                box_family(g, s, cfg.max_subset, best, pool);
        } else {
            throw std::invalid_argument("unknown search strategy '" + strat + "'");
        }
    }
    if (!best.has) {
        // always have at least the singleton {identity}
        SubsetStats st = subset_stats(g, s, {g.identity()});
        best.offer(st.ratio, {0});
    }

    CheegerResult out;
    out.h = best.ratio;
    out.candidates_evaluated = best.evaluated;
    out.set_size = s.size();
    if (!best.indices.empty() && best.indices[0] < 0) {
        // box witness: rebuild from the side length
        long long L = -best.indices[0];
        int d = g.free_rank();
        std::vector<int32_t> v(d, 0);
        while (true) {
            out.witness.push_back({v});
            int i = 0;
            while (i < d && ++v[i] == L) v[i++] = 0;
            if (i == d) break;
        }
    } else {
        for (int i : best.indices) out.witness.push_back(pool.verts[i]);
    }
    std::sort(out.witness.begin(), out.witness.end());

    bool covered_pool =
        exhaustive_done &&
        (cfg.max_subset == 0 || cfg.max_subset >= (long long)pool.verts.size());
    out.pool_optimal = covered_pool;
    if (g.is_finite() && saturated) {
        // F = whole (generated sub)group was among the nested ball candidates
        std::vector<int> all((size_t)pool.verts.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = (int)i;
        std::vector<Element> f = pool.verts;
        SubsetStats st = subset_stats(g, s, f);
        best.offer(st.ratio, std::move(all));
        if (best.ratio < out.h) {
            out.h = best.ratio;
            out.witness = pool.verts;
            std::sort(out.witness.begin(), out.witness.end());
        }
        if (out.h == Rational(0)) {
            out.exact = true;
            out.note = "finite group: boundary of the full vertex set is empty";
        }
    } else if (covered_pool) {
        out.note = "minimum over all connected subsets of the configured pool";
    }
    auto em = e_and_mad(out, s);
    out.e = em.e;
    out.mad = em.mad;
    out.candidates_evaluated = best.evaluated;
    return out;
}

EAndMad e_and_mad(const CheegerResult& c, const SymmetricSet& s) {
    EAndMad em;
    Rational size((long long)s.size());
    em.e = (size - c.h) / size;
    em.mad = size - c.h;
    em.exact = c.exact;
    return em;
}

std::optional<Rational> analytic_h(const Group& g, const SymmetricSet& s) {
    if (g.is_finite()) return Rational(0);
    if (g.kind() == GroupKind::free_abelian && is_standard_set(g, s)) return Rational(0);
    if (g.kind() == GroupKind::lamplighter && is_standard_set(g, s)) return Rational(0);
    if (g.kind() == GroupKind::free_group && is_standard_set(g, s))
        return Rational(2LL * g.free_rank() - 2);
    return std::nullopt;
}

} // namespace cayleyiso
