#include "cayleyiso/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cayleyiso {

void SimpleGraph::finalize() {
    adj.assign(n, {});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
}

bool SimpleGraph::connected() const {
    if (n == 0) return false;
    std::vector<char> vis(n, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!vis[v]) {
                vis[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

namespace {

SimpleGraph build_on_vertices(const Group& g, const SymmetricSet& s,
                              std::vector<Element> verts, bool cayley) {
    std::sort(verts.begin(), verts.end());
    ElementMap<int> index;
    for (size_t i = 0; i < verts.size(); ++i) index[verts[i]] = (int)i;
    SimpleGraph gr;
    gr.n = (int)verts.size();
    gr.cayley = cayley;
    gr.vertex_elems = verts;
    gr.set_elems = s.elems;
    std::set<int> loop_set;
    for (int i = 0; i < gr.n; ++i) {
        for (const Element& e : s.elems) {
            Element y = g.mul(verts[i], e);
            if (y == verts[i]) {
                loop_set.insert(i);
                continue;
            }
            auto it = index.find(y);
            if (it == index.end()) continue;
            int j = it->second;
            if (i < j) gr.edges.push_back({i, j});
            else gr.edges.push_back({j, i});
        }
    }
    gr.loops.assign(loop_set.begin(), loop_set.end());
    gr.finalize();
    return gr;
}

} // namespace

SimpleGraph cayley_graph(const Group& g, const SymmetricSet& s, size_t max_vertices) {
    // saturate <S> by BFS
    ElementSet seen;
    std::vector<Element> verts{g.identity()};
    seen.insert(verts[0]);
    size_t head = 0;
    while (head < verts.size()) {
        Element x = verts[head++];
        for (const Element& e : s.elems) {
            Element y = g.mul(x, e);
            if (seen.insert(y).second) {
                verts.push_back(y);
                if (verts.size() > max_vertices)
                    throw std::invalid_argument(
                        "Cayley graph too large (is the generated subgroup finite?)");
            }
        }
    }
    return build_on_vertices(g, s, std::move(verts), true);
}

SimpleGraph ball_induced_graph(const Group& g, const SymmetricSet& s, int radius) {
    return build_on_vertices(g, s, ball(g, s, radius), false);
}

SimpleGraph graph_from_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    SimpleGraph gr;
    std::string line;
    std::set<int> loop_set;
    int maxv = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        int u, v;
        if (!(ss >> u >> v)) throw std::runtime_error("bad edge list line: " + line);
        if (u < 0 || v < 0) throw std::runtime_error("negative vertex id");
        maxv = std::max({maxv, u, v});
        if (u == v) loop_set.insert(u);
        else gr.edges.push_back({std::min(u, v), std::max(u, v)});
    }
    gr.n = maxv + 1;
    gr.loops.assign(loop_set.begin(), loop_set.end());
    gr.finalize();
    return gr;
}

} // namespace cayleyiso
