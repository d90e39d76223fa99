#pragma once

#include "cayleyiso/group.hpp"

#include <string>
#include <vector>

namespace cayleyiso {

/// Finite undirected graph. Loops are tracked separately from the simple
/// edge list (spanning trees never use them; colouring rejects them).
struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v
    std::vector<std::vector<int>> adj;       // sorted neighbour lists
    std::vector<int> loops;                  // vertices carrying a loop
    bool cayley = false;                     // built as a Cayley graph (vertex-transitive)
    std::vector<Element> vertex_elems;       // Cayley builds only
    std::vector<Element> set_elems;          // the S used for a Cayley build

    void finalize();  // builds adj from edges
    bool connected() const;
};

/// Cayley graph of the subgroup generated by S, vertices in canonical order.
/// The backend must make that subgroup finite at desk scale.
SimpleGraph cayley_graph(const Group& g, const SymmetricSet& s,
                         size_t max_vertices = 200000);

/// Subgraph induced on ball(radius) of Cay(Gamma, S).
SimpleGraph ball_induced_graph(const Group& g, const SymmetricSet& s, int radius);

/// Edge-list file: one "u v" pair per line, 0-based.
SimpleGraph graph_from_edge_list(const std::string& path);

} // namespace cayleyiso
