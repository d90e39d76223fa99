#include "cayleyiso/zoo.hpp"

#include <algorithm>
#include <stdexcept>

namespace cayleyiso {

std::vector<std::vector<int>> to_table(const Group& g) {
    auto elems = g.elements();  // canonical order
    // the identity must sit at index 0 for the table constructor's convention
    auto it = std::find(elems.begin(), elems.end(), g.identity());
    if (it != elems.begin()) std::iter_swap(elems.begin(), it);
    ElementMap<int> index;
    for (size_t i = 0; i < elems.size(); ++i) index[elems[i]] = (int)i;
    std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
    for (size_t a = 0; a < elems.size(); ++a)
        for (size_t b = 0; b < elems.size(); ++b)
            table[a][b] = index.at(g.mul(elems[a], elems[b]));
    return table;
}

Group builtin_klein_four() {
    return Group::finite_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

Group builtin_s3() {
    Group perm = Group::permutation(3, {{1, 0, 2}, {1, 2, 0}});
    return Group::finite_table(to_table(perm));
}

namespace {

SymmetricSet involutions(const Group& g) {
    std::vector<Element> elems;
    for (const Element& e : g.elements())
        if (!(e == g.identity()) && g.mul(e, e) == g.identity()) elems.push_back(e);
    return make_symmetric_set(g, std::move(elems));
}

} // namespace

std::vector<ZooInstance> instance_zoo() {
    std::vector<ZooInstance> zoo;
    auto add = [&](std::string name, Group g, SymmetricSet s) {
        zoo.push_back({std::move(name), std::move(g), std::move(s)});
    };
    {
        Group g = Group::free_abelian(1);
        add("Z", g, standard_set(g));
    }
    {
        Group g = Group::free_abelian(2);
        add("Z2", g, standard_set(g));
    }
    {
        Group g = Group::cyclic(4);
        add("Z4", g, standard_set(g));
    }
    {
        Group g = Group::cyclic(5);
        add("Z5", g, standard_set(g));
    }
    {
        Group g = Group::cyclic(6);
        add("Z6", g, standard_set(g));
    }
    {
        Group g = builtin_klein_four();
        add("klein4", g, involutions(g));  // three involutions: Cay = K4
    }
    {
        Group g = builtin_s3();
        add("S3", g, involutions(g));  // the three transpositions
    }
    {
        Group g = Group::free_group(2);
        add("F2", g, standard_set(g));
    }
    {
        Group g = Group::free_product_cyclic({2, 3});
        add("C2*C3", g, standard_set(g));
    }
    {
        Group g = Group::lamplighter();
        add("lamplighter", g, standard_set(g));
    }
    return zoo;
}

} // namespace cayleyiso
