#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cayleyiso/cayley.hpp"
#include "cayleyiso/colouring.hpp"
#include "cayleyiso/zoo.hpp"

#include <algorithm>
#include <random>

using namespace cayleyiso;

TEST_CASE("degeneracy colouring on the named graphs") {
    SUBCASE("odd cycle needs three colours") {
        Group g = Group::cyclic(5);
        SimpleGraph c5 = cayley_graph(g, standard_set(g));
        ColouringReport r = degeneracy_colouring(c5, Rational(2));
        CHECK(r.colours_used == 3);
        CHECK(r.proper);
        CHECK(r.degeneracy == 2);
        CHECK(r.within_mad_bound);  // 3 <= floor(2) + 1
    }
    SUBCASE("even cycle gets two") {
        Group g = Group::cyclic(6);
        ColouringReport r = degeneracy_colouring(cayley_graph(g, standard_set(g)));
        CHECK(r.colours_used == 2);
        CHECK(r.proper);
    }
    SUBCASE("complete graph needs them all") {
        Group g = builtin_klein_four();
        std::vector<Element> inv;
        for (const Element& e : g.elements())
            if (!(e == g.identity())) inv.push_back(e);
        ColouringReport r =
            degeneracy_colouring(cayley_graph(g, make_symmetric_set(g, inv)), Rational(3));
        CHECK(r.colours_used == 4);
        CHECK(r.within_mad_bound);
        CHECK(r.proper);
    }
    SUBCASE("trees take two") {
        Group g = Group::free_group(2);
        SimpleGraph b = ball_induced_graph(g, standard_set(g), 4);
        ColouringReport r = degeneracy_colouring(b);
        CHECK(r.colours_used == 2);
        CHECK(r.degeneracy == 1);
        CHECK(r.proper);
    }
    SUBCASE("loops rejected") {
        Group g = Group::cyclic(6);
        SymmetricSet s = symmetric_from_words(
            g, {Word{}, g.parse_word({"t"}), g.parse_word({"t^-1"})});
        SimpleGraph graph = ball_induced_graph(g, s, 3);
        CHECK_THROWS_AS(degeneracy_colouring(graph), std::invalid_argument);
    }
}

TEST_CASE("colour count is stable under relabelling with the same tie order") {
    Group g = builtin_s3();
    std::vector<Element> inv;
    for (const Element& e : g.elements())
        if (!(e == g.identity()) && g.mul(e, e) == g.identity()) inv.push_back(e);
    SimpleGraph graph = cayley_graph(g, make_symmetric_set(g, inv));
    ColouringReport base = degeneracy_colouring(graph);

    std::mt19937_64 rng(4);
    std::vector<int> perm(graph.n);
    for (int i = 0; i < graph.n; ++i) perm[i] = i;
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        SimpleGraph relabeled;
        relabeled.n = graph.n;
        for (auto& [u, v] : graph.edges)
            relabeled.edges.push_back(
                {std::min(perm[u], perm[v]), std::max(perm[u], perm[v])});
        relabeled.finalize();
        std::vector<int> rank(graph.n);  // original canonical order
        for (int v = 0; v < graph.n; ++v) rank[perm[v]] = v;
        ColouringReport r = degeneracy_colouring(relabeled, std::nullopt, &rank);
        CHECK(r.colours_used == base.colours_used);
    }
}

TEST_CASE("threshold experiment") {
    SUBCASE("path graphs on the integers") {
        Group g = Group::free_abelian(1);
        ColourCorReport r = colourcor_experiment(g, standard_set(g), 0.5, 50);
        CHECK(r.colouring.colours_used == 2);
        CHECK(r.colouring.proper);
        CHECK(r.target == 4);  // |S|^2
        CHECK(r.hit);
    }
    SUBCASE("identity stripped before colouring") {
        Group g = Group::cyclic(6);
        SymmetricSet s = symmetric_from_words(
            g, {Word{}, g.parse_word({"t"}), g.parse_word({"t^-1"})});
        ColourCorReport r = colourcor_experiment(g, s, 1.0, 5);
        CHECK(r.set_size == 2);
        CHECK(r.colouring.colours_used == 2);
        CHECK(r.hit);
    }
    SUBCASE("free group ball") {
        Group g = Group::free_group(2);
        ColourCorReport r = colourcor_experiment(g, standard_set(g), 2.0, 4);
        CHECK(r.colouring.colours_used == 2);
        CHECK(r.target == 2);
        CHECK(r.hit);
    }
}

TEST_CASE("colours within the average-degree budget across the zoo") {
    for (const auto& inst : instance_zoo()) {
        const Group& g = inst.group;
        std::vector<Element> stripped;
        for (const Element& e : inst.set.elems)
            if (!(e == g.identity())) stripped.push_back(e);
        SymmetricSet s = make_symmetric_set(g, stripped);
        SimpleGraph graph = ball_induced_graph(g, s, g.is_finite() ? 8 : 3);
        SearchConfig sc;
        sc.pool_radius = g.is_finite() ? 8 : 3;
        if (g.kind() == GroupKind::free_abelian) sc.strategies.push_back("boxes");
        CheegerResult c = cheeger_upper(g, s, sc);
        ColouringReport r = degeneracy_colouring(graph, c.mad);
        CHECK(r.proper);
        CHECK(r.colours_used <= r.degeneracy + 1);
        if (g.is_finite() || g.kind() == GroupKind::free_group ||
            g.kind() == GroupKind::free_abelian)
            CHECK(r.within_mad_bound);
    }
}
