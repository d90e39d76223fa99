#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cayleyiso/cayley.hpp"
#include "cayleyiso/zoo.hpp"

#include <random>

using namespace cayleyiso;

TEST_CASE("subset statistics") {
    SUBCASE("interval in Z") {
        Group g = Group::free_abelian(1);
        SymmetricSet s = standard_set(g);
        std::vector<Element> f = {{{0}}, {{1}}, {{2}}};
        SubsetStats st = subset_stats(g, s, f);
        CHECK(st.boundary == 2);
        CHECK(st.internal_edges == 2);
        CHECK(st.loops == 0);
        CHECK(st.count_identity_holds);
        CHECK(st.ratio == Rational(2, 3));
    }
    SUBCASE("loop from the identity in S") {
        Group g = Group::cyclic(6);
        SymmetricSet s = symmetric_from_words(
            g, {Word{}, g.parse_word({"t"}), g.parse_word({"t^-1"})});
        CHECK(s.contains_identity);
        SubsetStats st = subset_stats(g, s, {{{0}}});
        CHECK(st.boundary == 2);
        CHECK(st.internal_edges == 1);
        CHECK(st.loops == 1);
        CHECK(st.count_identity_holds);  // 1*3 = 2 + 2 - 1
    }
    SUBCASE("involution generator") {
        Group g = Group::cyclic(6);
        SymmetricSet s = symmetric_from_words(g, {g.parse_word({"t^3"})});
        SubsetStats st = subset_stats(g, s, {{{0}}});
        CHECK(st.boundary == 1);
        CHECK(st.internal_edges == 0);
        CHECK(st.loops == 0);
    }
    SUBCASE("duplicates rejected") {
        Group g = Group::cyclic(6);
        CHECK_THROWS_AS(subset_stats(g, standard_set(g), {{{0}}, {{0}}}),
                        std::invalid_argument);
    }
}

namespace {

// brute force over all subsets of a small pool: connectivity by BFS,
// boundary by direct counting — fully independent of the search code
struct BruteResult {
    Rational best_ratio{1, 1};
    bool has = false;
};

BruteResult brute_force_connected(const Group& g, const SymmetricSet& s,
                                  const std::vector<Element>& pool,
                                  bool check_tree_boundary) {
    ElementMap<int> index;
    for (size_t i = 0; i < pool.size(); ++i) index[pool[i]] = (int)i;
    int n = (int)pool.size();
    REQUIRE(n <= 20);
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (const Element& e : s.elems) {
            Element y = g.mul(pool[i], e);
            auto it = index.find(y);
            if (it != index.end() && it->second != i) adj[i].push_back(it->second);
        }
    BruteResult out;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        // connectivity
        int start = -1, cnt = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                if (start < 0) start = i;
                ++cnt;
            }
        std::vector<int> stack{start};
        uint32_t seen = 1u << start;
        int reach = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u])
                if ((mask & (1u << w)) && !(seen & (1u << w))) {
                    seen |= 1u << w;
                    ++reach;
                    stack.push_back(w);
                }
        }
        if (reach != cnt) continue;
        std::vector<Element> f;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) f.push_back(pool[i]);
        SubsetStats st = subset_stats(g, s, f);
        REQUIRE(st.count_identity_holds);
        if (check_tree_boundary) REQUIRE(st.boundary == 2 * st.size + 2);
        if (!out.has || st.ratio < out.best_ratio) {
            out.best_ratio = st.ratio;
            out.has = true;
        }
    }
    return out;
}

} // namespace

TEST_CASE("cheeger search") {
    SUBCASE("finite group: exactly zero with the full group as witness") {
        Group g = Group::cyclic(6);
        SearchConfig sc;
        sc.pool_radius = 5;
        CheegerResult c = cheeger_upper(g, standard_set(g), sc);
        CHECK(c.exact);
        CHECK(c.h == Rational(0));
        CHECK(c.e == Rational(1));
        CHECK(c.mad == Rational(2));
        CHECK(c.witness.size() == 6);
    }
    SUBCASE("free group, pool ball(3): the whole ball is the best subset") {
        Group g = Group::free_group(2);
        SearchConfig sc;
        sc.pool_radius = 3;
        sc.strategies = {"nested_balls", "local_search"};
        sc.local_steps = 4000;
        CheegerResult c = cheeger_upper(g, standard_set(g), sc);
        CHECK(c.h == Rational(108, 53));
        CHECK(c.witness.size() == 53);
        CHECK_FALSE(c.exact);
        CHECK(c.e == Rational(1, 1) - Rational(108, 53) / Rational(4));
    }
    SUBCASE("exhaustive minimum matches the independent brute force") {
        Group g = Group::free_group(2);
        SymmetricSet s = standard_set(g);
        auto pool = ball(g, s, 2);  // 17 vertices
        BruteResult brute = brute_force_connected(g, s, pool, true);
        SearchConfig sc;
        sc.pool_radius = 2;
        sc.strategies = {"exhaustive"};
        CheegerResult c = cheeger_upper(g, s, sc);
        CHECK(c.h == brute.best_ratio);
        CHECK(c.h == Rational(2 * 17 + 2, 17));
        CHECK(c.pool_optimal);
    }
    SUBCASE("interval family on Z") {
        Group g = Group::free_abelian(1);
        SearchConfig sc;
        sc.pool_radius = 2;
        sc.max_subset = 50;
        sc.strategies = {"boxes"};
        CheegerResult c = cheeger_upper(g, standard_set(g), sc);
        CHECK(c.h == Rational(2, 50));
        CHECK(c.witness.size() == 50);
    }
    SUBCASE("reported value equals the recomputation on the witness") {
        for (const auto& inst : instance_zoo()) {
            SearchConfig sc;
            sc.pool_radius = inst.group.is_finite() ? 8 : 2;
            CheegerResult c = cheeger_upper(inst.group, inst.set, sc);
            SubsetStats st = subset_stats(inst.group, inst.set, c.witness);
            CHECK(st.ratio == c.h);
            CHECK(c.mad == Rational((long long)inst.set.size()) - c.h);
        }
    }
}

TEST_CASE("e and mad") {
    Group g = Group::free_group(2);
    SymmetricSet s = standard_set(g);
    CheegerResult c;
    c.h = Rational(2);
    c.exact = true;
    EAndMad em = e_and_mad(c, s);
    CHECK(em.e == Rational(1, 2));
    CHECK(em.mad == Rational(2));
    CHECK(em.exact);

    auto ah = analytic_h(g, s);
    REQUIRE(ah.has_value());
    CHECK(*ah == Rational(2));
    CHECK(analytic_h(Group::cyclic(6), standard_set(Group::cyclic(6))) == Rational(0));
    CHECK_FALSE(analytic_h(g, symmetric_ball(g, 2)).has_value());
}
