#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cayleyiso/forests.hpp"
#include "cayleyiso/zoo.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <numeric>

using namespace cayleyiso;

namespace {

// effective resistances via the explicit pseudoinverse L^+ = (L + J/n)^{-1} - J/n
std::vector<double> resistance_oracle(const SimpleGraph& g) {
    int n = g.n;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (auto& [u, v] : g.edges) {
        lap(u, u) += 1;
        lap(v, v) += 1;
        lap(u, v) -= 1;
        lap(v, u) -= 1;
    }
    Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::MatrixXd pinv = (lap + j).inverse() - j;
    std::vector<double> out;
    for (auto& [u, v] : g.edges)
        out.push_back(pinv(u, u) + pinv(v, v) - 2 * pinv(u, v));
    return out;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

SimpleGraph klein_k4() {
    Group g = builtin_klein_four();
    std::vector<Element> inv;
    for (const Element& e : g.elements())
        if (!(e == g.identity())) inv.push_back(e);
    return cayley_graph(g, make_symmetric_set(g, inv));
}

} // namespace

TEST_CASE("exact marginals are effective resistances") {
    SUBCASE("complete graph on four vertices") {
        SimpleGraph k4 = klein_k4();
        REQUIRE(k4.n == 4);
        REQUIRE(k4.edges.size() == 6);
        UstMarginals m = ust_marginals_exact(k4);
        auto oracle = resistance_oracle(k4);
        for (size_t e = 0; e < k4.edges.size(); ++e) {
            CHECK(m.edge_marginal[e] == doctest::Approx(0.5).epsilon(1e-8));
            CHECK(m.edge_marginal[e] == doctest::Approx(oracle[e]).epsilon(1e-8));
        }
        CHECK(m.total == doctest::Approx(3.0).epsilon(1e-8));
    }
    SUBCASE("path: bridges are always in the tree") {
        std::ofstream out("path3_test.edges");
        out << "0 1\n1 2\n";
        out.close();
        SimpleGraph p = graph_from_edge_list("path3_test.edges");
        UstMarginals m = ust_marginals_exact(p);
        CHECK(m.edge_marginal[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(m.edge_marginal[1] == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("four-cycle") {
        Group g = Group::cyclic(4);
        SimpleGraph c4 = cayley_graph(g, standard_set(g));
        UstMarginals m = ust_marginals_exact(c4);
        for (double v : m.edge_marginal) CHECK(v == doctest::Approx(0.75).epsilon(1e-8));
    }
    SUBCASE("disconnected input rejected") {
        std::ofstream out("disc_test.edges");
        out << "0 1\n2 3\n";
        out.close();
        CHECK_THROWS_AS(ust_marginals_exact(graph_from_edge_list("disc_test.edges")),
                        std::invalid_argument);
    }
}

TEST_CASE("wilson sampling") {
    SimpleGraph k4 = klein_k4();
    SUBCASE("every sample is a spanning tree") {
        for (uint64_t seed = 0; seed < 50; ++seed) {
            auto tree = wilson_sample(k4, seed);
            REQUIRE(tree.size() == 3);
            UnionFind uf(4);
            for (auto& [u, v] : tree) REQUIRE(uf.unite(u, v));  // acyclic
        }
    }
    SUBCASE("seed determinism") {
        CHECK(wilson_sample(k4, 7) == wilson_sample(k4, 7));
        Group g = Group::cyclic(4);
        SimpleGraph c4 = cayley_graph(g, standard_set(g));
        auto t = wilson_sample(c4, 3);
        CHECK(t.size() == 3);
        CHECK(t == wilson_sample(c4, 3));
    }
    SUBCASE("monte carlo marginals near the exact values") {
        auto mc = monte_carlo_marginals(k4, 10000, 42);
        for (double v : mc) {
            double sd = std::sqrt(0.25 / 10000.0);
            CHECK(std::fabs(v - 0.5) <= 3 * sd);
        }
    }
    SUBCASE("thread count does not change the counts") {
        auto a = monte_carlo_marginals(k4, 2000, 9, 1);
        auto b = monte_carlo_marginals(k4, 2000, 9, 4);
        CHECK(a == b);
    }
}

TEST_CASE("forest marginals and the norm inequality") {
    SUBCASE("K4: constant marginals force equality") {
        Group g = builtin_klein_four();
        SimpleGraph k4 = klein_k4();
        ForestMarginals fm = forest_marginals(g, k4);
        CHECK(fm.transitive);
        CHECK(fm.width == 3);
        CHECK(fm.deg == doctest::Approx(1.5).epsilon(1e-8));
        CHECK(fm.transitivity_deviation <= 1e-8);
        ForestInequalityReport r2 = forest_inequality_check(fm, 2.0);
        CHECK(r2.lhs == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-8));
        CHECK(std::fabs(r2.lhs - r2.rhs) <= 1e-9);
        ForestInequalityReport r1 = forest_inequality_check(fm, 1.0);
        CHECK(r1.lhs == doctest::Approx(1.5).epsilon(1e-9));
        CHECK(std::fabs(r1.slack) <= 1e-9);
    }
    SUBCASE("C4") {
        Group g = Group::cyclic(4);
        ForestMarginals fm = forest_marginals(g, cayley_graph(g, standard_set(g)));
        ForestInequalityReport r = forest_inequality_check(fm, 2.0);
        CHECK(r.lhs == doctest::Approx(std::sqrt(9.0 / 8.0)).epsilon(1e-8));
        CHECK(std::fabs(r.lhs - r.rhs) <= 1e-9);
    }
    SUBCASE("holds across the finite zoo for several p") {
        for (const auto& inst : instance_zoo()) {
            if (!inst.group.is_finite()) continue;
            ForestMarginals fm =
                forest_marginals(inst.group, cayley_graph(inst.group, inst.set));
            for (double p : {1.0, 1.5, 2.0, 3.0}) {
                ForestInequalityReport r = forest_inequality_check(fm, p);
                CHECK(r.holds);
                // equality exactly when the marginals are constant over S
                double lo = 1e9, hi = -1e9;
                for (auto& [e, v] : fm.f) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                if (hi - lo <= 1e-10) CHECK(std::fabs(r.slack) <= 1e-8);
            }
        }
    }
    SUBCASE("non-transitive inputs refused") {
        std::ofstream out("star_test.edges");
        out << "0 1\n0 2\n0 3\n";
        out.close();
        SimpleGraph star = graph_from_edge_list("star_test.edges");
        Group g = builtin_klein_four();
        ForestMarginals fm = forest_marginals(g, star);
        CHECK_FALSE(fm.transitive);
        CHECK_THROWS_AS(forest_inequality_check(fm, 2.0), std::domain_error);
    }
}
