#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cayleyiso/spectral.hpp"
#include "cayleyiso/zoo.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace cayleyiso;

TEST_CASE("convolution") {
    SUBCASE("dirac is the unit") {
        Group g = Group::free_group(2);
        FunctionD f;
        f.set(g.evaluate(g.parse_word({"a", "b"})), 2.5);
        f.set(g.evaluate(g.parse_word({"b^-1"})), -1.0);
        FunctionD r = convolve(g, dirac(g), f);
        REQUIRE(r.support_size() == f.support_size());
        for (auto& [e, v] : f.values) CHECK(r.at(e) == doctest::Approx(v));
    }
    SUBCASE("two-step distribution on Z") {
        Group g = Group::free_abelian(1);
        FunctionD ind = indicator(standard_set(g));
        FunctionD r = convolve(g, ind, ind);
        CHECK(r.at({{-2}}) == doctest::Approx(1));
        CHECK(r.at({{0}}) == doctest::Approx(2));
        CHECK(r.at({{2}}) == doctest::Approx(1));
        CHECK(r.support_size() == 3);
    }
    SUBCASE("free group two-step return") {
        Group g = Group::free_group(2);
        FunctionD ind = indicator(standard_set(g));
        FunctionD r = convolve(g, ind, ind);
        CHECK(r.at(g.identity()) == doctest::Approx(4));  // M_S*M_S(e) = 4/16 = 1/4
    }
}

TEST_CASE("return probability bounds") {
    SUBCASE("free group: closed-walk counts of the 4-regular tree") {
        Group g = Group::free_group(2);
        auto rows = return_probability_bounds(g, standard_set(g), 2);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].exact);
        CHECK(rows[0].count == "4");  // d walks of length 2 return
        CHECK(rows[0].probability == doctest::Approx(0.25));
        CHECK(rows[0].bound == doctest::Approx(0.5));
        // W_4 = d^2 + d(d-1) with d = 4
        CHECK(rows[1].count == "28");
        CHECK(rows[1].probability == doctest::Approx(28.0 / 256.0));
        CHECK(rows[1].bound == doctest::Approx(std::pow(28.0 / 256.0, 0.25)));
    }
    SUBCASE("integers") {
        Group g = Group::free_abelian(1);
        auto rows = return_probability_bounds(g, standard_set(g), 1);
        CHECK(rows[0].probability == doctest::Approx(0.5));
        CHECK(rows[0].bound == doctest::Approx(std::sqrt(0.5)));
    }
    SUBCASE("finite: bounds rise toward 1, conservation exact through k = 12") {
        Group g = Group::cyclic(6);
        auto rows = return_probability_bounds(g, standard_set(g), 12);
        REQUIRE(rows.size() == 12);
        for (auto& r : rows) {
            CHECK(r.exact);
            CHECK(r.conserved);
        }
        CHECK(rows.back().bound > 0.9);
    }
    SUBCASE("monotone roots on the zoo") {
        for (const auto& inst : instance_zoo()) {
            auto rows = return_probability_bounds(inst.group, inst.set, 5);
            double prev = 0;
            for (auto& r : rows) {
                CHECK(r.bound >= prev * (1 - 1e-12));
                prev = r.bound;
            }
        }
    }
}

TEST_CASE("analytic spectral radii") {
    Group f2 = Group::free_group(2);
    auto rho = analytic_rho(f2, standard_set(f2));
    REQUIRE(rho.has_value());
    CHECK(*rho == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    CHECK_FALSE(analytic_rho(f2, symmetric_ball(f2, 2)).has_value());
    Group s3 = builtin_s3();
    auto elems = s3.elements();
    SymmetricSet any = symmetric_from_words(s3, {Word{{1, false}}, Word{{1, true}}});
    CHECK(analytic_rho(s3, any) == 1.0);
}

TEST_CASE("compression norms") {
    SUBCASE("dirac has norm one") {
        Group g = Group::free_group(2);
        CHECK(operator_norm_lb(g, standard_set(g), dirac(g), 3) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("cycle adjacency has norm two") {
        Group g = Group::cyclic(6);
        SymmetricSet s = standard_set(g);
        bool exact = false;
        double v = operator_norm_lb(g, s, indicator(s), 5, &exact);
        CHECK(exact);
        CHECK(v == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("free group: band between 3.2 and 2 sqrt 3") {
        Group g = Group::free_group(2);
        SymmetricSet s = standard_set(g);
        double v = operator_norm_lb(g, s, indicator(s), 6);
        CHECK(v > 3.2);
        CHECK(v <= 2.0 * std::sqrt(3.0) + 1e-9);
        double v4 = operator_norm_lb(g, s, indicator(s), 4);
        CHECK(v4 <= v + 1e-12);
    }
    SUBCASE("matches a dense eigensolver") {
        // independent route: assemble the compressed operator densely and
        // take the top singular value from a full eigendecomposition
        Group g = Group::free_group(2);
        SymmetricSet s = standard_set(g);
        auto verts = ball(g, s, 3);
        ElementMap<int> index;
        for (size_t i = 0; i < verts.size(); ++i) index[verts[i]] = (int)i;
        int n = (int)verts.size();
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        FunctionD f = indicator(s);
        for (int x = 0; x < n; ++x)
            for (auto& [u, fu] : f.values) {
                Element z = g.mul(g.inv(u), verts[x]);
                auto it = index.find(z);
                if (it != index.end()) a(x, it->second) += fu;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a);
        double oracle = std::sqrt(es.eigenvalues().maxCoeff());
        double got = operator_norm_lb(g, s, f, 3);
        CHECK(got == doctest::Approx(oracle).epsilon(1e-8));
    }
    SUBCASE("negative values rejected") {
        Group g = Group::cyclic(6);
        FunctionD f;
        f.set(g.identity(), -1.0);
        CHECK_THROWS_AS(operator_norm_lb(g, standard_set(g), f, 2),
                        std::invalid_argument);
    }
}

TEST_CASE("cheeger inequalities on solvable instances") {
    SUBCASE("free group: right inequality is an equality") {
        Group g = Group::free_group(2);
        MoharReport m = mohar_check(g, standard_set(g));
        CHECK(m.left_holds);
        CHECK(m.right_holds);
        CHECK(std::fabs(m.right - m.h) < 1e-9);
        CHECK(m.left_slack == doctest::Approx(2.0 * std::sqrt(3.0) - 2.0).epsilon(1e-9));
        CHECK(m.e_le_rho);
        CHECK(m.e_ge_half_rho2);
    }
    SUBCASE("degenerate finite and amenable cases") {
        Group z6 = Group::cyclic(6);
        MoharReport m = mohar_check(z6, standard_set(z6));
        CHECK(m.left == doctest::Approx(0));
        CHECK(m.h == doctest::Approx(0));
        CHECK(m.right == doctest::Approx(0));
        Group z = Group::free_abelian(1);
        MoharReport mz = mohar_check(z, standard_set(z));
        CHECK(mz.right == doctest::Approx(0));
    }
    SUBCASE("refuses one-sided instances") {
        Group g = Group::free_group(2);
        CHECK_THROWS_AS(mohar_check(g, symmetric_ball(g, 2)), std::domain_error);
        Group ll = Group::lamplighter();
        CHECK_THROWS_AS(mohar_check(ll, standard_set(ll)), std::domain_error);
    }
}

TEST_CASE("rd ratio scan") {
    SUBCASE("integers: indicator ratio approaches sqrt(2d+1)") {
        Group g = Group::free_abelian(1);
        auto rows = rd_ratio_scan(g, standard_set(g), 3, 2, 5);
        for (auto& r : rows) {
            double oracle = std::sqrt(2.0 * r.d + 1.0);  // Fourier value
            CHECK(r.indicator_ratio <= oracle + 1e-9);
            CHECK(r.indicator_ratio >= 0.8 * oracle);
            CHECK(r.sanity_ok);
        }
    }
    SUBCASE("free group ball(1)") {
        Group g = Group::free_group(2);
        auto rows = rd_ratio_scan(g, standard_set(g), 1, 2, 5);
        double oracle = (1.0 + 2.0 * std::sqrt(3.0)) / std::sqrt(5.0);
        CHECK(rows[0].indicator_ratio <= oracle + 1e-9);
        CHECK(rows[0].indicator_ratio >= 1.85);
        CHECK(rows[0].sanity_ok);
    }
    SUBCASE("finite groups use the saturating truncation") {
        Group g = Group::cyclic(6);
        auto rows = rd_ratio_scan(g, standard_set(g), 2, 2, 5);
        for (auto& r : rows) CHECK(r.sanity_ok);
        // ball(3) = whole group: ||1_G|| = 6, l2 norm sqrt(6)
        CHECK(rows[1].indicator_ratio <= std::sqrt(6.0) + 1e-9);
    }
}

TEST_CASE("kesten lower bound helper") {
    CHECK(kesten_lower_bound(4) == doctest::Approx(std::sqrt(3.0) / 4.0));
    for (const auto& inst : instance_zoo()) {
        auto rho = analytic_rho(inst.group, inst.set);
        if (rho)
            CHECK(*rho >= kesten_lower_bound(inst.set.size()) - 1e-12);
    }
}
