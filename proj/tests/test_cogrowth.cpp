#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cayleyiso/cogrowth.hpp"
#include "cayleyiso/zoo.hpp"

#include <cmath>

using namespace cayleyiso;

namespace {

// brute-force oracle: walk every freely reduced word of length <= k_max and
// count the ones whose image is the identity
std::vector<long long> brute_kernel_counts(const Group& target,
                                           const std::vector<Element>& images,
                                           int k_max) {
    int m = (int)images.size();
    std::vector<Element> letter(2 * m);
    for (int i = 0; i < m; ++i) {
        letter[i] = images[i];
        letter[m + i] = target.inv(images[i]);
    }
    std::vector<long long> counts(k_max, 0);
    struct Frame {
        Element g;
        int last;
        int len;
    };
    std::vector<Frame> stack;
    for (int l = 0; l < 2 * m; ++l) stack.push_back({letter[l], l, 1});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.g == target.identity()) counts[f.len - 1] += 1;
        if (f.len == k_max) continue;
        for (int l = 0; l < 2 * m; ++l) {
            int inv = f.last < m ? f.last + m : f.last - m;
            if (l == inv) continue;
            stack.push_back({target.mul(f.g, letter[l]), l, f.len + 1});
        }
    }
    return counts;
}

} // namespace

TEST_CASE("reduced word counts") {
    SUBCASE("trivial target: every reduced word is in the kernel") {
        Group g = Group::cyclic(1);
        CogrowthCounts c =
            reduced_word_counts(2, {g.identity(), g.identity()}, g, 10);
        BigInt expect = 4;
        for (int k = 1; k <= 10; ++k) {
            CHECK(c.counts[k - 1] == expect);
            CHECK(c.conserved[k - 1]);
            expect *= 3;
        }
    }
    SUBCASE("Z/5 with images 1 and 2 matches the enumeration oracle") {
        Group g = Group::cyclic(5);
        std::vector<Element> images = {Element{{1}}, Element{{2}}};
        CogrowthCounts c = reduced_word_counts(2, images, g, 9);
        auto oracle = brute_kernel_counts(g, images, 9);
        CHECK(c.counts[0] == 0);
        CHECK(c.counts[1] == 0);
        CHECK(c.counts[2] > 0);  // e.g. a b b
        for (int k = 1; k <= 9; ++k) {
            REQUIRE(c.counts[k - 1] == BigInt(oracle[k - 1]));
            REQUIRE(c.conserved[k - 1]);
        }
    }
    SUBCASE("total-count conservation on random finite targets") {
        Group s3 = builtin_s3();
        CogrowthCounts c =
            reduced_word_counts(3, {Element{{1}}, Element{{2}}, Element{{4}}}, s3, 12);
        for (bool ok : c.conserved) REQUIRE(ok);
    }
    SUBCASE("preconditions") {
        Group free2 = Group::free_group(2);
        CHECK_THROWS_AS(
            reduced_word_counts(2, {free2.generator(0), free2.generator(1)}, free2, 5),
            std::domain_error);
        Group g = Group::cyclic(5);
        CHECK_THROWS_AS(reduced_word_counts(0, {}, g, 5), std::invalid_argument);
        CHECK_THROWS_AS(reduced_word_counts(2, {Element{{1}}}, g, 5),
                        std::invalid_argument);
    }
}

TEST_CASE("cogrowth estimation") {
    SUBCASE("geometric counts give the exact ratio") {
        CogrowthCounts c;
        c.m = 2;
        BigInt v = 4;
        for (int k = 1; k <= 10; ++k) {
            c.counts.push_back(v);
            c.conserved.push_back(true);
            v *= 3;
        }
        CogrowthEstimate est = cogrowth_estimate(c);
        CHECK_FALSE(est.trivial_kernel);
        CHECK(est.ratio_available);
        CHECK(est.alpha_ratio == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(est.within_lower);
        CHECK(est.within_upper);
    }
    SUBCASE("finite-index kernel: ratio near 2m-1 at depth 30") {
        Group g = Group::cyclic(5);
        CogrowthCounts c =
            reduced_word_counts(2, {Element{{1}}, Element{{2}}}, g, 30);
        CogrowthEstimate est = cogrowth_estimate(c);
        CHECK(std::fabs(est.alpha_ratio - 3.0) < 0.1);
        GrigorchukResult gr = grigorchuk_rho(std::min(est.alpha_ratio, 3.0), 2);
        CHECK(std::fabs(gr.rho - 1.0) < 0.02);
    }
    SUBCASE("all-zero counts raise the trivial-kernel flag") {
        CogrowthCounts c;
        c.m = 2;
        c.counts.assign(20, BigInt(0));
        c.conserved.assign(20, true);
        CogrowthEstimate est = cogrowth_estimate(c);
        CHECK(est.trivial_kernel);
    }
}

TEST_CASE("spectral radius from the cogrowth value") {
    SUBCASE("interval ends") {
        GrigorchukResult top = grigorchuk_rho(3.0, 2);
        CHECK(top.rho == doctest::Approx(1.0).epsilon(1e-12));
        GrigorchukResult bottom = grigorchuk_rho(std::sqrt(3.0), 2);
        CHECK(bottom.rho == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
        CHECK(bottom.at_lower_boundary);
    }
    SUBCASE("interior point") {
        double alpha = std::pow(3.0, 2.0 / 3.0);
        GrigorchukResult r = grigorchuk_rho(alpha, 2);
        CHECK(r.rho == doctest::Approx(0.8806).epsilon(1e-3));
        CHECK(r.weak_bound == doctest::Approx(1.0));  // alpha/m > 1, clamped
    }
    SUBCASE("the formula never beats the weak bound") {
        for (double a = std::sqrt(3.0); a <= 3.0; a += 0.05)
            CHECK(grigorchuk_rho(a, 2).rho <= grigorchuk_rho(a, 2).weak_bound + 1e-9);
    }
    SUBCASE("domain checks") {
        CHECK_THROWS_AS(grigorchuk_rho(1.0, 2), std::domain_error);
        CHECK_THROWS_AS(grigorchuk_rho(3.5, 2), std::domain_error);
        CHECK_THROWS_AS(grigorchuk_rho(2.0, 1), std::invalid_argument);
    }
}

TEST_CASE("burnside bounds") {
    BurnsideBounds b = burnside_bounds(2, 665);
    CHECK(b.r_lb == Rational(1, 3));
    CHECK(b.lit_lb == Rational(3, 2));
    CHECK(b.delta == doctest::Approx(2.0 / 3.0));
    CHECK(b.alpha_ub == doctest::Approx(std::pow(3.0, 2.0 / 3.0)).epsilon(1e-12));
    CHECK(b.rho_ub == doctest::Approx(1.0));  // 3^{2/3}/2 > 1, clamped

    CHECK_THROWS_AS(burnside_bounds(2, 664), std::invalid_argument);
    CHECK_THROWS_AS(burnside_bounds(2, 600), std::invalid_argument);
    CHECK_THROWS_AS(burnside_bounds(1, 665), std::invalid_argument);

    BurnsideBounds b5 = burnside_bounds(5, 667, 0.5);
    CHECK(b5.alpha_ub == doctest::Approx(3.0));
    CHECK(b5.rho_ub == doctest::Approx(0.6));
}
