#include "helpers.hpp"
#include "support/oracles.hpp"

#include "lls/multidegree.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace lls;

TEST_CASE("default multidegree of the running example") {
    VanishingTable t = g22_example();
    TwistVector w = default_multidegree(t);
    CHECK(w.D == 50);
    CHECK(w.c == std::vector<int>{3, 5, 7, 9, 12, 14, 17, 19, 21, 23, 25, 27, 29, 31, 33, 36, 38, 41, 43, 45, 47});
    CHECK(three_columns(w, t.chain()) == std::set<int>{1, 5, 7, 16, 18, 22});
    CHECK(is_unimaginative(w, t.chain(), t.d()));

    auto gamma = gamma_profile(w, t.chain());
    for (int i = 1; i <= 22; ++i) {
        bool jump = gamma[i] != gamma[i - 1];
        CHECK(jump == (i == 1 || i == 5 || i == 7 || i == 16 || i == 18 || i == 22));
    }
    CHECK(gamma[22] == 6);

    auto cands = candidate_multidegrees(t);
    REQUIRE(!cands.empty());
    CHECK(cands.front() == w);
    CHECK(std::count(cands.begin(), cands.end(), w) == 1);
    std::set<TwistVector> distinct(cands.begin(), cands.end());
    CHECK(distinct.size() == cands.size());
    for (const auto& c : cands) CHECK(is_unimaginative(c, t.chain(), t.d()));
}

TEST_CASE("column-by-column filling of the rho = 0 rectangle") {
    // shape column 1 fills during curve columns 1-7, column 2 during 8-14, column 3 during 15-21
    ChainCurve chain = build_elliptic_chain(21);
    std::vector<std::vector<int>> lambda(22, std::vector<int>(7, 0));
    for (int i = 1; i <= 21; ++i) {
        lambda[i] = lambda[i - 1];
        ++lambda[i][(i - 1) % 7];
    }
    VanishingTable t = table_from_lambda(chain, 6, 24, lambda);
    CHECK_NOTHROW(validate_table(t));
    CHECK(three_columns(default_multidegree(t), chain) == std::set<int>{1, 5, 7, 15, 17, 21});
}

TEST_CASE("twist vanishing components") {
    auto tw = [](std::vector<int> c, int D) { return TwistVector{D, std::move(c)}; };
    CHECK(twist_vanishing_components(tw({1, 2}, 4), tw({2, 2}, 4)) == std::set<int>{1});
    CHECK(twist_vanishing_components(tw({2, 2}, 4), tw({1, 2}, 4)) == std::set<int>{2, 3});
    CHECK(twist_vanishing_components(tw({1, 2}, 4), tw({1, 2}, 4)).empty());
    CHECK_THROWS_AS(twist_vanishing_components(tw({1, 2}, 4), tw({1}, 4)), MultidegreeError);
    // Both directions can vanish on the same component when the partial sums
    // take three values: here they are (2, 1, 0) one way and (-2, -1, 0) the other.
    CHECK(twist_vanishing_components(tw({1, 1}, 4), tw({2, 2}, 4)) == std::set<int>{1, 2});
    CHECK(twist_vanishing_components(tw({2, 2}, 4), tw({1, 1}, 4)) == std::set<int>{2, 3});

    std::mt19937_64 rng(31);
    for (int k = 0; k < 2000; ++k) {
        int n = 2 + static_cast<int>(rng() % 12);
        int D = 1 + static_cast<int>(rng() % 40);
        TwistVector w = oracle::random_twist(rng, n, D), w2 = oracle::random_twist(rng, n, D);
        if (k % 3 == 0) w2.c[rng() % w2.c.size()] = w.c[rng() % w.c.size()];
        auto x = twist_vanishing_components(w, w2);
        CHECK(x == oracle::vanishing_by_partial_sums(w, w2));
        // the map never vanishes on every component
        CHECK(static_cast<int>(x.size()) < n);
        for (int i = 2; i <= n; ++i)
            if (w.at(i) == w2.at(i)) CHECK(x.count(i - 1) == x.count(i));
        // special cases: c'_i < c_i or c'_{i+1} > c_{i+1}
        for (int i = 1; i <= n; ++i)
            if ((i >= 2 && w2.at(i) < w.at(i)) || (i < n && w2.at(i + 1) > w.at(i + 1))) CHECK(x.count(i));
    }
}

TEST_CASE("multidegree round trips") {
    std::mt19937_64 rng(17);
    ChainCurve chain = build_elliptic_chain(23);
    for (int k = 0; k < 500; ++k) {
        std::vector<int> cols(23);
        std::iota(cols.begin(), cols.end(), 1);
        std::shuffle(cols.begin(), cols.end(), rng);
        std::set<int> threes(cols.begin(), cols.begin() + 6);
        TwistVector w = unimaginative_from_threes(chain, 26, threes);
        CHECK(is_unimaginative(w, chain, 26));
        CHECK(three_columns(w, chain) == threes);
        CHECK(twist_from_degrees(component_degrees(w, chain)) == w);
        CHECK(twist_from_json(twist_to_json(w)) == w);
    }
    CHECK_THROWS_AS(unimaginative_from_threes(chain, 26, {1, 2, 3}), MultidegreeError);
    CHECK_THROWS_AS(unimaginative_from_threes(chain_from_genera({1, 0, 1}), 3, {2}), MultidegreeError);
}

TEST_CASE("default multidegree exists on every sampled table") {
    for (const auto& cfg : {EnumConfig{21, 6, 24, 0}, EnumConfig{22, 6, 25, 1}, EnumConfig{23, 6, 26, 2}})
        for (const auto& t : sample_tables(cfg, 300, 21)) {
            auto pos = default_three_positions(t, lambda_sequence(t));
            CHECK(std::set<int>(pos.begin(), pos.end()).size() == 6);
            CHECK(is_unimaginative(default_multidegree(t), t.chain(), t.d()));
        }
}
