#include "helpers.hpp"

#include "lls/table.hpp"

#include <doctest.h>

using namespace lls;

TEST_CASE("left-weighted node weights") {
    auto w = left_weighted_weights(build_elliptic_chain(4), 25);
    CHECK(w == std::vector<BigInt>{10100, 100, 1});
    for (int g : {2, 5, 22, 23}) {
        for (int d : {1, 7, 25}) {
            ChainCurve c = with_node_weights(build_elliptic_chain(g), left_weighted_weights(build_elliptic_chain(g), d));
            CHECK(is_left_weighted(c, d));
        }
        if (g > 2) CHECK_FALSE(is_left_weighted(build_elliptic_chain(g), 25));
    }
    CHECK_THROWS_AS(left_weighted_weights(build_elliptic_chain(1), 5), ChainError);
}

TEST_CASE("running example is valid with one minimal swap at column 9") {
    VanishingTable t = g22_example();
    CHECK(t.columns() == 22);
    const int first[7][2] = {{0, 25}, {1, 23}, {2, 22}, {3, 21}, {4, 20}, {5, 19}, {6, 18}};
    for (int j = 0; j <= 6; ++j) {
        CHECK(t.a(1, j) == first[j][0]);
        CHECK(t.b(1, j) == first[j][1]);
    }
    CHECK_NOTHROW(validate_table(t));
    CHECK(find_swaps(t) == std::vector<Swap>{{9, 2, 3, true}});
    DegeneracyClass cls = classify_degeneracy(t);
    CHECK(cls.kind == DegeneracyClass::Kind::Single);
    CHECK(cls.i0 == 9);
    CHECK(cls.j0 == 3);

    LambdaSequence ls = lambda_sequence(t);
    int decreases = 0;
    for (int i = 1; i <= t.columns(); ++i)
        for (int j = 0; j <= 6; ++j)
            if (ls.lambda[i][j] < ls.lambda[i - 1][j]) {
                ++decreases;
                CHECK(i == 9);
                CHECK(j == 2);
            }
    CHECK(decreases == 1);
    REQUIRE(ls.delta[9]);
    CHECK(*ls.delta[9] == 3);

    RhoAccounting acc = rho_accounting(t);
    CHECK(acc.total == 1);
    CHECK(acc.initial_ramification == 0);
}

TEST_CASE("validation errors") {
    using K = TableError::Kind;
    auto kind_of = [](const VanishingTable& t) {
        try {
            validate_table(t);
        } catch (const TableError& e) {
            return e.kind();
        }
        FAIL("table unexpectedly valid");
        return K::InvalidSeries;
    };
    VanishingTable base = g22_example();

    CHECK(kind_of(VanishingTable{}) == K::Dimension);
    {
        VanishingTable t = base;
        t.set(1, 1, 0, t.b(1, 1));
        CHECK(kind_of(t) == K::DuplicateVanishing);
    }
    {
        VanishingTable t = base;
        t.set(1, 0, 0, 24);
        CHECK(kind_of(t) == K::Refinedness);
    }
    {
        VanishingTable t = base;
        t.set(1, 6, 8, t.b(1, 6));
        CHECK(kind_of(t) == K::SumExceedsD);
    }
    {
        VanishingTable t = base;
        t.set(1, 0, -1, t.b(1, 0));
        CHECK(kind_of(t) == K::NegativeOrder);
    }
    CHECK(kind_of(VanishingTable(build_elliptic_chain(1), 1, 2, {{1, 0}}, {{0, 2}})) == K::RowOrder);
    CHECK(kind_of(VanishingTable(build_elliptic_chain(1), 1, 2, {{0, 1}}, {{2, 1}})) == K::Genericity);
    CHECK(kind_of(VanishingTable(chain_from_genera({0}), 1, 2, {{0, 1}}, {{1, 0}})) == K::Genus0Deficit);
}

TEST_CASE("lambda sequence determines the table") {
    for (const auto& cfg : {EnumConfig{21, 6, 24, 0}, EnumConfig{22, 6, 25, 1}, EnumConfig{23, 6, 26, 2}})
        for (const auto& t : sample_tables(cfg, 200, 5)) {
            LambdaSequence ls = lambda_sequence(t);
            CHECK(table_from_lambda(t.chain(), t.r(), t.d(), ls.lambda) == t);
            // bar lambda is a partition at every step
            for (const auto& row : ls.bar_lambda)
                for (size_t j = 1; j < row.size(); ++j) CHECK(row[j - 1] >= row[j]);
        }
}

TEST_CASE("defect accounting adds up to rho") {
    for (const auto& cfg : {EnumConfig{21, 6, 24, 0}, EnumConfig{22, 6, 25, 1}, EnumConfig{23, 6, 26, 2}}) {
        const int rho = brill_noether_number(cfg.g, cfg.r, cfg.d);
        for (const auto& t : sample_tables(cfg, 300, 9)) {
            RhoAccounting acc = rho_accounting(t);
            CHECK(acc.total + acc.final_ramification == rho);
            CHECK(acc.total <= cfg.rho_max);
            if (cfg.rho_max == 0) CHECK(acc == RhoAccounting{});
            CHECK(static_cast<int>(find_swaps(t).size()) <= rho);
        }
    }
}

TEST_CASE("initial ramification counts the first column") {
    bool found = false;
    for (const auto& t : sample_tables(EnumConfig{22, 6, 25, 1}, 20000, 3)) {
        std::vector<int> a1;
        for (int j = 0; j <= 6; ++j) a1.push_back(t.a(1, j));
        if (a1 == std::vector<int>{0, 1, 2, 3, 4, 5, 7}) {
            CHECK(rho_accounting(t).initial_ramification == 1);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("two disjoint swaps are minimal and sit on genus-1 columns") {
    EnumConfig cfg{23, 6, 26, 2};
    cfg.min_swaps = cfg.max_swaps = 2;
    int disjoint = 0;
    for (const auto& t : sample_tables(cfg, 2000, 3)) {
        auto swaps = find_swaps(t);
        REQUIRE(swaps.size() == 2);
        auto cls = classify_swaps(swaps);
        CHECK(cls.kind != DegeneracyClass::Kind::Other);
        if (cls.kind == DegeneracyClass::Kind::Disjoint) {
            ++disjoint;
            for (const auto& s : swaps) {
                CHECK(s.minimal);
                CHECK(t.genus_at(s.column) == 1);
            }
        }
    }
    CHECK(disjoint > 0);
}
