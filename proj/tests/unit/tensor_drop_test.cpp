#include "helpers.hpp"
#include "support/oracles.hpp"

#include "lls/drop.hpp"
#include "lls/io.hpp"
#include "lls/tensor.hpp"

#include <doctest.h>

#include <climits>
#include <fstream>
#include <regex>

using namespace lls;

TEST_CASE("tensor square entries") {
    VanishingTable t = g22_example();
    TensorTable tt(t);
    CHECK(tt.row_count() == 28);
    int k00 = tt.row_index(0, 0), k66 = tt.row_index(6, 6);
    CHECK(tt.a(1, k00) == 0);
    CHECK(tt.b(1, k00) == 50);
    CHECK(tt.a(22, k66) == 50);
    CHECK(tt.b(22, k66) == 0);
    for (int i = 1; i <= 22; ++i)
        for (int k = 0; k < 28; ++k) {
            auto [j, j2] = tt.row(k);
            CHECK(tt.row_index(j2, j) == k);
            CHECK(tt.a(i, k) == t.a(i, j) + t.a(i, j2));
            int sum = tt.a(i, k) + tt.b(i, k);
            CHECK(sum <= 50);
            CHECK((sum == 50) == (t.sum(i, j) == 25 && t.sum(i, j2) == 25));
        }
}

TEST_CASE("appearance flags") {
    VanishingTable t = g22_example();
    TensorTable tt(t);
    TwistVector w = default_multidegree(t);
    auto f = appearance_flags(tt, w, 1, tt.row_index(0, 0));
    CHECK(f.appearing);
    CHECK(f.starting);

    // an interior cell meeting both inequalities with equality
    int boundary = 0;
    for (const auto& cfg : {EnumConfig{22, 6, 25, 1}, EnumConfig{23, 6, 26, 2}})
        for (const auto& s : sample_tables(cfg, 300, 8)) {
            TensorTable ts(s);
            TwistVector ws = default_multidegree(s);
            for (int i = 2; i < s.columns(); ++i)
                for (int k = 0; k < ts.row_count(); ++k) {
                    auto fl = appearance_flags(ts, ws, i, k);
                    bool lo_eq = ts.a(i, k) == ws.at(i), hi_eq = ts.b(i, k) == 2 * s.d() - ws.at(i + 1);
                    if (ts.a(i, k) < ws.at(i)) CHECK_FALSE(fl.appearing);
                    if (lo_eq && hi_eq) {
                        ++boundary;
                        CHECK(fl.appearing);
                        CHECK_FALSE(fl.starting);
                        CHECK_FALSE(fl.ending);
                    }
                }
        }
    CHECK(boundary > 0);
}

TEST_CASE("potential sections of the running example") {
    VanishingTable t = g22_example();
    TensorTable tt(t);
    TwistVector w = default_multidegree(t);
    auto secs = extract_potential_sections(tt, w);
    CHECK(secs.size() == 29);
    CHECK(secs == oracle::sections_by_intervals(t, w));
    for (int i = 1; i < 22; ++i) CHECK(spanning_count(secs, i) <= 3);
}

TEST_CASE("section extraction agrees with the all-intervals oracle") {
    for (const auto& s : oracle::random_tables(300, 12))
        CHECK(extract_potential_sections(TensorTable(s.table), s.w) == oracle::sections_by_intervals(s.table, s.w));
}

TEST_CASE("rho = 0 tables: one section per row, all dropped") {
    for (const auto& cfg : {EnumConfig{21, 6, 24, 0}, EnumConfig{22, 6, 25, 0}, EnumConfig{23, 6, 26, 0}})
        for (const auto& t : sample_tables(cfg, 150, 2)) {
            TwistVector w = default_multidegree(t);
            DropContext ctx = make_drop_context(t, w);
            CHECK(ctx.sections.size() == 28);
            std::set<std::pair<int, int>> rows;
            for (const auto& s : ctx.sections) rows.insert({s.j, s.j2});
            CHECK(rows.size() == 28);
            DropResult res = drop_all(ctx);
            CHECK(res.success);
            CHECK_FALSE(res.backtracked);
        }
}

TEST_CASE("golden tensor rendering") {
    std::ifstream in(std::string(LLS_DATA_DIR) + "/g22_tensor.json");
    Json golden = Json::parse(in);
    VanishingTable t = g22_example();
    TensorTable tt(t);
    TwistVector w = default_multidegree(t);
    auto secs = extract_potential_sections(tt, w);
    std::string latex = render_tensor_latex(tt, w, secs);

    std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> rendered;
    std::vector<int> header;
    std::istringstream lines(latex);
    std::string line;
    const std::regex label(R"(^\((\d),(\d)\))");
    const std::regex cell(R"((\\cellcolor\{[^}]*\})?(\d+))");
    while (std::getline(lines, line)) {
        std::smatch m;
        bool is_row = std::regex_search(line, m, label);
        bool is_header = line.find("$w$") != std::string::npos;
        if (!is_row && !is_header) continue;
        std::string rest = line.substr(line.find('&'));
        std::vector<int> vals, hl;
        for (std::sregex_iterator it(rest.begin(), rest.end(), cell), end; it != end; ++it) {
            vals.push_back(std::stoi((*it)[2]));
            hl.push_back((*it)[1].matched ? 1 : 0);
        }
        if (is_header)
            header = vals;
        else
            rendered[m[1].str() + "," + m[2].str()] = {vals, hl};
    }
    REQUIRE(header.size() == 44);
    CHECK(std::vector<int>(header.begin() + 1, header.end() - 1) == golden["w_header"].get<std::vector<int>>());
    REQUIRE(rendered.size() == 28);
    for (const auto& [key, row] : golden["rows"].items()) {
        INFO("row " << key);
        CHECK(rendered[key].first == row["cells"].get<std::vector<int>>());
        CHECK(rendered[key].second == row["highlight"].get<std::vector<int>>());
    }

    std::string base = render_table_latex(t);
    std::vector<int> nums;
    const std::regex num(R"(\d+)");
    for (std::sregex_iterator it(base.begin(), base.end(), num), end; it != end; ++it) nums.push_back(std::stoi(it->str()));
    std::vector<int> expect;
    for (int j = 0; j <= 6; ++j)
        for (int i = 1; i <= 22; ++i) {
            expect.push_back(t.a(i, j));
            expect.push_back(t.b(i, j));
        }
    CHECK(nums == expect);
    CHECK(table_from_json(table_to_json(t)) == t);
}

namespace {

DropContext one_column_context(int d, std::vector<std::pair<int, int>> values, int delta) {
    DropContext ctx;
    ctx.n = 1;
    ctx.d = d;
    ctx.genus = {1};
    ctx.degree = {2};
    ctx.delta = {delta};
    ctx.exceptional.assign(1, std::vector<char>(7, 0));
    ctx.dd_a = {d};
    ctx.dd_b = {d};
    ctx.by_column.assign(1, {});
    for (size_t s = 0; s < values.size(); ++s) {
        ctx.sections.push_back({static_cast<int>(s), static_cast<int>(s), 1, 1});
        ctx.a.push_back(values[s].first);
        ctx.b.push_back(values[s].second);
        ctx.by_column[0].push_back(static_cast<int>(s));
    }
    return ctx;
}

}  // namespace

TEST_CASE("semicritical threshold") {
    std::vector<char> all(3, 1);
    CHECK(is_semicritical(one_column_context(25, {{24, 30}, {26, 24}, {27, 28}}, 0), all, 1));
    CHECK_FALSE(is_semicritical(one_column_context(25, {{24, 30}, {26, 23}, {27, 28}}, 0), all, 1));
    CHECK_FALSE(is_semicritical(one_column_context(25, {{24, 30}, {26, 24}, {27, 28}}, -1), all, 1));
    DropContext lone = one_column_context(25, {{10, 10}}, 0);
    DropResult res = drop_all(lone);
    CHECK(res.success);
    REQUIRE(res.certificate.steps.size() == 1);
    CHECK(res.certificate.steps[0].rule == DropRule::MinA);
}

TEST_CASE("running example: column 7 is critical once the left side is gone") {
    VanishingTable t = g22_example();
    DropContext ctx = make_drop_context(t, default_multidegree(t));
    DropResult res = drop_all(ctx);
    REQUIRE(res.success);
    std::vector<char> alive(ctx.sections.size(), 1);
    bool seen = false;
    for (const auto& st : res.certificate.steps) {
        if (st.rule == DropRule::Block && st.first == 7) {
            CHECK(st.last == 16);
            CHECK(is_critical(ctx, alive, 7));
            seen = true;
            break;
        }
        for (int s : st.dropped) alive[s] = 0;
    }
    CHECK(seen);
}

TEST_CASE("certificates replay and reject mutations") {
    VanishingTable t = g22_example();
    DropContext ctx = make_drop_context(t, default_multidegree(t));
    DropResult res = drop_all(ctx);
    REQUIRE(res.success);
    const auto& steps = res.certificate.steps;
    CHECK(replay_certificate(ctx, res.certificate));
    CHECK_FALSE(replay_certificate(ctx, DropCertificate{}));

    DropCertificate shorter = res.certificate;
    shorter.steps.pop_back();
    CHECK_FALSE(replay_certificate(ctx, shorter));

    // moving the long block to the front breaks its preconditions
    DropCertificate moved = res.certificate;
    auto it = std::find_if(moved.steps.begin(), moved.steps.end(),
                           [](const DropStep& s) { return s.rule == DropRule::Block && s.first == 7; });
    REQUIRE(it != moved.steps.end());
    std::rotate(moved.steps.begin(), it, it + 1);
    CHECK_FALSE(replay_certificate(ctx, moved));

    // some adjacent transposition crosses a dependency
    int broken = 0;
    for (size_t k = 0; k + 1 < steps.size(); ++k) {
        DropCertificate c = res.certificate;
        std::swap(c.steps[k], c.steps[k + 1]);
        broken += !replay_certificate(ctx, c);
    }
    CHECK(broken > 0);

    DropCertificate wrong_rule = res.certificate;
    for (auto& s : wrong_rule.steps)
        if (s.rule == DropRule::MinA) {
            s.rule = DropRule::Block;
            break;
        }
    CHECK_FALSE(replay_certificate(ctx, wrong_rule));
}

TEST_CASE("certificate steps respect the rule restrictions") {
    for (const auto& cfg : {EnumConfig{22, 6, 25, 1}, EnumConfig{23, 6, 26, 2}})
        for (const auto& t : sample_tables(cfg, 200, 4)) {
            DropContext ctx = make_drop_context(t, default_multidegree(t));
            DropResult res = drop_all(ctx);
            DropResult again = drop_all(ctx);
            CHECK(res.success == again.success);
            CHECK(res.certificate.steps == again.certificate.steps);
            if (!res.success) continue;
            CHECK(replay_certificate(ctx, res.certificate));
            std::vector<int> times(ctx.sections.size(), 0);
            for (const auto& st : res.certificate.steps) {
                for (int s : st.dropped) ++times[s];
                if (st.rule == DropRule::Pair)
                    for (int s : st.dropped) {
                        const auto& ex = ctx.exceptional[st.first - 1];
                        CHECK_FALSE(ex[ctx.sections[s].j]);
                        CHECK_FALSE(ex[ctx.sections[s].j2]);
                    }
                if (st.rule == DropRule::Block)
                    for (int k = st.first + 1; k < st.last; ++k) CHECK(ctx.degree[k - 1] == 2);
            }
            for (int n : times) CHECK(n == 1);
        }
}

TEST_CASE("drop verdict does not depend on rule order") {
    std::mt19937_64 rng(2024);
    int agree = 0;
    for (int k = 0; k < 300; ++k) {
        DropContext ctx = oracle::random_drop_instance(rng, 12);
        DropResult res = drop_all(ctx);
        bool any = oracle::droppable_in_some_order(ctx);
        CHECK(res.success == any);
        agree += res.success == any;
        if (res.success) {
            CHECK(replay_certificate(ctx, res.certificate));
        } else {
            // a failed state admits no further step
            std::vector<char> alive(ctx.sections.size(), 0);
            for (int s : res.remaining) alive[s] = 1;
            CHECK(applicable_steps(ctx, alive).empty());
        }
    }
    CHECK(agree == 300);
}
