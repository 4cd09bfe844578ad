#include "lls/drop.hpp"

#include <algorithm>
#include <climits>
#include <unordered_set>

namespace lls {

DropContext make_drop_context(const VanishingTable& t, const LambdaSequence& ls, const TensorTable& tt,
                              const TwistVector& w, std::vector<PotentialSection> sections) {
    DropContext ctx;
    const int n = t.columns();
    ctx.n = n;
    ctx.d = t.d();
    ctx.genus.resize(n);
    ctx.degree.resize(n);
    ctx.delta.resize(n);
    ctx.exceptional.assign(n, std::vector<char>(t.rows(), 0));
    ctx.dd_a.assign(n, INT_MIN);
    ctx.dd_b.assign(n, INT_MIN);
    for (int i = 1; i <= n; ++i) {
        ctx.genus[i - 1] = t.genus_at(i);
        ctx.degree[i - 1] = w.at(i + 1) - w.at(i);
        ctx.delta[i - 1] = ls.delta[i] ? *ls.delta[i] : -1;
        for (int j = 0; j <= t.r(); ++j) ctx.exceptional[i - 1][j] = is_exceptional(t, i, j) ? 1 : 0;
        if (ctx.delta[i - 1] >= 0) {
            int k = tt.row_index(ctx.delta[i - 1], ctx.delta[i - 1]);
            ctx.dd_a[i - 1] = tt.a(i, k);
            ctx.dd_b[i - 1] = tt.b(i, k);
        }
    }
    const size_t m = sections.size();
    ctx.a.resize(m * n);
    ctx.b.resize(m * n);
    ctx.by_column.assign(n, {});
    for (size_t s = 0; s < m; ++s) {
        int k = tt.row_index(sections[s].j, sections[s].j2);
        for (int i = 1; i <= n; ++i) {
            ctx.a[s * n + i - 1] = tt.a(i, k);
            ctx.b[s * n + i - 1] = tt.b(i, k);
        }
        for (int i = sections[s].start; i <= sections[s].end; ++i) ctx.by_column[i - 1].push_back(static_cast<int>(s));
    }
    ctx.sections = std::move(sections);
    return ctx;
}

DropContext make_drop_context(const VanishingTable& t, const TwistVector& w) {
    TensorTable tt(t);
    auto secs = extract_potential_sections(tt, w);
    return make_drop_context(t, lambda_sequence(t), tt, w, std::move(secs));
}

const char* to_string(DropRule r) {
    switch (r) {
        case DropRule::MinA: return "i-a";
        case DropRule::MinB: return "i-b";
        case DropRule::Pair: return "ii";
        case DropRule::Block: return "iii";
    }
    return "?";
}

std::vector<std::pair<int, int>> DropCertificate::blocks() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& s : steps)
        if (s.rule == DropRule::Block) out.emplace_back(s.first, s.last);
    return out;
}

namespace {

struct Minima {
    int count = 0;
    int min_a = INT_MAX;
    int min_b = INT_MAX;
    int arg_a = -1;
    int arg_b = -1;
    int ties_a = 0;
    int ties_b = 0;
};

Minima column_minima(const DropContext& ctx, const std::vector<char>& alive, int i) {
    Minima m;
    for (int s : ctx.by_column[i - 1]) {
        if (!alive[s]) continue;
        ++m.count;
        int a = ctx.sa(s, i);
        int b = ctx.sb(s, i);
        if (a < m.min_a) {
            m.min_a = a;
            m.arg_a = s;
            m.ties_a = 1;
        } else if (a == m.min_a) {
            ++m.ties_a;
        }
        if (b < m.min_b) {
            m.min_b = b;
            m.arg_b = s;
            m.ties_b = 1;
        } else if (b == m.min_b) {
            ++m.ties_b;
        }
    }
    return m;
}

bool involves_exceptional(const DropContext& ctx, int s, int i) {
    const auto& sec = ctx.sections[s];
    const auto& ex = ctx.exceptional[i - 1];
    return ex[sec.j] || ex[sec.j2];
}

std::optional<DropStep> column_step(const DropContext& ctx, const std::vector<char>& alive, int i) {
    Minima m = column_minima(ctx, alive, i);
    if (m.count == 0) return std::nullopt;
    if (m.ties_a == 1) return DropStep{DropRule::MinA, i, i, {m.arg_a}};
    if (m.ties_b == 1) return DropStep{DropRule::MinB, i, i, {m.arg_b}};
    if (ctx.genus[i - 1] == 1 && m.count <= 2) {
        std::vector<int> drop;
        for (int s : ctx.by_column[i - 1]) {
            if (!alive[s]) continue;
            if (involves_exceptional(ctx, s, i)) return std::nullopt;
            drop.push_back(s);
        }
        return DropStep{DropRule::Pair, i, i, drop};
    }
    return std::nullopt;
}

int alive_in_column(const DropContext& ctx, const std::vector<char>& alive, int i) {
    int c = 0;
    for (int s : ctx.by_column[i - 1]) c += alive[s] ? 1 : 0;
    return c;
}

std::optional<DropStep> block_step(const DropContext& ctx, const std::vector<char>& alive, int i, int i2) {
    for (int k = i + 1; k < i2; ++k)
        if (ctx.degree[k - 1] != 2) return std::nullopt;
    if (alive_in_column(ctx, alive, i) > 3 || alive_in_column(ctx, alive, i2) > 3) return std::nullopt;
    for (int k = i; k < i2; ++k) {
        int cont = 0;
        for (int s : ctx.by_column[k - 1])
            if (alive[s] && ctx.sections[s].end >= k + 1) ++cont;
        if (cont > 3) return std::nullopt;
    }
    if (!is_semicritical(ctx, alive, i) || !is_semicritical(ctx, alive, i2)) return std::nullopt;
    bool left_ok = is_critical(ctx, alive, i);
    if (left_ok)
        for (int s : ctx.by_column[i - 1])
            if (alive[s] && ctx.sections[s].end == i) left_ok = false;
    bool right_ok = false;
    if (!left_ok) {
        right_ok = is_critical(ctx, alive, i2);
        if (right_ok)
            for (int s : ctx.by_column[i2 - 1])
                if (alive[s] && ctx.sections[s].start == i2) right_ok = false;
    }
    if (!left_ok && !right_ok) return std::nullopt;
    DropStep step{DropRule::Block, i, i2, {}};
    for (size_t s = 0; s < ctx.sections.size(); ++s)
        if (alive[s] && ctx.sections[s].start <= i2 && ctx.sections[s].end >= i)
            step.dropped.push_back(static_cast<int>(s));
    if (step.dropped.empty()) return std::nullopt;
    return step;
}

bool interior_degree_two(const DropContext& ctx, int i, int i2) {
    for (int k = i + 1; k < i2; ++k)
        if (ctx.degree[k - 1] != 2) return false;
    return true;
}

// Blocks are tried where the sweeps got stuck: first anchored at the leftmost
// column still carrying sections, then at the rightmost, shortest first; any
// other block comes last.
std::optional<DropStep> first_block(const DropContext& ctx, const std::vector<char>& alive) {
    int lo = 0, hi = 0;
    for (int i = 1; i <= ctx.n && !lo; ++i)
        if (alive_in_column(ctx, alive, i)) lo = i;
    for (int i = ctx.n; i >= 1 && !hi; --i)
        if (alive_in_column(ctx, alive, i)) hi = i;
    if (!lo) return std::nullopt;
    auto attempt = [&](int i, int i2) -> std::optional<DropStep> {
        if (i < 1 || i2 > ctx.n || ctx.delta[i - 1] < 0 || ctx.delta[i2 - 1] < 0) return std::nullopt;
        if (!interior_degree_two(ctx, i, i2)) return std::nullopt;
        return block_step(ctx, alive, i, i2);
    };
    for (int i2 = lo + 1; i2 <= ctx.n; ++i2)
        if (auto st = attempt(lo, i2)) return st;
    for (int i = hi - 1; i >= 1; --i)
        if (auto st = attempt(i, hi)) return st;
    for (int len = 1; len < ctx.n; ++len)
        for (int i = 1; i + len <= ctx.n; ++i)
            if (auto st = attempt(i, i + len)) return st;
    return std::nullopt;
}

void apply(std::vector<char>& alive, const DropStep& st, int& remaining) {
    for (int s : st.dropped) {
        alive[s] = 0;
        --remaining;
    }
}

uint64_t mask_of(const std::vector<char>& alive) {
    uint64_t m = 0;
    for (size_t s = 0; s < alive.size(); ++s)
        if (alive[s]) m |= uint64_t(1) << s;
    return m;
}

bool search(const DropContext& ctx, std::vector<char>& alive, int remaining, std::vector<DropStep>& path,
            std::unordered_set<uint64_t>& dead, size_t budget) {
    if (remaining == 0) return true;
    uint64_t key = mask_of(alive);
    if (dead.count(key) || dead.size() > budget) return false;
    for (const auto& st : applicable_steps(ctx, alive)) {
        std::vector<char> next = alive;
        int rem = remaining;
        apply(next, st, rem);
        path.push_back(st);
        if (search(ctx, next, rem, path, dead, budget)) return true;
        path.pop_back();
    }
    dead.insert(key);
    return false;
}

}  // namespace

bool is_semicritical(const DropContext& ctx, const std::vector<char>& alive, int i) {
    int dl = ctx.delta[i - 1];
    if (dl < 0) return false;
    Minima m = column_minima(ctx, alive, i);
    if (m.count > 0 && m.min_a + m.min_b < 2 * ctx.d - 2) return false;
    const auto& ex = ctx.exceptional[i - 1];
    for (int s : ctx.by_column[i - 1]) {
        if (!alive[s]) continue;
        const auto& sec = ctx.sections[s];
        if (sec.j == dl && sec.j2 != dl && ex[sec.j2]) return false;
        if (sec.j2 == dl && sec.j != dl && ex[sec.j]) return false;
    }
    return true;
}

bool is_critical(const DropContext& ctx, const std::vector<char>& alive, int i) {
    if (!is_semicritical(ctx, alive, i)) return false;
    Minima m = column_minima(ctx, alive, i);
    if (m.count == 0) return true;
    return !(m.min_a == ctx.dd_a[i - 1] - 1 && m.min_b == ctx.dd_b[i - 1] - 1);
}

std::vector<DropStep> applicable_steps(const DropContext& ctx, const std::vector<char>& alive) {
    std::vector<DropStep> out;
    for (int i = 1; i <= ctx.n; ++i) {
        Minima m = column_minima(ctx, alive, i);
        if (m.count == 0) continue;
        if (m.ties_a == 1) out.push_back({DropRule::MinA, i, i, {m.arg_a}});
        if (m.ties_b == 1 && !(m.ties_a == 1 && m.arg_b == m.arg_a)) out.push_back({DropRule::MinB, i, i, {m.arg_b}});
        if (ctx.genus[i - 1] == 1 && m.count <= 2) {
            std::vector<int> drop;
            bool ok = true;
            for (int s : ctx.by_column[i - 1]) {
                if (!alive[s]) continue;
                if (involves_exceptional(ctx, s, i)) ok = false;
                drop.push_back(s);
            }
            if (ok) out.push_back({DropRule::Pair, i, i, drop});
        }
    }
    for (int i = 1; i < ctx.n; ++i)
        for (int i2 = i + 1; i2 <= ctx.n; ++i2) {
            if (auto st = block_step(ctx, alive, i, i2)) out.push_back(*st);
            if (ctx.degree[i2 - 1] != 2) break;
        }
    return out;
}

bool step_applies(const DropContext& ctx, const std::vector<char>& alive, const DropStep& step) {
    const int i = step.first;
    if (i < 1 || i > ctx.n || step.last < i || step.last > ctx.n) return false;
    for (int s : step.dropped)
        if (s < 0 || s >= static_cast<int>(alive.size()) || !alive[s]) return false;
    if (step.rule == DropRule::Block) {
        auto st = block_step(ctx, alive, i, step.last);
        return st && st->dropped == step.dropped;
    }
    if (step.last != i) return false;
    Minima m = column_minima(ctx, alive, i);
    if (m.count == 0) return false;
    switch (step.rule) {
        case DropRule::MinA: return m.ties_a == 1 && step.dropped == std::vector<int>{m.arg_a};
        case DropRule::MinB: return m.ties_b == 1 && step.dropped == std::vector<int>{m.arg_b};
        case DropRule::Pair: {
            if (ctx.genus[i - 1] != 1 || m.count > 2) return false;
            std::vector<int> drop;
            for (int s : ctx.by_column[i - 1]) {
                if (!alive[s]) continue;
                if (involves_exceptional(ctx, s, i)) return false;
                drop.push_back(s);
            }
            return drop == step.dropped;
        }
        default: return false;
    }
}

DropResult drop_all(const DropContext& ctx) {
    DropResult res;
    const int m = static_cast<int>(ctx.sections.size());
    std::vector<char> alive(m, 1);
    int remaining = m;
    auto sweep_column = [&](int i) {
        bool any = false;
        while (remaining > 0) {
            auto st = column_step(ctx, alive, i);
            if (!st) break;
            apply(alive, *st, remaining);
            res.certificate.steps.push_back(std::move(*st));
            any = true;
        }
        return any;
    };
    while (remaining > 0) {
        bool changed = false;
        for (int i = 1; i <= ctx.n; ++i) changed |= sweep_column(i);
        for (int i = ctx.n; i >= 1; --i) changed |= sweep_column(i);
        if (remaining == 0 || changed) continue;
        auto st = first_block(ctx, alive);
        if (!st) break;
        apply(alive, *st, remaining);
        res.certificate.steps.push_back(std::move(*st));
    }
    if (remaining == 0) {
        res.success = true;
        return res;
    }
    if (m <= 64) {
        std::vector<char> full(m, 1);
        std::vector<DropStep> path;
        std::unordered_set<uint64_t> dead;
        if (search(ctx, full, m, path, dead, 1u << 16)) {
            res.success = true;
            res.backtracked = true;
            res.certificate.steps = std::move(path);
            return res;
        }
    }
    for (int s = 0; s < m; ++s)
        if (alive[s]) res.remaining.push_back(s);
    return res;
}

bool replay_certificate(const DropContext& ctx, const DropCertificate& cert) {
    std::vector<char> alive(ctx.sections.size(), 1);
    int remaining = static_cast<int>(ctx.sections.size());
    for (const auto& st : cert.steps) {
        if (!step_applies(ctx, alive, st)) return false;
        apply(alive, st, remaining);
    }
    return remaining == 0;
}

}  // namespace lls
