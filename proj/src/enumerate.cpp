#include "lls/enumerate.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <random>
#include <unordered_map>

namespace lls {

namespace {

constexpr int kMaxRows = kMaxEnumRows;

struct Key {
    std::array<int8_t, kMaxRows + 4> bytes{};
    bool operator==(const Key& o) const { return bytes == o.bytes; }
};

struct KeyHash {
    size_t operator()(const Key& k) const {
        uint64_t h = 1469598103934665603ull;
        for (int8_t c : k.bytes) {
            h ^= static_cast<uint8_t>(c);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

using Values = std::array<int, kMaxRows>;
using Small = std::array<int8_t, kMaxRows>;

struct Child {
    Values next;  // a^{i+1} by position of a^i (not sorted)
    int cost;
    int swaps;
};

struct Node;

struct Edge {
    Small sorted;  // sorted a^{i+1}
    Small order;   // order[p] = position in a^i of the row landing at sorted position p
    const Node* node;
};

struct Node {
    uint64_t count = 0;
    std::vector<Edge> kids;  // canonical order, empty subtrees removed
};

}  // namespace

struct Enumerator::Impl {
    EnumConfig cfg;
    int rows = 0;
    int rho = 0;
    uint64_t total = 0;
    std::vector<Values> roots;  // initial vanishing sequences, lexicographic
    std::vector<int> root_cost;
    std::vector<const Node*> root_node;
    std::unordered_map<Key, Node, KeyHash> memo;

    Key key(int i, const Values& v, int u, int s) const {
        Key k;
        k.bytes[0] = static_cast<int8_t>(i);
        k.bytes[1] = static_cast<int8_t>(u);
        k.bytes[2] = static_cast<int8_t>(s);
        for (int p = 0; p < rows; ++p) k.bytes[3 + p] = static_cast<int8_t>(v[p]);
        return k;
    }

    // Children of sorted state v with remaining budget, canonical order.
    void children(const Values& v, int budget, int swap_room, std::vector<Child>& out) const {
        out.clear();
        Values e{};
        for (int delta = 0; delta <= rows; ++delta) {
            int base = delta == rows ? 1 : 0;
            if (base > budget) continue;
            // extras over positions, lexicographic
            std::function<void(int, int)> rec = [&](int p, int left) {
                if (p == rows) {
                    Child c;
                    int extra = budget - base - left;
                    for (int q = 0; q < rows; ++q) {
                        c.next[q] = v[q] + e[q];
                        if (c.next[q] > cfg.d) return;
                    }
                    for (int q = 0; q < rows; ++q)
                        for (int t = q + 1; t < rows; ++t)
                            if (c.next[q] == c.next[t]) return;
                    int sw = 0;
                    std::array<char, kMaxRows> in_swap{};
                    for (int q = 0; q < rows; ++q)
                        for (int t = q + 1; t < rows; ++t)
                            if (c.next[q] > c.next[t]) {
                                ++sw;
                                in_swap[q] = in_swap[t] = 1;
                            }
                    if (sw > swap_room) return;
                    if (cfg.exclude_nonswap_exceptional)
                        for (int q = 0; q < rows; ++q)
                            if (e[q] >= 2 && !in_swap[q]) return;
                    c.cost = base + extra;
                    c.swaps = sw;
                    out.push_back(c);
                    return;
                }
                int lo = p == delta ? 0 : 1;
                for (int x = 0; x <= left; ++x) {
                    if (p == delta && x > 0) break;
                    e[p] = lo + x;
                    rec(p + 1, left - x);
                }
            };
            rec(0, budget - base);
        }
    }

    // Subtree of sorted state v at depth i (a^{i+1} known), budget used u, swaps s.
    const Node* build(int i, const Values& v, int u, int s) {
        Key k = key(i, v, u, s);
        auto it = memo.find(k);
        if (it != memo.end()) return &it->second;
        Node node;
        if (i == cfg.g) {
            node.count = s >= cfg.min_swaps ? 1 : 0;
        } else {
            std::vector<Child> ch;
            children(v, cfg.rho_max - u, cfg.max_swaps - s, ch);
            for (const auto& c : ch) {
                std::array<int, kMaxRows> order{};
                for (int p = 0; p < rows; ++p) order[p] = p;
                std::sort(order.begin(), order.begin() + rows,
                          [&](int x, int y) { return c.next[x] < c.next[y]; });
                Values nv{};
                Edge e{};
                for (int p = 0; p < rows; ++p) {
                    nv[p] = c.next[order[p]];
                    e.sorted[p] = static_cast<int8_t>(nv[p]);
                    e.order[p] = static_cast<int8_t>(order[p]);
                }
                e.node = build(i + 1, nv, u + c.cost, s + c.swaps);
                if (e.node->count == 0) continue;
                node.count += e.node->count;
                node.kids.push_back(e);
            }
        }
        return &memo.emplace(k, std::move(node)).first->second;
    }

    void init_roots() {
        Values a{};
        std::function<void(int, int, int)> rec = [&](int j, int lo, int ram) {
            if (j == rows) {
                roots.push_back(a);
                root_cost.push_back(ram);
                return;
            }
            for (int x = lo; ram + (x - j) <= cfg.rho_max && x <= cfg.d; ++x) {
                a[j] = x;
                rec(j + 1, x + 1, ram + (x - j));
            }
        };
        rec(0, 0, 0);
    }

    // Visits every index in [begin, end); with `want` set, only those
    // indices (sorted) that fall in the range.
    struct Walk {
        const Impl& self;
        uint64_t begin, end;
        const uint64_t* want = nullptr;
        const uint64_t* want_end = nullptr;
        const std::function<void(uint64_t, const RawTable&)>& f;
        std::vector<std::array<int, kMaxRows>> cols;  // a^{i} by row label, i = 1..N+1
        RawTable raw;

        bool wanted_in(uint64_t lo, uint64_t hi) {
            if (!want) return true;
            while (want != want_end && *want < lo) ++want;
            return want != want_end && *want < hi;
        }

        // v: sorted values of a^{i+1}; lab[p]: row label at sorted position p
        template <class V>
        void go(int i, const Node* node, const V& v, const std::array<int, kMaxRows>& lab, uint64_t base) {
            std::array<int, kMaxRows>& cur = cols[i];
            for (int p = 0; p < self.rows; ++p) cur[lab[p]] = v[p];
            if (i == self.cfg.g) {
                if (base >= begin && base < end && wanted_in(base, base + 1)) f(base, raw);
                return;
            }
            for (const Edge& c : node->kids) {
                uint64_t sz = c.node->count;
                if (base + sz > begin && base < end && wanted_in(std::max(base, begin), std::min(base + sz, end))) {
                    std::array<int, kMaxRows> nlab{};
                    for (int p = 0; p < self.rows; ++p) nlab[p] = lab[c.order[p]];
                    go(i + 1, c.node, c.sorted, nlab, base);
                }
                base += sz;
                if (base >= end) return;
            }
        }
    };

    void walk(uint64_t begin, uint64_t end, const uint64_t* want, const uint64_t* want_end,
              const std::function<void(uint64_t, const RawTable&)>& f) const {
        Walk w{*this, begin, end, want, want_end, f, {}, {}};
        w.cols.resize(cfg.g + 1);
        w.raw = RawTable{cfg.g, cfg.r, cfg.d, w.cols.data()};
        uint64_t base = 0;
        for (size_t k = 0; k < roots.size(); ++k) {
            uint64_t sz = root_node[k]->count;
            if (sz && base + sz > begin && base < end) {
                std::array<int, kMaxRows> lab{};
                for (int p = 0; p < rows; ++p) lab[p] = p;
                w.go(0, root_node[k], roots[k], lab, base);
            }
            base += sz;
            if (base >= end) break;
        }
    }
};

VanishingTable RawTable::materialize() const {
    VanishingTable t(build_elliptic_chain(g), r, d);
    for (int i = 1; i <= g; ++i)
        for (int j = 0; j <= r; ++j) t.set(i, j, a[i - 1][j], d - a[i][j]);
    return t;
}

Enumerator::Enumerator(EnumConfig cfg) : impl_(std::make_unique<Impl>()) {
    if (cfg.g < 1 || cfg.r < 0 || cfg.d < 0) throw EnumerationError("need g >= 1, r >= 0, d >= 0");
    if (cfg.r + 1 > kMaxRows) throw EnumerationError("r too large for the enumerator");
    if (cfg.d > 120 || cfg.g > 120) throw EnumerationError("g and d must be at most 120");
    int rho = brill_noether_number(cfg.g, cfg.r, cfg.d);
    if (rho < 0) throw EnumerationError("infeasible (g,r,d): rho < 0");
    if (cfg.rho_max < 0 || cfg.rho_max > rho) throw EnumerationError("rho_max must lie in [0, rho]");
    if (cfg.min_swaps < 0 || cfg.max_swaps < cfg.min_swaps) throw EnumerationError("bad swap range");
    cfg.max_swaps = std::min(cfg.max_swaps, 100);
    impl_->cfg = cfg;
    impl_->rows = cfg.r + 1;
    impl_->rho = rho;
    impl_->init_roots();
    for (size_t k = 0; k < impl_->roots.size(); ++k) {
        const Node* node = impl_->build(0, impl_->roots[k], impl_->root_cost[k], 0);
        impl_->root_node.push_back(node);
        impl_->total += node->count;
    }
}

Enumerator::~Enumerator() = default;
Enumerator::Enumerator(Enumerator&&) noexcept = default;

const EnumConfig& Enumerator::config() const { return impl_->cfg; }
int Enumerator::rho() const { return impl_->rho; }
uint64_t Enumerator::count() const { return impl_->total; }

void Enumerator::for_each_raw(uint64_t begin, uint64_t end,
                              const std::function<void(uint64_t, const RawTable&)>& f) const {
    end = std::min(end, impl_->total);
    if (begin >= end) return;
    impl_->walk(begin, end, nullptr, nullptr, f);
}

void Enumerator::for_each_raw_of(const uint64_t* first, const uint64_t* last,
                                 const std::function<void(uint64_t, const RawTable&)>& f) const {
    if (first == last) return;
    if (!std::is_sorted(first, last)) throw EnumerationError("indices must be sorted");
    if (*(last - 1) >= count()) throw EnumerationError("index out of range");
    impl_->walk(*first, *(last - 1) + 1, first, last, f);
}

void Enumerator::for_each(uint64_t begin, uint64_t end,
                          const std::function<void(uint64_t, const VanishingTable&)>& f) const {
    for_each_raw(begin, end, [&](uint64_t idx, const RawTable& raw) { f(idx, raw.materialize()); });
}

void Enumerator::for_each_of(const uint64_t* first, const uint64_t* last,
                             const std::function<void(uint64_t, const VanishingTable&)>& f) const {
    for_each_raw_of(first, last, [&](uint64_t idx, const RawTable& raw) { f(idx, raw.materialize()); });
}

VanishingTable Enumerator::unrank(uint64_t index) const {
    if (index >= count()) throw EnumerationError("index out of range");
    VanishingTable out;
    for_each(index, index + 1, [&](uint64_t, const VanishingTable& t) { out = t; });
    return out;
}

std::vector<uint64_t> Enumerator::sample_indices(uint64_t n, uint64_t seed) const {
    std::vector<uint64_t> out;
    uint64_t total = count();
    if (n >= total) {
        out.resize(total);
        for (uint64_t k = 0; k < total; ++k) out[k] = k;
        return out;
    }
    // Draw until n distinct values; the result is a uniform n-subset.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> pick(0, total - 1);
    while (out.size() < n) {
        for (uint64_t k = out.size(); k < n; ++k) out.push_back(pick(rng));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

uint64_t count_small_oracle(int g, int r, int d, int rho_max) {
    if (g > 8 || r > 2 || d > 8) throw EnumerationError("search space too large for the brute-force oracle");
    ChainCurve chain = build_elliptic_chain(g);
    const int rows = r + 1;
    VanishingTable t(chain, r, d);
    uint64_t found = 0;
    std::vector<int> a(rows), b(rows);
    std::function<void(int)> column = [&](int i) {
        if (i > g) {
            try {
                validate_table(t);
                if (rho_accounting(t).total <= rho_max) ++found;
            } catch (const TableError&) {
            }
            return;
        }
        std::vector<int> cur(rows);
        for (int j = 0; j < rows; ++j) cur[j] = i == 1 ? a[j] : d - t.b(i - 1, j);
        std::function<void(int)> pick = [&](int j) {
            if (j == rows) {
                column(i + 1);
                return;
            }
            // column-local structure only: sums bounded by d, distinct b, one full row
            for (int bj = 0; bj + cur[j] <= d; ++bj) {
                bool clash = false;
                int full = cur[j] + bj == d ? 1 : 0;
                for (int k = 0; k < j; ++k) {
                    clash |= t.b(i, k) == bj;
                    full += t.sum(i, k) == d ? 1 : 0;
                }
                if (clash || full > 1) continue;
                t.set(i, j, cur[j], bj);
                pick(j + 1);
            }
        };
        pick(0);
    };
    std::function<void(int)> first = [&](int j) {
        if (j == rows) {
            column(1);
            return;
        }
        for (int x = j == 0 ? 0 : a[j - 1] + 1; x <= d; ++x) {
            a[j] = x;
            first(j + 1);
        }
    };
    first(0);
    return found;
}

}  // namespace lls
