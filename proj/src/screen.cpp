#include "lls/screen.hpp"

#include <algorithm>
#include <bit>
#include <climits>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

namespace lls {

namespace {

constexpr int kRows = 7;
constexpr int kMaxCols = 48;
constexpr int kMaxSections = 64;
constexpr uint64_t kUpper = [] {
    uint64_t m = 0;
    for (int j = 0; j < kRows; ++j)
        for (int j2 = j; j2 < kRows; ++j2) m |= uint64_t(1) << (j * 8 + j2);
    return m;
}();

struct Sec {
    int8_t j, j2, start, end;
};

struct Kernel {
    int n = 0, d = 0, D = 0;
    alignas(16) int16_t A[kMaxCols + 2][8];  // a^i_j, i = 1..N+1, lane 7 unused
    int c[kMaxCols + 2];                     // c_i, i = 1..N+1
    int deg[kMaxCols + 1];
    int delta[kMaxCols + 1];
    unsigned ex[kMaxCols + 1];
    Sec sec[kMaxSections];
    int m = 0;
    uint64_t col[kMaxCols + 2];     // sections whose support contains column i
    uint64_t starts[kMaxCols + 2];  // sections starting at i
    uint64_t ends[kMaxCols + 2];
    uint64_t span[kMaxSections];    // columns of each section, as a bitmask
    int16_t SA[kMaxCols + 1][kMaxSections];  // tensor entries on the support
    int16_t SB[kMaxCols + 1][kMaxSections];

    // Per-column data reused across consecutive tables that share columns.
    bool primed = false;
    bool changed[kMaxCols + 2];
    int order[kMaxCols + 2][kRows];  // row labels sorted by a^i
    int cnt[kMaxCols + 1][4];        // #{j : bar lambda^i_j >= l}
    Swap col_swaps[kMaxCols + 1][21];
    int col_swap_count[kMaxCols + 1];
    uint64_t id_prefix[kMaxCols + 2];  // table id state after column i
    int mask_c[kMaxCols + 2];          // c_i the sign masks were built for
    uint64_t ge[kMaxCols + 2], le[kMaxCols + 2];

    struct Minima {
        int count = 0, min_a = INT_MAX, min_b = INT_MAX, arg_a = -1, arg_b = -1, ties_a = 0, ties_b = 0;
    };

    Minima minima(uint64_t alive, int i) const {
        Minima mm;
        for (uint64_t bits = alive & col[i]; bits; bits &= bits - 1) {
            int s = std::countr_zero(bits);
            ++mm.count;
            int a = SA[i][s], b = SB[i][s];
            if (a < mm.min_a) {
                mm.min_a = a;
                mm.arg_a = s;
                mm.ties_a = 1;
            } else if (a == mm.min_a) {
                ++mm.ties_a;
            }
            if (b < mm.min_b) {
                mm.min_b = b;
                mm.arg_b = s;
                mm.ties_b = 1;
            } else if (b == mm.min_b) {
                ++mm.ties_b;
            }
        }
        return mm;
    }

    bool involves_ex(int s, int i) const { return (ex[i] >> sec[s].j & 1) || (ex[i] >> sec[s].j2 & 1); }

    // dropped mask, 0 when no rule (i)/(ii) applies
    uint64_t column_step(uint64_t alive, int i, DropRule& rule) const {
        Minima mm = minima(alive, i);
        if (mm.count == 0) return 0;
        if (mm.ties_a == 1) {
            rule = DropRule::MinA;
            return uint64_t(1) << mm.arg_a;
        }
        if (mm.ties_b == 1) {
            rule = DropRule::MinB;
            return uint64_t(1) << mm.arg_b;
        }
        if (mm.count <= 2) {
            uint64_t here = alive & col[i];
            for (uint64_t bits = here; bits; bits &= bits - 1)
                if (involves_ex(std::countr_zero(bits), i)) return 0;
            rule = DropRule::Pair;
            return here;
        }
        return 0;
    }

    bool semicritical(uint64_t alive, int i, const Minima& mm) const {
        int dl = delta[i];
        if (dl < 0) return false;
        if (mm.count > 0 && mm.min_a + mm.min_b < 2 * d - 2) return false;
        for (uint64_t bits = alive & col[i]; bits; bits &= bits - 1) {
            const Sec& s = sec[std::countr_zero(bits)];
            if (s.j == dl && s.j2 != dl && (ex[i] >> s.j2 & 1)) return false;
            if (s.j2 == dl && s.j != dl && (ex[i] >> s.j & 1)) return false;
        }
        return true;
    }

    bool critical(int i, const Minima& mm) const {
        if (mm.count == 0) return true;
        int dl = delta[i];
        return !(mm.min_a == 2 * A[i][dl] - 1 && mm.min_b == 2 * (d - A[i + 1][dl]) - 1);
    }

    uint64_t block_step(uint64_t alive, int i, int i2) const {
        for (int k = i + 1; k < i2; ++k)
            if (deg[k] != 2) return 0;
        if (std::popcount(alive & col[i]) > 3 || std::popcount(alive & col[i2]) > 3) return 0;
        for (int k = i; k < i2; ++k)
            if (std::popcount(alive & col[k] & col[k + 1]) > 3) return 0;
        Minima left = minima(alive, i), right = minima(alive, i2);
        if (!semicritical(alive, i, left) || !semicritical(alive, i2, right)) return 0;
        bool left_ok = critical(i, left) && !(alive & col[i] & ends[i]);
        bool right_ok = !left_ok && critical(i2, right) && !(alive & col[i2] & starts[i2]);
        if (!left_ok && !right_ok) return 0;
        uint64_t hit = 0;
        for (int k = i; k <= i2; ++k) hit |= col[k];
        return alive & hit;
    }

    uint64_t first_block(uint64_t alive, int& bi, int& bi2) const {
        int lo = 0, hi = 0;
        for (int i = 1; i <= n && !lo; ++i)
            if (alive & col[i]) lo = i;
        for (int i = n; i >= 1 && !hi; --i)
            if (alive & col[i]) hi = i;
        if (!lo) return 0;
        auto attempt = [&](int i, int i2) -> uint64_t {
            if (i < 1 || i2 > n || delta[i] < 0 || delta[i2] < 0) return 0;
            uint64_t got = block_step(alive, i, i2);
            if (got) {
                bi = i;
                bi2 = i2;
            }
            return got;
        };
        for (int i2 = lo + 1; i2 <= n; ++i2)
            if (uint64_t g = attempt(lo, i2)) return g;
        for (int i = hi - 1; i >= 1; --i)
            if (uint64_t g = attempt(i, hi)) return g;
        for (int len = 1; len < n; ++len)
            for (int i = 1; i + len <= n; ++i)
                if (uint64_t g = attempt(i, i + len)) return g;
        return 0;
    }

    // Bit j*8+j2 set when a^i_j + a^i_j2 - c_i is >= 0 (ge) / <= 0 (le).
    void sign_masks(int i, uint64_t& ge, uint64_t& le) const {
        ge = le = 0;
#if defined(__SSE2__)
        __m128i row = _mm_load_si128(reinterpret_cast<const __m128i*>(A[i]));
        const __m128i minus_one = _mm_set1_epi16(-1), one = _mm_set1_epi16(1), zero = _mm_setzero_si128();
        for (int j = 0; j < kRows; ++j) {
            __m128i v = _mm_add_epi16(row, _mm_set1_epi16(static_cast<int16_t>(A[i][j] - c[i])));
            uint64_t g = static_cast<unsigned>(_mm_movemask_epi8(_mm_packs_epi16(_mm_cmpgt_epi16(v, minus_one), zero)));
            uint64_t l = static_cast<unsigned>(_mm_movemask_epi8(_mm_packs_epi16(_mm_cmplt_epi16(v, one), zero)));
            ge |= g << (8 * j);
            le |= l << (8 * j);
        }
#else
        for (int j = 0; j < kRows; ++j)
            for (int j2 = 0; j2 < kRows; ++j2) {
                int v = A[i][j] + A[i][j2] - c[i];
                ge |= uint64_t(v >= 0) << (8 * j + j2);
                le |= uint64_t(v <= 0) << (8 * j + j2);
            }
#endif
        ge &= kUpper;
        le &= kUpper;
    }
};

void push_step(DropCertificate& cert, DropRule rule, int first, int last, uint64_t mask) {
    DropStep st{rule, first, last, {}};
    for (; mask; mask &= mask - 1) st.dropped.push_back(std::countr_zero(mask));
    cert.steps.push_back(std::move(st));
}

bool run_screen(Kernel& K, const RawTable& t, Verdict& out, bool keep_certificate) {
    thread_local std::vector<Swap> swaps;
    thread_local std::vector<PotentialSection> secs;
    const int n = K.n, d = K.d;

    for (int i = 1; i <= n + 1; ++i) {
        if (!K.changed[i]) continue;
        int* o = K.order[i];
        const int16_t* v = K.A[i];
        for (int j = 0; j < kRows; ++j) {
            int p = j;
            while (p > 0 && v[o[p - 1]] > v[j]) {
                o[p] = o[p - 1];
                --p;
            }
            o[p] = j;
        }
    }

    // deltas, exceptional rows, swaps, bar counts
    unsigned ever = 0;
    int swap_total = 0;
    for (int i = 1; i <= n; ++i) {
        if (K.changed[i] || K.changed[i + 1]) {
            K.delta[i] = -1;
            K.ex[i] = 0;
            for (int j = 0; j < kRows; ++j) {
                int e = K.A[i + 1][j] - K.A[i][j];
                if (e == 0 && K.delta[i] < 0) K.delta[i] = j;
                if (e >= 2) K.ex[i] |= 1u << j;
            }
            int& ns = K.col_swap_count[i];
            ns = 0;
            // an inversion between a^i and a^{i+1} shows up between neighbours
            bool sorted = true;
            for (int p = 0; p + 1 < kRows; ++p) sorted &= K.A[i + 1][K.order[i][p]] < K.A[i + 1][K.order[i][p + 1]];
            if (!sorted)
                for (int j = 0; j < kRows; ++j)
                    for (int k = j + 1; k < kRows; ++k) {
                        int da = K.A[i][k] - K.A[i][j];
                        int db = K.A[i + 1][j] - K.A[i + 1][k];
                        if ((da > 0 && db > 0) || (da < 0 && db < 0)) {
                            bool minimal = std::abs(da) == 1 && std::abs(db) == 1 &&
                                           (K.A[i + 1][j] == K.A[i][j] || K.A[i + 1][k] == K.A[i][k]);
                            K.col_swaps[i][ns++] = {i, j, k, minimal};
                        }
                    }
        }
        if (K.changed[i + 1]) {
            int c1 = 0, c2 = 0, c3 = 0;
            for (int j = 0; j < kRows; ++j) {
                int lam = i + j - K.A[i + 1][K.order[i + 1][j]];
                c1 += lam >= 1;
                c2 += lam >= 2;
                c3 += lam >= 3;
            }
            K.cnt[i][1] = c1;
            K.cnt[i][2] = c2;
            K.cnt[i][3] = c3;
        }
        ever |= K.ex[i];
        swap_total += K.col_swap_count[i];
    }
    swaps.clear();
    if (swap_total)
        for (int i = 1; i <= n; ++i) swaps.insert(swaps.end(), K.col_swaps[i], K.col_swaps[i] + K.col_swap_count[i]);

    // default positions of the degree-3 components
    int p2 = -1, p3 = -1, q4 = -1, q5 = -1;
    for (int i = 1; i <= n; ++i) {
        const int c1 = K.cnt[i][1], c2 = K.cnt[i][2], c3 = K.cnt[i][3];
        if (p2 < 0 && c1 + c2 == 5) p2 = i;
        if (p3 < 0 && c1 + c3 == 7) p3 = i;
        if (c1 + c3 == 7) q4 = i;
        if (c2 + c3 == 9) q5 = i;
    }
    if (p2 < 0 || p3 < 0 || q4 < 0 || q5 < 0) return false;
    const int pos[6] = {1, p2, p3, q4 + 1, q5 + 1, n};
    for (int i = 1; i <= n; ++i) K.deg[i] = 2;
    for (int p : pos) {
        if (p > n || K.deg[p] == 3) return false;
        K.deg[p] = 3;
    }
    K.c[1] = 0;
    for (int i = 1; i <= n; ++i) K.c[i + 1] = K.c[i] + K.deg[i];
    K.D = K.c[n + 1];
    if (K.D != 2 * d) return false;

    // Potential sections. With f_i = a^i_j + a^i_j2 - c_i, a row appears in
    // column i iff f_i >= 0 and f_{i+1} <= 0.
    const uint64_t* ge = K.ge;
    const uint64_t* le = K.le;
    for (int i = 1; i <= n + 1; ++i)
        if (K.mask_c[i] != K.c[i]) {
            K.sign_masks(i, K.ge[i], K.le[i]);
            K.mask_c[i] = K.c[i];
        }
    uint64_t app[64] = {}, st[64] = {}, en[64] = {};
    uint64_t rows_seen = 0;
    for (int i = 1; i <= n; ++i) {
        uint64_t a = ge[i] & le[i + 1];
        uint64_t s = a & (i == 1 ? ~uint64_t(0) : ~le[i]);
        uint64_t e = a & (i == n ? ~uint64_t(0) : ~ge[i + 1]);
        rows_seen |= a;
        const uint64_t bit = uint64_t(1) << i;
        for (; a; a &= a - 1) app[std::countr_zero(a)] |= bit;
        for (; s; s &= s - 1) st[std::countr_zero(s)] |= bit;
        for (; e; e &= e - 1) en[std::countr_zero(e)] |= bit;
    }
    K.m = 0;
    for (uint64_t rows = rows_seen; rows; rows &= rows - 1) {
        const int k = std::countr_zero(rows);
        for (uint64_t rest = app[k]; rest;) {
            int lo = std::countr_zero(rest);
            uint64_t above = ~rest & (~uint64_t(0) << lo);
            int past = std::countr_zero(above);  // columns stop below bit 63
            uint64_t run = ((uint64_t(1) << past) - 1) & (~uint64_t(0) << lo);
            rest &= ~run;
            uint64_t s_in = st[k] & run, e_in = en[k] & run;
            if (!s_in || !e_in) continue;
            int first_start = std::countr_zero(s_in);
            int last_end = 63 - std::countl_zero(e_in);
            if (last_end < first_start) continue;
            if (K.m == kMaxSections) return false;
            K.sec[K.m++] = {int8_t(k / 8), int8_t(k % 8), int8_t(first_start), int8_t(last_end)};
        }
    }
    const int m = K.m;
    for (int i = 0; i <= n + 1; ++i) K.col[i] = K.starts[i] = K.ends[i] = 0;
    for (int s = 0; s < m; ++s) {
        const Sec& sc = K.sec[s];
        uint64_t bit = uint64_t(1) << s;
        K.span[s] = 0;
        for (int i = sc.start; i <= sc.end; ++i) {
            K.col[i] |= bit;
            K.span[s] |= uint64_t(1) << i;
            K.SA[i][s] = static_cast<int16_t>(K.A[i][sc.j] + K.A[i][sc.j2]);
            K.SB[i][s] = static_cast<int16_t>(2 * d - K.A[i + 1][sc.j] - K.A[i + 1][sc.j2]);
        }
        K.starts[sc.start] |= bit;
        K.ends[sc.end] |= bit;
    }

    // Canonical elimination: alternate left-to-right and right-to-left sweeps
    // of rules (i)/(ii) until nothing moves, then one block. Only columns whose
    // live sections changed since they were last stuck are revisited.
    DropCertificate& cert = out.certificate;
    cert.steps.clear();
    uint64_t alive = m == 64 ? ~uint64_t(0) : (uint64_t(1) << m) - 1;
    const uint64_t all_cols = ((uint64_t(1) << (n + 1)) - 1) & ~uint64_t(1);
    uint64_t dirty = all_cols;
    auto drop = [&](uint64_t mask) {
        alive &= ~mask;
        for (; mask; mask &= mask - 1) dirty |= K.span[std::countr_zero(mask)];
    };
    auto sweep = [&](int i) {
        bool any = false;
        dirty &= ~(uint64_t(1) << i);
        while (alive & K.col[i]) {
            DropRule rule;
            uint64_t got = K.column_step(alive, i, rule);
            if (!got) break;
            drop(got);
            dirty &= ~(uint64_t(1) << i);
            if (keep_certificate) push_step(cert, rule, i, i, got);
            any = true;
        }
        return any;
    };
    while (alive) {
        bool changed = false;
        for (int i = 1; i <= n;) {
            uint64_t ahead = dirty & (~uint64_t(0) << i);
            if (!ahead) break;
            i = std::countr_zero(ahead);
            changed |= sweep(i);
            ++i;
        }
        for (int i = n; i >= 1;) {
            uint64_t behind = dirty & ((uint64_t(2) << i) - 1);
            if (!behind) break;
            i = 63 - std::countl_zero(behind);
            changed |= sweep(i);
            --i;
        }
        if (!alive || changed) continue;
        int bi = 0, bi2 = 0;
        uint64_t got = K.first_block(alive, bi, bi2);
        if (!got) return false;
        drop(got);
        if (keep_certificate) push_step(cert, DropRule::Block, bi, bi2, got);
    }

    // verdict
    {
        uint64_t h = K.id_prefix[n];
        for (int j = 0; j < kRows; ++j) {
            h ^= static_cast<uint64_t>(static_cast<uint32_t>(d - K.A[n + 1][j]));
            h *= 1099511628211ull;
        }
        out.table_id = h;
    }
    out.cls = classify_swaps(swaps);
    out.pass = true;
    out.candidate_index = 0;
    if (!out.w) out.w.emplace();
    out.w->D = K.D;
    out.w->c.assign(K.c + 2, K.c + n + 1);
    out.section_count = m;
    out.backtracked = false;
    out.diagnostics.clear();
    out.error.clear();
    using Kd = DegeneracyClass::Kind;
    out.left_weighted_required = out.cls.kind == Kd::Disjoint || out.cls.kind == Kd::Cycle2;
    out.side = SideCondition::NotApplicable;
    if (out.cls.kind == Kd::Cycle1 || out.cls.kind == Kd::Cycle2) {
        secs.clear();
        for (int s = 0; s < m; ++s) secs.push_back({K.sec[s].j, K.sec[s].j2, K.sec[s].start, K.sec[s].end});
        out.side = side_condition(t, out.cls, *out.w, secs);
        if (out.side == SideCondition::Unmet) return false;
    }
    StructuralRecord& rec = out.structural;
    rec = StructuralRecord{};
    rec.swap_count = static_cast<int>(swaps.size());
    rec.swaps_within_rho = rec.swap_count <= brill_noether_number(n, 6, d);
    for (int i = 1; i < n; ++i) rec.max_spanning = std::max(rec.max_spanning, std::popcount(K.col[i] & K.col[i + 1]));
    for (int s = 0; s + 1 < m; ++s)
        if (K.sec[s].j == K.sec[s + 1].j && K.sec[s].j2 == K.sec[s + 1].j2 && !(ever >> K.sec[s].j & 1) &&
            !(ever >> K.sec[s].j2 & 1))
            rec.disconnected_ok = false;
    return true;
}

uint64_t fnv(uint64_t h, int x) {
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(x));
    return h * 1099511628211ull;
}

bool load(Kernel& K, const RawTable& t) {
    if (t.r != 6 || t.g > kMaxCols || t.g < 2 || t.d > 1000) return false;
    bool fresh = !K.primed || K.n != t.g || K.d != t.d;
    K.n = t.g;
    K.d = t.d;
    bool any = false;
    for (int i = 1; i <= t.g + 1; ++i) {
        bool diff = fresh;
        for (int j = 0; j < kRows; ++j) {
            int16_t v = static_cast<int16_t>(t.a[i - 1][j]);
            diff |= K.A[i][j] != v;
            K.A[i][j] = v;
        }
        K.A[i][7] = 0;
        K.changed[i] = diff;
        if (diff) K.mask_c[i] = INT_MIN;
        // the id mixes a^1..a^N; recompute from the first changed column on
        if (i <= t.g && (diff || any)) {
            any = true;
            uint64_t h;
            if (i == 1) {
                h = 1469598103934665603ull;
                h = fnv(h, t.r);
                h = fnv(h, t.d);
                for (int k = 0; k < t.g; ++k) h = fnv(h, 1);
            } else {
                h = K.id_prefix[i - 1];
            }
            for (int j = 0; j < kRows; ++j) h = fnv(h, K.A[i][j]);
            K.id_prefix[i] = h;
        }
    }
    if (fresh)
        for (int i = 0; i <= kMaxCols + 1; ++i) K.mask_c[i] = INT_MIN;
    K.primed = true;
    return true;
}

}  // namespace

bool screen_at_default(const RawTable& t, Verdict& out, bool keep_certificate) {
    thread_local Kernel K;
    return load(K, t) && run_screen(K, t, out, keep_certificate);
}

bool screen_at_default(const VanishingTable& t, Verdict& out, bool keep_certificate) {
    for (int g : t.chain().genera)
        if (g != 1) return false;
    if (t.r() != 6 || t.columns() > kMaxCols) return false;
    std::vector<std::array<int, kMaxEnumRows>> cols(t.columns() + 1);
    for (int i = 1; i <= t.columns(); ++i)
        for (int j = 0; j <= 6; ++j) cols[i - 1][j] = t.a(i, j);
    for (int j = 0; j <= 6; ++j) cols[t.columns()][j] = t.d() - t.b(t.columns(), j);
    RawTable raw{t.columns(), 6, t.d(), cols.data()};
    return screen_at_default(raw, out, keep_certificate);
}

}  // namespace lls
