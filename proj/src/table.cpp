#include "lls/table.hpp"

#include <algorithm>
#include <sstream>

namespace lls {

VanishingTable::VanishingTable(ChainCurve chain, int r, int d)
    : chain_(std::move(chain)), r_(r), d_(d) {
    if (r < 0 || d < 0) throw TableError(TableError::Kind::Dimension, 0, 0, "r and d must be nonnegative");
    size_t n = static_cast<size_t>(chain_.length()) * (r + 1);
    a_.assign(n, 0);
    b_.assign(n, 0);
}

VanishingTable::VanishingTable(ChainCurve chain, int r, int d, const std::vector<std::vector<int>>& a_cols,
                               const std::vector<std::vector<int>>& b_cols)
    : VanishingTable(std::move(chain), r, d) {
    int n = columns();
    if (static_cast<int>(a_cols.size()) != n || static_cast<int>(b_cols.size()) != n)
        throw TableError(TableError::Kind::Dimension, 0, 0, "column count does not match chain length");
    for (int i = 1; i <= n; ++i) {
        if (static_cast<int>(a_cols[i - 1].size()) != rows() || static_cast<int>(b_cols[i - 1].size()) != rows())
            throw TableError(TableError::Kind::Dimension, i, 0, "column has wrong number of rows");
        for (int j = 0; j <= r; ++j) set(i, j, a_cols[i - 1][j], b_cols[i - 1][j]);
    }
}

std::vector<std::vector<int>> VanishingTable::a_columns() const {
    std::vector<std::vector<int>> out(columns(), std::vector<int>(rows()));
    for (int i = 1; i <= columns(); ++i)
        for (int j = 0; j <= r_; ++j) out[i - 1][j] = a(i, j);
    return out;
}

std::vector<std::vector<int>> VanishingTable::b_columns() const {
    std::vector<std::vector<int>> out(columns(), std::vector<int>(rows()));
    for (int i = 1; i <= columns(); ++i)
        for (int j = 0; j <= r_; ++j) out[i - 1][j] = b(i, j);
    return out;
}

namespace {

std::string located(const char* what, int i, int j) {
    std::ostringstream os;
    os << what << " at column " << i << ", row " << j;
    return os.str();
}

}  // namespace

TableError::TableError(Kind kind, int column, int row, std::string what)
    : std::invalid_argument(std::move(what)), kind_(kind), column_(column), row_(row) {}

const char* to_string(TableError::Kind k) {
    switch (k) {
        case TableError::Kind::Dimension: return "Dimension";
        case TableError::Kind::DuplicateVanishing: return "DuplicateVanishing";
        case TableError::Kind::Refinedness: return "RefinednessViolation";
        case TableError::Kind::SumExceedsD: return "SumExceedsD";
        case TableError::Kind::Genericity: return "GenericityViolation";
        case TableError::Kind::Genus0Deficit: return "Genus0Deficit";
        case TableError::Kind::NegativeOrder: return "NegativeOrder";
        case TableError::Kind::RowOrder: return "RowOrder";
        case TableError::Kind::InvalidSeries: return "InvalidSeries";
    }
    return "?";
}

void validate_table(const VanishingTable& t, const ValidateOptions& opt) {
    using K = TableError::Kind;
    const int n = t.columns();
    const int r = t.r();
    const int d = t.d();
    if (n < 1) throw TableError(K::Dimension, 0, 0, "table has no columns");

    for (int i = 1; i <= n; ++i) {
        for (int j = 0; j <= r; ++j)
            for (int k = j + 1; k <= r; ++k) {
                if (t.a(i, j) == t.a(i, k))
                    throw TableError(K::DuplicateVanishing, i, k, located("repeated a-value", i, k));
                if (t.b(i, j) == t.b(i, k))
                    throw TableError(K::DuplicateVanishing, i, k, located("repeated b-value", i, k));
            }
    }
    for (int i = 1; i < n; ++i)
        for (int j = 0; j <= r; ++j)
            if (t.a(i + 1, j) != d - t.b(i, j))
                throw TableError(K::Refinedness, i + 1, j, located("a^{i+1}_j != d - b^i_j", i + 1, j));
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= r; ++j)
            if (t.sum(i, j) > d) throw TableError(K::SumExceedsD, i, j, located("a + b exceeds d", i, j));
    for (int i = 1; i <= n; ++i) {
        int full = 0;
        for (int j = 0; j <= r; ++j) {
            if (t.sum(i, j) == d) ++full;
            if (t.genus_at(i) == 0 && t.sum(i, j) < d && !opt.allow_genus0_exceptional)
                throw TableError(K::Genus0Deficit, i, j, located("genus-0 row sums below d", i, j));
        }
        if (t.genus_at(i) == 1 && full > 1)
            throw TableError(K::Genericity, i, 0, located("more than one row sums to d", i, 0));
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= r; ++j)
            if (t.a(i, j) < 0 || t.b(i, j) < 0)
                throw TableError(K::NegativeOrder, i, j, located("negative vanishing order", i, j));
    for (int j = 1; j <= r; ++j)
        if (t.a(1, j) <= t.a(1, j - 1))
            throw TableError(K::RowOrder, 1, j, located("first column a-values must increase", 1, j));
}

int brill_noether_number(int g, int r, int d) { return g - (r + 1) * (g + r - d); }

namespace {

// a^{i+1}_j for i = 0..N, with a^{N+1}_j = d - b^N_j.
int next_a(const VanishingTable& t, int i, int j) {
    return i < t.columns() ? t.a(i + 1, j) : t.d() - t.b(t.columns(), j);
}

}  // namespace

LambdaSequence lambda_sequence(const VanishingTable& t) {
    const int n = t.columns();
    const int rows = t.rows();
    const auto gp = t.chain().genus_prefix_table();
    LambdaSequence s;
    s.lambda.assign(n + 1, std::vector<int>(rows));
    s.bar_lambda.assign(n + 1, std::vector<int>(rows));
    s.bar_col_count.resize(n + 1);
    s.delta.assign(n + 1, std::nullopt);
    std::vector<int> sorted(rows);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < rows; ++j) {
            sorted[j] = next_a(t, i, j);
            s.lambda[i][j] = gp[i] + j - sorted[j];
        }
        std::sort(sorted.begin(), sorted.end());
        int top = 0;
        for (int j = 0; j < rows; ++j) {
            s.bar_lambda[i][j] = gp[i] + j - sorted[j];
            top = std::max(top, s.bar_lambda[i][j]);
        }
        auto& cc = s.bar_col_count[i];
        cc.assign(top + 1, 0);
        for (int l = 1; l <= top; ++l)
            for (int j = 0; j < rows; ++j)
                if (s.bar_lambda[i][j] >= l) ++cc[l];
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < rows; ++j)
            if (s.lambda[i][j] > s.lambda[i - 1][j]) {
                s.delta[i] = j;
                break;
            }
    return s;
}

VanishingTable table_from_lambda(const ChainCurve& chain, int r, int d,
                                 const std::vector<std::vector<int>>& lambda) {
    const int n = chain.length();
    if (static_cast<int>(lambda.size()) != n + 1)
        throw TableError(TableError::Kind::Dimension, 0, 0, "lambda needs N+1 rows");
    const auto gp = chain.genus_prefix_table();
    VanishingTable t(chain, r, d);
    auto a_at = [&](int i, int j) { return gp[i - 1] + j - lambda[i - 1][j]; };
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= r; ++j) t.set(i, j, a_at(i, j), d - a_at(i + 1, j));
    return t;
}

VanishingTable bar_table(const VanishingTable& t) {
    VanishingTable out = t;
    std::vector<int> av(t.rows()), bv(t.rows());
    for (int i = 1; i <= t.columns(); ++i) {
        for (int j = 0; j < t.rows(); ++j) {
            av[j] = t.a(i, j);
            bv[j] = t.b(i, j);
        }
        std::sort(av.begin(), av.end());
        std::sort(bv.begin(), bv.end(), std::greater<>());
        for (int j = 0; j < t.rows(); ++j) out.set(i, j, av[j], bv[j]);
    }
    return out;
}

std::vector<Swap> find_swaps(const VanishingTable& t) {
    std::vector<Swap> out;
    const int d = t.d();
    for (int i = 1; i <= t.columns(); ++i)
        for (int j = 0; j <= t.r(); ++j)
            for (int k = j + 1; k <= t.r(); ++k) {
                int da = t.a(i, k) - t.a(i, j);
                int db = t.b(i, k) - t.b(i, j);
                if ((da > 0 && db > 0) || (da < 0 && db < 0)) {
                    bool minimal = std::abs(da) == 1 && std::abs(db) == 1 &&
                                   (t.sum(i, j) == d || t.sum(i, k) == d);
                    out.push_back({i, j, k, minimal});
                }
            }
    return out;
}

bool is_exceptional(const VanishingTable& t, int i, int j) {
    int need = t.genus_at(i) == 1 ? t.d() - 1 : t.d();
    return t.sum(i, j) < need;
}

std::set<std::pair<int, int>> exceptional_rows(const VanishingTable& t) {
    std::set<std::pair<int, int>> out;
    for (int i = 1; i <= t.columns(); ++i)
        for (int j = 0; j <= t.r(); ++j)
            if (is_exceptional(t, i, j)) out.emplace(i, j);
    return out;
}

RhoAccounting rho_accounting(const VanishingTable& t) {
    RhoAccounting acc;
    const int d = t.d();
    const int r = t.r();
    std::vector<int> v(t.rows());
    for (int j = 0; j <= r; ++j) v[j] = t.a(1, j);
    std::sort(v.begin(), v.end());
    for (int j = 0; j <= r; ++j) acc.initial_ramification += v[j] - j;
    for (int i = 1; i <= t.columns(); ++i) {
        bool full = false;
        for (int j = 0; j <= r; ++j) {
            int s = t.sum(i, j);
            if (s == d) full = true;
            if (t.genus_at(i) == 1)
                acc.exceptional_defect += std::max(0, d - 1 - s);
            else
                acc.exceptional_defect += d - s;
        }
        if (t.genus_at(i) == 1 && !full) ++acc.missing_delta;
    }
    for (int j = 0; j <= r; ++j) v[j] = t.b(t.columns(), j);
    std::sort(v.begin(), v.end());
    for (int j = 0; j <= r; ++j) acc.final_ramification += v[j] - j;
    acc.total = acc.initial_ramification + acc.exceptional_defect + acc.missing_delta;
    int rho = brill_noether_number(t.chain().genus(), r, d);
    if (acc.total > rho)
        throw TableError(TableError::Kind::InvalidSeries, 0, 0,
                         "defect total " + std::to_string(acc.total) + " exceeds rho " + std::to_string(rho));
    return acc;
}

const char* to_string(DegeneracyClass::Kind k) {
    using K = DegeneracyClass::Kind;
    switch (k) {
        case K::NoSwap: return "NoSwap";
        case K::Single: return "Single";
        case K::Repeated: return "Repeated";
        case K::Disjoint: return "Disjoint";
        case K::Cycle1: return "Cycle1";
        case K::Cycle2: return "Cycle2";
        case K::Other: return "Other";
    }
    return "?";
}

DegeneracyClass classify_swaps(const std::vector<Swap>& swaps) {
    using K = DegeneracyClass::Kind;
    DegeneracyClass c;
    if (swaps.empty()) return c;
    c.kind = K::Other;
    if (swaps.size() == 1) {
        const Swap& s = swaps[0];
        if (s.j2 == s.j + 1) {
            c.kind = K::Single;
            c.j0 = s.j2;
            c.i0 = s.column;
        }
        return c;
    }
    if (swaps.size() != 2) return c;
    Swap s = swaps[0], u = swaps[1];
    if (u.column < s.column) std::swap(s, u);
    if (s.column == u.column || !s.minimal || !u.minimal) return c;
    c.i0 = s.column;
    c.i1 = u.column;
    bool s_adj = s.j2 == s.j + 1;
    bool u_adj = u.j2 == u.j + 1;
    if (s.j == u.j && s.j2 == u.j2) {
        if (!s_adj) return c;
        c.kind = K::Repeated;
        c.j0 = s.j2;
    } else if (s.j != u.j && s.j != u.j2 && s.j2 != u.j && s.j2 != u.j2) {
        if (!s_adj || !u_adj) return c;
        c.kind = K::Disjoint;
        c.j0 = s.j2;
        c.j1 = u.j2;
    } else if (s_adj && u.j == s.j - 1 && u.j2 == s.j2) {
        c.kind = K::Cycle1;
        c.j0 = s.j;
    } else if (s_adj && u.j == s.j && u.j2 == s.j + 2) {
        c.kind = K::Cycle2;
        c.j0 = s.j2;
    } else {
        c.i0 = c.i1 = -1;
    }
    return c;
}

DegeneracyClass classify_degeneracy(const VanishingTable& t) {
    auto swaps = find_swaps(t);
    DegeneracyClass c = classify_swaps(swaps);
    if (swaps.size() == 2 && c.kind != DegeneracyClass::Kind::Other) {
        for (const auto& s : swaps)
            if (t.genus_at(s.column) != 1) return {DegeneracyClass::Kind::Other};
    }
    return c;
}

}  // namespace lls
