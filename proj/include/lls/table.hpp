#pragma once

#include "lls/chain.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lls {

// The table T' of a refined limit linear series: pairs (a^i_j, b^i_j) for
// columns i = 1..N and rows j = 0..r. Column indices are 1-based throughout
// the public interface.
class VanishingTable {
public:
    VanishingTable() = default;
    VanishingTable(ChainCurve chain, int r, int d);
    VanishingTable(ChainCurve chain, int r, int d, const std::vector<std::vector<int>>& a_cols,
                   const std::vector<std::vector<int>>& b_cols);

    const ChainCurve& chain() const { return chain_; }
    int r() const { return r_; }
    int d() const { return d_; }
    int rows() const { return r_ + 1; }
    int columns() const { return chain_.length(); }

    int a(int i, int j) const { return a_[idx(i, j)]; }
    int b(int i, int j) const { return b_[idx(i, j)]; }
    void set(int i, int j, int a, int b) {
        a_[idx(i, j)] = a;
        b_[idx(i, j)] = b;
    }
    int sum(int i, int j) const { return a(i, j) + b(i, j); }
    int genus_at(int i) const { return chain_.genera[i - 1]; }

    std::vector<std::vector<int>> a_columns() const;
    std::vector<std::vector<int>> b_columns() const;

    bool operator==(const VanishingTable&) const = default;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i - 1) * (r_ + 1) + j; }

    ChainCurve chain_;
    int r_ = 0;
    int d_ = 0;
    std::vector<int> a_;
    std::vector<int> b_;
};

class TableError : public std::invalid_argument {
public:
    enum class Kind {
        Dimension,
        DuplicateVanishing,
        Refinedness,
        SumExceedsD,
        Genericity,
        Genus0Deficit,
        NegativeOrder,
        RowOrder,
        InvalidSeries,
    };
    TableError(Kind kind, int column, int row, std::string what);
    Kind kind() const { return kind_; }
    int column() const { return column_; }
    int row() const { return row_; }

private:
    Kind kind_;
    int column_;
    int row_;
};

const char* to_string(TableError::Kind k);

struct ValidateOptions {
    bool allow_genus0_exceptional = false;
};

void validate_table(const VanishingTable& t, const ValidateOptions& opt = {});

int brill_noether_number(int g, int r, int d);

struct LambdaSequence {
    // lambda[i][j] for i = 0..N
    std::vector<std::vector<int>> lambda;
    // delta[i] for i = 1..N (delta[0] unused); nullopt when no row gains a box
    std::vector<std::optional<int>> delta;
    std::vector<std::vector<int>> bar_lambda;
    // bar_col_count[i][l] = #{j : bar_lambda[i][j] >= l}, l >= 1 (index 0 unused)
    std::vector<std::vector<int>> bar_col_count;

    int bar_count(int i, int l) const {
        const auto& v = bar_col_count[i];
        return l < static_cast<int>(v.size()) ? v[l] : 0;
    }
};

LambdaSequence lambda_sequence(const VanishingTable& t);
VanishingTable table_from_lambda(const ChainCurve& chain, int r, int d,
                                 const std::vector<std::vector<int>>& lambda);
VanishingTable bar_table(const VanishingTable& t);

struct Swap {
    int column;
    int j;
    int j2;
    bool minimal;
    bool operator==(const Swap&) const = default;
};

std::vector<Swap> find_swaps(const VanishingTable& t);
std::set<std::pair<int, int>> exceptional_rows(const VanishingTable& t);
bool is_exceptional(const VanishingTable& t, int i, int j);

struct RhoAccounting {
    int initial_ramification = 0;
    int exceptional_defect = 0;
    int missing_delta = 0;
    int total = 0;
    int final_ramification = 0;
    bool operator==(const RhoAccounting&) const = default;
};

RhoAccounting rho_accounting(const VanishingTable& t);

struct DegeneracyClass {
    enum class Kind { NoSwap, Single, Repeated, Disjoint, Cycle1, Cycle2, Other };
    Kind kind = Kind::NoSwap;
    // Single: rows (j0-1, j0) at column i0.
    // Repeated / Cycle1 / Cycle2: j0 and columns i0 < i1.
    // Disjoint: rows (j0-1, j0) at i0 and (j1-1, j1) at i1, i0 <= i1.
    int j0 = -1;
    int i0 = -1;
    int j1 = -1;
    int i1 = -1;
    bool operator==(const DegeneracyClass&) const = default;
};

const char* to_string(DegeneracyClass::Kind k);
DegeneracyClass classify_degeneracy(const VanishingTable& t);
DegeneracyClass classify_swaps(const std::vector<Swap>& swaps);

}  // namespace lls
