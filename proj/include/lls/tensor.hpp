#pragma once

#include "lls/multidegree.hpp"
#include "lls/table.hpp"

#include <utility>
#include <vector>

namespace lls {

// Tensor square of a table: rows are unordered pairs (j, j2), j <= j2, in
// row-major order (0,0), (0,1), ..., (0,r), (1,1), ...
class TensorTable {
public:
    explicit TensorTable(const VanishingTable& base);

    int columns() const { return n_; }
    int row_count() const { return static_cast<int>(rows_.size()); }
    std::pair<int, int> row(int k) const { return rows_[k]; }
    int row_index(int j, int j2) const;
    int a(int i, int k) const { return a_[static_cast<size_t>(i - 1) * rows_.size() + k]; }
    int b(int i, int k) const { return b_[static_cast<size_t>(i - 1) * rows_.size() + k]; }
    int degree() const { return d_; }

private:
    int n_;
    int d_;
    int r_;
    std::vector<std::pair<int, int>> rows_;
    std::vector<int> a_;
    std::vector<int> b_;
};

TensorTable build_tensor_table(const VanishingTable& t);

struct AppearanceFlags {
    bool appearing = false;
    bool starting = false;
    bool ending = false;
};

AppearanceFlags appearance_flags(const TensorTable& tt, const TwistVector& w, int i, int row);

struct PotentialSection {
    int j;
    int j2;
    int start;
    int end;

    bool contains(int i) const { return start <= i && i <= end; }
    bool operator==(const PotentialSection&) const = default;
};

std::vector<PotentialSection> extract_potential_sections(const TensorTable& tt, const TwistVector& w);
int spanning_count(const std::vector<PotentialSection>& secs, int i);
int spanning_count(const TensorTable& tt, const TwistVector& w, int i);

}  // namespace lls
