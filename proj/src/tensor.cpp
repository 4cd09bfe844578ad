#include "lls/tensor.hpp"

#include <stdexcept>

namespace lls {

TensorTable::TensorTable(const VanishingTable& base) : n_(base.columns()), d_(base.d()), r_(base.r()) {
    for (int j = 0; j <= r_; ++j)
        for (int k = j; k <= r_; ++k) rows_.emplace_back(j, k);
    a_.resize(rows_.size() * n_);
    b_.resize(rows_.size() * n_);
    for (int i = 1; i <= n_; ++i)
        for (size_t k = 0; k < rows_.size(); ++k) {
            auto [j, j2] = rows_[k];
            a_[(i - 1) * rows_.size() + k] = base.a(i, j) + base.a(i, j2);
            b_[(i - 1) * rows_.size() + k] = base.b(i, j) + base.b(i, j2);
        }
}

int TensorTable::row_index(int j, int j2) const {
    if (j > j2) std::swap(j, j2);
    if (j < 0 || j2 > r_) throw std::out_of_range("tensor row out of range");
    // rows before j: sum_{t<j} (r+1-t)
    return j * (r_ + 1) - j * (j - 1) / 2 + (j2 - j);
}

TensorTable build_tensor_table(const VanishingTable& t) { return TensorTable(t); }

AppearanceFlags appearance_flags(const TensorTable& tt, const TwistVector& w, int i, int row) {
    const int D = 2 * tt.degree();
    int a = tt.a(i, row);
    int b = tt.b(i, row);
    int lo = w.at(i);
    int hi = D - w.at(i + 1);
    AppearanceFlags f;
    f.appearing = a >= lo && b >= hi;
    // P_1 and Q_N are not nodes, so a section may always begin in the first
    // column and stop in the last one.
    f.starting = f.appearing && (a > lo || i == 1);
    f.ending = f.appearing && (b > hi || i == tt.columns());
    return f;
}

std::vector<PotentialSection> extract_potential_sections(const TensorTable& tt, const TwistVector& w) {
    std::vector<PotentialSection> out;
    const int n = tt.columns();
    for (int k = 0; k < tt.row_count(); ++k) {
        auto [j, j2] = tt.row(k);
        int i = 1;
        while (i <= n) {
            if (!appearance_flags(tt, w, i, k).appearing) {
                ++i;
                continue;
            }
            int first_start = -1;
            int last_end = -1;
            for (; i <= n; ++i) {
                auto f = appearance_flags(tt, w, i, k);
                if (!f.appearing) break;
                if (f.starting && first_start < 0) first_start = i;
                if (f.ending) last_end = i;
            }
            if (first_start > 0 && last_end >= first_start) out.push_back({j, j2, first_start, last_end});
        }
    }
    return out;
}

int spanning_count(const std::vector<PotentialSection>& secs, int i) {
    int n = 0;
    for (const auto& s : secs)
        if (s.start <= i && s.end >= i + 1) ++n;
    return n;
}

int spanning_count(const TensorTable& tt, const TwistVector& w, int i) {
    return spanning_count(extract_potential_sections(tt, w), i);
}

}  // namespace lls
