#pragma once

#include "lls/table.hpp"

#include <array>
#include <climits>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace lls {

class EnumerationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EnumConfig {
    int g = 0;
    int r = 0;
    int d = 0;
    int rho_max = 0;
    int min_swaps = 0;
    int max_swaps = INT_MAX;
    // Drop tables with exceptional rows that take part in no swap.
    bool exclude_nonswap_exceptional = false;
};

constexpr int kMaxEnumRows = 12;

// A table as the enumerator holds it: a[i][j] = a^{i+1}_j for i = 0..g (row j
// by label), so b^i_j = d - a[i][j]. Valid only during the callback.
struct RawTable {
    int g = 0;
    int r = 0;
    int d = 0;
    const std::array<int, kMaxEnumRows>* a = nullptr;

    VanishingTable materialize() const;
};

// Exhaustive enumeration of refined tables on the pure elliptic chain of genus
// g. Tables are numbered 0..count()-1 in canonical order: initial vanishing
// sequence first, then column by column by the vector of increments a^{i+1}-a^i
// listed over rows in increasing order of a^i (lexicographic, with the
// "no delta" choice after every delta choice). Subtree sizes are memoized, so
// any index can be reached directly.
class Enumerator {
public:
    explicit Enumerator(EnumConfig cfg);
    ~Enumerator();
    Enumerator(Enumerator&&) noexcept;

    const EnumConfig& config() const;
    int rho() const;
    uint64_t count() const;

    VanishingTable unrank(uint64_t index) const;
    // Calls f(index, table) for every index in [begin, end), in order.
    void for_each(uint64_t begin, uint64_t end,
                  const std::function<void(uint64_t, const VanishingTable&)>& f) const;
    void for_each(const std::function<void(uint64_t, const VanishingTable&)>& f) const {
        for_each(0, count(), f);
    }
    void for_each_raw(uint64_t begin, uint64_t end, const std::function<void(uint64_t, const RawTable&)>& f) const;
    void for_each_raw_of(const uint64_t* first, const uint64_t* last,
                         const std::function<void(uint64_t, const RawTable&)>& f) const;
    // Calls f for each of the given sorted, distinct indices, in one pass.
    void for_each_of(const uint64_t* first, const uint64_t* last,
                     const std::function<void(uint64_t, const VanishingTable&)>& f) const;
    // Sorted, distinct, uniformly drawn indices; all indices when n >= count().
    std::vector<uint64_t> sample_indices(uint64_t n, uint64_t seed) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Independent brute force: every column choice of b-values that passes
// validation, no budget pruning until the table is complete.
uint64_t count_small_oracle(int g, int r, int d, int rho_max);

}  // namespace lls
