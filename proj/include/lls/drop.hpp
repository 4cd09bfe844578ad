#pragma once

#include "lls/multidegree.hpp"
#include "lls/table.hpp"
#include "lls/tensor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lls {

// Per-column data the elimination rules consult, fixed for one (table, w).
struct DropContext {
    int n = 0;
    int d = 0;
    std::vector<int> genus;      // [i-1]
    std::vector<int> degree;     // [i-1]
    std::vector<int> delta;      // [i-1], -1 when there is no delta_i
    std::vector<std::vector<char>> exceptional;  // [i-1][j]
    std::vector<int> a;          // per section, per column: tensor entries, [s * n + i - 1]
    std::vector<int> b;
    std::vector<PotentialSection> sections;
    std::vector<std::vector<int>> by_column;  // [i-1] -> sections whose support contains i
    // delta-delta row entries per column, or INT_MIN when no delta
    std::vector<int> dd_a;
    std::vector<int> dd_b;

    int sa(int s, int i) const { return a[static_cast<size_t>(s) * n + i - 1]; }
    int sb(int s, int i) const { return b[static_cast<size_t>(s) * n + i - 1]; }
};

DropContext make_drop_context(const VanishingTable& t, const LambdaSequence& ls, const TensorTable& tt,
                              const TwistVector& w, std::vector<PotentialSection> sections);
DropContext make_drop_context(const VanishingTable& t, const TwistVector& w);

enum class DropRule { MinA = 1, MinB = 2, Pair = 3, Block = 4 };
const char* to_string(DropRule r);

struct DropStep {
    DropRule rule;
    int first;  // column (rule i / ii) or block start
    int last;   // equals first except for blocks
    std::vector<int> dropped;  // section indices, ascending
    bool operator==(const DropStep&) const = default;
};

struct DropCertificate {
    static constexpr int version = 1;
    std::vector<DropStep> steps;
    std::vector<std::pair<int, int>> blocks() const;
};

struct DropResult {
    bool success = false;
    bool backtracked = false;
    DropCertificate certificate;
    std::vector<int> remaining;  // stuck state on failure
};

// Helpers over a set of remaining sections (alive[s] != 0).
bool is_semicritical(const DropContext& ctx, const std::vector<char>& alive, int i);
bool is_critical(const DropContext& ctx, const std::vector<char>& alive, int i);

// Enumerates every rule instance applicable to the remaining set, in canonical order.
std::vector<DropStep> applicable_steps(const DropContext& ctx, const std::vector<char>& alive);
bool step_applies(const DropContext& ctx, const std::vector<char>& alive, const DropStep& step);

DropResult drop_all(const DropContext& ctx);
bool replay_certificate(const DropContext& ctx, const DropCertificate& cert);

}  // namespace lls
