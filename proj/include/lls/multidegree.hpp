#pragma once

#include "lls/chain.hpp"
#include "lls/table.hpp"

#include <set>
#include <stdexcept>
#include <vector>

namespace lls {

class MultidegreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// w = (c_2, ..., c_N) with c_1 = 0 and c_{N+1} = D.
struct TwistVector {
    int D = 0;
    std::vector<int> c;

    int columns() const { return static_cast<int>(c.size()) + 1; }
    // c_i for i = 1..N+1
    int at(int i) const {
        if (i <= 1) return 0;
        if (i > columns()) return D;
        return c[i - 2];
    }
    bool bounded() const;
    bool operator==(const TwistVector&) const = default;
    bool operator<(const TwistVector& o) const { return D != o.D ? D < o.D : c < o.c; }
};

std::vector<int> component_degrees(const TwistVector& w, const ChainCurve& chain);
TwistVector twist_from_degrees(const std::vector<int>& degrees);
bool is_unimaginative(const TwistVector& w, const ChainCurve& chain, int d);
// gamma[i] for i = 0..N
std::vector<int> gamma_profile(const TwistVector& w, const ChainCurve& chain);
// Unimaginative vector of total degree 2d with degree 3 exactly on the given (genus-1) columns.
TwistVector unimaginative_from_threes(const ChainCurve& chain, int d, const std::set<int>& threes);
std::set<int> three_columns(const TwistVector& w, const ChainCurve& chain);

// The six columns (in rule order) receiving degree 3 in the default multidegree.
std::vector<int> default_three_positions(const VanishingTable& t, const LambdaSequence& ls);
TwistVector default_multidegree(const VanishingTable& t);
TwistVector default_multidegree(const VanishingTable& t, const LambdaSequence& ls);

std::set<int> twist_vanishing_components(const TwistVector& w, const TwistVector& w2);

// Columns allowed for the k-th degree 3 (k = 1..6) by the flexibility rules.
std::vector<int> flexibility_window(const VanishingTable& t, const LambdaSequence& ls, int k);

std::vector<TwistVector> candidate_multidegrees(const VanishingTable& t);
std::vector<TwistVector> candidate_multidegrees(const VanishingTable& t, const LambdaSequence& ls,
                                                const DegeneracyClass& cls);

}  // namespace lls
