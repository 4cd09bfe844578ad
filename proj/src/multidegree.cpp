#include "lls/multidegree.hpp"

#include <algorithm>
#include <string>

namespace lls {

bool TwistVector::bounded() const {
    for (int x : c)
        if (x < 0 || x > D) return false;
    return true;
}

std::vector<int> component_degrees(const TwistVector& w, const ChainCurve& chain) {
    if (w.columns() != chain.length()) throw MultidegreeError("twist vector length does not match chain");
    if (!w.bounded()) throw MultidegreeError("twist vector is not bounded");
    std::vector<int> deg(chain.length());
    for (int i = 1; i <= chain.length(); ++i) deg[i - 1] = w.at(i + 1) - w.at(i);
    return deg;
}

TwistVector twist_from_degrees(const std::vector<int>& degrees) {
    if (degrees.empty()) throw MultidegreeError("no components");
    TwistVector w;
    int run = 0;
    for (size_t i = 0; i + 1 < degrees.size(); ++i) {
        run += degrees[i];
        w.c.push_back(run);
    }
    w.D = run + degrees.back();
    return w;
}

bool is_unimaginative(const TwistVector& w, const ChainCurve& chain, int d) {
    if (w.D != 2 * d || w.columns() != chain.length() || !w.bounded()) return false;
    for (int i = 1; i <= chain.length(); ++i) {
        int deg = w.at(i + 1) - w.at(i);
        if (chain.genera[i - 1] == 0 ? deg != 0 : (deg != 2 && deg != 3)) return false;
    }
    return true;
}

std::vector<int> gamma_profile(const TwistVector& w, const ChainCurve& chain) {
    auto deg = component_degrees(w, chain);
    std::vector<int> gamma(deg.size() + 1, 0);
    for (size_t i = 0; i < deg.size(); ++i) {
        int g = chain.genera[i];
        if ((g == 0 && deg[i] != 0) || (g == 1 && deg[i] != 2 && deg[i] != 3))
            throw MultidegreeError("gamma profile needs an unimaginative multidegree");
        gamma[i + 1] = gamma[i] + (deg[i] == 3 ? 1 : 0);
    }
    return gamma;
}

TwistVector unimaginative_from_threes(const ChainCurve& chain, int d, const std::set<int>& threes) {
    std::vector<int> deg(chain.length());
    for (int i = 1; i <= chain.length(); ++i) deg[i - 1] = chain.genera[i - 1] == 1 ? 2 : 0;
    for (int i : threes) {
        if (i < 1 || i > chain.length() || chain.genera[i - 1] != 1)
            throw MultidegreeError("degree 3 must sit on a genus-1 column, got " + std::to_string(i));
        deg[i - 1] = 3;
    }
    TwistVector w = twist_from_degrees(deg);
    if (w.D != 2 * d)
        throw MultidegreeError("degree-3 placement gives total " + std::to_string(w.D) + ", expected " +
                               std::to_string(2 * d));
    return w;
}

std::set<int> three_columns(const TwistVector& w, const ChainCurve& chain) {
    auto deg = component_degrees(w, chain);
    std::set<int> out;
    for (size_t i = 0; i < deg.size(); ++i)
        if (deg[i] == 3) out.insert(static_cast<int>(i) + 1);
    return out;
}

namespace {

int pair_count(const LambdaSequence& ls, int i, int l1, int l2) {
    return ls.bar_count(i, l1) + ls.bar_count(i, l2);
}

int first_with(const LambdaSequence& ls, int n, int l1, int l2, int value) {
    for (int i = 1; i <= n; ++i)
        if (pair_count(ls, i, l1, l2) == value) return i;
    return -1;
}

int last_with(const LambdaSequence& ls, int n, int l1, int l2, int value) {
    for (int i = n; i >= 1; --i)
        if (pair_count(ls, i, l1, l2) == value) return i;
    return -1;
}

bool column_has_exceptional(const VanishingTable& t, int i) {
    for (int j = 0; j <= t.r(); ++j)
        if (is_exceptional(t, i, j)) return true;
    return false;
}

}  // namespace

std::vector<int> default_three_positions(const VanishingTable& t, const LambdaSequence& ls) {
    if (t.r() != 6) throw MultidegreeError("default multidegree is defined for r = 6");
    const int n = t.columns();
    int p2 = first_with(ls, n, 1, 2, 5);
    int p3 = first_with(ls, n, 1, 3, 7);
    int q4 = last_with(ls, n, 1, 3, 7);
    int q5 = last_with(ls, n, 2, 3, 9);
    if (p2 < 0 || p3 < 0 || q4 < 0 || q5 < 0) throw MultidegreeError("default multidegree threshold never attained");
    std::vector<int> pos = {1, p2, p3, q4 + 1, q5 + 1, n};
    for (int p : pos)
        if (p > n) throw MultidegreeError("default multidegree places a 3 past the last column");
    return pos;
}

TwistVector default_multidegree(const VanishingTable& t) { return default_multidegree(t, lambda_sequence(t)); }

TwistVector default_multidegree(const VanishingTable& t, const LambdaSequence& ls) {
    auto pos = default_three_positions(t, ls);
    std::set<int> threes(pos.begin(), pos.end());
    if (threes.size() != pos.size()) throw MultidegreeError("default multidegree rules select a column twice");
    return unimaginative_from_threes(t.chain(), t.d(), threes);
}

std::set<int> twist_vanishing_components(const TwistVector& w, const TwistVector& w2) {
    if (w.c.size() != w2.c.size()) throw MultidegreeError("twist vectors have different lengths");
    if (w.D != w2.D) throw MultidegreeError("twist vectors have different total degree");
    const int n = w.columns();
    std::vector<long long> tail(n + 1, 0);
    for (int i = n - 1; i >= 1; --i) tail[i] = tail[i + 1] + (w2.at(i + 1) - w.at(i + 1));
    long long lo = *std::min_element(tail.begin() + 1, tail.end());
    std::set<int> out;
    for (int i = 1; i <= n; ++i)
        if (tail[i] > lo) out.insert(i);
    return out;
}

std::vector<int> flexibility_window(const VanishingTable& t, const LambdaSequence& ls, int k) {
    const int n = t.columns();
    std::vector<int> out;
    auto s12 = [&](int i) { return pair_count(ls, i, 1, 2); };
    auto s23 = [&](int i) { return pair_count(ls, i, 2, 3); };
    auto range = [&](int lo, int hi) {
        if (lo < 1 || hi < 1) return;
        for (int i = lo; i <= std::min(hi, n); ++i) out.push_back(i);
    };
    switch (k) {
        case 1:
            for (int i = 1; i <= n; ++i)
                if (i == 1 || (!column_has_exceptional(t, i) && s12(i) <= 4 && ls.bar_lambda[i][0] <= 2))
                    out.push_back(i);
            break;
        case 2:
            for (int i = 1; i <= n; ++i)
                if (s12(i) == 5 && s12(i - 1) == 4) out.push_back(i);
            break;
        case 3: range(first_with(ls, n, 1, 2, 6), first_with(ls, n, 1, 3, 7)); break;
        case 4: {
            int lo = last_with(ls, n, 1, 3, 7);
            int hi = last_with(ls, n, 2, 3, 8);
            if (lo > 0 && hi > 0) range(lo + 1, hi + 1);
            break;
        }
        case 5:
            for (int i = 1; i <= n; ++i)
                if (s23(i) == 10 && s23(i - 1) == 9) out.push_back(i);
            break;
        case 6:
            for (int i = 1; i <= n; ++i)
                if (i == n || (!column_has_exceptional(t, i) && s23(i - 1) >= 10 && ls.bar_lambda[i - 1][6] >= 1))
                    out.push_back(i);
            break;
        default: throw MultidegreeError("flexibility rule index must be 1..6");
    }
    std::vector<int> kept;
    for (int i : out)
        if (t.genus_at(i) == 1) kept.push_back(i);
    return kept;
}

std::vector<TwistVector> candidate_multidegrees(const VanishingTable& t) {
    return candidate_multidegrees(t, lambda_sequence(t), classify_degeneracy(t));
}

std::vector<TwistVector> candidate_multidegrees(const VanishingTable& t, const LambdaSequence& ls,
                                                const DegeneracyClass& cls) {
    const ChainCurve& chain = t.chain();
    std::vector<TwistVector> out;
    std::set<TwistVector> seen;
    auto push = [&](const std::set<int>& threes) {
        if (threes.size() != 6) return;
        TwistVector w = unimaginative_from_threes(chain, t.d(), threes);
        if (seen.insert(w).second) out.push_back(std::move(w));
    };

    auto pos = default_three_positions(t, ls);
    std::set<int> base(pos.begin(), pos.end());
    if (base.size() != 6) throw MultidegreeError("default multidegree rules select a column twice");
    push(base);

    struct Move {
        int target;
        int rule;
    };
    std::vector<Move> moves;
    for (int k = 1; k <= 6; ++k)
        for (int x : flexibility_window(t, ls, k))
            if (!base.count(x)) moves.push_back({x, k});
    std::stable_sort(moves.begin(), moves.end(), [](const Move& l, const Move& r) { return l.target < r.target; });
    for (const auto& m : moves) {
        std::set<int> s = base;
        s.erase(pos[m.rule - 1]);
        s.insert(m.target);
        push(s);
    }

    std::vector<int> targets;
    if (cls.i0 > 0) targets.push_back(cls.i0);
    if (cls.i1 > 0 && cls.i1 != cls.i0) targets.push_back(cls.i1);
    for (int x : targets) {
        if (base.count(x) || t.genus_at(x) != 1) continue;
        auto right = base.upper_bound(x);
        if (right != base.begin()) {
            int from = *std::prev(right);
            std::set<int> s = base;
            s.erase(from);
            s.insert(x);
            push(s);
        }
        if (right != base.end()) {
            std::set<int> s = base;
            s.erase(*right);
            s.insert(x);
            push(s);
        }
    }
    return out;
}

}  // namespace lls
