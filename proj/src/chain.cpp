#include "lls/chain.hpp"

#include <string>

namespace lls {

int ChainCurve::genus() const {
    int g = 0;
    for (int x : genera) g += x;
    return g;
}

int ChainCurve::genus_prefix(int i) const {
    if (i < 0 || i > length()) throw ChainError("genus_prefix: index out of range");
    int g = 0;
    for (int k = 0; k < i; ++k) g += genera[k];
    return g;
}

std::vector<int> ChainCurve::genus_prefix_table() const {
    std::vector<int> out(genera.size() + 1, 0);
    for (size_t k = 0; k < genera.size(); ++k) out[k + 1] = out[k] + genera[k];
    return out;
}

bool ChainCurve::pure_elliptic() const {
    for (int x : genera)
        if (x != 1) return false;
    return true;
}

void ChainCurve::check() const {
    if (genera.empty()) throw ChainError("chain has no components");
    for (int x : genera)
        if (x != 0 && x != 1) throw ChainError("component genus must be 0 or 1");
    if (node_weights) {
        if (genera.front() != 1 || genera.back() != 1)
            throw ChainError("weighted chain must start and end with genus-1 components");
        if (static_cast<int>(node_weights->size()) != genus() - 1)
            throw ChainError("node_weights must have one entry per pair of consecutive genus-1 components");
        for (const auto& w : *node_weights)
            if (w <= 0) throw ChainError("node weights must be positive");
    }
}

ChainCurve build_elliptic_chain(int g) {
    if (g < 1) throw ChainError("genus must be positive, got " + std::to_string(g));
    ChainCurve c;
    c.genera.assign(g, 1);
    c.node_weights = std::vector<BigInt>(g - 1, BigInt(1));
    return c;
}

ChainCurve chain_from_genera(std::vector<int> genera) {
    ChainCurve c;
    c.genera = std::move(genera);
    c.check();
    return c;
}

std::vector<BigInt> left_weighted_weights(const ChainCurve& chain, int d) {
    int m = chain.genus();
    if (m < 2) throw ChainError("left-weighted weights need at least two genus-1 components");
    if (d < 1) throw ChainError("degree must be positive");
    std::vector<BigInt> w(m - 1);
    BigInt tail = 0;
    for (int i = m - 2; i >= 0; --i) {
        BigInt need = BigInt(4 * d) * tail;
        w[i] = need < 1 ? BigInt(1) : need;
        tail += w[i];
    }
    return w;
}

bool is_left_weighted(const ChainCurve& chain, int d) {
    if (!chain.node_weights) throw ChainError("chain carries no node weights");
    const auto& w = *chain.node_weights;
    BigInt tail = 0;
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
        if (w[i] < BigInt(4 * d) * tail) return false;
        tail += w[i];
    }
    return true;
}

ChainCurve with_node_weights(ChainCurve chain, std::vector<BigInt> weights) {
    chain.node_weights = std::move(weights);
    chain.check();
    return chain;
}

}  // namespace lls
