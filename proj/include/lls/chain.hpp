#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace lls {

using BigInt = boost::multiprecision::cpp_int;

class ChainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Chain of components Z_1..Z_N glued Q_i to P_{i+1}; each component has genus 0 or 1.
struct ChainCurve {
    std::vector<int> genera;
    std::optional<std::vector<BigInt>> node_weights;

    int length() const { return static_cast<int>(genera.size()); }
    int genus() const;
    // g(i) for i = 0..N, g(0) = 0.
    int genus_prefix(int i) const;
    std::vector<int> genus_prefix_table() const;
    bool pure_elliptic() const;
    void check() const;

    bool operator==(const ChainCurve&) const = default;
};

ChainCurve build_elliptic_chain(int g);
ChainCurve chain_from_genera(std::vector<int> genera);

std::vector<BigInt> left_weighted_weights(const ChainCurve& chain, int d);
bool is_left_weighted(const ChainCurve& chain, int d);
ChainCurve with_node_weights(ChainCurve chain, std::vector<BigInt> weights);

}  // namespace lls
