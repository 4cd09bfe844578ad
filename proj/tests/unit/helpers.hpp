#pragma once

#include "lls/enumerate.hpp"
#include "lls/io.hpp"

#include <string>
#include <vector>

inline lls::VanishingTable g22_example() { return lls::load_table(std::string(LLS_DATA_DIR) + "/g22_example.json"); }

inline std::vector<lls::VanishingTable> sample_tables(const lls::EnumConfig& cfg, uint64_t n, uint64_t seed) {
    lls::Enumerator en(cfg);
    auto picks = en.sample_indices(n, seed);
    std::vector<lls::VanishingTable> out;
    en.for_each_of(picks.data(), picks.data() + picks.size(),
                   [&](uint64_t, const lls::VanishingTable& t) { out.push_back(t); });
    return out;
}
