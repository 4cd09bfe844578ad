#pragma once

#include "lls/drop.hpp"
#include "lls/io.hpp"
#include "lls/enumerate.hpp"
#include "lls/multidegree.hpp"
#include "lls/table.hpp"
#include "lls/tensor.hpp"

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lls {

enum class SideCondition { NotApplicable, Cycle1Unique, Cycle2A, Cycle2B, Cycle2C, Unmet };
const char* to_string(SideCondition s);

// Facts checked in the default multidegree for every table.
struct StructuralRecord {
    int max_spanning = 0;            // max over i of rows spanning columns i, i+1
    int swap_count = 0;
    bool swaps_within_rho = true;
    bool disconnected_ok = true;     // every row with >1 section involves an exceptional row
    bool ok() const { return max_spanning <= 3 && swaps_within_rho && disconnected_ok; }
};

struct CandidateDiagnostic {
    TwistVector w;
    bool dropped_all = false;
    SideCondition side = SideCondition::NotApplicable;
    int remaining = 0;
};

struct Verdict {
    uint64_t table_id = 0;
    DegeneracyClass cls;
    bool pass = false;
    int candidate_index = -1;  // position in candidate_multidegrees
    std::optional<TwistVector> w;
    DropCertificate certificate;
    int section_count = 0;
    SideCondition side = SideCondition::NotApplicable;
    bool left_weighted_required = false;
    bool backtracked = false;
    StructuralRecord structural;
    std::vector<CandidateDiagnostic> diagnostics;  // filled on failure
    std::string error;                             // malformed table
};

struct VerifyConfig {
    bool keep_certificate = true;
    bool replay = false;  // replay every passing certificate
};

uint64_t table_id(const VanishingTable& t);
uint64_t table_id(const RawTable& t);  // same value as for the materialized table
SideCondition side_condition(const VanishingTable& t, const DegeneracyClass& cls, const TwistVector& w,
                             const std::vector<PotentialSection>& secs);
SideCondition side_condition(const RawTable& t, const DegeneracyClass& cls, const TwistVector& w,
                             const std::vector<PotentialSection>& secs);
Verdict verify_table(const VanishingTable& t, const VerifyConfig& cfg = {});
// Field-by-field equality of two verdicts (diagnostics compared by count).
bool same_verdict(const Verdict& x, const Verdict& y);

struct ClassTally {
    uint64_t tables = 0;
    uint64_t passed = 0;
    uint64_t at_default = 0;
    std::map<std::string, uint64_t> side;  // side condition name -> count
};

struct Report {
    std::string stratum;  // "exhaustive" or "sampled"
    uint64_t seed = 0;
    uint64_t population = 0;
    uint64_t examined = 0;
    uint64_t failures = 0;
    uint64_t structural_violations = 0;
    uint64_t backtracked = 0;
    uint64_t replay_failures = 0;
    uint64_t cross_checked = 0;           // tables re-verified by the reference path
    uint64_t cross_check_mismatches = 0;  // fast and reference verdicts disagree
    std::map<std::string, ClassTally> classes;
    std::vector<std::pair<uint64_t, uint64_t>> failure_list;  // (index, table id)
    std::vector<std::pair<uint64_t, uint64_t>> structural_list;
    std::vector<std::pair<uint64_t, uint64_t>> mismatch_list;
    uint64_t cursor = 0;  // next index (exhaustive) or next sample position
    uint64_t stream_hash = 1469598103934665603ull;  // ordered; depends on the chunk size
    double elapsed_seconds = 0;  // wall time summed over resumed runs

    void add(uint64_t index, const Verdict& v);
    void merge(const Report& other);
};

struct FamilyConfig {
    EnumConfig family;
    bool sampled = false;
    uint64_t samples = 0;
    uint64_t seed = 0;
    unsigned jobs = 1;
    uint64_t chunk = 1 << 14;
    uint64_t limit = UINT64_MAX;  // stop after this many tables (0-based positions)
    std::string checkpoint;       // path; resume when it exists
    VerifyConfig verify;
    bool screen = true;               // try the fast default-multidegree check first
    uint64_t cross_check_every = 0;   // re-verify indices divisible by this with the reference path
    std::ostream* jsonl = nullptr;  // verdict stream, in canonical order
    std::function<void(const Report&)> progress;
};

Report verify_family(const FamilyConfig& cfg);
nlohmann::json report_to_json(const Report& r);

}  // namespace lls
