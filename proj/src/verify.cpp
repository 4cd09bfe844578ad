#include "lls/verify.hpp"

#include "lls/io.hpp"
#include "lls/screen.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace lls {

const char* to_string(SideCondition s) {
    switch (s) {
        case SideCondition::NotApplicable: return "n/a";
        case SideCondition::Cycle1Unique: return "cycle1-unique";
        case SideCondition::Cycle2A: return "cycle2-a";
        case SideCondition::Cycle2B: return "cycle2-b";
        case SideCondition::Cycle2C: return "cycle2-c";
        case SideCondition::Unmet: return "unmet";
    }
    return "?";
}

namespace {

struct Fnv {
    uint64_t h = 1469598103934665603ull;
    void mix(int x) {
        h ^= static_cast<uint64_t>(static_cast<uint32_t>(x));
        h *= 1099511628211ull;
    }
};

}  // namespace

uint64_t table_id(const VanishingTable& t) {
    Fnv f;
    f.mix(t.r());
    f.mix(t.d());
    for (int g : t.chain().genera) f.mix(g);
    for (int i = 1; i <= t.columns(); ++i)
        for (int j = 0; j <= t.r(); ++j) f.mix(t.a(i, j));
    for (int j = 0; j <= t.r(); ++j) f.mix(t.b(t.columns(), j));
    return f.h;
}

uint64_t table_id(const RawTable& t) {
    Fnv f;
    f.mix(t.r);
    f.mix(t.d);
    for (int i = 0; i < t.g; ++i) f.mix(1);
    for (int i = 0; i < t.g; ++i)
        for (int j = 0; j <= t.r; ++j) f.mix(t.a[i][j]);
    for (int j = 0; j <= t.r; ++j) f.mix(t.d - t.a[t.g][j]);
    return f.h;
}

namespace {

// ext(i, j) = a^i_j for i = 1..N+1, with a^{N+1}_j = d - b^N_j.
template <class Ext>
SideCondition side_condition_on(Ext ext, const DegeneracyClass& cls, const TwistVector& w,
                                 const std::vector<PotentialSection>& secs) {
    using K = DegeneracyClass::Kind;
    const int j0 = cls.j0, i0 = cls.i0, i1 = cls.i1;
    if (cls.kind == K::Cycle1) {
        int n = 0;
        bool avoids = true;
        for (const auto& s : secs)
            if (s.j == j0 - 1 && s.j2 == j0) {
                ++n;
                avoids = !s.contains(i0) && !s.contains(i1);
            }
        return n == 1 && avoids ? SideCondition::Cycle1Unique : SideCondition::Unmet;
    }
    if (cls.kind == K::Cycle2) {
        bool left = false, right = false;
        for (const auto& s : secs)
            if (s.j == j0 - 1 && s.j2 == j0 - 1) {
                left |= s.end < i0;
                right |= s.start > i1;
            }
        if (!(left && right)) return SideCondition::Cycle2A;
        int lhs0 = 2 * ext(i0, j0 - 1);
        int lhs1 = 2 * ext(i1 + 1, j0 - 1);
        if (lhs0 == w.at(i0) - 1 && lhs1 == w.at(i1 + 1) + 1) return SideCondition::Cycle2B;
        auto deg = [&](int i) { return w.at(i + 1) - w.at(i); };
        if (lhs0 == w.at(i0) - 2 && lhs1 == w.at(i1 + 1) + 2 && deg(i0) == 2 && deg(i1) == 2)
            return SideCondition::Cycle2C;
        return SideCondition::Unmet;
    }
    return SideCondition::NotApplicable;
}

}  // namespace

SideCondition side_condition(const VanishingTable& t, const DegeneracyClass& cls, const TwistVector& w,
                             const std::vector<PotentialSection>& secs) {
    auto ext = [&](int i, int j) { return i <= t.columns() ? t.a(i, j) : t.d() - t.b(t.columns(), j); };
    return side_condition_on(ext, cls, w, secs);
}

SideCondition side_condition(const RawTable& t, const DegeneracyClass& cls, const TwistVector& w,
                             const std::vector<PotentialSection>& secs) {
    return side_condition_on([&](int i, int j) { return t.a[i - 1][j]; }, cls, w, secs);
}

namespace {

StructuralRecord structural_record(const VanishingTable& t, const std::vector<PotentialSection>& secs, int swaps) {
    StructuralRecord rec;
    rec.swap_count = swaps;
    rec.swaps_within_rho = swaps <= brill_noether_number(t.chain().genus(), t.r(), t.d());
    for (int i = 1; i < t.columns(); ++i) rec.max_spanning = std::max(rec.max_spanning, spanning_count(secs, i));
    std::vector<char> ever(t.rows(), 0);
    for (int i = 1; i <= t.columns(); ++i)
        for (int j = 0; j <= t.r(); ++j)
            if (is_exceptional(t, i, j)) ever[j] = 1;
    for (size_t s = 0; s + 1 < secs.size(); ++s)
        if (secs[s].j == secs[s + 1].j && secs[s].j2 == secs[s + 1].j2 && !ever[secs[s].j] && !ever[secs[s].j2])
            rec.disconnected_ok = false;
    return rec;
}

bool side_ok(SideCondition s) { return s != SideCondition::Unmet; }

}  // namespace

Verdict verify_table(const VanishingTable& t, const VerifyConfig& cfg) {
    Verdict v;
    v.table_id = table_id(t);
    LambdaSequence ls;
    std::vector<Swap> swaps;
    try {
        validate_table(t);
        ls = lambda_sequence(t);
        swaps = find_swaps(t);
        v.cls = classify_degeneracy(t);
    } catch (const std::exception& e) {
        v.error = e.what();
        v.cls.kind = DegeneracyClass::Kind::Other;
        return v;
    }
    using K = DegeneracyClass::Kind;
    v.left_weighted_required = v.cls.kind == K::Disjoint || v.cls.kind == K::Cycle2;

    TensorTable tt(t);
    auto attempt = [&](const TwistVector& w, int index, bool structural) {
        auto secs = extract_potential_sections(tt, w);
        if (structural) v.structural = structural_record(t, secs, static_cast<int>(swaps.size()));
        DropContext ctx = make_drop_context(t, ls, tt, w, secs);
        DropResult res = drop_all(ctx);
        SideCondition side = side_condition(t, v.cls, w, secs);
        bool ok = res.success && side_ok(side);
        if (ok) {
            v.pass = true;
            v.candidate_index = index;
            v.w = w;
            v.side = side;
            v.section_count = static_cast<int>(secs.size());
            v.backtracked = res.backtracked;
            if (cfg.replay && !replay_certificate(ctx, res.certificate)) v.error = "certificate replay failed";
            if (cfg.keep_certificate) v.certificate = std::move(res.certificate);
        } else {
            v.diagnostics.push_back({w, res.success, side, static_cast<int>(res.remaining.size())});
        }
        return ok;
    };

    try {
        TwistVector w0 = default_multidegree(t, ls);
        if (attempt(w0, 0, true)) {
            v.diagnostics.clear();
            return v;
        }
        auto cands = candidate_multidegrees(t, ls, v.cls);
        for (size_t k = 1; k < cands.size(); ++k)
            if (attempt(cands[k], static_cast<int>(k), false)) {
                v.diagnostics.clear();
                return v;
            }
    } catch (const MultidegreeError& e) {
        v.error = e.what();
    }
    return v;
}

bool same_verdict(const Verdict& x, const Verdict& y) {
    auto same_structure = [](const StructuralRecord& p, const StructuralRecord& q) {
        return p.max_spanning == q.max_spanning && p.swap_count == q.swap_count &&
               p.swaps_within_rho == q.swaps_within_rho && p.disconnected_ok == q.disconnected_ok;
    };
    auto same_steps = [](const DropCertificate& p, const DropCertificate& q) { return p.steps == q.steps; };
    return x.table_id == y.table_id && x.cls == y.cls && x.pass == y.pass && x.candidate_index == y.candidate_index &&
           x.w == y.w && same_steps(x.certificate, y.certificate) && x.section_count == y.section_count &&
           x.side == y.side && x.left_weighted_required == y.left_weighted_required &&
           x.backtracked == y.backtracked && same_structure(x.structural, y.structural) &&
           x.diagnostics.size() == y.diagnostics.size() && x.error == y.error;
}

void Report::add(uint64_t index, const Verdict& v) {
    ++examined;
    auto& tally = classes[to_string(v.cls.kind)];
    ++tally.tables;
    if (v.pass) {
        ++tally.passed;
        if (v.candidate_index == 0) ++tally.at_default;
        if (v.side != SideCondition::NotApplicable) ++tally.side[to_string(v.side)];
    } else {
        ++failures;
        if (failure_list.size() < 1000) failure_list.emplace_back(index, v.table_id);
    }
    if (!v.error.empty() && v.pass) ++replay_failures;
    if (v.backtracked) ++backtracked;
    if (!v.structural.ok()) {
        ++structural_violations;
        if (structural_list.size() < 1000) structural_list.emplace_back(index, v.table_id);
    }
    auto mix = [&](uint64_t x) {
        stream_hash ^= x;
        stream_hash *= 1099511628211ull;
    };
    mix(index);
    mix(v.table_id);
    mix(v.pass ? 1 : 0);
    mix(static_cast<uint64_t>(v.candidate_index + 1));
}

void Report::merge(const Report& o) {
    examined += o.examined;
    failures += o.failures;
    structural_violations += o.structural_violations;
    backtracked += o.backtracked;
    replay_failures += o.replay_failures;
    cross_checked += o.cross_checked;
    cross_check_mismatches += o.cross_check_mismatches;
    for (const auto& [k, t] : o.classes) {
        auto& m = classes[k];
        m.tables += t.tables;
        m.passed += t.passed;
        m.at_default += t.at_default;
        for (const auto& [s, c] : t.side) m.side[s] += c;
    }
    for (const auto& f : o.failure_list)
        if (failure_list.size() < 1000) failure_list.push_back(f);
    for (const auto& f : o.structural_list)
        if (structural_list.size() < 1000) structural_list.push_back(f);
    for (const auto& f : o.mismatch_list)
        if (mismatch_list.size() < 1000) mismatch_list.push_back(f);
    stream_hash ^= o.stream_hash;
    stream_hash *= 1099511628211ull;
}

namespace {

Json verdict_line(uint64_t index, const Verdict& v) {
    std::ostringstream id;
    id << std::hex << v.table_id;
    Json j{{"index", index}, {"id", id.str()}, {"class", to_string(v.cls.kind)}, {"pass", v.pass}};
    j["candidate"] = v.candidate_index;
    if (v.w) j["c"] = v.w->c;
    j["side"] = to_string(v.side);
    j["left_weighted"] = v.left_weighted_required;
    Json blocks = Json::array();
    for (auto [a, b] : v.certificate.blocks()) blocks.push_back({a, b});
    j["blocks"] = blocks;
    if (!v.error.empty()) j["error"] = v.error;
    return j;
}

Json report_json(const Report& r) {
    Json classes = Json::object();
    for (const auto& [k, t] : r.classes)
        classes[k] = {{"tables", t.tables}, {"passed", t.passed}, {"at_default", t.at_default}, {"side", t.side}};
    return Json{{"stratum", r.stratum},
                {"seed", r.seed},
                {"population", r.population},
                {"examined", r.examined},
                {"failures", r.failures},
                {"structural_violations", r.structural_violations},
                {"backtracked", r.backtracked},
                {"replay_failures", r.replay_failures},
                {"cross_checked", r.cross_checked},
                {"cross_check_mismatches", r.cross_check_mismatches},
                {"classes", classes},
                {"failure_list", r.failure_list},
                {"structural_list", r.structural_list},
                {"mismatch_list", r.mismatch_list},
                {"cursor", r.cursor},
                {"stream_hash", r.stream_hash},
                {"elapsed_seconds", r.elapsed_seconds}};
}

Report report_from_json(const Json& j) {
    Report r;
    r.stratum = j.at("stratum").get<std::string>();
    r.seed = j.at("seed").get<uint64_t>();
    r.population = j.at("population").get<uint64_t>();
    r.examined = j.at("examined").get<uint64_t>();
    r.failures = j.at("failures").get<uint64_t>();
    r.structural_violations = j.at("structural_violations").get<uint64_t>();
    r.backtracked = j.at("backtracked").get<uint64_t>();
    r.replay_failures = j.at("replay_failures").get<uint64_t>();
    r.cross_checked = j.at("cross_checked").get<uint64_t>();
    r.cross_check_mismatches = j.at("cross_check_mismatches").get<uint64_t>();
    for (const auto& [k, t] : j.at("classes").items()) {
        auto& c = r.classes[k];
        c.tables = t.at("tables").get<uint64_t>();
        c.passed = t.at("passed").get<uint64_t>();
        c.at_default = t.at("at_default").get<uint64_t>();
        c.side = t.at("side").get<std::map<std::string, uint64_t>>();
    }
    r.failure_list = j.at("failure_list").get<std::vector<std::pair<uint64_t, uint64_t>>>();
    r.structural_list = j.at("structural_list").get<std::vector<std::pair<uint64_t, uint64_t>>>();
    r.mismatch_list = j.at("mismatch_list").get<std::vector<std::pair<uint64_t, uint64_t>>>();
    r.cursor = j.at("cursor").get<uint64_t>();
    r.stream_hash = j.at("stream_hash").get<uint64_t>();
    r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
    return r;
}

}  // namespace

Json report_to_json(const Report& r) { return report_json(r); }

Report verify_family(const FamilyConfig& cfg) {
    Enumerator en(cfg.family);
    std::vector<uint64_t> picks;
    Report rep;
    rep.stratum = cfg.sampled ? "sampled" : "exhaustive";
    rep.seed = cfg.seed;
    rep.population = en.count();
    if (cfg.sampled) picks = en.sample_indices(cfg.samples, cfg.seed);
    const uint64_t positions = std::min<uint64_t>(cfg.sampled ? picks.size() : en.count(), cfg.limit);

    if (!cfg.checkpoint.empty() && std::filesystem::exists(cfg.checkpoint)) {
        std::ifstream in(cfg.checkpoint);
        Json j = Json::parse(in);
        Report saved = report_from_json(j.at("report"));
        if (saved.stratum != rep.stratum || saved.seed != rep.seed || saved.population != rep.population)
            throw std::runtime_error("checkpoint does not match this run (cursor " + std::to_string(saved.cursor) + ")");
        rep = saved;
    }
    auto save = [&]() {
        if (cfg.checkpoint.empty()) return;
        std::string tmp = cfg.checkpoint + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) throw std::runtime_error("cannot write checkpoint at cursor " + std::to_string(rep.cursor));
            out << Json{{"family", {cfg.family.g, cfg.family.r, cfg.family.d, cfg.family.rho_max,
                                    cfg.family.min_swaps, cfg.family.max_swaps}},
                        {"report", report_json(rep)}}
                       .dump()
                << '\n';
        }
        std::filesystem::rename(tmp, cfg.checkpoint);
    };

    struct ChunkResult {
        Report rep;
        std::string lines;
    };
    auto run_chunk = [&](uint64_t p0, uint64_t p1) {
        ChunkResult out;
        std::ostringstream os;
        Verdict v;
        const bool keep = cfg.verify.keep_certificate || cfg.jsonl;
        VerifyConfig full = cfg.verify;
        full.keep_certificate = keep;
        auto one = [&](uint64_t idx, const RawTable& raw) {
            bool screened = cfg.screen && screen_at_default(raw, v, keep);
            if (!screened) v = verify_table(raw.materialize(), full);
            if (cfg.cross_check_every && idx % cfg.cross_check_every == 0) {
                VanishingTable t = raw.materialize();
                VerifyConfig strict = full;
                strict.keep_certificate = true;
                strict.replay = true;
                Verdict ref = verify_table(t, strict);
                ++out.rep.cross_checked;
                if (!ref.error.empty() && ref.pass) ++out.rep.replay_failures;
                ref.error.clear();
                Verdict mine = v;
                if (!keep) mine.certificate = ref.certificate;
                if (!same_verdict(mine, ref)) {
                    ++out.rep.cross_check_mismatches;
                    if (out.rep.mismatch_list.size() < 1000) out.rep.mismatch_list.emplace_back(idx, v.table_id);
                }
            }
            out.rep.add(idx, v);
            if (cfg.jsonl) os << verdict_line(idx, v).dump() << '\n';
        };
        if (cfg.sampled) {
            en.for_each_raw_of(picks.data() + p0, picks.data() + p1, one);
        } else {
            en.for_each_raw(p0, p1, one);
        }
        out.lines = os.str();
        return out;
    };

    const unsigned jobs = std::max(1u, cfg.jobs);
    const uint64_t chunk = std::max<uint64_t>(1, cfg.chunk);
    uint64_t next = rep.cursor;
    std::mutex mu;
    std::condition_variable cv;
    std::map<uint64_t, ChunkResult> done;
    std::string error;

    auto worker = [&]() {
        for (;;) {
            uint64_t p0;
            {
                std::lock_guard<std::mutex> lk(mu);
                if (next >= positions || !error.empty()) return;
                p0 = next;
                next = std::min(positions, next + chunk);
            }
            uint64_t p1 = std::min(positions, p0 + chunk);
            try {
                ChunkResult r = run_chunk(p0, p1);
                std::lock_guard<std::mutex> lk(mu);
                done.emplace(p0, std::move(r));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(mu);
                error = e.what();
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    auto clock = std::chrono::steady_clock::now();
    // single owner of the sink and the checkpoint
    while (rep.cursor < positions) {
        ChunkResult r;
        {
            std::unique_lock<std::mutex> lk(mu);
            cv.wait(lk, [&] { return done.count(rep.cursor) || !error.empty(); });
            if (!error.empty()) break;
            r = std::move(done[rep.cursor]);
            done.erase(rep.cursor);
        }
        uint64_t p1 = std::min(positions, rep.cursor + chunk);
        if (cfg.jsonl) *cfg.jsonl << r.lines;
        rep.merge(r.rep);
        rep.cursor = p1;
        auto now = std::chrono::steady_clock::now();
        rep.elapsed_seconds += std::chrono::duration<double>(now - clock).count();
        clock = now;
        save();
        if (cfg.progress) cfg.progress(rep);
    }
    for (auto& t : pool) t.join();
    if (!error.empty()) throw std::runtime_error(error + " (cursor " + std::to_string(rep.cursor) + ")");
    return rep;
}

}  // namespace lls
