#include "lls/enumerate.hpp"
#include "lls/io.hpp"
#include "lls/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace lls;

namespace {

struct FamilyFlags {
    int g = 0, r = 0, d = 0, rho_max = -1;
    int min_swaps = 0, max_swaps = -1;
    std::string mode = "exhaustive";
    uint64_t samples = 1000;
    uint64_t seed = 1;
    uint64_t limit = UINT64_MAX;

    void add(CLI::App* c) {
        c->add_option("--g", g, "genus")->required()->check(CLI::PositiveNumber);
        c->add_option("--r", r, "rank")->required()->check(CLI::PositiveNumber);
        c->add_option("--d", d, "degree")->required()->check(CLI::PositiveNumber);
        c->add_option("--rho-max", rho_max, "largest defect total (default: rho)")->check(CLI::NonNegativeNumber);
        c->add_option("--min-swaps", min_swaps, "keep tables with at least this many swaps")->check(CLI::NonNegativeNumber);
        c->add_option("--max-swaps", max_swaps, "keep tables with at most this many swaps")->check(CLI::NonNegativeNumber);
        c->add_option("--mode", mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
        c->add_option("--samples", samples, "sample size in sampled mode")->check(CLI::PositiveNumber);
        c->add_option("--seed", seed, "sampling seed");
        c->add_option("--limit", limit, "stop after this many tables");
    }

    EnumConfig config() const {
        EnumConfig e{g, r, d, rho_max < 0 ? brill_noether_number(g, r, d) : rho_max};
        e.min_swaps = min_swaps;
        if (max_swaps >= 0) e.max_swaps = max_swaps;
        return e;
    }
};

unsigned default_jobs() {
    if (const char* env = std::getenv("LLS_JOBS")) {
        int n = std::atoi(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    return os.str();
}

std::string describe_swaps(const VanishingTable& t) {
    auto swaps = find_swaps(t);
    std::ostringstream os;
    os << swaps.size() << (swaps.size() == 1 ? " swap" : " swaps");
    for (size_t k = 0; k < swaps.size(); ++k) {
        const auto& s = swaps[k];
        os << (k ? "; " : ": ") << "column " << s.column << ", rows (" << s.j << "," << s.j2 << "), "
           << (s.minimal ? "minimal" : "not minimal");
    }
    os << "; class " << to_string(classify_swaps(swaps).kind);
    return os.str();
}

TwistVector parse_twist(const std::string& text, int d) {
    TwistVector w;
    w.D = 2 * d;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) w.c.push_back(std::stoi(item));
    return w;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Refined limit linear series tables on elliptic chains"};
    app.require_subcommand(1);

    std::string table_path, out_path, format, twist_text, checkpoint;
    unsigned jobs = default_jobs();
    bool count_only = false, trace = false, tensor = false;

    FamilyFlags en_flags;
    auto* en = app.add_subcommand("enumerate", "stream the tables of a family as JSONL");
    en_flags.add(en);
    en->add_flag("--count", count_only, "print only the number of tables");
    en->add_option("--out", out_path, "output file");
    en->add_option("--format", format, "jsonl or ascii")->check(CLI::IsMember({"jsonl", "ascii"}));

    FamilyFlags ve_flags;
    auto* ve = app.add_subcommand("verify", "verify one table, or a whole family when no table is given");
    ve->add_option("table", table_path, "table JSON file")->check(CLI::ExistingFile);
    ve->add_option("--g", ve_flags.g, "genus")->check(CLI::PositiveNumber);
    ve->add_option("--r", ve_flags.r, "rank")->check(CLI::PositiveNumber);
    ve->add_option("--d", ve_flags.d, "degree")->check(CLI::PositiveNumber);
    ve->add_option("--rho-max", ve_flags.rho_max, "largest defect total (default: rho)")->check(CLI::NonNegativeNumber);
    ve->add_option("--min-swaps", ve_flags.min_swaps, "keep tables with at least this many swaps");
    ve->add_option("--max-swaps", ve_flags.max_swaps, "keep tables with at most this many swaps");
    ve->add_option("--mode", ve_flags.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    ve->add_option("--samples", ve_flags.samples, "sample size in sampled mode")->check(CLI::PositiveNumber);
    ve->add_option("--seed", ve_flags.seed, "sampling seed");
    ve->add_option("--limit", ve_flags.limit, "stop after this many tables");
    ve->add_option("--jobs", jobs, "worker threads (env LLS_JOBS)")->check(CLI::PositiveNumber);
    ve->add_option("--checkpoint", checkpoint, "checkpoint file; resumes when present");
    ve->add_option("--out", out_path, "JSONL verdict stream");
    ve->add_option("--format", format, "json (report) or jsonl (verdicts to stdout)")
        ->check(CLI::IsMember({"json", "jsonl"}));

    auto* in = app.add_subcommand("inspect", "print lambda, delta, swaps and class");
    in->add_option("table", table_path, "table JSON file")->required()->check(CLI::ExistingFile);

    auto* dm = app.add_subcommand("default-md", "print the default multidegree");
    dm->add_option("table", table_path, "table JSON file")->required()->check(CLI::ExistingFile);
    dm->add_option("--format", format, "ascii or json")->check(CLI::IsMember({"ascii", "json"}));

    auto* dr = app.add_subcommand("drop", "run the section-dropping rules");
    dr->add_option("table", table_path, "table JSON file")->required()->check(CLI::ExistingFile);
    dr->add_flag("--trace", trace, "print each step");
    dr->add_option("--w", twist_text, "c_2,...,c_N (default multidegree when absent)");
    dr->add_option("--format", format, "ascii or json")->check(CLI::IsMember({"ascii", "json"}));

    auto* re = app.add_subcommand("render", "render a table");
    re->add_option("table", table_path, "table JSON file")->required()->check(CLI::ExistingFile);
    re->add_option("--format", format, "ascii or latex")->check(CLI::IsMember({"ascii", "latex"}));
    re->add_flag("--tensor", tensor, "render the tensor square in the default multidegree");
    re->add_option("--w", twist_text, "c_2,...,c_N for --tensor");

    FamilyFlags or_flags;
    auto* orc = app.add_subcommand("oracle", "count a small family by brute force");
    orc->add_option("--g", or_flags.g, "genus")->required()->check(CLI::PositiveNumber);
    orc->add_option("--r", or_flags.r, "rank")->required()->check(CLI::PositiveNumber);
    orc->add_option("--d", or_flags.d, "degree")->required()->check(CLI::PositiveNumber);
    orc->add_option("--rho-max", or_flags.rho_max, "largest defect total (default: rho)")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (en->parsed()) {
            Enumerator e(en_flags.config());
            if (count_only) {
                std::cout << e.count() << '\n';
                return 0;
            }
            Sink sink(out_path);
            auto emit = [&](uint64_t idx, const VanishingTable& t) {
                if (format == "ascii") {
                    sink.get() << "# table " << idx << '\n' << render_table_ascii(t) << '\n';
                } else {
                    Json j = table_to_json(t);
                    j["index"] = idx;
                    sink.get() << j.dump() << '\n';
                }
            };
            if (en_flags.mode == "sampled") {
                auto picks = e.sample_indices(en_flags.samples, en_flags.seed);
                if (picks.size() > en_flags.limit) picks.resize(en_flags.limit);
                e.for_each_of(picks.data(), picks.data() + picks.size(), emit);
            } else {
                e.for_each(0, std::min(e.count(), en_flags.limit), emit);
            }
            return 0;
        }

        if (ve->parsed()) {
            if (!table_path.empty()) {
                VanishingTable t = load_table(table_path);
                VerifyConfig vc;
                vc.replay = true;
                Verdict v = verify_table(t, vc);
                Json j{{"class", to_string(v.cls.kind)}, {"pass", v.pass}, {"candidate", v.candidate_index},
                       {"side", to_string(v.side)}, {"left_weighted", v.left_weighted_required}};
                if (v.w) j["w"] = twist_to_json(*v.w);
                Json blocks = Json::array();
                for (auto [a, b] : v.certificate.blocks()) blocks.push_back({a, b});
                j["blocks"] = blocks;
                if (!v.error.empty()) j["error"] = v.error;
                std::cout << j.dump(2) << '\n';
                return v.pass ? 0 : 1;
            }
            if (!ve_flags.g || !ve_flags.r || !ve_flags.d) {
                std::cerr << "verify: give a table file or --g, --r and --d\n";
                return 2;
            }
            FamilyConfig fc;
            fc.family = ve_flags.config();
            fc.sampled = ve_flags.mode == "sampled";
            fc.samples = ve_flags.samples;
            fc.seed = ve_flags.seed;
            fc.limit = ve_flags.limit;
            fc.jobs = jobs;
            fc.checkpoint = checkpoint;
            fc.verify.keep_certificate = false;
            std::unique_ptr<Sink> sink;
            if (!out_path.empty() || format == "jsonl") {
                sink = std::make_unique<Sink>(out_path);
                fc.jsonl = &sink->get();
            }
            Report rep = verify_family(fc);
            Json j = report_to_json(rep);
            (format == "jsonl" && out_path.empty() ? std::cerr : std::cout) << j.dump(2) << '\n';
            return rep.failures || rep.replay_failures ? 1 : 0;
        }

        if (in->parsed()) {
            VanishingTable t = load_table(table_path);
            validate_table(t);
            LambdaSequence ls = lambda_sequence(t);
            for (int i = 0; i <= t.columns(); ++i) {
                std::cout << "lambda_" << i << " = (" << join(ls.lambda[i]) << ")";
                if (i >= 1) std::cout << "  delta = " << (ls.delta[i] ? std::to_string(*ls.delta[i]) : "none");
                std::cout << '\n';
            }
            RhoAccounting acc = rho_accounting(t);
            std::cout << "rho = " << brill_noether_number(t.chain().genus(), t.r(), t.d()) << ", defect total "
                      << acc.total << '\n';
            std::cout << describe_swaps(t) << '\n';
            return 0;
        }

        if (dm->parsed()) {
            VanishingTable t = load_table(table_path);
            TwistVector w = default_multidegree(t);
            if (format == "json") {
                std::cout << twist_to_json(w).dump() << '\n';
            } else {
                std::cout << "c = " << join(w.c) << '\n' << render_twist_header(w);
            }
            return 0;
        }

        if (dr->parsed()) {
            VanishingTable t = load_table(table_path);
            validate_table(t);
            TwistVector w = twist_text.empty() ? default_multidegree(t) : parse_twist(twist_text, t.d());
            if (!is_unimaginative(w, t.chain(), t.d())) {
                std::cerr << "drop: --w is not an unimaginative multidegree of total degree " << 2 * t.d() << '\n';
                return 2;
            }
            DropContext ctx = make_drop_context(t, w);
            DropResult res = drop_all(ctx);
            if (format == "json") {
                Json j = certificate_to_json(res.certificate, ctx.sections);
                j["success"] = res.success;
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << ctx.sections.size() << " potential sections in w = " << join(w.c) << '\n';
                if (trace)
                    for (const auto& st : res.certificate.steps) {
                        std::cout << "rule " << to_string(st.rule) << " at column";
                        if (st.last != st.first)
                            std::cout << "s " << st.first << "-" << st.last;
                        else
                            std::cout << " " << st.first;
                        std::cout << ":";
                        for (int s : st.dropped) {
                            const auto& sec = ctx.sections[s];
                            std::cout << " (" << sec.j << "," << sec.j2 << ")[" << sec.start << "-" << sec.end << "]";
                        }
                        std::cout << '\n';
                    }
                if (res.success) {
                    std::cout << "all sections dropped in " << res.certificate.steps.size() << " steps"
                              << (res.backtracked ? " (found by search)" : "") << '\n';
                } else {
                    std::cout << "stuck with " << res.remaining.size() << " sections:";
                    for (int s : res.remaining) {
                        const auto& sec = ctx.sections[s];
                        std::cout << " (" << sec.j << "," << sec.j2 << ")[" << sec.start << "-" << sec.end << "]";
                    }
                    std::cout << '\n';
                }
            }
            return res.success ? 0 : 1;
        }

        if (re->parsed()) {
            VanishingTable t = load_table(table_path);
            const bool latex = format == "latex";
            if (tensor) {
                TwistVector w = twist_text.empty() ? default_multidegree(t) : parse_twist(twist_text, t.d());
                TensorTable tt(t);
                auto secs = extract_potential_sections(tt, w);
                std::cout << (latex ? render_tensor_latex(tt, w, secs) : render_tensor_ascii(tt, w, secs));
            } else {
                std::cout << (latex ? render_table_latex(t) : render_table_ascii(t));
            }
            return 0;
        }

        if (orc->parsed()) {
            int rho = or_flags.rho_max < 0 ? brill_noether_number(or_flags.g, or_flags.r, or_flags.d) : or_flags.rho_max;
            uint64_t slow = count_small_oracle(or_flags.g, or_flags.r, or_flags.d, rho);
            uint64_t fast = Enumerator(EnumConfig{or_flags.g, or_flags.r, or_flags.d, rho}).count();
            std::cout << "brute force " << slow << ", enumerator " << fast << (slow == fast ? ", equal" : ", DIFFERENT")
                      << '\n';
            return slow == fast ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
