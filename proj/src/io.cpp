#include "lls/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace lls {

Json chain_to_json(const ChainCurve& c) {
    Json j;
    j["genera"] = c.genera;
    if (c.node_weights) {
        Json w = Json::array();
        for (const auto& x : *c.node_weights) w.push_back(x.str());
        j["node_weights"] = w;
    }
    return j;
}

ChainCurve chain_from_json(const Json& j) {
    ChainCurve c;
    c.genera = j.at("genera").get<std::vector<int>>();
    if (j.contains("node_weights")) {
        std::vector<BigInt> w;
        for (const auto& x : j.at("node_weights")) {
            if (x.is_string())
                w.emplace_back(x.get<std::string>());
            else
                w.emplace_back(x.get<long long>());
        }
        c.node_weights = std::move(w);
    }
    c.check();
    return c;
}

Json table_to_json(const VanishingTable& t) {
    Json j;
    j["r"] = t.r();
    j["d"] = t.d();
    if (!t.chain().pure_elliptic()) j["chain"] = chain_to_json(t.chain());
    j["a"] = t.a_columns();
    j["b"] = t.b_columns();
    return j;
}

VanishingTable table_from_json(const Json& j) {
    auto a = j.at("a").get<std::vector<std::vector<int>>>();
    auto b = j.at("b").get<std::vector<std::vector<int>>>();
    ChainCurve chain;
    if (j.contains("chain"))
        chain = chain_from_json(j.at("chain"));
    else
        chain = build_elliptic_chain(static_cast<int>(a.size()));
    return VanishingTable(chain, j.at("r").get<int>(), j.at("d").get<int>(), a, b);
}

VanishingTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return table_from_json(Json::parse(in));
}

Json twist_to_json(const TwistVector& w) { return Json{{"D", w.D}, {"c", w.c}}; }

TwistVector twist_from_json(const Json& j) {
    TwistVector w;
    w.D = j.at("D").get<int>();
    w.c = j.at("c").get<std::vector<int>>();
    return w;
}

Json certificate_to_json(const DropCertificate& cert, const std::vector<PotentialSection>& secs) {
    Json steps = Json::array();
    for (const auto& st : cert.steps) {
        Json dropped = Json::array();
        for (int s : st.dropped) {
            const auto& p = secs.at(s);
            dropped.push_back({{"row", {p.j, p.j2}}, {"interval", {p.start, p.end}}});
        }
        steps.push_back({{"rule", to_string(st.rule)}, {"columns", {st.first, st.last}}, {"dropped", dropped}});
    }
    return Json{{"version", DropCertificate::version}, {"steps", steps}};
}

namespace {

std::string pair_cell(int a, int b) {
    std::ostringstream os;
    os << std::setw(3) << a << ' ' << std::setw(3) << b;
    return os.str();
}

}  // namespace

std::string render_table_ascii(const VanishingTable& t) {
    std::ostringstream os;
    os << "   ";
    for (int i = 1; i <= t.columns(); ++i) os << " | " << std::setw(7) << i;
    os << '\n';
    for (int j = 0; j <= t.r(); ++j) {
        os << std::setw(3) << j;
        for (int i = 1; i <= t.columns(); ++i) os << " | " << pair_cell(t.a(i, j), t.b(i, j));
        os << '\n';
    }
    return os.str();
}

std::string render_table_latex(const VanishingTable& t) {
    std::ostringstream os;
    os << "\\begin{tabular}{";
    for (int i = 1; i <= t.columns(); ++i) os << "|cc";
    os << "|}\n\\hline\n";
    for (int j = 0; j <= t.r(); ++j) {
        for (int i = 1; i <= t.columns(); ++i) {
            if (i > 1) os << " & ";
            os << t.a(i, j) << " & " << t.b(i, j);
        }
        os << " \\\\\n";
    }
    os << "\\hline\n\\end{tabular}\n";
    return os.str();
}

std::string render_twist_header(const TwistVector& w) {
    std::ostringstream os;
    for (int i = 1; i <= w.columns(); ++i) {
        if (i > 1) os << " | ";
        os << pair_cell(w.at(i), w.D - w.at(i + 1));
    }
    os << '\n';
    return os.str();
}

namespace {

int section_at(const TensorTable& tt, const std::vector<PotentialSection>& secs, int row, int i) {
    auto [j, j2] = tt.row(row);
    for (size_t s = 0; s < secs.size(); ++s)
        if (secs[s].j == j && secs[s].j2 == j2 && secs[s].contains(i)) return static_cast<int>(s);
    return -1;
}

}  // namespace

std::string render_tensor_ascii(const TensorTable& tt, const TwistVector& w, const std::vector<PotentialSection>& secs) {
    std::ostringstream os;
    os << "      | " << render_twist_header(w);
    for (int k = 0; k < tt.row_count(); ++k) {
        auto [j, j2] = tt.row(k);
        os << '(' << j << ',' << j2 << ")";
        os << "  ";
        for (int i = 1; i <= tt.columns(); ++i) {
            bool lit = section_at(tt, secs, k, i) >= 0;
            os << (i > 1 ? (lit ? " [" : " |") : (lit ? "[" : "|"));
            os << pair_cell(tt.a(i, k), tt.b(i, k)) << (lit ? ']' : ' ');
        }
        os << '\n';
    }
    return os.str();
}

std::string render_tensor_latex(const TensorTable& tt, const TwistVector& w, const std::vector<PotentialSection>& secs) {
    std::ostringstream os;
    os << "\\begin{tabular}{|c|";
    for (int i = 1; i <= tt.columns(); ++i) os << "cc|";
    os << "}\n\\hline\n $w$";
    for (int i = 1; i <= tt.columns(); ++i) os << " & " << w.at(i) << " & " << w.D - w.at(i + 1);
    os << " \\\\\n\\hline\n";
    for (int k = 0; k < tt.row_count(); ++k) {
        auto [j, j2] = tt.row(k);
        os << "(" << j << "," << j2 << ")";
        for (int i = 1; i <= tt.columns(); ++i) {
            bool lit = section_at(tt, secs, k, i) >= 0;
            const char* pre = lit ? "\\cellcolor{gray!30}" : "";
            os << " & " << pre << tt.a(i, k) << " & " << pre << tt.b(i, k);
        }
        os << " \\\\\n";
    }
    os << "\\hline\n\\end{tabular}\n";
    return os.str();
}

}  // namespace lls
