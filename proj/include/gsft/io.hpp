#pragma once

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsft/action.hpp"
#include "gsft/bigint.hpp"
#include "gsft/error.hpp"
#include "gsft/group_table.hpp"
#include "gsft/matrix.hpp"
#include "gsft/perm_group.hpp"
#include "gsft/polynomial.hpp"
#include "gsft/quotient.hpp"
#include "gsft/reduce.hpp"
#include "gsft/repshift.hpp"
#include "gsft/smith.hpp"
#include "gsft/sse.hpp"

namespace gsft::io {

using json = nlohmann::json;

inline constexpr const char* version = "0.1.0";
inline constexpr const char* job_format = "gsft-job/1";
inline constexpr const char* report_format = "gsft-report/1";

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"reduce",  "invariants",  "classify",  "witness",
                                                "burnside", "quotient-counts", "verify-sse", "transport",
                                                "split",   "repshift",    "tqft",      "bundle-counts"};
    return names;
}

inline const std::set<std::string>& param_names() {
    static const std::set<std::string> names{"max_n", "m", "cap", "limit"};
    return names;
}

struct GroupSpec {
    /// "builtin", "table" or "generators"
    std::string kind;
    std::string builtin;
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> table;
    std::size_t degree = 0;
    std::vector<Permutation> perms;

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct HnnSpec {
    std::optional<std::string> preset;
    HnnData data;

    friend bool operator==(const HnnSpec&, const HnnSpec&) = default;
};

struct JobSpec {
    std::string command;
    std::optional<IntMatrix> matrix;
    /// Generators acting on the matrix states (0-based images).
    std::optional<std::vector<Permutation>> action;
    /// Images of the same generators on the target of a certificate.
    std::optional<std::vector<Permutation>> target_action;
    std::vector<ElementarySse> certificates;
    std::optional<SplitData> split;
    std::optional<HnnSpec> hnn;
    std::optional<GroupSpec> group;
    std::map<std::string, std::uint64_t> params;

    std::uint64_t param(const std::string& name, std::uint64_t fallback) const {
        auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    }
};

inline bool same_matrix(const IntMatrix& a, const IntMatrix& b) { return a == b && a.labels() == b.labels(); }

inline bool operator==(const JobSpec& x, const JobSpec& y) {
    auto same_sse = [](const ElementarySse& p, const ElementarySse& q) {
        return p.a == q.a && p.b == q.b && p.r == q.r && p.s == q.s;
    };
    if (x.command != y.command || x.action != y.action || x.target_action != y.target_action || x.hnn != y.hnn ||
        x.group != y.group || x.params != y.params)
        return false;
    if (x.matrix.has_value() != y.matrix.has_value() || (x.matrix && !same_matrix(*x.matrix, *y.matrix))) return false;
    if (x.certificates.size() != y.certificates.size()) return false;
    for (std::size_t k = 0; k < x.certificates.size(); ++k)
        if (!same_sse(x.certificates[k], y.certificates[k])) return false;
    if (x.split.has_value() != y.split.has_value()) return false;
    if (x.split && (x.split->direction != y.split->direction || x.split->blocks != y.split->blocks)) return false;
    return true;
}

// ---- JSON encoding helpers ----

/// Integers are JSON numbers when they fit in 64 bits, decimal strings otherwise.
inline json int_to_json(const BigInt& v) {
    if (v >= BigInt(std::numeric_limits<std::int64_t>::min()) && v <= BigInt(std::numeric_limits<std::int64_t>::max()))
        return json(v.convert_to<std::int64_t>());
    return json(v.str());
}

inline json ints_to_json(const std::vector<BigInt>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(int_to_json(v));
    return a;
}

inline json matrix_to_json(const RectMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json labeled_matrix(const IntMatrix& m) {
    json labels = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) labels.push_back(m.label(i));
    return {{"matrix", matrix_to_json(m)}, {"labels", labels}};
}

inline json poly_to_json(const IntPolynomial& p) {
    return {{"coefficients", ints_to_json(p.coefficients())}, {"text", p.to_string()}};
}

inline json group_invariants_to_json(const AbelianGroupInvariants& g) {
    return {{"torsion", ints_to_json(g.torsion)}, {"free_rank", g.free_rank}, {"group", g.to_string()}};
}

inline json states_to_json(const std::vector<std::size_t>& s) {
    json a = json::array();
    for (auto v : s) a.push_back(v + 1);
    return a;
}

inline json perms_to_json(const std::vector<Permutation>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(to_cycle_string(p));
    return a;
}

inline json words_to_json(const std::vector<GroupWord>& ws) {
    json a = json::array();
    for (const auto& w : ws) a.push_back(w.to_string());
    return a;
}

inline json certificate_to_json(const ElementarySse& e) {
    return {{"a", matrix_to_json(e.a)}, {"b", matrix_to_json(e.b)}, {"r", matrix_to_json(e.r)}, {"s", matrix_to_json(e.s)}};
}

// ---- JSON decoding helpers; every error names its path ----

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, "missing \"" + key + "\"");
    return *it;
}

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(path, "unknown key \"" + it.key() + "\"");
}

inline BigInt parse_int(const json& v, const std::string& path) {
    if (v.is_number_integer()) return v.is_number_unsigned() ? BigInt(v.get<std::uint64_t>()) : BigInt(v.get<std::int64_t>());
    if (v.is_string()) {
        try {
            return parse_bigint(v.get<std::string>());
        } catch (const InputError& e) {
            fail(path, e.what());
        }
    }
    fail(path, "expected an integer");
}

inline std::uint64_t parse_count(const json& v, const std::string& path) {
    BigInt b = parse_int(v, path);
    if (b < 0 || b > BigInt(std::numeric_limits<std::uint64_t>::max())) fail(path, "expected a nonnegative 64-bit integer");
    return b.convert_to<std::uint64_t>();
}

inline std::string parse_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

inline const json& parse_array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
}

inline RectMatrix parse_rect(const json& v, const std::string& path) {
    parse_array(v, path);
    std::vector<std::vector<BigInt>> rows;
    for (std::size_t r = 0; r < v.size(); ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        parse_array(v[r], rp);
        if (r > 0 && v[r].size() != rows.front().size())
            fail(rp, "row has " + std::to_string(v[r].size()) + " entries, expected " + std::to_string(rows.front().size()));
        rows.emplace_back();
        for (std::size_t c = 0; c < v[r].size(); ++c) {
            const std::string ep = rp + "[" + std::to_string(c) + "]";
            BigInt x = parse_int(v[r][c], ep);
            if (x < 0) fail(ep, "negative entry " + x.str());
            rows.back().push_back(std::move(x));
        }
    }
    return RectMatrix(rows);
}

inline IntMatrix parse_square(const json& v, const std::string& path) {
    RectMatrix m = parse_rect(v, path);
    if (m.rows() != m.cols()) fail(path, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected square");
    return IntMatrix(m);
}

inline std::vector<Permutation> parse_perms(const json& v, std::size_t degree, const std::string& path) {
    parse_array(v, path);
    std::vector<Permutation> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string p = path + "[" + std::to_string(k) + "]";
        try {
            out.push_back(parse_cycles(parse_string(v[k], p), degree));
        } catch (const InputError& e) {
            if (std::string(e.what()).rfind(p, 0) == 0) throw;
            fail(p, e.what());
        }
    }
    return out;
}

inline std::vector<GroupWord> parse_words(const json& v, const std::string& path) {
    parse_array(v, path);
    std::vector<GroupWord> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string p = path + "[" + std::to_string(k) + "]";
        try {
            out.push_back(GroupWord::parse(parse_string(v[k], p)));
        } catch (const InputError& e) {
            if (std::string(e.what()).rfind(p, 0) == 0) throw;
            fail(p, e.what());
        }
    }
    return out;
}

inline ElementarySse parse_certificate(const json& v, const std::string& path) {
    reject_unknown(v, {"a", "b", "r", "s"}, path);
    return {parse_square(require(v, "a", path), path + ".a"), parse_square(require(v, "b", path), path + ".b"),
            parse_rect(require(v, "r", path), path + ".r"), parse_rect(require(v, "s", path), path + ".s")};
}

inline GroupSpec parse_group(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    reject_unknown(v, {"builtin", "table", "generators"}, path);
    if (v.size() != 1) fail(path, "give exactly one of \"builtin\", \"table\", \"generators\"");
    GroupSpec g;
    if (v.contains("builtin")) {
        g.kind = "builtin";
        g.builtin = parse_string(v["builtin"], path + ".builtin");
    } else if (v.contains("table")) {
        g.kind = "table";
        const auto& t = v["table"];
        const std::string tp = path + ".table";
        reject_unknown(t, {"names", "rows"}, tp);
        const auto& names = parse_array(require(t, "names", tp), tp + ".names");
        for (std::size_t k = 0; k < names.size(); ++k) g.names.push_back(parse_string(names[k], tp + ".names[" + std::to_string(k) + "]"));
        const auto& rows = parse_array(require(t, "rows", tp), tp + ".rows");
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::string rp = tp + ".rows[" + std::to_string(r) + "]";
            g.table.emplace_back();
            for (std::size_t c = 0; c < parse_array(rows[r], rp).size(); ++c)
                g.table.back().push_back(parse_count(rows[r][c], rp + "[" + std::to_string(c) + "]"));
        }
    } else {
        g.kind = "generators";
        const auto& gen = v["generators"];
        const std::string gp = path + ".generators";
        reject_unknown(gen, {"degree", "perms"}, gp);
        g.degree = parse_count(require(gen, "degree", gp), gp + ".degree");
        g.perms = parse_perms(require(gen, "perms", gp), g.degree, gp + ".perms");
    }
    return g;
}

inline json group_to_json(const GroupSpec& g) {
    if (g.kind == "builtin") return {{"builtin", g.builtin}};
    if (g.kind == "table") return {{"table", {{"names", g.names}, {"rows", g.table}}}};
    return {{"generators", {{"degree", g.degree}, {"perms", perms_to_json(g.perms)}}}};
}

inline FiniteGroupTable build_group(const GroupSpec& g, std::size_t limit) {
    if (g.kind == "builtin") return FiniteGroupTable::builtin(g.builtin, limit);
    if (g.kind == "table") return FiniteGroupTable(g.names, g.table);
    return FiniteGroupTable::from_perm_group(PermGroup::from_generators(g.degree, g.perms, limit));
}

inline HnnSpec parse_hnn(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    HnnSpec h;
    if (v.contains("preset")) {
        reject_unknown(v, {"preset"}, path);
        h.preset = parse_string(v["preset"], path + ".preset");
        try {
            h.data = fibered_preset(*h.preset).data;
        } catch (const InputError& e) {
            fail(path + ".preset", e.what());
        }
        return h;
    }
    reject_unknown(v, {"b_gens", "b_relators", "u_gens", "u_relators", "v_gens", "v_relators", "amalgamating_images"}, path);
    h.data.b_gens = parse_count(require(v, "b_gens", path), path + ".b_gens");
    auto words = [&](const char* key, bool required) {
        if (!required && !v.contains(key)) return std::vector<GroupWord>{};
        return parse_words(require(v, key, path), path + "." + key);
    };
    h.data.b_relators = words("b_relators", false);
    h.data.u_gens = words("u_gens", true);
    h.data.u_relators = words("u_relators", false);
    h.data.v_gens = words("v_gens", false);
    h.data.v_relators = words("v_relators", false);
    h.data.amalgamating_images = words("amalgamating_images", true);
    try {
        h.data.validate();
    } catch (const InputError& e) {
        fail(path, e.what());
    }
    return h;
}

inline json hnn_to_json(const HnnSpec& h) {
    if (h.preset) return {{"preset", *h.preset}};
    return {{"b_gens", h.data.b_gens},
            {"b_relators", words_to_json(h.data.b_relators)},
            {"u_gens", words_to_json(h.data.u_gens)},
            {"u_relators", words_to_json(h.data.u_relators)},
            {"v_gens", words_to_json(h.data.v_gens)},
            {"v_relators", words_to_json(h.data.v_relators)},
            {"amalgamating_images", words_to_json(h.data.amalgamating_images)}};
}

inline SplitData parse_split(const json& v, std::size_t dim, const std::string& path) {
    reject_unknown(v, {"direction", "blocks"}, path);
    SplitData d;
    std::string dir = parse_string(require(v, "direction", path), path + ".direction");
    if (dir == "out")
        d.direction = SplitDirection::out;
    else if (dir == "in")
        d.direction = SplitDirection::in;
    else
        fail(path + ".direction", "expected \"out\" or \"in\"");
    const auto& blocks = parse_array(require(v, "blocks", path), path + ".blocks");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::string sp = path + ".blocks[" + std::to_string(i) + "]";
        d.blocks.emplace_back();
        for (std::size_t p = 0; p < parse_array(blocks[i], sp).size(); ++p) {
            const std::string bp = sp + "[" + std::to_string(p) + "]";
            d.blocks.back().emplace_back();
            for (std::size_t k = 0; k < parse_array(blocks[i][p], bp).size(); ++k) {
                auto s = parse_count(blocks[i][p][k], bp + "[" + std::to_string(k) + "]");
                if (s < 1 || s > dim) fail(bp + "[" + std::to_string(k) + "]", "state " + std::to_string(s) + " outside 1.." + std::to_string(dim));
                d.blocks.back().back().push_back(s - 1);
            }
        }
    }
    return d;
}

inline json split_to_json(const SplitData& d) {
    json blocks = json::array();
    for (const auto& partition : d.blocks) {
        json ps = json::array();
        for (const auto& b : partition) ps.push_back(states_to_json(b));
        blocks.push_back(ps);
    }
    return {{"direction", d.direction == SplitDirection::out ? "out" : "in"}, {"blocks", blocks}};
}

/// Which inputs each command needs.
struct Needs {
    bool matrix = false, action = false, certificate = false, target_action = false, split = false, hnn = false;
};

inline Needs needs(const std::string& command) {
    Needs n;
    if (command == "reduce" || command == "classify" || command == "witness" || command == "burnside" ||
        command == "quotient-counts") {
        n.matrix = n.action = true;
    } else if (command == "invariants") {
        n.matrix = true;
    } else if (command == "verify-sse") {
        n.certificate = true;
    } else if (command == "transport") {
        n.certificate = n.action = n.target_action = true;
    } else if (command == "split") {
        n.matrix = n.split = true;
    } else {
        n.hnn = true;
    }
    return n;
}

inline JobSpec parse_job_json(const json& doc) {
    if (!doc.is_object()) fail("$", "expected a JSON object");
    if (doc.empty() || !doc.contains("command")) fail("$", "missing command");
    reject_unknown(doc, {"format", "command", "input", "params"}, "$");
    if (doc.contains("format") && parse_string(doc["format"], "$.format") != job_format)
        fail("$.format", "unsupported format \"" + doc["format"].get<std::string>() + "\" (expected \"" + job_format + "\")");
    JobSpec j;
    j.command = parse_string(doc["command"], "$.command");
    if (std::find(commands().begin(), commands().end(), j.command) == commands().end())
        fail("$.command", "unknown command \"" + j.command + "\"");
    const Needs need = needs(j.command);
    const json empty = json::object();
    const json& in = doc.contains("input") ? doc["input"] : empty;
    if (!in.is_object()) fail("$.input", "expected an object");
    reject_unknown(in, {"matrix", "labels", "action", "target_action", "certificate", "certificates", "split", "hnn", "group"},
                   "$.input");

    if (need.matrix || in.contains("matrix")) {
        j.matrix = parse_square(require(in, "matrix", "$.input"), "$.input.matrix");
        if (in.contains("labels")) {
            const auto& ls = parse_array(in["labels"], "$.input.labels");
            std::vector<std::string> labels;
            for (std::size_t k = 0; k < ls.size(); ++k) labels.push_back(parse_string(ls[k], "$.input.labels[" + std::to_string(k) + "]"));
            try {
                j.matrix->set_labels(labels);
            } catch (const InputError& e) {
                fail("$.input.labels", e.what());
            }
        }
    } else if (in.contains("labels")) {
        fail("$.input.labels", "labels given without a matrix");
    }
    if (in.contains("certificate") && in.contains("certificates")) fail("$.input", "give \"certificate\" or \"certificates\", not both");
    if (in.contains("certificate")) j.certificates.push_back(parse_certificate(in["certificate"], "$.input.certificate"));
    if (in.contains("certificates")) {
        const auto& cs = parse_array(in["certificates"], "$.input.certificates");
        for (std::size_t k = 0; k < cs.size(); ++k) j.certificates.push_back(parse_certificate(cs[k], "$.input.certificates[" + std::to_string(k) + "]"));
    }
    if (need.certificate && j.certificates.empty()) fail("$.input", "missing \"certificate\"");
    if (j.command == "transport" && j.certificates.size() != 1) fail("$.input", "transport takes exactly one certificate");

    auto action_degree = [&]() -> std::size_t {
        if (j.command == "transport") return j.certificates.front().a.dim();
        return j.matrix ? j.matrix->dim() : 0;
    };
    auto parse_action = [&](const char* key, std::size_t degree) {
        const std::string path = std::string("$.input.") + key;
        const auto& a = in[key];
        reject_unknown(a, {"generators"}, path);
        return parse_perms(require(a, "generators", path), degree, path + ".generators");
    };
    if (in.contains("action")) j.action = parse_action("action", action_degree());
    else if (need.action) fail("$.input", "missing \"action\"");
    if (in.contains("target_action")) {
        if (j.certificates.empty()) fail("$.input.target_action", "target action needs a certificate");
        j.target_action = parse_action("target_action", j.certificates.front().b.dim());
    } else if (need.target_action) {
        fail("$.input", "missing \"target_action\"");
    }
    if (in.contains("split")) j.split = parse_split(in["split"], j.matrix ? j.matrix->dim() : 0, "$.input.split");
    else if (need.split) fail("$.input", "missing \"split\"");
    if (in.contains("hnn")) j.hnn = parse_hnn(in["hnn"], "$.input.hnn");
    else if (need.hnn) fail("$.input", "missing \"hnn\"");
    if (in.contains("group")) j.group = parse_group(in["group"], "$.input.group");
    else if (need.hnn) fail("$.input", "missing \"group\"");

    if (doc.contains("params")) {
        const auto& ps = doc["params"];
        if (!ps.is_object()) fail("$.params", "expected an object");
        reject_unknown(ps, param_names(), "$.params");
        for (auto it = ps.begin(); it != ps.end(); ++it) {
            auto v = parse_count(it.value(), "$.params." + it.key());
            if (v == 0) fail("$.params." + it.key(), "must be positive");
            j.params[it.key()] = v;
        }
    }
    return j;
}

inline JobSpec parse_job(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        if (std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
            fail("$", "missing command");
        fail("$", std::string("malformed JSON: ") + e.what());
    }
    return parse_job_json(doc);
}

/// Canonical JSON form of a job; parse_job_json(job_to_json(j)) == j.
inline json job_to_json(const JobSpec& j) {
    json in = json::object();
    if (j.matrix) {
        in["matrix"] = matrix_to_json(*j.matrix);
        if (j.matrix->has_labels()) in["labels"] = j.matrix->labels();
    }
    if (j.action) in["action"] = {{"generators", perms_to_json(*j.action)}};
    if (j.target_action) in["target_action"] = {{"generators", perms_to_json(*j.target_action)}};
    if (!j.certificates.empty()) {
        json cs = json::array();
        for (const auto& c : j.certificates) cs.push_back(certificate_to_json(c));
        in["certificates"] = cs;
    }
    if (j.split) in["split"] = split_to_json(*j.split);
    if (j.hnn) in["hnn"] = hnn_to_json(*j.hnn);
    if (j.group) in["group"] = group_to_json(*j.group);
    json doc = {{"format", job_format}, {"command", j.command}, {"input", in}};
    if (!j.params.empty()) doc["params"] = j.params;
    return doc;
}

struct Report {
    std::string command;
    json result;
    json echo;
};

inline json report_to_json(const Report& r) {
    return {{"format", report_format}, {"version", version}, {"command", r.command}, {"result", r.result}, {"input", r.echo}};
}

// ---- command dispatch ----

namespace detail {

inline PermutationAction make_action(const IntMatrix& m, const std::vector<Permutation>& gens, std::size_t limit) {
    return validate_action(SftPresentation(m), PermGroup::from_generators(m.dim(), gens, limit));
}

inline json orbits_to_json(const std::vector<std::vector<std::size_t>>& orbits) {
    json a = json::array();
    for (const auto& o : orbits) a.push_back(states_to_json(o));
    return a;
}

inline json reduced_to_json(const ReducedShift& r) {
    json j = labeled_matrix(r.matrix);
    j["selector_u"] = matrix_to_json(r.selector_u);
    j["selector_v"] = matrix_to_json(r.selector_v);
    return j;
}

inline json invariants_of(const IntMatrix& m, std::size_t max_n) {
    json traces = json::array();
    for (std::size_t n = 1; n <= max_n; ++n) traces.push_back(int_to_json(trace_of_power(m, n)));
    return {{"matrix", matrix_to_json(m)},
            {"char_poly", poly_to_json(char_poly_reciprocal(m))},
            {"bowen_franks", group_invariants_to_json(bowen_franks(m))},
            {"traces", traces}};
}

inline json count_report_to_json(const OrbitCountReport& r, const std::vector<Permutation>& elements) {
    json per = json::array();
    for (std::size_t g = 0; g < r.traces.size(); ++g)
        per.push_back({{"element", to_cycle_string(elements[g])}, {"traces", ints_to_json(r.traces[g])}});
    return {{"counts", ints_to_json(r.counts)},
            {"sums", ints_to_json(r.sums)},
            {"group_order", r.group_order},
            {"recurrence", poly_to_json(r.recurrence)},
            {"recurrence_holds", recurrence_annihilates(r.recurrence, r.sums)},
            {"element_traces", per}};
}

inline json repshift_summary(const RepShift& r) {
    return {{"group_order", r.group.order()},
            {"states", labeled_matrix(r.presentation.matrix())},
            {"edge_count", r.edges.size()},
            {"acting_group_order", r.edge_action.group().order()},
            {"orbits", orbits_to_json(r.state_orbits)}};
}

}  // namespace detail

inline Report run_job(const JobSpec& j) {
    const std::size_t cap = j.param("cap", default_cap);
    const std::size_t limit = j.param("limit", default_cap);
    Report rep;
    rep.command = j.command;
    rep.echo = job_to_json(j);
    json& res = rep.result;
    const std::string& c = j.command;

    if (c == "verify-sse") {
        json steps = json::array();
        SseChain chain;
        for (const auto& e : j.certificates) {
            steps.push_back(verify_elementary_sse(e));
            chain.steps.push_back(e);
        }
        res = {{"steps", steps}, {"chain_valid", chain.verify()}};
        return rep;
    }
    if (c == "transport") {
        const auto& e = j.certificates.front();
        if (j.action->size() != j.target_action->size())
            throw InputError("$.input.target_action: needs one image per generator of the action");
        auto phi = detail::make_action(e.a, *j.action, limit);
        auto images = homomorphic_images(phi.group(), *j.target_action, e.b.dim());
        auto psi = validate_action(SftPresentation(e.b), PermGroup::aligned_with(phi.group(), e.b.dim(), images));
        auto t = transport_to_reduced(e, phi, psi);
        res = {{"certificate", certificate_to_json(t)}, {"verified", verify_elementary_sse(t)}};
        return rep;
    }
    if (j.hnn) {
        auto group = build_group(*j.group, limit);
        auto r = build_repshift(j.hnn->data, group, limit);
        if (c == "repshift") {
            res = detail::repshift_summary(r);
        } else if (c == "tqft") {
            auto t = tqft_matrix(r);
            res = detail::reduced_to_json(t);
            res["orbits"] = detail::orbits_to_json(t.orbits);
        } else {
            auto counts = flat_bundle_counts(r, j.param("max_n", j.param("m", 6)));
            res = detail::count_report_to_json(counts, r.edge_action.group().elements());
            res.erase("element_traces");
            res["acting_group_order"] = r.edge_action.group().order();
        }
        return rep;
    }

    const IntMatrix& m = *j.matrix;
    if (c == "invariants") {
        res = detail::invariants_of(m, j.param("max_n", 6));
        if (j.action) {
            auto a = detail::make_action(m, *j.action, limit);
            res = {{"shift", res},
                   {"right_reduced", detail::invariants_of(right_reduce(a).matrix, j.param("max_n", 6))},
                   {"left_reduced", detail::invariants_of(left_reduce(a).matrix, j.param("max_n", 6))}};
        }
        return rep;
    }
    if (c == "split") {
        auto a = detail::make_action(m, j.action.value_or(std::vector<Permutation>{}), limit);
        auto s = split_states(a, *j.split);
        json states = json::array();
        for (auto [i, p] : s.split_states) states.push_back({i + 1, p + 1});
        res = {{"split", labeled_matrix(s.action.matrix())},
               {"split_states", states},
               {"action_generators", perms_to_json(s.action.group().generators())},
               {"certificate", certificate_to_json(s.certificate)},
               {"reduced_certificate", certificate_to_json(transport_to_reduced(s.certificate, a, s.action))}};
        return rep;
    }

    auto a = detail::make_action(m, *j.action, limit);
    if (c == "reduce") {
        auto orbits = orbit_structure(a);
        res = {{"orbits", detail::orbits_to_json(orbits.orbits)},
               {"right", detail::reduced_to_json(right_reduce(a))},
               {"left", detail::reduced_to_json(left_reduce(a))},
               {"transpose_duality", transpose_duality_check(a)}};
    } else if (c == "classify" || c == "witness") {
        auto cl = classify_quotient(a);
        json kernel = json::array();
        for (auto k : cl.kernel) kernel.push_back(to_cycle_string(a.group().element(k)));
        res = {{"verdict", to_string(cl.verdict)}, {"kernel", kernel}};
        if (cl.element) {
            res["element"] = to_cycle_string(a.group().element(*cl.element));
            auto st = cl.cycle.states();
            res["cycle"] = states_to_json(std::vector<std::size_t>(st.begin(), st.end()));
        }
        if (c == "witness") {
            auto w = nonexpansive_witness(a, cl, j.param("m", 1));
            res["witness"] = {{"m", w.m},
                              {"element", to_cycle_string(a.group().element(w.element))},
                              {"u", states_to_json(w.u)},
                              {"v", states_to_json(w.v)},
                              {"w", states_to_json(w.w)},
                              {"w_prime", states_to_json(w.w_prime)},
                              {"x_window", states_to_json(w.x_window)},
                              {"y_window", states_to_json(w.y_window)},
                              {"u_offset", w.u_offset}};
        }
    } else if (c == "burnside") {
        res = detail::count_report_to_json(burnside_counts(a, j.param("max_n", 6)), a.group().elements());
    } else if (c == "quotient-counts") {
        const std::size_t max_n = j.param("max_n", 6);
        auto counts = quotient_period_counts(a, max_n, cap);
        auto left = left_reduce(a).matrix, right = right_reduce(a).matrix;
        std::vector<BigInt> lt, rt;
        for (std::size_t n = 1; n <= max_n; ++n) {
            lt.push_back(trace_of_power(left, n));
            rt.push_back(trace_of_power(right, n));
        }
        res = {{"counts", ints_to_json(counts)},
               {"left_traces", ints_to_json(lt)},
               {"right_traces", ints_to_json(rt)},
               {"agree", counts == lt && counts == rt}};
    }
    return rep;
}

// ---- rendering ----

namespace detail {

inline bool is_int_matrix(const json& v) {
    if (!v.is_array() || v.empty()) return false;
    for (const auto& row : v) {
        if (!row.is_array()) return false;
        for (const auto& x : row)
            if (!x.is_number_integer() && !x.is_string()) return false;
    }
    return true;
}

inline std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline void render_text(std::ostringstream& os, const json& v, const std::string& indent) {
    for (auto it = v.begin(); it != v.end(); ++it) {
        const auto& key = it.key();
        const auto& val = it.value();
        if (val.is_object() && val.contains("torsion") && val.contains("free_rank")) {
            os << indent << "BF group: " << val["group"].get<std::string>() << "\n";
        } else if (val.is_object() && val.contains("coefficients") && val.contains("text")) {
            os << indent << key << ": " << val["text"].get<std::string>() << "\n";
        } else if (is_int_matrix(val)) {
            std::size_t width = 1;
            for (const auto& row : val)
                for (const auto& x : row) width = std::max(width, scalar_text(x).size());
            os << indent << key << ":\n";
            for (const auto& row : val) {
                os << indent << " ";
                for (const auto& x : row) os << " " << std::setw(static_cast<int>(width)) << scalar_text(x);
                os << "\n";
            }
        } else if (val.is_object()) {
            os << indent << key << ":\n";
            render_text(os, val, indent + "  ");
        } else if (val.is_array()) {
            std::string line;
            bool flat = std::all_of(val.begin(), val.end(), [](const json& x) { return !x.is_structured(); });
            if (flat) {
                for (const auto& x : val) line += (line.empty() ? "" : ", ") + scalar_text(x);
                os << indent << key << ": " << line << "\n";
            } else {
                os << indent << key << ":\n";
                for (const auto& x : val) {
                    if (x.is_object()) {
                        std::ostringstream item;
                        render_text(item, x, indent + "    ");
                        std::string text = item.str();
                        text.replace(indent.size(), 4, "  - ");
                        os << text;
                    } else {
                        std::string inner;
                        for (const auto& y : x) inner += (inner.empty() ? "" : ", ") + scalar_text(y);
                        os << indent << "  - " << inner << "\n";
                    }
                }
            }
        } else {
            os << indent << key << ": " << scalar_text(val) << "\n";
        }
    }
}

}  // namespace detail

inline std::string format_bowen_franks(const AbelianGroupInvariants& g) { return "BF group: " + g.to_string(); }

/// Deterministic rendering; "json" sorts keys, "text" aligns matrix columns.
inline std::string emit_report(const Report& r, const std::string& format) {
    if (format == "json") return report_to_json(r).dump(2) + "\n";
    if (format != "text") throw InputError("unknown output format '" + format + "' (use json or text)");
    std::ostringstream os;
    os << "command: " << r.command << "\n";
    detail::render_text(os, r.result, "");
    return os.str();
}

}  // namespace gsft::io
