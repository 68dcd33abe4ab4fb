#include "borderfloer/structure_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

namespace borderfloer {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw FormatError(where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

}  // namespace

BorderedStructure structure_from_json(const json& doc) {
    if (!doc.is_object()) fail("$", "expected an object");
    std::vector<SideSpec> sides;
    const json& js = require(doc, "sides", "$");
    if (!js.is_array()) fail("sides", "expected a list");
    if (js.size() > kMaxSides) fail("sides", "at most two sides are supported");
    for (std::size_t i = 0; i < js.size(); ++i) {
        std::string where = "sides[" + std::to_string(i) + "]";
        SideSpec sp;
        sp.label = require_string(require(js[i], "label", where), where + ".label");
        std::string kind = require_string(require(js[i], "kind", where), where + ".kind");
        if (kind == "A")
            sp.kind = SideKind::A;
        else if (kind == "D")
            sp.kind = SideKind::D;
        else
            fail(where + ".kind", "expected \"A\" or \"D\"");
        for (const auto& other : sides)
            if (other.label == sp.label) fail(where + ".label", "duplicate side label '" + sp.label + "'");
        sides.push_back(sp);
    }
    auto side_of = [&](const std::string& label) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < sides.size(); ++i)
            if (sides[i].label == label) return i;
        return std::nullopt;
    };

    std::vector<Generator> gens;
    std::map<std::string, int> index;
    const json& jg = require(doc, "generators", "$");
    if (!jg.is_array()) fail("generators", "expected a list");
    for (std::size_t i = 0; i < jg.size(); ++i) {
        std::string where = "generators[" + std::to_string(i) + "]";
        Generator g;
        g.name = require_string(require(jg[i], "name", where), where + ".name");
        if (index.count(g.name)) fail(where + ".name", "duplicate generator name '" + g.name + "'");
        std::size_t seen = 0;
        if (auto it = jg[i].find("idem"); it != jg[i].end()) {
            if (!it->is_object()) fail(where + ".idem", "expected an object");
            for (auto& [label, v] : it->items()) {
                auto k = side_of(label);
                if (!k) fail(where + ".idem", "unknown side label '" + label + "'");
                auto id = parse_idempotent(require_string(v, where + ".idem." + label));
                if (!id) fail(where + ".idem." + label, "expected \"i0\" or \"i1\"");
                g.idem[*k] = *id;
                ++seen;
            }
        }
        if (seen != sides.size()) fail(where + ".idem", "need exactly one idempotent per side");
        if (auto it = jg[i].find("alexander"); it != jg[i].end()) {
            if (!it->is_number_integer()) fail(where + ".alexander", "expected an integer");
            g.alexander = it->get<int>();
        }
        index[g.name] = int(i);
        gens.push_back(std::move(g));
    }

    std::vector<OperationTerm> terms;
    const json& jt = require(doc, "terms", "$");
    if (!jt.is_array()) fail("terms", "expected a list");
    for (std::size_t i = 0; i < jt.size(); ++i) {
        std::string where = "terms[" + std::to_string(i) + "]";
        auto endpoint = [&](const char* key) {
            std::string name = require_string(require(jt[i], key, where), where + "." + key);
            auto it = index.find(name);
            if (it == index.end()) fail(where + "." + key, "unknown generator '" + name + "'");
            return it->second;
        };
        OperationTerm base;
        base.source = endpoint("src");
        base.target = endpoint("dst");
        std::array<std::vector<Basis>, kMaxSides> outs;
        for (std::size_t k = 0; k < sides.size(); ++k)
            if (sides[k].kind == SideKind::D) outs[k] = {to_basis(gens[std::size_t(base.source)].idem[k])};
        if (auto it = jt[i].find("out"); it != jt[i].end()) {
            if (!it->is_object()) fail(where + ".out", "expected an object");
            for (auto& [label, v] : it->items()) {
                std::string w = where + ".out." + label;
                auto k = side_of(label);
                if (!k) fail(w, "unknown side label '" + label + "'");
                if (sides[*k].kind != SideKind::D) fail(w, "output on an A side");
                std::string text = require_string(v, w);
                AlgebraElement e;
                try {
                    e = parse_element(text);
                } catch (const std::invalid_argument& ex) {
                    fail(w, ex.what());
                }
                // A "1" summand is read as the source idempotent.
                if (e.contains(Basis::I0) && e.contains(Basis::I1)) {
                    e += AlgebraElement::one();
                    e += outs[*k].front();
                }
                if (e.is_zero()) fail(w, "zero output");
                outs[*k] = e.terms();
            }
        }
        if (auto it = jt[i].find("in"); it != jt[i].end()) {
            if (!it->is_object()) fail(where + ".in", "expected an object");
            for (auto& [label, v] : it->items()) {
                std::string w = where + ".in." + label;
                auto k = side_of(label);
                if (!k) fail(w, "unknown side label '" + label + "'");
                if (sides[*k].kind != SideKind::A) fail(w, "input on a D side");
                if (!v.is_array()) fail(w, "expected a list of chord tokens");
                for (const auto& c : v) {
                    auto ch = parse_chord(require_string(c, w));
                    if (!ch) fail(w, "unknown chord '" + c.get<std::string>() + "'");
                    base.in[*k].push_back(*ch);
                }
            }
        }
        // A sum on a D side becomes one term per summand.
        std::vector<Basis> none{Basis::I0};
        const auto& o0 = outs[0].empty() ? none : outs[0];
        const auto& o1 = outs[1].empty() ? none : outs[1];
        for (Basis a : o0)
            for (Basis b : o1) {
                OperationTerm t = base;
                t.out = {a, b};
                terms.push_back(std::move(t));
            }
    }
    return BorderedStructure(std::move(sides), std::move(gens), std::move(terms));
}

json structure_to_json(const BorderedStructure& s) {
    json doc;
    doc["sides"] = json::array();
    for (const auto& sp : s.sides())
        doc["sides"].push_back({{"label", sp.label}, {"kind", sp.kind == SideKind::A ? "A" : "D"}});
    doc["generators"] = json::array();
    for (const auto& g : s.generators()) {
        json idem = json::object();
        for (std::size_t k = 0; k < s.side_count(); ++k) idem[s.sides()[k].label] = token(g.idem[k]);
        doc["generators"].push_back({{"name", g.name}, {"idem", idem}, {"alexander", g.alexander}});
    }
    doc["terms"] = json::array();
    for (const auto& t : s.terms()) {
        json jt{{"src", s.generator(t.source).name}, {"dst", s.generator(t.target).name}};
        json out = json::object(), in = json::object();
        for (std::size_t k = 0; k < s.side_count(); ++k) {
            const auto& label = s.sides()[k].label;
            if (s.sides()[k].kind == SideKind::D) {
                out[label] = token(t.out[k]);
            } else if (!t.in[k].empty()) {
                json seq = json::array();
                for (Chord c : t.in[k]) seq.push_back(token(c));
                in[label] = seq;
            }
        }
        if (!out.empty()) jt["out"] = out;
        if (!in.empty()) jt["in"] = in;
        doc["terms"].push_back(std::move(jt));
    }
    return doc;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw FormatError(path.string() + ": cannot open");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

BorderedStructure load_structure(const std::filesystem::path& path) {
    json doc = read_json_file(path);
    try {
        return structure_from_json(doc);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void save_structure(const BorderedStructure& s, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error(path.string() + ": cannot write");
    f << structure_to_json(s).dump(1) << '\n';
}

std::string canonical_text(const BorderedStructure& s) {
    std::string out;
    for (const auto& g : s.generators()) {
        out += "gen " + g.name;
        for (std::size_t k = 0; k < s.side_count(); ++k)
            out += " " + s.sides()[k].label + "=" + std::string(token(g.idem[k]));
        out += " " + std::to_string(g.alexander) + "\n";
    }
    std::vector<std::string> lines;
    for (const auto& t : s.terms()) {
        std::string line = "term " + s.generator(t.source).name + " " + s.generator(t.target).name;
        for (std::size_t k = 0; k < s.side_count(); ++k) {
            line += " " + s.sides()[k].label + "=";
            if (s.sides()[k].kind == SideKind::D) {
                line += token(t.out[k]);
            } else if (t.in[k].empty()) {
                line += "-";
            } else {
                for (std::size_t i = 0; i < t.in[k].size(); ++i) {
                    if (i) line += '.';
                    line += token(t.in[k][i]);
                }
            }
        }
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) out += l + "\n";
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string checksum(const BorderedStructure& s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(canonical_text(s))));
    return buf;
}

}  // namespace borderfloer
