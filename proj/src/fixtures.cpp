#include "borderfloer/fixtures.hpp"

#include <cstdlib>
#include <mutex>
#include <sstream>

#include "borderfloer/box_tensor.hpp"
#include "borderfloer/structure_io.hpp"

#ifndef BORDERFLOER_FIXTURES_DIR
#define BORDERFLOER_FIXTURES_DIR "fixtures"
#endif

namespace borderfloer {

std::filesystem::path fixtures_dir() {
    if (const char* env = std::getenv("BORDERFLOER_FIXTURES"); env && *env) return env;
    return BORDERFLOER_FIXTURES_DIR;
}

namespace {

BorderedStructure load_checked(const std::filesystem::path& path) {
    nlohmann::json doc = read_json_file(path);
    BorderedStructure s;
    try {
        s = structure_from_json(doc);
    } catch (const std::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    if (auto it = doc.find("checksum"); it != doc.end()) {
        std::string have = checksum(s);
        if (!it->is_string() || it->get<std::string>() != have)
            throw FormatError(path.string() + ": checksum mismatch (content hashes to " + have + ")");
    }
    return s;
}

// Puts the side labeled `first` in position 0.
BorderedStructure order_sides(const BorderedStructure& s, const std::string& first) {
    if (s.side_count() != 2 || s.sides()[0].label == first) return s;
    std::vector<SideSpec> sides{s.sides()[1], s.sides()[0]};
    std::vector<Generator> gens = s.generators();
    for (auto& g : gens) std::swap(g.idem[0], g.idem[1]);
    std::vector<OperationTerm> terms = s.terms();
    for (auto& t : terms) {
        std::swap(t.out[0], t.out[1]);
        std::swap(t.in[0], t.in[1]);
    }
    return BorderedStructure(std::move(sides), std::move(gens), std::move(terms));
}

std::string format_counts(const std::map<int, int>& m) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto [k, v] : m) {
        os << (first ? "" : ", ") << k << ':' << v;
        first = false;
    }
    os << '}';
    return os.str();
}

}  // namespace

FixtureSet load_fixtures(const std::filesystem::path& dir) {
    FixtureSet fx;
    fx.identity_aa = load_checked(dir / "identity_aa.json");
    fx.cfdd_y_b3 = load_checked(dir / "cfdd_y_b3.json");
    fx.cfaa_y_b3_reference = load_checked(dir / "cfaa_y_b3.json");
    fx.cfaa_y_b3_pruned_reference = load_checked(dir / "cfaa_y_b3_pruned.json");
    return fx;
}

const FixtureSet& fixtures() {
    static const FixtureSet fx = load_fixtures(fixtures_dir());
    return fx;
}

BorderedStructure derive_cfaa_y_b3(const FixtureSet& fx, const CancellationPolicy& policy) {
    CancellationPolicy p = policy;
    p.order = CancelOrder::FiltrationThenKey;
    const auto& id = fx.identity_aa;
    BorderedStructure inner = box({relabel(id, {{"rho", "pair"}, {"sigma", "rho"}}), "pair", fx.cfdd_y_b3, "rho"});
    inner = reduce(inner, p).reduced;
    BorderedStructure full = box({relabel(id, {{"rho", "pair"}}), "pair", inner, "sigma"});
    return order_sides(reduce(full, p).reduced, "rho");
}

BorderedStructure prune_reference(const BorderedStructure& s) {
    auto forbidden = [](const ChordSequence& seq) {
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            Chord a = seq[i], b = seq[i + 1];
            if ((a == Chord::R2 && b == Chord::R3) || (a == Chord::R1 && (b == Chord::R2 || b == Chord::R23)))
                return true;
        }
        return false;
    };
    std::vector<OperationTerm> kept;
    for (const auto& t : s.terms()) {
        bool drop = false;
        for (std::size_t k = 0; k < s.side_count(); ++k)
            if (s.sides()[k].kind == SideKind::A && forbidden(t.in[k])) drop = true;
        if (!drop) kept.push_back(t);
    }
    return BorderedStructure(s.sides(), s.generators(), std::move(kept));
}

std::array<int, 4> bucket_counts(const BorderedStructure& s) {
    std::array<int, 4> out{};
    auto r = s.side_index("rho"), g = s.side_index("sigma");
    if (!r || !g) return out;
    for (const auto& gen : s.generators())
        ++out[std::size_t(gen.idem[*r]) + 2 * std::size_t(gen.idem[*g])];
    return out;
}

std::map<int, int> alexander_counts(const BorderedStructure& s) {
    std::map<int, int> out;
    for (const auto& g : s.generators()) ++out[g.alexander];
    return out;
}

std::vector<FixtureCheck> check_fixtures(const FixtureSet& fx) {
    std::vector<FixtureCheck> out;
    auto validation = [&](const std::string& name, const BorderedStructure& s) {
        auto rep = validate_generic(s);
        out.push_back({name, rep.ok(), rep.ok() ? "" : rep.summary(5)});
    };
    validation("identity_aa satisfies the A-infinity relations", fx.identity_aa);
    validation("cfdd_y_b3 satisfies delta_1^2 = 0", fx.cfdd_y_b3);
    validation("cfaa_y_b3 satisfies the A-infinity relations", fx.cfaa_y_b3_reference);
    {
        auto rep = validate_structural(fx.cfaa_y_b3_pruned_reference);
        out.push_back({"cfaa_y_b3_pruned is idempotent and filtration compatible", rep.ok(), rep.summary(5)});
    }
    {
        const std::map<std::string, std::pair<Idempotent, Idempotent>> table = {
            {"w1", {Idempotent::I1, Idempotent::I0}}, {"w2", {Idempotent::I1, Idempotent::I0}},
            {"z1", {Idempotent::I0, Idempotent::I1}}, {"z2", {Idempotent::I0, Idempotent::I1}},
            {"x", {Idempotent::I0, Idempotent::I0}},  {"y", {Idempotent::I1, Idempotent::I1}}};
        const auto& id = fx.identity_aa;
        bool ok = id.generators().size() == table.size();
        auto r = id.side_index("rho"), g = id.side_index("sigma");
        ok = ok && r && g;
        if (ok)
            for (const auto& gen : id.generators()) {
                auto it = table.find(gen.name);
                ok = ok && it != table.end() && it->second == std::make_pair(gen.idem[*r], gen.idem[*g]) &&
                     gen.alexander == 0;
            }
        out.push_back({"identity_aa idempotent table", ok, ""});
    }
    const std::array<int, 4> want_buckets{7, 4, 4, 4};
    const std::map<int, int> want_levels{{-1, 1}, {0, 9}, {1, 9}};
    for (const auto* s : {&fx.cfdd_y_b3, &fx.cfaa_y_b3_reference}) {
        const char* name = s == &fx.cfdd_y_b3 ? "cfdd_y_b3" : "cfaa_y_b3";
        auto b = bucket_counts(*s);
        auto a = alexander_counts(*s);
        std::ostringstream os;
        os << "buckets (" << b[0] << ',' << b[1] << ',' << b[2] << ',' << b[3] << ") levels " << format_counts(a);
        out.push_back({std::string(name) + " idempotent buckets and Alexander levels",
                       b == want_buckets && a == want_levels, os.str()});
    }
    {
        auto pruned = prune_reference(fx.cfaa_y_b3_reference);
        bool ok = pruned == fx.cfaa_y_b3_pruned_reference;
        std::ostringstream os;
        os << pruned.terms().size() << " terms after pruning, " << fx.cfaa_y_b3_pruned_reference.terms().size()
           << " in the pruned fixture";
        out.push_back({"prune_reference reproduces the primed blocks", ok, os.str()});
    }
    {
        auto derived = derive_cfaa_y_b3(fx);
        auto b = bucket_counts(derived);
        auto a = alexander_counts(derived);
        auto rep = validate_generic(derived);
        std::ostringstream os;
        os << derived.generators().size() << " generators, buckets (" << b[0] << ',' << b[1] << ',' << b[2] << ','
           << b[3] << ") levels " << format_counts(a);
        if (!rep.ok()) os << "\n" << rep.summary(5);
        out.push_back({"derived CFAA matches the reference counts",
                       derived.generators().size() == 19 && b == want_buckets && a == want_levels && rep.ok(),
                       os.str()});
    }
    return out;
}

}  // namespace borderfloer
