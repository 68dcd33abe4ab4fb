#include "borderfloer/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "borderfloer/fixtures.hpp"
#include "borderfloer/pipeline.hpp"
#include "borderfloer/structure_io.hpp"

namespace borderfloer {

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kDisagree = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntRange parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError("range '" + text + "' must look like a:b");
    try {
        std::size_t used_a = 0, used_b = 0;
        int a = std::stoi(text.substr(0, colon), &used_a);
        int b = std::stoi(text.substr(colon + 1), &used_b);
        if (used_a != colon || used_b != text.size() - colon - 1) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw InputError("range '" + text + "' must look like a:b with integers");
    }
}

json counts_json(const std::map<int, int>& m) {
    json out = json::object();
    for (auto [k, v] : m) out[std::to_string(k)] = v;
    return out;
}

json trace_json(const std::vector<TraceStep>& trace) {
    json out = json::array();
    for (const auto& st : trace)
        out.push_back({{"cancel", {st.source, st.target}}, {"drop", st.drop}, {"toggled", st.toggled}});
    return out;
}

json report_json(const SatelliteReport& r) {
    return {{"tau", r.tau},
            {"hfk_dims", counts_json(r.hfk_dims)},
            {"total_homology_dim", r.total_homology_dim},
            {"theorem_prediction", r.theorem_prediction},
            {"agrees", r.agrees},
            {"complex_generators", r.complex_generators},
            {"complex_terms", r.complex_terms}};
}

void write_trace(const std::string& path, const std::vector<TraceStep>& trace) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write trace file " + path);
    f << trace_json(trace).dump(1) << '\n';
}

struct SatelliteArgs {
    std::string J, K;
    int s = 0, t = 0;
    bool json = false, prune = false;
    std::optional<std::uint64_t> seed;
    std::string trace;
};

PipelineOptions pipeline_options(bool prune, std::optional<std::uint64_t> seed, bool trace) {
    PipelineOptions o;
    o.tensor.prune = prune;
    o.policy.seed = seed;
    o.policy.record_trace = trace;
    return o;
}

std::string ascii_grid(const std::vector<SweepRow>& rows, IntRange s, IntRange t) {
    std::ostringstream os;
    os << "  s\\t";
    for (int tt = t.lo; tt <= t.hi; ++tt) os << std::setw(4) << tt;
    os << '\n';
    for (int ss = s.lo; ss <= s.hi; ++ss) {
        os << std::setw(5) << ss;
        for (int tt = t.lo; tt <= t.hi; ++tt) {
            const auto& r = rows[std::size_t((ss - s.lo) * t.size() + (tt - t.lo))];
            std::string cell = std::to_string(r.tau) + (r.agrees ? "" : "!");
            os << std::setw(4) << cell;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bordered Floer computation of tau for two-companion satellite knots"};
    app.name("borderfloer");
    app.require_subcommand(1);

    SatelliteArgs sat;
    auto add_satellite = [&](CLI::App* sub) {
        sub->add_option("--J", sat.J, "companion J: path or builtin:NAME")->required();
        sub->add_option("--s", sat.s, "framing of J")->required();
        sub->add_option("--K", sat.K, "companion K: path or builtin:NAME")->required();
        sub->add_option("--t", sat.t, "framing of K")->required();
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", sat.json, "machine-readable output");
        sub->add_flag("--prune", sat.prune, "skip left terms with forbidden chord pairs");
        sub->add_option("--seed", sat.seed, "cancellation tie-break seed");
    };

    auto* tau = app.add_subcommand("tau", "tau of D_{J,s}(K,t)");
    add_satellite(tau);
    add_common(tau);
    tau->add_option("--trace", sat.trace, "write the cancellation trace as JSON");

    auto* hfk = app.add_subcommand("hfk", "knot Floer dimensions per Alexander level of D_{J,s}(K,t)");
    add_satellite(hfk);
    add_common(hfk);

    std::string sign = "+";
    auto* wh = app.add_subcommand("whitehead", "tau of the t-twisted Whitehead double of K");
    wh->add_option("--K", sat.K, "companion: path or builtin:NAME")->required();
    wh->add_option("--t", sat.t, "twisting")->required();
    wh->add_option("--sign", sign, "+ or -")->check(CLI::IsMember({"+", "-"}));
    add_common(wh);

    std::string s_range, t_range;
    auto* sw = app.add_subcommand("sweep", "tau over a grid of framings");
    sw->add_option("--J", sat.J)->required();
    sw->add_option("--K", sat.K)->required();
    sw->add_option("--s-range", s_range, "a:b inclusive")->required();
    sw->add_option("--t-range", t_range, "a:b inclusive")->required();
    add_common(sw);

    std::string file;
    auto* val = app.add_subcommand("validate", "validate a structure or CFK model file");
    val->add_option("file", file)->required();

    auto* fx = app.add_subcommand("fixtures", "embedded fixture data");
    auto* fx_check = fx->add_subcommand("check", "run every fixture validation");
    fx->require_subcommand(1);

    bool key_only = false;
    auto* red = app.add_subcommand("reduce", "cancel invertible terms of a structure file");
    red->add_option("file", file)->required();
    red->add_flag("--json", sat.json);
    red->add_option("--seed", sat.seed);
    red->add_option("--trace", sat.trace);
    red->add_flag("--key-only", key_only, "ignore the filtration when ordering cancellations");

    std::string file_b, side_a, side_b, out_path;
    auto* ten = app.add_subcommand("tensor", "box tensor product of two structure files");
    ten->add_option("fileA", file)->required();
    ten->add_option("sideA", side_a)->required();
    ten->add_option("fileB", file_b)->required();
    ten->add_option("sideB", side_b)->required();
    ten->add_option("--out", out_path, "write here instead of stdout");
    ten->add_flag("--prune", sat.prune);

    std::vector<std::string> storage{"borderfloer"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : storage) argv.push_back(a.data());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (tau->parsed() || hfk->parsed()) {
            SatelliteRequest req{resolve_model(sat.J), sat.s, resolve_model(sat.K), sat.t};
            auto rep = tau_satellite(req, pipeline_options(sat.prune, sat.seed, !sat.trace.empty()));
            if (!sat.trace.empty()) write_trace(sat.trace, rep.trace);
            if (sat.json)
                out << report_json(rep).dump() << '\n';
            else if (tau->parsed())
                out << rep.tau << '\n';
            else
                for (auto [level, dim] : rep.hfk_dims) out << level << ' ' << dim << '\n';
            if (!rep.agrees) err << "tau " << rep.tau << " disagrees with prediction " << rep.theorem_prediction << '\n';
            return rep.agrees ? kOk : kDisagree;
        }
        if (wh->parsed()) {
            auto rep = tau_whitehead(resolve_model(sat.K), sat.t, sign == "+" ? WhiteheadSign::Plus : WhiteheadSign::Minus,
                                     pipeline_options(sat.prune, sat.seed, false));
            if (sat.json)
                out << report_json(rep).dump() << '\n';
            else
                out << rep.tau << '\n';
            return rep.agrees ? kOk : kDisagree;
        }
        if (sw->parsed()) {
            IntRange sr = parse_range(s_range), tr = parse_range(t_range);
            auto rows = sweep(resolve_model(sat.J), resolve_model(sat.K), sr, tr,
                              pipeline_options(sat.prune, sat.seed, false));
            bool all = true;
            json table = json::array();
            for (const auto& r : rows) {
                all = all && r.agrees;
                table.push_back({{"s", r.s}, {"t", r.t}, {"tau", r.tau}, {"prediction", r.prediction},
                                 {"agrees", r.agrees}, {"hfk_dims", counts_json(r.hfk_dims)}});
            }
            if (sat.json)
                out << table.dump() << '\n';
            else if (!rows.empty())
                out << ascii_grid(rows, sr, tr);
            return all ? kOk : kDisagree;
        }
        if (val->parsed()) {
            json doc = read_json_file(file);
            if (doc.is_object() && doc.contains("xi_to_eta")) {
                auto rep = validate_model(model_from_json(doc));
                for (const auto& e : rep.errors) err << file << ": " << e << '\n';
                if (!rep.ok()) return kInputError;
            } else {
                BorderedStructure s;
                try {
                    s = structure_from_json(doc);
                } catch (const std::invalid_argument& e) {
                    throw FormatError(e.what());
                }
                auto rep = validate_generic(s);
                if (!rep.ok()) {
                    err << file << ":\n" << rep.summary();
                    return kInputError;
                }
            }
            out << "ok\n";
            return kOk;
        }
        if (fx_check->parsed()) {
            auto checks = check_fixtures(load_fixtures(fixtures_dir()));
            bool all = true;
            for (const auto& c : checks) {
                all = all && c.ok;
                out << (c.ok ? "[ok]   " : "[FAIL] ") << c.name;
                if (!c.detail.empty()) out << " (" << c.detail << ")";
                out << '\n';
            }
            return all ? kOk : kDisagree;
        }
        if (red->parsed()) {
            BorderedStructure s = load_structure(file);
            CancellationPolicy pol;
            pol.order = key_only ? CancelOrder::KeyOnly : CancelOrder::FiltrationThenKey;
            pol.seed = sat.seed;
            pol.record_trace = !sat.trace.empty();
            auto res = reduce(s, pol);
            if (!sat.trace.empty()) write_trace(sat.trace, res.trace);
            if (sat.json) {
                json pages = json::object();
                for (const auto& [r, dims] : res.pages) pages[std::to_string(r)] = counts_json(dims);
                json surv = json::array();
                for (const auto& [name, level] : res.survivors) surv.push_back({{"name", name}, {"alexander", level}});
                json doc{{"survivors", surv}, {"pages", pages}, {"reduced", structure_to_json(res.reduced)}};
                doc["tau"] = res.tau ? json(*res.tau) : json(nullptr);
                out << doc.dump(1) << '\n';
            } else {
                out << res.survivors.size() << " survivors\n";
                for (const auto& [name, level] : res.survivors) out << "  " << name << " " << level << '\n';
                for (const auto& [r, dims] : res.pages) {
                    out << "E" << r << ":";
                    for (auto [level, dim] : dims) out << ' ' << level << ':' << dim;
                    out << '\n';
                }
                if (res.tau) out << "tau " << *res.tau << '\n';
                if (s.side_count() > 0) out << structure_to_json(res.reduced).dump(1) << '\n';
            }
            return kOk;
        }
        if (ten->parsed()) {
            BorderedStructure a = load_structure(file), b = load_structure(file_b);
            TensorOptions opts;
            opts.prune = sat.prune;
            auto result = box({a, side_a, b, side_b}, opts);
            if (out_path.empty())
                out << structure_to_json(result).dump(1) << '\n';
            else
                save_structure(result, out_path);
            return kOk;
        }
    } catch (const InternalConsistencyError& e) {
        err << "internal consistency error: " << e.what() << '\n';
        return kDisagree;
    } catch (const InputError& e) {
        err << e.what() << '\n';
        return kInputError;
    } catch (const FormatError& e) {
        err << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDisagree;
    }
    return kInputError;
}

}  // namespace borderfloer
