#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "borderfloer/fixtures.hpp"
#include "borderfloer/knot_cfd.hpp"
#include "borderfloer/pipeline.hpp"
#include "random_complex.hpp"

using namespace borderfloer;

namespace {

constexpr double kGridSecondsBudget = 60.0;
constexpr int kGridRadius = 3;
constexpr int kSeeds = 20;
constexpr int kRandomComplexes = 200;
constexpr int kRandomMaxGenerators = 60;
constexpr std::uint64_t kRandomSeed = 0x5eed2024;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int expected_tau(int tau_j, int s, int tau_k, int t) {
    if (s < 2 * tau_j && t < 2 * tau_k) return 1;
    if (s > 2 * tau_j && t > 2 * tau_k) return -1;
    return 0;
}

// Alexander polynomial coefficients of the satellite: st T + (1 - 2st) + st T^-1.
std::map<int, int> alexander_coefficients(int s, int t) {
    return {{1, s * t}, {0, 1 - 2 * s * t}, {-1, s * t}};
}

std::string dims_text(const std::map<int, int>& m) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto [k, v] : m) {
        os << (first ? "" : ",") << k << ':' << v;
        first = false;
    }
    os << '}';
    return os.str();
}

struct Cell {
    std::string j, k;
    int s, t;
    int tau;
    std::map<int, int> hfk;
};

struct Criterion {
    int id;
    std::string title;
    bool ok = true;
    std::vector<std::string> notes;
    void fail(const std::string& why) {
        if (ok || notes.size() < 8) notes.push_back(why);
        ok = false;
    }
};

std::vector<Cell> run_grid(const PipelineOptions& opts) {
    std::vector<Cell> cells;
    for (const auto& jn : builtin_model_names())
        for (const auto& kn : builtin_model_names()) {
            auto J = builtin_model(jn), K = builtin_model(kn);
            IntRange sr{2 * J.tau - kGridRadius, 2 * J.tau + kGridRadius};
            IntRange tr{2 * K.tau - kGridRadius, 2 * K.tau + kGridRadius};
            for (const auto& row : sweep(J, K, sr, tr, opts)) cells.push_back({jn, kn, row.s, row.t, row.tau, row.hfk_dims});
        }
    return cells;
}

std::string cell_name(const Cell& c) {
    return c.j + "," + std::to_string(c.s) + "," + c.k + "," + std::to_string(c.t);
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    const auto& fx = fixtures();

    // 1
    Criterion c1{1, "satellite tau grid"};
    auto t0 = Clock::now();
    std::vector<Cell> grid;
    try {
        grid = run_grid({});
    } catch (const std::exception& e) {
        c1.fail(e.what());
    }
    const double grid_seconds = seconds_since(t0);
    int mismatches = 0;
    for (const auto& c : grid) {
        int want = expected_tau(builtin_model(c.j).tau, c.s, builtin_model(c.k).tau, c.t);
        if (c.tau != want) {
            ++mismatches;
            c1.fail(cell_name(c) + ": tau " + std::to_string(c.tau) + ", expected " + std::to_string(want));
        }
    }
    if (grid.size() != 16u * 49u) c1.fail("grid has " + std::to_string(grid.size()) + " runs");
    if (grid_seconds > kGridSecondsBudget) c1.fail("grid took longer than the time budget");
    {
        std::ostringstream os;
        os << grid.size() << " runs, " << mismatches << " mismatches, " << std::fixed;
        os.precision(1);
        os << grid_seconds << " s (budget " << kGridSecondsBudget << " s)";
        c1.notes.insert(c1.notes.begin(), os.str());
    }
    results.push_back(c1);

    // 2
    Criterion c2{2, "Whitehead doubles"};
    int wh_runs = 0;
    for (const auto& kn : builtin_model_names()) {
        auto K = builtin_model(kn);
        for (int t = 2 * K.tau - kGridRadius; t <= 2 * K.tau + kGridRadius; ++t) {
            int plus = tau_whitehead(K, t, WhiteheadSign::Plus).tau;
            int minus = tau_whitehead(K, t, WhiteheadSign::Minus).tau;
            wh_runs += 2;
            if (plus != (t < 2 * K.tau ? 1 : 0))
                c2.fail("Wh+(" + kn + "," + std::to_string(t) + ") gave " + std::to_string(plus));
            if (minus != (t > 2 * K.tau ? -1 : 0))
                c2.fail("Wh-(" + kn + "," + std::to_string(t) + ") gave " + std::to_string(minus));
        }
    }
    c2.notes.insert(c2.notes.begin(), std::to_string(wh_runs) + " runs");
    results.push_back(c2);

    // 3
    Criterion c3{3, "fixture integrity"};
    if (auto r = validate_type_d(fx.cfdd_y_b3); !r.ok()) c3.fail("DD relation: " + r.summary(3));
    if (auto r = validate_a_infinity(fx.identity_aa); !r.ok()) c3.fail("identity AA: " + r.summary(3));
    if (auto r = validate_a_infinity(fx.cfaa_y_b3_reference); !r.ok()) c3.fail("reference AA: " + r.summary(3));
    const std::array<int, 4> kBuckets{7, 4, 4, 4};
    const std::map<int, int> kLevels{{-1, 1}, {0, 9}, {1, 9}};
    if (bucket_counts(fx.cfaa_y_b3_reference) != kBuckets) c3.fail("reference AA idempotent buckets");
    if (alexander_counts(fx.cfaa_y_b3_reference) != kLevels) c3.fail("reference AA Alexander counts");
    if (alexander_counts(fx.cfdd_y_b3) != kLevels) c3.fail("DD Alexander counts");
    c3.notes.insert(c3.notes.begin(), "buckets (7,4,4,4), levels (1,9,9)");
    results.push_back(c3);

    // 4
    Criterion c4{4, "derived AA bimodule"};
    try {
        auto derived = derive_cfaa_y_b3(fx);
        if (derived.generators().size() != 19)
            c4.fail(std::to_string(derived.generators().size()) + " generators after reduction");
        if (bucket_counts(derived) != kBuckets) c4.fail("idempotent buckets differ");
        if (alexander_counts(derived) != kLevels) c4.fail("Alexander counts differ");
        if (auto r = validate_generic(derived); !r.ok()) c4.fail("relations: " + r.summary(3));
        PipelineOptions opts;
        opts.cfaa = &derived;
        auto dgrid = run_grid(opts);
        int changed = 0;
        for (std::size_t i = 0; i < dgrid.size() && i < grid.size(); ++i)
            if (dgrid[i].tau != grid[i].tau || dgrid[i].hfk != grid[i].hfk) {
                ++changed;
                c4.fail(cell_name(grid[i]) + " changed");
            }
        if (dgrid.size() != grid.size()) c4.fail("grid size differs");
        c4.notes.insert(c4.notes.begin(), std::to_string(derived.generators().size()) + " generators, " +
                                              std::to_string(derived.terms().size()) + " terms, " +
                                              std::to_string(changed) + " grid runs changed");
    } catch (const std::exception& e) {
        c4.fail(e.what());
    }
    results.push_back(c4);

    // 5
    Criterion c5{5, "prune equivalence"};
    try {
        auto pruned = prune_reference(fx.cfaa_y_b3_reference);
        if (!(pruned == fx.cfaa_y_b3_pruned_reference)) c5.fail("pruned reference differs from the primed matrices");
        PipelineOptions flag;
        flag.tensor.prune = true;
        PipelineOptions both = flag;
        both.cfaa = &fx.cfaa_y_b3_pruned_reference;
        int changed = 0;
        for (const auto* opts : {&flag, &both}) {
            auto pgrid = run_grid(*opts);
            for (std::size_t i = 0; i < pgrid.size() && i < grid.size(); ++i)
                if (pgrid[i].tau != grid[i].tau || pgrid[i].hfk != grid[i].hfk) {
                    ++changed;
                    c5.fail(cell_name(grid[i]) + " changed under pruning");
                }
            if (pgrid.size() != grid.size()) c5.fail("grid size differs");
        }
        c5.notes.insert(c5.notes.begin(), std::to_string(pruned.terms().size()) + " terms kept of " +
                                              std::to_string(fx.cfaa_y_b3_reference.terms().size()) + ", " +
                                              std::to_string(changed) + " grid runs changed");
    } catch (const std::exception& e) {
        c5.fail(e.what());
    }
    results.push_back(c5);

    // 6 and the grid half of 7
    Criterion c6{6, "per-run properties"};
    Criterion c7{7, "derived trefoil"};
    int c6_runs = 0;
    for (const auto& c : grid) {
        try {
            auto J = build_cfd({builtin_model(c.j), c.s, "rho"});
            auto K = build_cfd({builtin_model(c.k), c.t, "sigma"});
            auto complex = glue_filtered_complex(fx.cfaa_y_b3_reference, J, K);
            auto brute = brute_homology(complex);
            if (brute.total != 1) c6.fail(cell_name(c) + ": total homology " + std::to_string(brute.total));
            auto base = reduce(complex);
            if (base.tau != c.tau) c6.fail(cell_name(c) + ": reduction disagrees with the pipeline");
            if (base.pages.begin()->second != brute.graded) c6.fail(cell_name(c) + ": first page differs from brute force");
            int total = 0;
            for (auto [a, d] : c.hfk) {
                total += d;
                auto mirror = c.hfk.find(-a);
                if (mirror == c.hfk.end() || mirror->second != d) c6.fail(cell_name(c) + ": asymmetric " + dims_text(c.hfk));
            }
            if (total % 2 == 0) c6.fail(cell_name(c) + ": even total " + dims_text(c.hfk));
            for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
                CancellationPolicy p;
                p.seed = seed * 0x9e3779b97f4a7c15ull;
                auto r = reduce(complex, p);
                if (r.tau != base.tau || r.pages != base.pages)
                    c6.fail(cell_name(c) + ": seed " + std::to_string(seed) + " changes the result");
            }
            for (auto [a, coef] : alexander_coefficients(c.s, c.t)) {
                int d = c.hfk.count(a) ? c.hfk.at(a) : 0;
                if (d < std::abs(coef) || (d - coef) % 2 != 0)
                    c7.fail(cell_name(c) + ": " + dims_text(c.hfk) + " cannot have Euler characteristic " +
                            dims_text(alexander_coefficients(c.s, c.t)));
            }
            for (auto [a, d] : c.hfk)
                if (a < -1 || a > 1) c7.fail(cell_name(c) + ": level " + std::to_string(a) + " has rank " + std::to_string(d));
            ++c6_runs;
        } catch (const std::exception& e) {
            c6.fail(cell_name(c) + ": " + e.what());
        }
    }
    c6.notes.insert(c6.notes.begin(), std::to_string(c6_runs) + " runs, " + std::to_string(kSeeds) + " seeds each");

    // 7
    try {
        auto rep = tau_satellite({builtin_model("unknot"), -1, builtin_model("unknot"), -1});
        const std::map<int, int> trefoil{{-1, 1}, {0, 1}, {1, 1}};
        if (rep.tau != 1) c7.fail("tau " + std::to_string(rep.tau));
        if (rep.hfk_dims != trefoil) c7.fail("hfk " + dims_text(rep.hfk_dims));
        auto complex = glue_filtered_complex(fx.cfaa_y_b3_reference, build_cfd({builtin_model("unknot"), -1, "rho"}),
                                             build_cfd({builtin_model("unknot"), -1, "sigma"}));
        auto brute = brute_homology(complex);
        if (brute.graded != trefoil) c7.fail("associated graded " + dims_text(brute.graded));
        std::map<int, int> abs_coef;
        for (auto [a, coef] : alexander_coefficients(-1, -1)) abs_coef[a] = std::abs(coef);
        if (abs_coef != trefoil) c7.fail("Alexander polynomial " + dims_text(alexander_coefficients(-1, -1)));
        c7.notes.insert(c7.notes.begin(), "tau " + std::to_string(rep.tau) + ", hfk " + dims_text(rep.hfk_dims) +
                                              ", Alexander " + dims_text(alexander_coefficients(-1, -1)));
    } catch (const std::exception& e) {
        c7.fail(e.what());
    }
    results.push_back(c6);
    results.push_back(c7);

    // 8
    Criterion c8{8, "reduction against brute force"};
    std::mt19937_64 rng(kRandomSeed);
    int largest = 0;
    for (int i = 0; i < kRandomComplexes; ++i) {
        auto rc = testing::random_filtered_complex(rng, kRandomMaxGenerators);
        largest = std::max(largest, int(rc.complex.generators().size()));
        auto brute = brute_homology(rc.complex);
        auto r = reduce(rc.complex);
        if (r.pages.at(1) != brute.graded)
            c8.fail("complex " + std::to_string(i) + ": first page " + dims_text(r.pages.at(1)) + " vs " +
                    dims_text(brute.graded));
        if (int(r.survivors.size()) != brute.total || brute.total != rc.dots)
            c8.fail("complex " + std::to_string(i) + ": " + std::to_string(r.survivors.size()) + " survivors, rank " +
                    std::to_string(brute.total) + ", constructed " + std::to_string(rc.dots));
    }
    c8.notes.insert(c8.notes.begin(), std::to_string(kRandomComplexes) + " complexes, up to " + std::to_string(largest) +
                                          " generators");
    results.push_back(c8);

    bool all = true;
    for (const auto& c : results) {
        all = all && c.ok;
        std::printf("[%s] %d %s: %s\n", c.ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    c.notes.empty() ? "" : c.notes.front().c_str());
        for (std::size_t i = 1; i < c.notes.size(); ++i) std::printf("       %s\n", c.notes[i].c_str());
    }
    return all ? 0 : 1;
}
