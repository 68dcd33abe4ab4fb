#include <doctest.h>

#include "borderfloer/fixtures.hpp"
#include "borderfloer/pipeline.hpp"

using namespace borderfloer;

namespace {

SatelliteReport run(const std::string& j, int s, const std::string& k, int t) {
    return tau_satellite({builtin_model(j), s, builtin_model(k), t});
}

}  // namespace

TEST_CASE("theorem prediction cases") {
    CHECK(theorem_prediction(0, -1, 0, -1) == 1);
    CHECK(theorem_prediction(0, 1, 0, 1) == -1);
    CHECK(theorem_prediction(0, 0, 1, 5) == 0);
    CHECK(theorem_prediction(1, 1, -1, -3) == 1);
    CHECK(theorem_prediction(1, 1, -1, 0) == 0);
    CHECK(whitehead_prediction(1, 0, WhiteheadSign::Plus) == 1);
    CHECK(whitehead_prediction(1, 2, WhiteheadSign::Plus) == 0);
    CHECK(whitehead_prediction(-1, -1, WhiteheadSign::Minus) == -1);
    CHECK(whitehead_prediction(-1, -2, WhiteheadSign::Minus) == 0);
}

TEST_CASE("satellite examples") {
    auto a = run("unknot", -1, "unknot", -1);
    CHECK(a.tau == 1);
    CHECK(a.agrees);
    CHECK(a.total_homology_dim == 1);
    CHECK(a.hfk_dims == std::map<int, int>{{-1, 1}, {0, 1}, {1, 1}});
    CHECK(run("unknot", 0, "trefoil_rh", 5).tau == 0);
    CHECK(run("unknot", 1, "unknot", 1).tau == -1);
}

TEST_CASE("whitehead examples") {
    CHECK(tau_whitehead(builtin_model("trefoil_rh"), 0, WhiteheadSign::Plus).tau == 1);
    CHECK(tau_whitehead(builtin_model("trefoil_rh"), 2, WhiteheadSign::Plus).tau == 0);
    auto w = tau_whitehead(builtin_model("unknot"), -1, WhiteheadSign::Plus);
    CHECK(w.tau == 1);
    CHECK(w.hfk_dims == std::map<int, int>{{-1, 1}, {0, 1}, {1, 1}});
    for (const auto& k : builtin_model_names())
        for (int t : {-2, 1}) {
            auto m = builtin_model(k);
            auto wp = tau_whitehead(m, t, WhiteheadSign::Plus);
            auto direct = tau_satellite({builtin_model("unknot"), -1, m, t});
            CHECK(wp.tau == direct.tau);
            CHECK(wp.hfk_dims == direct.hfk_dims);
            auto wm = tau_whitehead(m, t, WhiteheadSign::Minus);
            CHECK(wm.tau == tau_satellite({builtin_model("unknot"), 1, m, t}).tau);
            CHECK(wm.tau == wm.theorem_prediction);
        }
}

TEST_CASE("pipeline options") {
    const auto& fx = fixtures();
    PipelineOptions pruned;
    pruned.cfaa = &fx.cfaa_y_b3_pruned_reference;
    pruned.tensor.prune = true;
    pruned.policy.seed = 11;
    pruned.policy.record_trace = true;
    auto r = tau_satellite({builtin_model("trefoil_lh"), -3, builtin_model("figure_eight"), 1}, pruned);
    auto base = tau_satellite({builtin_model("trefoil_lh"), -3, builtin_model("figure_eight"), 1});
    CHECK(r.tau == base.tau);
    CHECK(r.hfk_dims == base.hfk_dims);
    CHECK_FALSE(r.trace.empty());
    CHECK(base.trace.empty());
    CHECK(r.complex_generators == base.complex_generators);
}

TEST_CASE("sweep") {
    auto u = builtin_model("unknot");
    auto rows = sweep(u, u, {-3, 3}, {-3, 3});
    CHECK(rows.size() == 49);
    for (const auto& r : rows) CHECK(r.agrees);
    CHECK(rows.front().s == -3);
    CHECK(rows.front().t == -3);
    CHECK(rows[1].t == -2);

    auto serial = sweep(u, u, {-3, 3}, {-3, 3}, {}, Execution::Serial);
    REQUIRE(serial.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(serial[i].tau == rows[i].tau);
        CHECK(serial[i].hfk_dims == rows[i].hfk_dims);
    }

    CHECK(sweep(u, u, {1, 0}, {-3, 3}).empty());
    CHECK_THROWS_AS(sweep(u, u, {0, 25}, {0, 0}), std::invalid_argument);
}

TEST_CASE("sweep of right trefoil against figure eight") {
    auto rows = sweep(builtin_model("trefoil_rh"), builtin_model("figure_eight"), {-1, 5}, {-3, 3});
    CHECK(rows.size() == 49);
    for (const auto& r : rows) {
        CAPTURE(r.s);
        CAPTURE(r.t);
        CHECK(r.agrees);
        if (r.s == 2 || r.t == 0) CHECK(r.tau == 0);
    }
}
