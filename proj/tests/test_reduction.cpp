#include <doctest.h>

#include <random>

#include "borderfloer/knot_cfd.hpp"
#include "borderfloer/fixtures.hpp"
#include "borderfloer/reduction.hpp"
#include "helpers.hpp"
#include "random_complex.hpp"

using namespace borderfloer;
using namespace borderfloer::testing;

TEST_CASE("cancel_pair on small complexes") {
    BorderedStructure xy({}, {gen("x"), gen("y")}, {arrow(0, 1)});
    auto empty = cancel_pair(xy, arrow(0, 1));
    CHECK(empty.generators().empty());
    CHECK(empty.terms().empty());

    // k -> j <- i -> l together with an existing k -> l.
    BorderedStructure four({}, {gen("k"), gen("j"), gen("i"), gen("l")},
                           {arrow(0, 1), arrow(2, 1), arrow(2, 3), arrow(0, 3)});
    auto two = cancel_pair(four, arrow(2, 1));
    CHECK(two.generators().size() == 2);
    CHECK(two.terms().empty());

    BorderedStructure three({}, {gen("k"), gen("j"), gen("i"), gen("l")}, {arrow(0, 1), arrow(2, 1), arrow(2, 3)});
    auto zig = cancel_pair(three, arrow(2, 1));
    REQUIRE(zig.terms().size() == 1);
    CHECK(zig.generator(zig.terms()[0].source).name == "k");
    CHECK(zig.generator(zig.terms()[0].target).name == "l");
}

TEST_CASE("zigzag concatenates A inputs") {
    using I = Idempotent;
    BorderedStructure s(one_side("rho", SideKind::A),
                        {gen("k", I::I0), gen("j", I::I1), gen("i", I::I1), gen("l", I::I0)},
                        {a_term(0, 1, {Chord::R3}), a_term(2, 1), a_term(2, 3, {Chord::R2})});
    auto out = cancel_pair(s, a_term(2, 1));
    REQUIRE(out.terms().size() == 1);
    CHECK(out.terms()[0].in[0] == ChordSequence{Chord::R3, Chord::R2});
    CHECK(out.generator(out.terms()[0].source).name == "k");
    CHECK(out.generator(out.terms()[0].target).name == "l");
}

TEST_CASE("zigzag multiplies D outputs") {
    using I = Idempotent;
    BorderedStructure s(one_side("rho", SideKind::D),
                        {gen("k", I::I0), gen("j", I::I1), gen("i", I::I1), gen("l", I::I0), gen("m", I::I1)},
                        {d_term(0, 1, Basis::R1), d_term(2, 1, Basis::I1), d_term(2, 3, Basis::R2),
                         d_term(2, 4, Basis::R23)});
    auto out = cancel_pair(s, d_term(2, 1, Basis::I1));
    std::vector<OperationTerm> expected{d_term(*out.generator_index("k"), *out.generator_index("l"), Basis::R12),
                                        d_term(*out.generator_index("k"), *out.generator_index("m"), Basis::R123)};
    canonicalize(expected);
    CHECK(out.terms() == expected);
}

TEST_CASE("cancel_pair rejects non-invertible terms") {
    BorderedStructure loop({}, {gen("x")}, {arrow(0, 0)});
    CHECK_THROWS_AS(cancel_pair(loop, arrow(0, 0)), std::invalid_argument);
    BorderedStructure lab(one_side("rho", SideKind::D), {gen("x"), gen("y")}, {d_term(0, 1, Basis::R12)});
    CHECK_THROWS_AS(cancel_pair(lab, d_term(0, 1, Basis::R12)), std::invalid_argument);
    BorderedStructure xy({}, {gen("x"), gen("y")}, {});
    CHECK_THROWS_AS(cancel_pair(xy, arrow(0, 1)), std::invalid_argument);
}

TEST_CASE("reduce examples") {
    BorderedStructure abc({}, {gen("a"), gen("b"), gen("c")}, {arrow(0, 1)});
    auto r = reduce(abc);
    REQUIRE(r.survivors.size() == 1);
    CHECK(r.survivors[0].first == "c");
    CHECK(brute_homology(abc).total == 1);

    using I = Idempotent;
    BorderedStructure pqr({}, {gen("p", I::I0, I::I0, 1), gen("q", I::I0, I::I0, 0), gen("r", I::I0, I::I0, 0)},
                          {arrow(0, 1)});
    auto f = reduce(pqr);
    CHECK(f.pages.at(1) == std::map<int, int>{{0, 2}, {1, 1}});
    CHECK(f.pages.rbegin()->second == std::map<int, int>{{0, 1}});
    REQUIRE(f.survivors.size() == 1);
    CHECK(f.survivors[0] == std::pair<std::string, int>{"r", 0});
    CHECK(f.tau == 0);
}

TEST_CASE("trace records each cancellation") {
    BorderedStructure three({}, {gen("k"), gen("j"), gen("i"), gen("l")}, {arrow(0, 1), arrow(2, 1), arrow(2, 3)});
    CancellationPolicy p;
    p.record_trace = true;
    auto r = reduce(three, p);
    CHECK(r.trace.size() == 2);
    CHECK(r.survivors.empty());
    CHECK_FALSE(r.tau.has_value());
}

TEST_CASE("key-only order ignores the filtration") {
    using I = Idempotent;
    BorderedStructure pqr({}, {gen("p", I::I0, I::I0, 1), gen("q", I::I0, I::I0, 0), gen("r", I::I0, I::I0, 0)},
                          {arrow(0, 1)});
    CancellationPolicy p;
    p.order = CancelOrder::KeyOnly;
    auto r = reduce(pqr, p);
    CHECK(r.survivors.size() == 1);
    CHECK(r.pages.empty());
    CHECK_FALSE(r.tau.has_value());
}

TEST_CASE("bordered reduction keeps labeled arrows and only cancels unlabeled ones") {
    auto u = build_cfd({builtin_model("unknot"), -2, "rho"});
    auto r = reduce(u);
    CHECK(r.reduced == u);
    CHECK(r.pages.empty());
}

TEST_CASE("brute_homology") {
    CHECK(brute_homology(BorderedStructure()).total == 0);
    CHECK(brute_homology(BorderedStructure()).graded.empty());
    BorderedStructure xy({}, {gen("x"), gen("y")}, {arrow(0, 1)});
    CHECK(brute_homology(xy).total == 0);
    CHECK_THROWS_AS(brute_homology(BorderedStructure(one_side("rho", SideKind::D), {}, {})), std::invalid_argument);

    std::vector<Generator> many;
    for (std::size_t i = 0; i <= kBruteHomologyCap; ++i) many.push_back(gen("g" + std::to_string(i)));
    CHECK_THROWS_AS(brute_homology(BorderedStructure({}, many, {})), std::length_error);
}

TEST_CASE("survivors match brute rank on random complexes up to 200 generators") {
    std::mt19937_64 rng(4021);
    for (int trial = 0; trial < 60; ++trial) {
        auto rc = random_filtered_complex(rng, trial < 40 ? 60 : 200);
        CAPTURE(trial);
        REQUIRE(validate_generic(rc.complex).ok());
        auto brute = brute_homology(rc.complex);
        auto red = reduce(rc.complex);
        CHECK(int(red.survivors.size()) == brute.total);
        CHECK(brute.total == rc.dots);
        CHECK(red.pages.at(1) == brute.graded);
        CHECK(int(reduce(rc.complex, {CancelOrder::KeyOnly, std::nullopt, false}).survivors.size()) == brute.total);
        CHECK(brute_homology(rc.complex, Execution::Serial).graded == brute.graded);
    }
}

TEST_CASE("pages are stable under seeded tie-breaking") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto rc = random_filtered_complex(rng, 40);
        auto base = reduce(rc.complex);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            CancellationPolicy p;
            p.seed = seed;
            auto r = reduce(rc.complex, p);
            CHECK(r.pages == base.pages);
            CHECK(r.tau == base.tau);
        }
    }
}

TEST_CASE("f2_rank serial and parallel agree") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 300)(rng);
        std::size_t cols = std::uniform_int_distribution<std::size_t>(1, 300)(rng);
        std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>((cols + 63) / 64, 0));
        for (auto& row : m)
            for (std::size_t c = 0; c < cols; ++c)
                if (rng() % 7 == 0) row[c / 64] |= std::uint64_t(1) << (c % 64);
        CHECK(f2_rank(m, cols, Execution::Serial) == f2_rank(m, cols, Execution::Parallel));
    }
    std::vector<std::vector<std::uint64_t>> id(100, std::vector<std::uint64_t>(2, 0));
    for (std::size_t i = 0; i < 100; ++i) id[i][i / 64] |= std::uint64_t(1) << (i % 64);
    CHECK(f2_rank(id, 100) == 100);
}
