#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "borderfloer/reduction.hpp"
#include "borderfloer/structure.hpp"

namespace borderfloer {

struct FixtureSet {
    BorderedStructure identity_aa;
    BorderedStructure cfdd_y_b3;
    BorderedStructure cfaa_y_b3_reference;
    // Reference with the primed blocks substituted.
    BorderedStructure cfaa_y_b3_pruned_reference;
};

// $BORDERFLOER_FIXTURES if set, else the source tree's fixtures/ directory.
std::filesystem::path fixtures_dir();

// Throws FormatError if a file is malformed or its checksum field disagrees
// with the loaded content.
FixtureSet load_fixtures(const std::filesystem::path& dir);

// Loaded once from fixtures_dir().
const FixtureSet& fixtures();

// Identity AA tensored onto both sides of the DD bimodule, reduced along
// filtration-preserving unlabeled arrows. Sides come out as (rho, sigma).
BorderedStructure derive_cfaa_y_b3(const FixtureSet& fx, const CancellationPolicy& policy = {});

// Drops terms containing r2 r3, r1 r2 or r1 r23 on either A side.
BorderedStructure prune_reference(const BorderedStructure& s);

// Generator counts for (rho, sigma) idempotents (i0,i0), (i1,i0), (i0,i1), (i1,i1).
std::array<int, 4> bucket_counts(const BorderedStructure& s);
std::map<int, int> alexander_counts(const BorderedStructure& s);

struct FixtureCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

std::vector<FixtureCheck> check_fixtures(const FixtureSet& fx);

}  // namespace borderfloer
