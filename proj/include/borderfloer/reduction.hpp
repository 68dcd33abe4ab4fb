#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "borderfloer/box_tensor.hpp"
#include "borderfloer/structure.hpp"

namespace borderfloer {

enum class CancelOrder { FiltrationThenKey, KeyOnly };

struct CancellationPolicy {
    CancelOrder order = CancelOrder::FiltrationThenKey;
    // Unset: ties broken by (source name, target name). Set: by a seeded
    // random ranking of generators.
    std::optional<std::uint64_t> seed;
    bool record_trace = false;
};

struct TraceStep {
    std::string source;
    std::string target;
    int drop = 0;
    std::vector<std::string> toggled;  // composite terms added or removed
};

struct ReductionResult {
    std::vector<std::pair<std::string, int>> survivors;  // (name, alexander)
    // pages[r] holds the E^r dimensions per Alexander level; the last entry is E^infinity.
    std::map<int, std::map<int, int>> pages;
    std::optional<int> tau;
    std::vector<TraceStep> trace;
    BorderedStructure reduced;
};

// Throws std::invalid_argument unless t is an invertible non-loop term of s.
BorderedStructure cancel_pair(const BorderedStructure& s, const OperationTerm& t);

ReductionResult reduce(const BorderedStructure& s, const CancellationPolicy& policy = {});

struct HomologyDims {
    int total = 0;
    std::map<int, int> graded;  // homology of the filtration-preserving part, per level
};

inline constexpr std::size_t kBruteHomologyCap = 2000;

// Dense F2 ranks; throws std::length_error above kBruteHomologyCap generators.
HomologyDims brute_homology(const BorderedStructure& complex, Execution exec = Execution::Parallel);

// Rank over F2 of a row-major bit matrix with `cols` columns.
std::size_t f2_rank(std::vector<std::vector<std::uint64_t>> rows, std::size_t cols,
                    Execution exec = Execution::Parallel);

}  // namespace borderfloer
