#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "borderfloer/structure.hpp"

namespace borderfloer {

class UnboundedPairError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Execution { Serial, Parallel };

struct TensorOptions {
    // Skip left terms whose input on the paired side has an adjacent pair
    // r1 r2, r1 r23, r2 r3 or r12 r3. Sound when the right factor is a knot
    // complement built by build_cfd.
    bool prune = false;
    // Longest right chain followed; unset means the bounded factor's natural limit.
    std::optional<std::size_t> max_chain_length;
    Execution execution = Execution::Parallel;
};

struct TensorPlan {
    const BorderedStructure& left;
    std::string left_side;
    const BorderedStructure& right;
    std::string right_side;
};

// Output sides are the left's unpaired sides followed by the right's.
// Generators are named "x|y".
BorderedStructure box(const TensorPlan& plan, const TensorOptions& opts = {});

bool has_forbidden_pair(const ChordSequence& seq);

// box(box(cfaa, rho, j_cfd, rho), sigma, k_cfd, sigma)
BorderedStructure glue_filtered_complex(const BorderedStructure& cfaa, const BorderedStructure& j_cfd,
                                        const BorderedStructure& k_cfd, const TensorOptions& opts = {});

}  // namespace borderfloer
