#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "borderfloer/torus_algebra.hpp"

namespace borderfloer {

inline constexpr std::size_t kMaxSides = 2;

enum class SideKind : std::uint8_t { A, D };

struct SideSpec {
    std::string label;
    SideKind kind = SideKind::D;
    friend bool operator==(const SideSpec&, const SideSpec&) = default;
};

struct Generator {
    std::string name;
    std::array<Idempotent, kMaxSides> idem{};  // indexed by side position
    int alexander = 0;
    friend bool operator==(const Generator&, const Generator&) = default;
};

// Slots are indexed by side position. `out` is meaningful on D sides only and
// `in` on A sides only; the unused slot stays at its default so that ordering
// and equality are canonical.
struct OperationTerm {
    int source = 0;
    int target = 0;
    std::array<Basis, kMaxSides> out{};
    std::array<ChordSequence, kMaxSides> in{};
    friend auto operator<=>(const OperationTerm&, const OperationTerm&) = default;
    friend bool operator==(const OperationTerm&, const OperationTerm&) = default;
};

// Sort and drop terms of even multiplicity.
void canonicalize(std::vector<OperationTerm>& terms);

class BorderedStructure {
public:
    BorderedStructure() = default;
    // Throws std::invalid_argument on more than two sides, repeated side
    // labels, repeated generator names or out-of-range term endpoints.
    BorderedStructure(std::vector<SideSpec> sides, std::vector<Generator> generators,
                      std::vector<OperationTerm> terms);

    const std::vector<SideSpec>& sides() const { return sides_; }
    const std::vector<Generator>& generators() const { return generators_; }
    const std::vector<OperationTerm>& terms() const { return terms_; }

    std::size_t side_count() const { return sides_.size(); }
    std::optional<std::size_t> side_index(std::string_view label) const;
    std::optional<int> generator_index(std::string_view name) const;
    const Generator& generator(int i) const { return generators_[std::size_t(i)]; }
    bool has_side_kind(SideKind k) const;

    // Unlabeled arrow: every D output idempotent and every A input empty.
    bool is_invertible(const OperationTerm& t) const;

    std::string describe(const OperationTerm& t) const;

    friend bool operator==(const BorderedStructure&, const BorderedStructure&) = default;

private:
    std::vector<SideSpec> sides_;
    std::vector<Generator> generators_;
    std::vector<OperationTerm> terms_;
    std::unordered_map<std::string, int> by_name_;
};

// Same structure with side labels renamed; labels absent from the map are kept.
BorderedStructure relabel(const BorderedStructure& s,
                          const std::vector<std::pair<std::string, std::string>>& renames);

struct ValidationReport {
    std::vector<std::string> structural;
    std::vector<std::string> relation;
    std::vector<std::pair<std::string, std::string>> offending;  // (source, target)

    bool ok() const { return structural.empty() && relation.empty(); }
    void merge(const ValidationReport& o);
    std::string summary(std::size_t max_lines = 20) const;
};

struct SequencePool {
    enum class Kind { SupportClosure, Exhaustive };
    Kind kind = Kind::SupportClosure;
    int max_length = 0;  // total chord count across A sides, Exhaustive only

    static SequencePool support_closure() { return {}; }
    static SequencePool exhaustive(int n) { return {Kind::Exhaustive, n}; }
};

// Idempotent compatibility and filtration monotonicity of every term.
ValidationReport validate_structural(const BorderedStructure& s);
ValidationReport validate_type_d(const BorderedStructure& s);
ValidationReport validate_a_infinity(const BorderedStructure& s,
                                     SequencePool pool = SequencePool::support_closure());
ValidationReport validate_generic(const BorderedStructure& s);

bool is_bounded(const BorderedStructure& s);

}  // namespace borderfloer
