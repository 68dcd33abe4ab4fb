#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace borderfloer {

enum class Idempotent : std::uint8_t { I0 = 0, I1 = 1 };

// Basis element indices double as bit positions in AlgebraElement.
enum class Basis : std::uint8_t { I0 = 0, I1, R1, R2, R3, R12, R23, R123 };

enum class Chord : std::uint8_t { R1 = 2, R2, R3, R12, R23, R123 };

inline constexpr Basis to_basis(Chord c) { return static_cast<Basis>(c); }
inline constexpr Basis to_basis(Idempotent i) { return static_cast<Basis>(i); }
inline constexpr bool is_idempotent(Basis b) { return b == Basis::I0 || b == Basis::I1; }
std::optional<Chord> as_chord(Basis b);

std::pair<Idempotent, Idempotent> chord_idempotents(Chord c);
std::pair<Idempotent, Idempotent> basis_idempotents(Basis b);

// Product of two basis elements, nullopt when zero.
std::optional<Basis> mul_basis(Basis a, Basis b);

// Chords (a, b) with a*b == c.
const std::vector<std::pair<Chord, Chord>>& factorizations(Chord c);

class AlgebraElement {
public:
    constexpr AlgebraElement() = default;
    constexpr explicit AlgebraElement(std::uint8_t mask) : mask_(mask) {}
    constexpr AlgebraElement(Basis b) : mask_(std::uint8_t(1u << unsigned(b))) {}

    static constexpr AlgebraElement one() { return AlgebraElement(std::uint8_t(0b11)); }

    constexpr std::uint8_t mask() const { return mask_; }
    constexpr bool is_zero() const { return mask_ == 0; }
    constexpr bool contains(Basis b) const { return (mask_ >> unsigned(b)) & 1u; }
    std::vector<Basis> terms() const;

    AlgebraElement& operator+=(AlgebraElement o) {
        mask_ ^= o.mask_;
        return *this;
    }
    friend AlgebraElement operator+(AlgebraElement a, AlgebraElement b) { return a += b; }
    friend constexpr bool operator==(AlgebraElement a, AlgebraElement b) = default;

private:
    std::uint8_t mask_ = 0;
};

AlgebraElement mul(AlgebraElement a, AlgebraElement b);

std::string_view token(Basis b);
std::string_view token(Chord c);
std::string_view token(Idempotent i);
std::string to_string(AlgebraElement a);

// Single basis token: i0 i1 r1 r2 r3 r12 r23 r123.
std::optional<Basis> parse_basis(std::string_view tok);
std::optional<Chord> parse_chord(std::string_view tok);
std::optional<Idempotent> parse_idempotent(std::string_view tok);

// `+`-separated sum; throws std::invalid_argument on an unknown token.
AlgebraElement parse_element(std::string_view text);

using ChordSequence = std::vector<Chord>;

// Consecutive chords meet in a common idempotent.
bool composable(const ChordSequence& seq);
std::string to_string(const ChordSequence& seq);

}  // namespace borderfloer
