#include "borderfloer/torus_algebra.hpp"

#include <array>
#include <stdexcept>

namespace borderfloer {

namespace {

constexpr std::array<std::string_view, 8> kTokens = {"i0", "i1", "r1", "r2", "r3", "r12", "r23", "r123"};

using I = Idempotent;
constexpr std::array<std::pair<I, I>, 8> kIdem = {{
    {I::I0, I::I0},
    {I::I1, I::I1},
    {I::I0, I::I1},  // r1
    {I::I1, I::I0},  // r2
    {I::I0, I::I1},  // r3
    {I::I0, I::I0},  // r12
    {I::I1, I::I1},  // r23
    {I::I0, I::I1},  // r123
}};

}  // namespace

std::optional<Chord> as_chord(Basis b) {
    if (is_idempotent(b)) return std::nullopt;
    return static_cast<Chord>(b);
}

std::pair<Idempotent, Idempotent> basis_idempotents(Basis b) { return kIdem[unsigned(b)]; }

std::pair<Idempotent, Idempotent> chord_idempotents(Chord c) { return kIdem[unsigned(c)]; }

std::optional<Basis> mul_basis(Basis a, Basis b) {
    if (kIdem[unsigned(a)].second != kIdem[unsigned(b)].first) return std::nullopt;
    if (is_idempotent(a)) return b;
    if (is_idempotent(b)) return a;
    if (a == Basis::R1 && b == Basis::R2) return Basis::R12;
    if (a == Basis::R2 && b == Basis::R3) return Basis::R23;
    if (a == Basis::R1 && b == Basis::R23) return Basis::R123;
    if (a == Basis::R12 && b == Basis::R3) return Basis::R123;
    return std::nullopt;
}

const std::vector<std::pair<Chord, Chord>>& factorizations(Chord c) {
    static const std::array<std::vector<std::pair<Chord, Chord>>, 8> table = [] {
        std::array<std::vector<std::pair<Chord, Chord>>, 8> t;
        for (unsigned a = 2; a < 8; ++a)
            for (unsigned b = 2; b < 8; ++b)
                if (auto p = mul_basis(Basis(a), Basis(b)))
                    t[unsigned(*p)].emplace_back(Chord(a), Chord(b));
        return t;
    }();
    return table[unsigned(c)];
}

std::vector<Basis> AlgebraElement::terms() const {
    std::vector<Basis> out;
    for (unsigned i = 0; i < 8; ++i)
        if ((mask_ >> i) & 1u) out.push_back(Basis(i));
    return out;
}

AlgebraElement mul(AlgebraElement a, AlgebraElement b) {
    AlgebraElement out;
    for (unsigned i = 0; i < 8; ++i) {
        if (!((a.mask() >> i) & 1u)) continue;
        for (unsigned j = 0; j < 8; ++j) {
            if (!((b.mask() >> j) & 1u)) continue;
            if (auto p = mul_basis(Basis(i), Basis(j))) out += *p;
        }
    }
    return out;
}

std::string_view token(Basis b) { return kTokens[unsigned(b)]; }
std::string_view token(Chord c) { return kTokens[unsigned(c)]; }
std::string_view token(Idempotent i) { return kTokens[unsigned(i)]; }

std::string to_string(AlgebraElement a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (Basis b : a.terms()) {
        if (!out.empty()) out += '+';
        out += token(b);
    }
    return out;
}

std::optional<Basis> parse_basis(std::string_view tok) {
    for (unsigned i = 0; i < kTokens.size(); ++i)
        if (kTokens[i] == tok) return Basis(i);
    return std::nullopt;
}

std::optional<Chord> parse_chord(std::string_view tok) {
    auto b = parse_basis(tok);
    if (!b) return std::nullopt;
    return as_chord(*b);
}

std::optional<Idempotent> parse_idempotent(std::string_view tok) {
    if (tok == "i0") return Idempotent::I0;
    if (tok == "i1") return Idempotent::I1;
    return std::nullopt;
}

AlgebraElement parse_element(std::string_view text) {
    AlgebraElement out;
    std::size_t pos = 0;
    while (true) {
        std::size_t plus = text.find('+', pos);
        std::string_view tok = text.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (tok == "1")
            out += AlgebraElement::one();
        else if (tok == "0")
            ;
        else if (auto b = parse_basis(tok))
            out += *b;
        else
            throw std::invalid_argument("unknown algebra token '" + std::string(tok) + "'");
        if (plus == std::string_view::npos) break;
        pos = plus + 1;
    }
    return out;
}

bool composable(const ChordSequence& seq) {
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (chord_idempotents(seq[i - 1]).second != chord_idempotents(seq[i]).first) return false;
    return true;
}

std::string to_string(const ChordSequence& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ',';
        out += token(seq[i]);
    }
    return out;
}

}  // namespace borderfloer
