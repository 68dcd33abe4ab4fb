#include "borderfloer/structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace borderfloer {

void canonicalize(std::vector<OperationTerm>& terms) {
    std::sort(terms.begin(), terms.end());
    std::size_t w = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) % 2 == 1) {
            if (w != i) terms[w] = std::move(terms[i]);
            ++w;
        }
        i = j;
    }
    terms.resize(w);
}

BorderedStructure::BorderedStructure(std::vector<SideSpec> sides, std::vector<Generator> generators,
                                     std::vector<OperationTerm> terms)
    : sides_(std::move(sides)), generators_(std::move(generators)), terms_(std::move(terms)) {
    if (sides_.size() > kMaxSides) throw std::invalid_argument("at most two sides are supported");
    if (sides_.size() == 2 && sides_[0].label == sides_[1].label)
        throw std::invalid_argument("duplicate side label '" + sides_[0].label + "'");
    by_name_.reserve(generators_.size());
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (!by_name_.emplace(generators_[i].name, int(i)).second)
            throw std::invalid_argument("duplicate generator name '" + generators_[i].name + "'");
    const int n = int(generators_.size());
    for (auto& t : terms_) {
        if (t.source < 0 || t.source >= n || t.target < 0 || t.target >= n)
            throw std::invalid_argument("term endpoint out of range");
        for (std::size_t s = sides_.size(); s < kMaxSides; ++s) {
            t.out[s] = Basis::I0;
            t.in[s].clear();
        }
        for (std::size_t s = 0; s < sides_.size(); ++s) {
            if (sides_[s].kind == SideKind::A)
                t.out[s] = Basis::I0;
            else
                t.in[s].clear();
        }
    }
    canonicalize(terms_);
}

std::optional<std::size_t> BorderedStructure::side_index(std::string_view label) const {
    for (std::size_t i = 0; i < sides_.size(); ++i)
        if (sides_[i].label == label) return i;
    return std::nullopt;
}

std::optional<int> BorderedStructure::generator_index(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

bool BorderedStructure::has_side_kind(SideKind k) const {
    return std::any_of(sides_.begin(), sides_.end(), [&](const SideSpec& s) { return s.kind == k; });
}

bool BorderedStructure::is_invertible(const OperationTerm& t) const {
    for (std::size_t s = 0; s < sides_.size(); ++s) {
        if (sides_[s].kind == SideKind::D && !is_idempotent(t.out[s])) return false;
        if (sides_[s].kind == SideKind::A && !t.in[s].empty()) return false;
    }
    return true;
}

std::string BorderedStructure::describe(const OperationTerm& t) const {
    std::string out = generators_[std::size_t(t.source)].name + " -> " + generators_[std::size_t(t.target)].name;
    for (std::size_t s = 0; s < sides_.size(); ++s) {
        out += ' ';
        out += sides_[s].label;
        out += ':';
        if (sides_[s].kind == SideKind::D)
            out += token(t.out[s]);
        else
            out += "(" + to_string(t.in[s]) + ")";
    }
    return out;
}

BorderedStructure relabel(const BorderedStructure& s,
                          const std::vector<std::pair<std::string, std::string>>& renames) {
    auto sides = s.sides();
    for (auto& side : sides)
        for (const auto& [from, to] : renames)
            if (side.label == from) {
                side.label = to;
                break;
            }
    return BorderedStructure(std::move(sides), s.generators(), s.terms());
}

void ValidationReport::merge(const ValidationReport& o) {
    structural.insert(structural.end(), o.structural.begin(), o.structural.end());
    relation.insert(relation.end(), o.relation.begin(), o.relation.end());
    offending.insert(offending.end(), o.offending.begin(), o.offending.end());
}

std::string ValidationReport::summary(std::size_t max_lines) const {
    if (ok()) return "ok";
    std::ostringstream os;
    std::size_t shown = 0;
    for (const auto* list : {&structural, &relation})
        for (const auto& line : *list) {
            if (shown++ == max_lines) {
                os << "... (" << structural.size() + relation.size() << " problems)\n";
                return os.str();
            }
            os << line << '\n';
        }
    return os.str();
}

ValidationReport validate_structural(const BorderedStructure& s) {
    ValidationReport rep;
    const auto& sides = s.sides();
    for (const auto& t : s.terms()) {
        const auto& src = s.generator(t.source);
        const auto& dst = s.generator(t.target);
        if (src.alexander < dst.alexander)
            rep.structural.push_back("raises filtration: " + s.describe(t));
        for (std::size_t k = 0; k < sides.size(); ++k) {
            if (sides[k].kind == SideKind::D) {
                auto [l, r] = basis_idempotents(t.out[k]);
                if (l != src.idem[k] || r != dst.idem[k])
                    rep.structural.push_back("idempotent mismatch on " + sides[k].label + ": " + s.describe(t));
            } else {
                const auto& seq = t.in[k];
                bool bad = !composable(seq);
                if (seq.empty())
                    bad = src.idem[k] != dst.idem[k];
                else
                    bad = bad || chord_idempotents(seq.front()).first != src.idem[k] ||
                          chord_idempotents(seq.back()).second != dst.idem[k];
                if (bad) rep.structural.push_back("idempotent mismatch on " + sides[k].label + ": " + s.describe(t));
            }
        }
    }
    return rep;
}

namespace {

using Inputs = std::array<ChordSequence, kMaxSides>;

// Evaluates the structure relation (compositions of two terms plus
// multiplication of adjacent input chords) at a generator and input tuple.
class RelationEvaluator {
public:
    explicit RelationEvaluator(const BorderedStructure& s) : s_(s) {
        for (std::size_t k = 0; k < s.side_count(); ++k)
            (s.sides()[k].kind == SideKind::A ? a_sides_ : d_sides_).push_back(k);
        const auto& terms = s.terms();
        for (std::size_t i = 0; i < terms.size(); ++i)
            index_[Key{terms[i].source, terms[i].in}].push_back(int(i));
    }

    struct Residual {
        int target;
        std::array<Basis, kMaxSides> out;
        friend auto operator<=>(const Residual&, const Residual&) = default;
    };

    std::vector<Residual> evaluate(int x, const Inputs& in) const {
        std::vector<Residual> acc;
        const auto& terms = s_.terms();
        std::array<std::size_t, kMaxSides> len{};
        for (std::size_t k : a_sides_) len[k] = in[k].size();
        for (std::size_t p0 = 0; p0 <= len[0]; ++p0)
            for (std::size_t p1 = 0; p1 <= len[1]; ++p1) {
                Inputs pre, post;
                std::array<std::size_t, kMaxSides> cut{p0, p1};
                for (std::size_t k : a_sides_) {
                    pre[k].assign(in[k].begin(), in[k].begin() + std::ptrdiff_t(cut[k]));
                    post[k].assign(in[k].begin() + std::ptrdiff_t(cut[k]), in[k].end());
                }
                const auto* first = find(x, pre);
                if (!first) continue;
                for (int i1 : *first) {
                    const auto& t1 = terms[std::size_t(i1)];
                    const auto* second = find(t1.target, post);
                    if (!second) continue;
                    for (int i2 : *second) {
                        const auto& t2 = terms[std::size_t(i2)];
                        Residual r{t2.target, {}};
                        bool zero = false;
                        for (std::size_t k : d_sides_) {
                            auto p = mul_basis(t1.out[k], t2.out[k]);
                            if (!p) {
                                zero = true;
                                break;
                            }
                            r.out[k] = *p;
                        }
                        if (!zero) acc.push_back(r);
                    }
                }
            }
        for (std::size_t k : a_sides_)
            for (std::size_t p = 0; p + 1 < in[k].size(); ++p) {
                auto prod = mul_basis(to_basis(in[k][p]), to_basis(in[k][p + 1]));
                if (!prod) continue;
                Inputs merged = in;
                merged[k].erase(merged[k].begin() + std::ptrdiff_t(p));
                merged[k][p] = *as_chord(*prod);
                if (const auto* hit = find(x, merged))
                    for (int i : *hit) acc.push_back({terms[std::size_t(i)].target, terms[std::size_t(i)].out});
            }
        std::sort(acc.begin(), acc.end());
        std::vector<Residual> odd;
        for (std::size_t i = 0; i < acc.size();) {
            std::size_t j = i + 1;
            while (j < acc.size() && acc[j] == acc[i]) ++j;
            if ((j - i) % 2) odd.push_back(acc[i]);
            i = j;
        }
        return odd;
    }

    const std::vector<std::size_t>& a_sides() const { return a_sides_; }

private:
    struct Key {
        int source;
        Inputs in;
        friend auto operator<=>(const Key&, const Key&) = default;
    };
    const std::vector<int>* find(int x, const Inputs& in) const {
        auto it = index_.find(Key{x, in});
        return it == index_.end() ? nullptr : &it->second;
    }

    const BorderedStructure& s_;
    std::vector<std::size_t> a_sides_, d_sides_;
    std::map<Key, std::vector<int>> index_;
};

bool input_fits(const BorderedStructure& s, int x, const Inputs& in) {
    for (std::size_t k = 0; k < s.side_count(); ++k) {
        const auto& seq = in[k];
        if (seq.empty()) continue;
        if (s.sides()[k].kind == SideKind::D) return false;
        if (!composable(seq) || chord_idempotents(seq.front()).first != s.generator(x).idem[k]) return false;
    }
    return true;
}

std::string describe_input(const BorderedStructure& s, int x, const Inputs& in) {
    std::string out = "at " + s.generator(x).name;
    for (std::size_t k = 0; k < s.side_count(); ++k)
        if (s.sides()[k].kind == SideKind::A) out += " " + s.sides()[k].label + "=(" + to_string(in[k]) + ")";
    return out;
}

void check_inputs(const BorderedStructure& s, const std::set<std::pair<int, Inputs>>& inputs,
                  ValidationReport& rep) {
    RelationEvaluator ev(s);
    for (const auto& [x, in] : inputs) {
        auto res = ev.evaluate(x, in);
        for (const auto& r : res) {
            OperationTerm t{x, r.target, r.out, {}};
            std::string line = "relation fails " + describe_input(s, x, in) + ": leftover " + s.describe(t);
            rep.relation.push_back(std::move(line));
            rep.offending.emplace_back(s.generator(x).name, s.generator(r.target).name);
        }
    }
}

void sequences_from(Idempotent start, int max_len, std::vector<ChordSequence>& out) {
    std::vector<ChordSequence> frontier{{}};
    out.push_back({});
    for (int len = 0; len < max_len; ++len) {
        std::vector<ChordSequence> next;
        for (const auto& seq : frontier) {
            Idempotent at = seq.empty() ? start : chord_idempotents(seq.back()).second;
            for (unsigned c = unsigned(Chord::R1); c <= unsigned(Chord::R123); ++c) {
                if (chord_idempotents(Chord(c)).first != at) continue;
                auto ext = seq;
                ext.push_back(Chord(c));
                next.push_back(std::move(ext));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
}

}  // namespace

ValidationReport validate_type_d(const BorderedStructure& s) {
    ValidationReport rep;
    if (s.has_side_kind(SideKind::A)) {
        rep.structural.push_back("validate_type_d needs all sides of kind D");
        return rep;
    }
    std::set<std::pair<int, Inputs>> inputs;
    for (int x = 0; x < int(s.generators().size()); ++x) inputs.insert({x, Inputs{}});
    check_inputs(s, inputs, rep);
    return rep;
}

ValidationReport validate_a_infinity(const BorderedStructure& s, SequencePool pool) {
    ValidationReport rep;
    if (!s.has_side_kind(SideKind::A)) {
        rep.structural.push_back("validate_a_infinity needs at least one side of kind A");
        return rep;
    }
    const int n = int(s.generators().size());
    std::set<std::pair<int, Inputs>> inputs;
    auto add = [&](int x, const Inputs& in) {
        if (input_fits(s, x, in)) inputs.insert({x, in});
    };
    std::vector<std::size_t> a_sides;
    for (std::size_t k = 0; k < s.side_count(); ++k)
        if (s.sides()[k].kind == SideKind::A) a_sides.push_back(k);

    if (pool.kind == SequencePool::Kind::Exhaustive) {
        for (int x = 0; x < n; ++x) {
            std::array<std::vector<ChordSequence>, kMaxSides> per_side;
            for (std::size_t k = 0; k < kMaxSides; ++k) {
                if (k < s.side_count() && s.sides()[k].kind == SideKind::A)
                    sequences_from(s.generator(x).idem[k], pool.max_length, per_side[k]);
                else
                    per_side[k].push_back({});
            }
            for (const auto& a : per_side[0])
                for (const auto& b : per_side[1])
                    if (int(a.size() + b.size()) <= pool.max_length) add(x, Inputs{a, b});
        }
        check_inputs(s, inputs, rep);
        return rep;
    }

    std::vector<std::vector<const OperationTerm*>> by_source(static_cast<std::size_t>(n));
    for (const auto& t : s.terms()) by_source[std::size_t(t.source)].push_back(&t);
    for (const auto& t1 : s.terms()) {
        for (const auto* t2 : by_source[std::size_t(t1.target)]) {
            Inputs cat = t1.in;
            for (std::size_t k : a_sides) cat[k].insert(cat[k].end(), t2->in[k].begin(), t2->in[k].end());
            add(t1.source, cat);
        }
        for (std::size_t k : a_sides) {
            const auto& seq = t1.in[k];
            for (std::size_t p = 0; p < seq.size(); ++p)
                for (auto [a, b] : factorizations(seq[p])) {
                    Inputs split = t1.in;
                    split[k][p] = b;
                    split[k].insert(split[k].begin() + std::ptrdiff_t(p), a);
                    add(t1.source, split);
                }
            for (unsigned c = unsigned(Chord::R1); c <= unsigned(Chord::R123); ++c) {
                Inputs ext = t1.in;
                ext[k].push_back(Chord(c));
                add(t1.source, ext);
            }
        }
    }
    // Contiguous subsequences of each term's inputs, at every generator that can consume them.
    std::set<Inputs> subs;
    for (const auto& t : s.terms()) {
        std::array<std::vector<ChordSequence>, kMaxSides> parts;
        for (std::size_t k = 0; k < kMaxSides; ++k) {
            const auto& seq = t.in[k];
            parts[k].push_back({});
            for (std::size_t i = 0; i < seq.size(); ++i)
                for (std::size_t j = i + 1; j <= seq.size(); ++j)
                    parts[k].emplace_back(seq.begin() + std::ptrdiff_t(i), seq.begin() + std::ptrdiff_t(j));
        }
        for (const auto& a : parts[0])
            for (const auto& b : parts[1]) subs.insert(Inputs{a, b});
    }
    for (const auto& in : subs)
        for (int x = 0; x < n; ++x) add(x, in);
    check_inputs(s, inputs, rep);
    return rep;
}

ValidationReport validate_generic(const BorderedStructure& s) {
    ValidationReport rep = validate_structural(s);
    if (!rep.ok()) return rep;
    if (s.has_side_kind(SideKind::A))
        rep.merge(validate_a_infinity(s));
    else
        rep.merge(validate_type_d(s));
    return rep;
}

bool is_bounded(const BorderedStructure& s) {
    if (!s.has_side_kind(SideKind::D) && s.side_count() > 0) return true;
    const std::size_t n = s.generators().size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& t : s.terms()) adj[std::size_t(t.source)].push_back(t.target);
    enum : std::uint8_t { White, Grey, Black };
    std::vector<std::uint8_t> color(n, White);
    std::vector<std::pair<int, std::size_t>> stack;
    for (std::size_t root = 0; root < n; ++root) {
        if (color[root] != White) continue;
        stack.push_back({int(root), 0});
        color[root] = Grey;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < adj[std::size_t(v)].size()) {
                int w = adj[std::size_t(v)][next++];
                if (color[std::size_t(w)] == Grey) return false;
                if (color[std::size_t(w)] == White) {
                    color[std::size_t(w)] = Grey;
                    stack.push_back({w, 0});
                }
            } else {
                color[std::size_t(v)] = Black;
                stack.pop_back();
            }
        }
    }
    return true;
}

}  // namespace borderfloer
