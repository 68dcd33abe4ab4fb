#pragma once

#include <string>
#include <vector>

#include "borderfloer/structure.hpp"

namespace borderfloer::testing {

inline Generator gen(std::string name, Idempotent a = Idempotent::I0, Idempotent b = Idempotent::I0, int alex = 0) {
    Generator g;
    g.name = std::move(name);
    g.idem = {a, b};
    g.alexander = alex;
    return g;
}

inline OperationTerm d_term(int src, int dst, Basis a, Basis b = Basis::I0) {
    OperationTerm t;
    t.source = src;
    t.target = dst;
    t.out = {a, b};
    return t;
}

inline OperationTerm a_term(int src, int dst, ChordSequence a = {}, ChordSequence b = {}) {
    OperationTerm t;
    t.source = src;
    t.target = dst;
    t.in = {std::move(a), std::move(b)};
    return t;
}

inline OperationTerm arrow(int src, int dst) {
    OperationTerm t;
    t.source = src;
    t.target = dst;
    return t;
}

inline std::vector<SideSpec> one_side(std::string label, SideKind kind) { return {{std::move(label), kind}}; }

}  // namespace borderfloer::testing
