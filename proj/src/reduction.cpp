#include "borderfloer/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace borderfloer {

namespace {

std::vector<int> key_ranks(const std::vector<Generator>& gens, const std::optional<std::uint64_t>& seed) {
    std::vector<int> order(gens.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return gens[std::size_t(a)].name < gens[std::size_t(b)].name; });
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    std::vector<int> rank(gens.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[std::size_t(order[r])] = int(r);
    return rank;
}

BorderedStructure cancel_impl(const BorderedStructure& s, const OperationTerm& t, std::vector<std::string>* toggled) {
    if (t.source == t.target) throw std::invalid_argument("cannot cancel a self-loop: " + s.describe(t));
    if (!s.is_invertible(t)) throw std::invalid_argument("term is not invertible: " + s.describe(t));
    if (!std::binary_search(s.terms().begin(), s.terms().end(), t))
        throw std::invalid_argument("term is not present: " + s.describe(t));
    const int i = t.source, j = t.target;
    const std::size_t nsides = s.side_count();

    std::vector<const OperationTerm*> into_j, from_i, mids{nullptr};
    std::vector<OperationTerm> kept;
    for (const auto& u : s.terms()) {
        bool touches = u.source == i || u.source == j || u.target == i || u.target == j;
        if (!touches) {
            kept.push_back(u);
            continue;
        }
        if (u.target == j && u.source != i && u.source != j) into_j.push_back(&u);
        if (u.source == i && u.target != i && u.target != j) from_i.push_back(&u);
        if (u.source == i && u.target == j && !(u == t)) {
            bool empty_inputs = true;
            for (std::size_t k = 0; k < nsides; ++k)
                if (s.sides()[k].kind == SideKind::A && !u.in[k].empty()) empty_inputs = false;
            // Parallel terms with A input are dropped.
            if (empty_inputs) mids.push_back(&u);
        }
    }

    std::vector<OperationTerm> composites;
    for (const auto* a : into_j)
        for (const auto* b : from_i)
            for (const auto* c : mids) {
                OperationTerm n;
                n.source = a->source;
                n.target = b->target;
                bool zero = false;
                for (std::size_t k = 0; k < nsides && !zero; ++k) {
                    if (s.sides()[k].kind == SideKind::D) {
                        std::optional<Basis> p = a->out[k];
                        if (c) p = mul_basis(*p, c->out[k]);
                        if (p) p = mul_basis(*p, b->out[k]);
                        if (!p)
                            zero = true;
                        else
                            n.out[k] = *p;
                    } else {
                        n.in[k] = a->in[k];
                        n.in[k].insert(n.in[k].end(), b->in[k].begin(), b->in[k].end());
                    }
                }
                if (!zero) composites.push_back(std::move(n));
            }
    canonicalize(composites);

    if (toggled)
        for (const auto& c : composites) toggled->push_back(s.describe(c));

    std::vector<int> remap(s.generators().size(), -1);
    std::vector<Generator> gens;
    for (std::size_t g = 0; g < s.generators().size(); ++g) {
        if (int(g) == i || int(g) == j) continue;
        remap[g] = int(gens.size());
        gens.push_back(s.generators()[g]);
    }
    kept.insert(kept.end(), std::make_move_iterator(composites.begin()), std::make_move_iterator(composites.end()));
    for (auto& u : kept) {
        u.source = remap[std::size_t(u.source)];
        u.target = remap[std::size_t(u.target)];
    }
    return BorderedStructure(s.sides(), std::move(gens), std::move(kept));
}

std::map<int, int> level_counts(const std::vector<Generator>& gens, const std::vector<char>& alive) {
    std::map<int, int> out;
    for (std::size_t g = 0; g < gens.size(); ++g)
        if (alive[g]) ++out[gens[g].alexander];
    return out;
}

ReductionResult reduce_complex(const BorderedStructure& s, const CancellationPolicy& policy) {
    const auto& gens = s.generators();
    const std::size_t n = gens.size();
    const bool filtered = policy.order == CancelOrder::FiltrationThenKey;
    const std::vector<int> rank = key_ranks(gens, policy.seed);
    std::vector<int> by_rank(n);
    for (std::size_t g = 0; g < n; ++g) by_rank[std::size_t(rank[g])] = int(g);

    auto drop_of = [&](int a, int b) {
        return filtered ? gens[std::size_t(a)].alexander - gens[std::size_t(b)].alexander : 0;
    };
    std::vector<std::unordered_set<int>> out(n), in(n);
    std::set<std::tuple<int, int, int>> cand;
    auto toggle = [&](int a, int b) -> bool {
        auto key = std::make_tuple(drop_of(a, b), rank[std::size_t(a)], rank[std::size_t(b)]);
        if (out[std::size_t(a)].erase(b)) {
            in[std::size_t(b)].erase(a);
            if (a != b) cand.erase(key);
            return false;
        }
        out[std::size_t(a)].insert(b);
        in[std::size_t(b)].insert(a);
        if (a != b) cand.insert(key);
        return true;
    };
    for (const auto& t : s.terms()) toggle(t.source, t.target);

    ReductionResult res;
    std::vector<char> alive(n, 1);
    int d = 0;
    while (!cand.empty()) {
        auto [dr, ra, rb] = *cand.begin();
        const int i = by_rank[std::size_t(ra)], j = by_rank[std::size_t(rb)];
        if (filtered)
            for (; d < dr; ++d) res.pages[d + 1] = level_counts(gens, alive);

        std::vector<int> ks, ls;
        for (int k : in[std::size_t(j)])
            if (k != i && k != j) ks.push_back(k);
        for (int l : out[std::size_t(i)])
            if (l != i && l != j) ls.push_back(l);
        for (int v : {i, j}) {
            std::vector<int> o(out[std::size_t(v)].begin(), out[std::size_t(v)].end());
            for (int w : o) toggle(v, w);
            std::vector<int> p(in[std::size_t(v)].begin(), in[std::size_t(v)].end());
            for (int w : p) toggle(w, v);
        }
        TraceStep step{gens[std::size_t(i)].name, gens[std::size_t(j)].name,
                       gens[std::size_t(i)].alexander - gens[std::size_t(j)].alexander, {}};
        std::sort(ks.begin(), ks.end());
        std::sort(ls.begin(), ls.end());
        for (int k : ks)
            for (int l : ls) {
                bool added = toggle(k, l);
                if (filtered && added && k != l && drop_of(k, l) < dr)
                    throw std::logic_error("cancellation created an edge of smaller drop");
                if (policy.record_trace)
                    step.toggled.push_back(gens[std::size_t(k)].name + " -> " + gens[std::size_t(l)].name);
            }
        alive[std::size_t(i)] = alive[std::size_t(j)] = 0;
        if (policy.record_trace) res.trace.push_back(std::move(step));
    }

    std::vector<int> remap(n, -1);
    std::vector<Generator> kept;
    for (std::size_t g = 0; g < n; ++g)
        if (alive[g]) {
            remap[g] = int(kept.size());
            kept.push_back(gens[g]);
            res.survivors.emplace_back(gens[g].name, gens[g].alexander);
        }
    std::vector<OperationTerm> terms;
    for (std::size_t a = 0; a < n; ++a)
        for (int b : out[a]) {
            OperationTerm t;
            t.source = remap[a];
            t.target = remap[std::size_t(b)];
            terms.push_back(t);
        }
    res.reduced = BorderedStructure(s.sides(), std::move(kept), std::move(terms));
    if (filtered) {
        res.pages[d + 1] = level_counts(gens, alive);
        if (res.survivors.size() == 1) res.tau = res.survivors.front().second;
    }
    return res;
}

ReductionResult reduce_bordered(const BorderedStructure& s, const CancellationPolicy& policy) {
    std::unordered_map<std::string, int> rank_of;
    {
        auto rank = key_ranks(s.generators(), policy.seed);
        for (std::size_t g = 0; g < rank.size(); ++g) rank_of[s.generators()[g].name] = rank[g];
    }
    ReductionResult res;
    BorderedStructure cur = s;
    while (true) {
        const auto& terms = cur.terms();
        const OperationTerm* best = nullptr;
        std::pair<int, int> best_key;
        for (std::size_t a = 0; a < terms.size();) {
            std::size_t b = a;
            bool labeled_parallel = false;
            while (b < terms.size() && terms[b].source == terms[a].source && terms[b].target == terms[a].target) {
                for (std::size_t k = 0; k < cur.side_count(); ++k)
                    if (cur.sides()[k].kind == SideKind::A && !terms[b].in[k].empty()) labeled_parallel = true;
                ++b;
            }
            const auto& src = cur.generator(terms[a].source);
            const auto& dst = cur.generator(terms[a].target);
            if (!labeled_parallel && terms[a].source != terms[a].target && src.alexander == dst.alexander)
                for (std::size_t c = a; c < b; ++c) {
                    if (!cur.is_invertible(terms[c])) continue;
                    std::pair<int, int> key{rank_of[src.name], rank_of[dst.name]};
                    if (!best || key < best_key) {
                        best = &terms[c];
                        best_key = key;
                    }
                }
            a = b;
        }
        if (!best) break;
        TraceStep step{cur.generator(best->source).name, cur.generator(best->target).name, 0, {}};
        cur = cancel_impl(cur, *best, policy.record_trace ? &step.toggled : nullptr);
        if (policy.record_trace) res.trace.push_back(std::move(step));
    }
    for (const auto& g : cur.generators()) res.survivors.emplace_back(g.name, g.alexander);
    res.reduced = std::move(cur);
    return res;
}

}  // namespace

BorderedStructure cancel_pair(const BorderedStructure& s, const OperationTerm& t) { return cancel_impl(s, t, nullptr); }

ReductionResult reduce(const BorderedStructure& s, const CancellationPolicy& policy) {
    if (s.side_count() == 0) return reduce_complex(s, policy);
    return reduce_bordered(s, policy);
}

std::size_t f2_rank(std::vector<std::vector<std::uint64_t>> rows, std::size_t cols, Execution exec) {
    std::size_t rank = 0;
    const long nrows = long(rows.size());
    for (std::size_t c = 0; c < cols && long(rank) < nrows; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t(1) << (c % 64);
        long pivot = -1;
        for (long r = long(rank); r < nrows; ++r)
            if (rows[std::size_t(r)][w] & bit) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[std::size_t(pivot)]);
        const auto& prow = rows[rank];
        const std::size_t words = prow.size();
        const long first = long(rank) + 1;
        if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static) if (nrows - first > 64)
            for (long r = first; r < nrows; ++r) {
                auto& row = rows[std::size_t(r)];
                if (row[w] & bit)
                    for (std::size_t k = w; k < words; ++k) row[k] ^= prow[k];
            }
        } else {
            for (long r = first; r < nrows; ++r) {
                auto& row = rows[std::size_t(r)];
                if (row[w] & bit)
                    for (std::size_t k = w; k < words; ++k) row[k] ^= prow[k];
            }
        }
        ++rank;
    }
    return rank;
}

HomologyDims brute_homology(const BorderedStructure& complex, Execution exec) {
    if (complex.side_count() != 0) throw std::invalid_argument("brute_homology needs a chain complex (no sides)");
    const auto& gens = complex.generators();
    const std::size_t n = gens.size();
    if (n > kBruteHomologyCap)
        throw std::length_error("brute_homology is capped at " + std::to_string(kBruteHomologyCap) + " generators");
    HomologyDims out;
    if (n == 0) return out;
    const std::size_t words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> full(n, std::vector<std::uint64_t>(words, 0));
    for (const auto& t : complex.terms())
        full[std::size_t(t.source)][std::size_t(t.target) / 64] ^= std::uint64_t(1) << (std::size_t(t.target) % 64);
    out.total = int(n) - 2 * int(f2_rank(full, n, exec));

    std::map<int, std::vector<int>> by_level;
    for (std::size_t g = 0; g < n; ++g) by_level[gens[g].alexander].push_back(int(g));
    for (const auto& [level, members] : by_level) {
        std::unordered_map<int, std::size_t> local;
        for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;
        const std::size_t m = members.size();
        std::vector<std::vector<std::uint64_t>> block(m, std::vector<std::uint64_t>((m + 63) / 64, 0));
        for (const auto& t : complex.terms()) {
            auto a = local.find(t.source), b = local.find(t.target);
            if (a == local.end() || b == local.end()) continue;
            block[a->second][b->second / 64] ^= std::uint64_t(1) << (b->second % 64);
        }
        int dim = int(m) - 2 * int(f2_rank(std::move(block), m, exec));
        if (dim) out.graded[level] = dim;
    }
    return out;
}

}  // namespace borderfloer
