#include "borderfloer/box_tensor.hpp"

#include <array>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace borderfloer {

bool has_forbidden_pair(const ChordSequence& seq) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        Chord a = seq[i], b = seq[i + 1];
        if ((a == Chord::R1 && (b == Chord::R2 || b == Chord::R23)) || (a == Chord::R2 && b == Chord::R3) ||
            (a == Chord::R12 && b == Chord::R3))
            return true;
    }
    return false;
}

namespace {

struct Origin {
    bool from_left;
    std::size_t side;
};

class Tensor {
public:
    Tensor(const TensorPlan& plan, const TensorOptions& opts)
        : L_(plan.left), R_(plan.right), opts_(opts) {
        auto ls = L_.side_index(plan.left_side);
        auto rs = R_.side_index(plan.right_side);
        if (!ls) throw std::invalid_argument("left structure has no side '" + plan.left_side + "'");
        if (!rs) throw std::invalid_argument("right structure has no side '" + plan.right_side + "'");
        if (L_.sides()[*ls].kind != SideKind::A)
            throw std::invalid_argument("left side '" + plan.left_side + "' is not of kind A");
        if (R_.sides()[*rs].kind != SideKind::D)
            throw std::invalid_argument("right side '" + plan.right_side + "' is not of kind D");
        bool lb = is_bounded(L_), rb = is_bounded(R_);
        if (!lb && !rb) throw UnboundedPairError("neither factor of the box tensor product is bounded");
        ls_ = *ls;
        rs_ = *rs;
        cap_ = opts.max_chain_length;
        if (!cap_ && !lb) cap_ = R_.generators().size();

        for (std::size_t k = 0; k < L_.side_count(); ++k)
            if (k != ls_) {
                sides_.push_back(L_.sides()[k]);
                origin_.push_back({true, k});
            }
        for (std::size_t k = 0; k < R_.side_count(); ++k)
            if (k != rs_) {
                sides_.push_back(R_.sides()[k]);
                origin_.push_back({false, k});
            }
        if (sides_.size() > kMaxSides) throw std::invalid_argument("box tensor would have more than two sides");
        if (sides_.size() == 2 && sides_[0].label == sides_[1].label)
            throw std::invalid_argument("box tensor would repeat side label '" + sides_[0].label + "'");

        const std::size_t nl = L_.generators().size(), nr = R_.generators().size();
        pair_.assign(nl * nr, -1);
        for (std::size_t x = 0; x < nl; ++x)
            for (std::size_t y = 0; y < nr; ++y) {
                const auto& gx = L_.generators()[x];
                const auto& gy = R_.generators()[y];
                if (gx.idem[ls_] != gy.idem[rs_]) continue;
                Generator g;
                g.name = gx.name + "|" + gy.name;
                g.alexander = gx.alexander + gy.alexander;
                for (std::size_t k = 0; k < sides_.size(); ++k)
                    g.idem[k] = origin_[k].from_left ? gx.idem[origin_[k].side] : gy.idem[origin_[k].side];
                pair_[x * nr + y] = int(gens_.size());
                gens_.push_back(std::move(g));
            }
        by_output_.assign(nr, {});
        for (std::size_t i = 0; i < R_.terms().size(); ++i) {
            const auto& t = R_.terms()[i];
            by_output_[std::size_t(t.source)][unsigned(t.out[rs_])].push_back(int(i));
        }
    }

    BorderedStructure run() {
        std::vector<OperationTerm> terms;
        const auto& lterms = L_.terms();
        const long n = long(lterms.size());
        if (opts_.execution == Execution::Parallel) {
#pragma omp parallel
            {
                std::vector<OperationTerm> local;
#pragma omp for schedule(dynamic, 4) nowait
                for (long i = 0; i < n; ++i) pair_left_term(lterms[std::size_t(i)], local);
#pragma omp critical(borderfloer_box_merge)
                terms.insert(terms.end(), std::make_move_iterator(local.begin()),
                             std::make_move_iterator(local.end()));
            }
        } else {
            for (long i = 0; i < n; ++i) pair_left_term(lterms[std::size_t(i)], terms);
        }
        unit_pairings(terms);
        return BorderedStructure(sides_, gens_, std::move(terms));
    }

private:
    struct Chain {
        int at;
        std::array<Basis, kMaxSides> out;
        std::array<ChordSequence, kMaxSides> in;
    };

    int pair_of(int x, int y) const {
        return pair_[std::size_t(x) * R_.generators().size() + std::size_t(y)];
    }

    void pair_left_term(const OperationTerm& lt, std::vector<OperationTerm>& sink) const {
        const ChordSequence& seq = lt.in[ls_];
        if (opts_.prune && has_forbidden_pair(seq)) return;
        if (cap_ && seq.size() > *cap_) return;
        const Idempotent want = L_.generator(lt.source).idem[ls_];
        const int nr = int(R_.generators().size());
        std::vector<std::pair<Chain, std::size_t>> stack;
        for (int y = 0; y < nr; ++y) {
            if (R_.generator(y).idem[rs_] != want) continue;
            Chain start{y, {}, {}};
            for (std::size_t k = 0; k < R_.side_count(); ++k)
                if (R_.sides()[k].kind == SideKind::D) start.out[k] = to_basis(R_.generator(y).idem[k]);
            stack.push_back({std::move(start), 0});
            while (!stack.empty()) {
                auto [chain, pos] = std::move(stack.back());
                stack.pop_back();
                if (pos == seq.size()) {
                    emit(lt, y, chain, sink);
                    continue;
                }
                for (int ri : by_output_[std::size_t(chain.at)][unsigned(to_basis(seq[pos]))]) {
                    const auto& rt = R_.terms()[std::size_t(ri)];
                    Chain next{rt.target, chain.out, chain.in};
                    bool zero = false;
                    for (std::size_t k = 0; k < R_.side_count() && !zero; ++k) {
                        if (k == rs_) continue;
                        if (R_.sides()[k].kind == SideKind::D) {
                            auto p = mul_basis(chain.out[k], rt.out[k]);
                            if (!p)
                                zero = true;
                            else
                                next.out[k] = *p;
                        } else {
                            next.in[k].insert(next.in[k].end(), rt.in[k].begin(), rt.in[k].end());
                        }
                    }
                    if (!zero) stack.push_back({std::move(next), pos + 1});
                }
            }
        }
    }

    void emit(const OperationTerm& lt, int y, const Chain& chain, std::vector<OperationTerm>& sink) const {
        int src = pair_of(lt.source, y), dst = pair_of(lt.target, chain.at);
        if (src < 0 || dst < 0) throw std::logic_error("box tensor: idempotent bookkeeping failed");
        OperationTerm t;
        t.source = src;
        t.target = dst;
        for (std::size_t k = 0; k < sides_.size(); ++k) {
            const auto& o = origin_[k];
            if (o.from_left) {
                t.out[k] = lt.out[o.side];
                t.in[k] = lt.in[o.side];
            } else {
                t.out[k] = chain.out[o.side];
                t.in[k] = chain.in[o.side];
            }
        }
        sink.push_back(std::move(t));
    }

    void unit_pairings(std::vector<OperationTerm>& sink) const {
        const int nl = int(L_.generators().size());
        for (const auto& rt : R_.terms()) {
            if (!is_idempotent(rt.out[rs_])) continue;
            for (int x = 0; x < nl; ++x) {
                int src = pair_of(x, rt.source), dst = pair_of(x, rt.target);
                if (src < 0) continue;
                if (dst < 0) throw std::logic_error("box tensor: idempotent bookkeeping failed");
                OperationTerm t;
                t.source = src;
                t.target = dst;
                for (std::size_t k = 0; k < sides_.size(); ++k) {
                    const auto& o = origin_[k];
                    if (o.from_left) {
                        if (L_.sides()[o.side].kind == SideKind::D) t.out[k] = to_basis(L_.generator(x).idem[o.side]);
                    } else {
                        t.out[k] = rt.out[o.side];
                        t.in[k] = rt.in[o.side];
                    }
                }
                sink.push_back(std::move(t));
            }
        }
    }

    const BorderedStructure& L_;
    const BorderedStructure& R_;
    TensorOptions opts_;
    std::size_t ls_ = 0, rs_ = 0;
    std::optional<std::size_t> cap_;
    std::vector<SideSpec> sides_;
    std::vector<Origin> origin_;
    std::vector<Generator> gens_;
    std::vector<int> pair_;
    std::vector<std::array<std::vector<int>, 8>> by_output_;
};

}  // namespace

BorderedStructure box(const TensorPlan& plan, const TensorOptions& opts) { return Tensor(plan, opts).run(); }

BorderedStructure glue_filtered_complex(const BorderedStructure& cfaa, const BorderedStructure& j_cfd,
                                        const BorderedStructure& k_cfd, const TensorOptions& opts) {
    BorderedStructure mid = box({cfaa, "rho", j_cfd, "rho"}, opts);
    return box({mid, "sigma", k_cfd, "sigma"}, opts);
}

}  // namespace borderfloer
