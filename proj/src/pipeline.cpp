#include "borderfloer/pipeline.hpp"

#include <exception>
#include <string>

#include "borderfloer/fixtures.hpp"

namespace borderfloer {

int theorem_prediction(int tau_j, int s, int tau_k, int t) {
    if (s < 2 * tau_j && t < 2 * tau_k) return 1;
    if (s > 2 * tau_j && t > 2 * tau_k) return -1;
    return 0;
}

int whitehead_prediction(int tau_k, int t, WhiteheadSign sign) {
    if (sign == WhiteheadSign::Plus) return t < 2 * tau_k ? 1 : 0;
    return t > 2 * tau_k ? -1 : 0;
}

SatelliteReport tau_satellite(const SatelliteRequest& req, const PipelineOptions& opts) {
    const BorderedStructure& cfaa = opts.cfaa ? *opts.cfaa : fixtures().cfaa_y_b3_reference;
    BorderedStructure dj = build_cfd({req.J, req.s, "rho"});
    BorderedStructure dk = build_cfd({req.K, req.t, "sigma"});
    BorderedStructure complex = glue_filtered_complex(cfaa, dj, dk, opts.tensor);

    CancellationPolicy policy = opts.policy;
    policy.order = CancelOrder::FiltrationThenKey;
    ReductionResult red = reduce(complex, policy);

    SatelliteReport rep;
    rep.complex_generators = complex.generators().size();
    rep.complex_terms = complex.terms().size();
    rep.total_homology_dim = int(red.survivors.size());
    auto where = [&] {
        return req.J.name + "," + std::to_string(req.s) + "," + req.K.name + "," + std::to_string(req.t);
    };
    if (rep.total_homology_dim != 1 || !red.tau)
        throw InternalConsistencyError("satellite (" + where() + ") has total homology of dimension " +
                                       std::to_string(rep.total_homology_dim));
    rep.tau = *red.tau;
    if (!red.pages.empty()) rep.hfk_dims = red.pages.begin()->second;
    rep.theorem_prediction = theorem_prediction(req.J.tau, req.s, req.K.tau, req.t);
    rep.agrees = rep.tau == rep.theorem_prediction;
    rep.trace = std::move(red.trace);
    return rep;
}

SatelliteReport tau_whitehead(const CFKModel& K, int t, WhiteheadSign sign, const PipelineOptions& opts) {
    SatelliteRequest req{builtin_model("unknot"), sign == WhiteheadSign::Plus ? -1 : 1, K, t};
    SatelliteReport rep = tau_satellite(req, opts);
    rep.theorem_prediction = whitehead_prediction(K.tau, t, sign);
    rep.agrees = rep.tau == rep.theorem_prediction;
    return rep;
}

std::vector<SweepRow> sweep(const CFKModel& J, const CFKModel& K, IntRange s_range, IntRange t_range,
                            const PipelineOptions& opts, Execution exec) {
    if (s_range.size() > kMaxSweepSide || t_range.size() > kMaxSweepSide)
        throw std::invalid_argument("sweep ranges are limited to " + std::to_string(kMaxSweepSide) + " values each");
    const int ns = s_range.size(), nt = t_range.size();
    std::vector<SweepRow> rows(std::size_t(ns) * std::size_t(nt));
    if (rows.empty()) return rows;
    // Load shared data before any worker touches it.
    const BorderedStructure* cfaa = opts.cfaa ? opts.cfaa : &fixtures().cfaa_y_b3_reference;

    auto cell = [&](int idx) {
        PipelineOptions o = opts;
        o.cfaa = cfaa;
        if (exec == Execution::Parallel) o.tensor.execution = Execution::Serial;
        SweepRow& row = rows[std::size_t(idx)];
        row.s = s_range.lo + idx / nt;
        row.t = t_range.lo + idx % nt;
        SatelliteReport rep = tau_satellite({J, row.s, K, row.t}, o);
        row.tau = rep.tau;
        row.prediction = rep.theorem_prediction;
        row.agrees = rep.agrees;
        row.hfk_dims = std::move(rep.hfk_dims);
    };

    const int total = int(rows.size());
    if (exec == Execution::Serial) {
        for (int i = 0; i < total; ++i) cell(i);
        return rows;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < total; ++i) {
        try {
            cell(i);
        } catch (...) {
#pragma omp critical(borderfloer_sweep_error)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace borderfloer
