#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "borderfloer/box_tensor.hpp"
#include "borderfloer/knot_cfd.hpp"
#include "borderfloer/reduction.hpp"

namespace borderfloer {

// Raised when a satellite complex does not have one-dimensional total homology.
class InternalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SatelliteRequest {
    CFKModel J;
    int s = 0;
    CFKModel K;
    int t = 0;
};

struct SatelliteReport {
    int tau = 0;
    std::map<int, int> hfk_dims;
    int total_homology_dim = 0;
    int theorem_prediction = 0;
    bool agrees = false;
    std::size_t complex_generators = 0;
    std::size_t complex_terms = 0;
    std::vector<TraceStep> trace;
};

struct PipelineOptions {
    // AA bimodule to glue against; null means fixtures().cfaa_y_b3_reference.
    const BorderedStructure* cfaa = nullptr;
    TensorOptions tensor;
    CancellationPolicy policy;
};

enum class WhiteheadSign { Plus, Minus };

int theorem_prediction(int tau_j, int s, int tau_k, int t);
int whitehead_prediction(int tau_k, int t, WhiteheadSign sign);

SatelliteReport tau_satellite(const SatelliteRequest& req, const PipelineOptions& opts = {});
SatelliteReport tau_whitehead(const CFKModel& K, int t, WhiteheadSign sign, const PipelineOptions& opts = {});

struct IntRange {
    int lo = 0;
    int hi = -1;  // inclusive; lo > hi is empty
    int size() const { return hi < lo ? 0 : hi - lo + 1; }
};

struct SweepRow {
    int s = 0;
    int t = 0;
    int tau = 0;
    int prediction = 0;
    bool agrees = false;
    std::map<int, int> hfk_dims;
};

inline constexpr int kMaxSweepSide = 25;

// Rows ordered by (s, t). Throws std::invalid_argument if a range exceeds kMaxSweepSide values.
std::vector<SweepRow> sweep(const CFKModel& J, const CFKModel& K, IntRange s_range, IntRange t_range,
                            const PipelineOptions& opts = {}, Execution exec = Execution::Parallel);

}  // namespace borderfloer
