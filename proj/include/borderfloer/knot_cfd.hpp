#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "borderfloer/structure.hpp"

namespace borderfloer {

using F2Matrix = std::vector<std::vector<std::uint8_t>>;

F2Matrix f2_identity(std::size_t n);
F2Matrix f2_multiply(const F2Matrix& a, const F2Matrix& b);

// Reduced-basis description of CFK^- with xi_p = sum_q x[p][q] eta_q and
// eta_p = sum_q y[p][q] xi_q.
struct CFKModel {
    std::string name;
    int n = 0;
    int tau = 0;
    std::vector<int> vertical_lengths;
    std::vector<int> horizontal_lengths;
    F2Matrix xi_to_eta;  // x
    F2Matrix eta_to_xi;  // y
};

struct FramedComplement {
    CFKModel model;
    int framing = 0;
    std::string side_label = "rho";
};

struct ModelReport {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

ModelReport validate_model(const CFKModel& m);

// One D side labeled fc.side_label. Throws std::invalid_argument on an invalid
// model and std::runtime_error if the result fails delta_1^2 = 0.
BorderedStructure build_cfd(const FramedComplement& fc);

std::vector<std::string> builtin_model_names();
CFKModel builtin_model(std::string_view name);

CFKModel model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const CFKModel& m);
CFKModel load_model(const std::filesystem::path& path);
// "builtin:NAME" or a path to a model file.
CFKModel resolve_model(std::string_view spec);

}  // namespace borderfloer
