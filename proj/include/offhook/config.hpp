#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "offhook/controller.hpp"
#include "offhook/sim.hpp"
#include "offhook/vehicle.hpp"

namespace offhook {

/// One experiment: lengths, gains, initial state (frame-tagged), horizon,
/// integrator resolution, output paths and mode. Serializes to a single
/// JSON document; every field is also overridable from the command line.
struct ExperimentConfig {
    LengthParams lengths{0.1, 0.1, 1.0, 1.0};
    ControlGains gains{1.0, 0.1, 8, 6, 5};
    Frame initial_frame = Frame::z;
    Vec5<double> initial_state{1.0, -2.0, 2.0, -1.0, 1.0};
    int periods = 300;
    int substeps = 0;  // 0 selects the default for the gains
    std::string mode = "nilpotent-closed-loop";
    std::string out;          // trajectory/table CSV path; empty = stdout summary only
    std::string summary_out;  // run summary JSON; empty = derive from `out`
    std::vector<double> eps_list{0.1, 0.05, 0.025, 0.0125};  // order-study mode
    std::array<double, 2> open_loop_u{0.0, 0.0};             // original-open-loop mode
    double duration = 0.0;  // open-loop horizon [s]; 0 = periods * epsilon
};

inline const std::vector<std::string> kModes{"nilpotent-closed-loop", "original-open-loop",
                                             "original-closed-loop", "order-study", "verify",
                                             "params"};

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Problems that make the configuration unusable; empty means valid.
/// C1 is checked here for the closed-loop modes.
std::vector<std::string> validate(const ExperimentConfig& c);

}  // namespace offhook
