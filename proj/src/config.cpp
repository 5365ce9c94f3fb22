#include "offhook/config.hpp"

#include <algorithm>
#include <cmath>

namespace offhook {

nlohmann::json to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["lengths"] = {{"d0", c.lengths.d0}, {"d1", c.lengths.d1}, {"l1", c.lengths.l1}, {"l2", c.lengths.l2}};
    j["gains"] = {{"gamma", c.gains.gamma},
                  {"epsilon", c.gains.epsilon},
                  {"k12", c.gains.k12},
                  {"k112", c.gains.k112},
                  {"k1112", c.gains.k1112}};
    j["initial_state"] = {{"frame", c.initial_frame == Frame::z ? "z" : "x"},
                          {"values", c.initial_state}};
    j["periods"] = c.periods;
    j["substeps"] = c.substeps;
    j["mode"] = c.mode;
    j["out"] = c.out;
    j["summary_out"] = c.summary_out;
    j["eps_list"] = c.eps_list;
    j["open_loop_u"] = c.open_loop_u;
    j["duration"] = c.duration;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("lengths")) {
        const auto& l = j.at("lengths");
        c.lengths = {l.value("d0", c.lengths.d0), l.value("d1", c.lengths.d1),
                     l.value("l1", c.lengths.l1), l.value("l2", c.lengths.l2)};
    }
    if (j.contains("gains")) {
        const auto& g = j.at("gains");
        c.gains.gamma = g.value("gamma", c.gains.gamma);
        c.gains.epsilon = g.value("epsilon", c.gains.epsilon);
        c.gains.k12 = g.value("k12", c.gains.k12);
        c.gains.k112 = g.value("k112", c.gains.k112);
        c.gains.k1112 = g.value("k1112", c.gains.k1112);
    }
    if (j.contains("initial_state")) {
        const auto& s = j.at("initial_state");
        const std::string frame = s.value("frame", "z");
        if (frame != "x" && frame != "z")
            throw std::invalid_argument("initial_state.frame must be \"x\" or \"z\"");
        c.initial_frame = frame == "z" ? Frame::z : Frame::x;
        if (s.contains("values")) {
            const auto vals = s.at("values").get<std::vector<double>>();
            if (vals.size() != 5)
                throw std::invalid_argument("initial_state.values must have 5 entries");
            std::copy(vals.begin(), vals.end(), c.initial_state.begin());
        }
    }
    c.periods = j.value("periods", c.periods);
    c.substeps = j.value("substeps", c.substeps);
    c.mode = j.value("mode", c.mode);
    c.out = j.value("out", c.out);
    c.summary_out = j.value("summary_out", c.summary_out);
    if (j.contains("eps_list")) c.eps_list = j.at("eps_list").get<std::vector<double>>();
    if (j.contains("open_loop_u")) {
        const auto u = j.at("open_loop_u").get<std::vector<double>>();
        if (u.size() != 2) throw std::invalid_argument("open_loop_u must have 2 entries");
        c.open_loop_u = {u[0], u[1]};
    }
    c.duration = j.value("duration", c.duration);
    return c;
}

std::vector<std::string> validate(const ExperimentConfig& c) {
    std::vector<std::string> problems;
    if (!c.lengths.valid())
        problems.push_back("lengths must be strictly positive and finite");
    if (!c.gains.valid())
        problems.push_back("gains require gamma > 0, epsilon > 0, integer multipliers >= 1");
    if (std::find(kModes.begin(), kModes.end(), c.mode) == kModes.end())
        problems.push_back("unknown mode '" + c.mode + "'");
    for (double v : c.initial_state)
        if (!std::isfinite(v)) {
            problems.push_back("initial state must be finite");
            break;
        }
    if (c.periods < 1) problems.push_back("periods must be >= 1");
    if (c.substeps < 0) problems.push_back("substeps must be >= 0 (0 = default)");
    if (c.duration < 0.0 || !std::isfinite(c.duration))
        problems.push_back("duration must be finite and >= 0");

    const bool closed_loop =
        c.mode == "nilpotent-closed-loop" || c.mode == "original-closed-loop";
    if (closed_loop && c.gains.valid() && !check_C1(c.gains).pass)
        problems.push_back("frequency multipliers fail condition C1");
    if (c.mode == "order-study") {
        if (c.eps_list.size() < 3)
            problems.push_back("order-study needs >= 3 epsilon values");
        for (double e : c.eps_list)
            if (!(e > 0.0) || !std::isfinite(e)) {
                problems.push_back("eps_list entries must be positive and finite");
                break;
            }
        if (c.gains.valid() && !check_C1(c.gains).pass)
            problems.push_back("frequency multipliers fail condition C1");
    }
    for (double u : c.open_loop_u)
        if (!std::isfinite(u)) {
            problems.push_back("open_loop_u must be finite");
            break;
        }
    return problems;
}

}  // namespace offhook
