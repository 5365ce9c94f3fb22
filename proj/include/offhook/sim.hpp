#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "offhook/approx.hpp"
#include "offhook/controller.hpp"
#include "offhook/vehicle.hpp"

namespace offhook {

enum class Frame { x, z };

/// Fixed-step classic RK4; substeps_per_period <= 0 selects the default
/// 64 * max(k12, 2*k112, 3*k1112) so the fastest harmonic gets >= 64
/// steps per cycle. Sample boundaries j*epsilon are exact mesh points.
struct IntegratorConfig {
    int substeps_per_period = 0;
    std::string method = "rk4";
};

int effective_substeps(const IntegratorConfig& cfg, const ControlGains& g);

struct Trajectory {
    Frame frame = Frame::z;
    std::vector<double> times;
    std::vector<Vec5<double>> states;
    std::vector<ControlInput> controls;
    std::vector<std::size_t> sample_indices;  // nodes at t_j = j*epsilon
    // Original-closed-loop runs also carry the z-frame trace per node.
    std::vector<Vec5<double>> z_trace;
    bool conditioning_warning = false;        // |det F(x)| fell below 1e-6 |det F(0)|
    double max_constraint_residual = 0.0;     // original-system runs only
};

struct DecayReport {
    std::vector<double> sampled_norms;
    double fitted_rate = 0.0;   // +inf sentinel when the trajectory is identically zero
    double fit_quality = 0.0;   // coefficient of determination of the log-linear fit
    double overshoot = 1.0;     // max_t ||z(t)|| / ||z(0)||
    std::size_t peak_sample = 0;
    bool all_zero = false;
};

class BlowupError : public std::runtime_error {
public:
    BlowupError(double time, std::size_t node)
        : std::runtime_error("state became non-finite at t=" + std::to_string(time)
                             + " (node " + std::to_string(node) + ")"),
          time(time),
          node(node) {}
    double time;
    std::size_t node;
};

/// pi_eps-solution of the nilpotent system: coefficients frozen at the
/// left endpoint of each sampling interval, controls continuous in t
/// inside the interval.
Trajectory simulate_nilpotent_closed_loop(const ApproxParams& a, const ControlGains& g,
                                          const StateZ& z0, int periods,
                                          const IntegratorConfig& cfg);

/// Open-loop run of the vehicle under a piecewise-smooth control signal.
/// The mesh is sample_period split into the configured substeps; the run
/// covers ceil(duration / sample_period) whole mesh periods.
Trajectory simulate_original_open_loop(const LengthParams& p,
                                       const std::function<ControlInput(double)>& u,
                                       const StateX& x0, double duration, double sample_period,
                                       const IntegratorConfig& cfg);

/// Exploratory mode: the nilpotent-design feedback applied to the actual
/// vehicle, sampling z_j = x_to_z(x(t_j)) at each period. No convergence
/// guarantee is claimed.
Trajectory simulate_original_closed_loop(const LengthParams& p, const ControlGains& g,
                                         const StateX& x0, int periods,
                                         const IntegratorConfig& cfg);

struct OrderStudyPoint {
    double epsilon;
    double error;       // ||z(eps) - (1 - gamma eps) z0||
    double final_norm;  // ||z(eps)||
};

struct OrderStudyResult {
    std::vector<OrderStudyPoint> points;
    double slope = 0.0;   // least-squares slope of log error vs log epsilon
    bool trivial = false; // all errors vanish (z0 = 0)
};

/// One-period map error against (1 - gamma eps) z0 across a list of
/// sampling periods; the step size is held near eps_ref/substeps as eps
/// shrinks so integration error stays far below the measured quantity.
OrderStudyResult chen_fliess_order_study(const ApproxParams& a, double gamma,
                                         const std::array<int, 3>& k, const StateZ& z0,
                                         const std::vector<double>& eps_list);

/// Fits log||z(j eps)|| against t over the samples from the peak-norm
/// sample onward. Requires >= 10 sample instants.
DecayReport decay_report(const Trajectory& traj);

}  // namespace offhook
