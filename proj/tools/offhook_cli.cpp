#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "offhook/approx.hpp"
#include "offhook/config.hpp"
#include "offhook/csv.hpp"
#include "offhook/sim.hpp"
#include "offhook/sweeps.hpp"

namespace {

using namespace offhook;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitNumerical = 3;

constexpr double kOrderSlopeFloor = 4.0 / 3.0 - 0.1;

int fail_config(const std::vector<std::string>& problems) {
    for (const auto& p : problems) std::cerr << "config error: " << p << "\n";
    return kExitBadConfig;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << body;
}

std::string summary_path(const ExperimentConfig& cfg) {
    if (!cfg.summary_out.empty()) return cfg.summary_out;
    if (!cfg.out.empty()) return cfg.out + ".summary.json";
    return {};
}

int run_params(const ExperimentConfig& cfg) {
    const ApproxParams a = compute_params(cfg.lengths);
    std::cout << std::setprecision(12) << "alpha = " << a.alpha << "\n"
              << "kappa = " << a.kappa << "\n"
              << "theta = " << a.theta << "\n"
              << "beta  = " << a.beta << "\n";
    if (!cfg.out.empty()) {
        nlohmann::json j{{"alpha", a.alpha}, {"kappa", a.kappa}, {"theta", a.theta}, {"beta", a.beta}};
        write_file(cfg.out, j.dump(2) + "\n");
    }
    return kExitOk;
}

int run_verify(const ExperimentConfig& cfg, sweeps::Exec mode) {
    const auto results = sweeps::standard_battery(cfg.gains, mode);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  (worst " << r.worst
                  << ", tol " << r.threshold << ")";
        if (!r.detail.empty()) std::cout << "  " << r.detail;
        std::cout << "\n";
    }
    std::cout << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return all_pass ? kExitOk : kExitCheckFailed;
}

nlohmann::json decay_json(const DecayReport& rep) {
    nlohmann::json j;
    j["fitted_rate"] = rep.fitted_rate;
    j["fit_quality"] = rep.fit_quality;
    j["overshoot"] = rep.overshoot;
    j["peak_sample"] = rep.peak_sample;
    j["all_zero"] = rep.all_zero;
    return j;
}

int run_simulate(const ExperimentConfig& cfg) {
    const IntegratorConfig icfg{cfg.substeps};
    Trajectory traj;

    if (cfg.mode == "nilpotent-closed-loop") {
        const ApproxParams a = compute_params(cfg.lengths);
        const StateZ z0 = cfg.initial_frame == Frame::z
                              ? StateZ{cfg.initial_state}
                              : x_to_z(cfg.lengths, StateX{cfg.initial_state});
        traj = simulate_nilpotent_closed_loop(a, cfg.gains, z0, cfg.periods, icfg);
    } else if (cfg.mode == "original-open-loop") {
        const StateX x0 = cfg.initial_frame == Frame::x
                              ? StateX{cfg.initial_state}
                              : z_to_x(cfg.lengths, StateZ{cfg.initial_state});
        const double duration =
            cfg.duration > 0.0 ? cfg.duration : cfg.periods * cfg.gains.epsilon;
        const ControlInput u{cfg.open_loop_u[0], cfg.open_loop_u[1]};
        traj = simulate_original_open_loop(
            cfg.lengths, [u](double) { return u; }, x0, duration, cfg.gains.epsilon, icfg);
    } else {  // original-closed-loop
        const StateX x0 = cfg.initial_frame == Frame::x
                              ? StateX{cfg.initial_state}
                              : z_to_x(cfg.lengths, StateZ{cfg.initial_state});
        traj = simulate_original_closed_loop(cfg.lengths, cfg.gains, x0, cfg.periods, icfg);
    }

    nlohmann::json summary;
    summary["config"] = to_json(cfg);
    summary["nodes"] = traj.states.size();
    summary["samples"] = traj.sample_indices.size();
    if (traj.frame == Frame::x) {
        summary["max_constraint_residual"] = traj.max_constraint_residual;
        summary["conditioning_warning"] = traj.conditioning_warning;
        std::cout << "max constraint residual " << traj.max_constraint_residual << "\n";
        if (traj.conditioning_warning)
            std::cout << "warning: det F(x) dropped below 1e-6 of det F(0); the transform is"
                         " poorly conditioned along this run\n";
    }
    if (cfg.mode == "original-closed-loop")
        std::cout << "note: closed loop on the original vehicle is exploratory; no convergence"
                     " guarantee\n";

    const bool closed_loop = cfg.mode != "original-open-loop";
    if (closed_loop && traj.sample_indices.size() >= 10) {
        const DecayReport rep = decay_report(traj);
        bool envelope = true;
        for (std::size_t s = 1; s < rep.sampled_norms.size(); ++s)
            envelope = envelope && rep.sampled_norms[s] <= rep.sampled_norms[0];
        summary["decay"] = decay_json(rep);
        summary["envelope_bound_held"] = envelope;
        summary["envelope_epsilon"] = cfg.gains.epsilon;  // largest tested = this run's epsilon
        std::cout << "fitted decay rate " << rep.fitted_rate << " (fit quality "
                  << rep.fit_quality << ")\n"
                  << "overshoot " << rep.overshoot << "\n"
                  << "sampled norm: initial " << rep.sampled_norms.front() << ", final "
                  << rep.sampled_norms.back() << "\n"
                  << "envelope bound ||z(je)|| <= ||z0|| for j >= 1: "
                  << (envelope ? "held" : "violated") << " at epsilon " << cfg.gains.epsilon
                  << "\n";
    }

    if (!cfg.out.empty()) {
        std::ostringstream os;
        write_trajectory_csv(os, traj);
        write_file(cfg.out, os.str());
        std::cout << "trajectory written to " << cfg.out << "\n";
    }
    if (const std::string sp = summary_path(cfg); !sp.empty()) {
        write_file(sp, summary.dump(2) + "\n");
        std::cout << "summary written to " << sp << "\n";
    }
    return kExitOk;
}

int run_order_study(const ExperimentConfig& cfg) {
    const ApproxParams a = compute_params(cfg.lengths);
    const StateZ z0 = cfg.initial_frame == Frame::z
                          ? StateZ{cfg.initial_state}
                          : x_to_z(cfg.lengths, StateX{cfg.initial_state});
    const std::array<int, 3> k{cfg.gains.k12, cfg.gains.k112, cfg.gains.k1112};
    const OrderStudyResult res =
        chen_fliess_order_study(a, cfg.gains.gamma, k, z0, cfg.eps_list);

    std::ostringstream table;
    table << "epsilon,error\n";
    double largest_contracting = 0.0;
    const double n0 = norm(z0.v);
    for (const auto& pt : res.points) {
        table << fmt_double(pt.epsilon) << ',' << fmt_double(pt.error) << '\n';
        std::cout << "eps " << pt.epsilon << "  error " << pt.error << "\n";
        if (pt.final_norm <= n0) largest_contracting = std::max(largest_contracting, pt.epsilon);
    }
    if (!cfg.out.empty()) write_file(cfg.out, table.str());

    nlohmann::json summary;
    summary["config"] = to_json(cfg);
    summary["slope_floor"] = kOrderSlopeFloor;
    summary["trivial"] = res.trivial;
    summary["largest_eps_with_contraction"] = largest_contracting;  // largest tested, not a bound

    int code = kExitOk;
    if (res.trivial) {
        std::cout << "all one-period errors vanish (z0 = 0): slope undefined, trivial pass\n";
        summary["slope"] = nullptr;
    } else {
        summary["slope"] = res.slope;
        std::cout << "fitted slope " << res.slope << " (floor " << kOrderSlopeFloor << ")\n";
        if (!(res.slope >= kOrderSlopeFloor)) {
            std::cout << "order study FAILED: slope below floor\n";
            code = kExitCheckFailed;
        }
    }
    if (const std::string sp = summary_path(cfg); !sp.empty())
        write_file(sp, summary.dump(2) + "\n");
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kinematics, nilpotent approximation and sampled-data stabilization of a car"
                 " with two off-hooked trailers"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    bool serial = false;
    std::optional<double> d0, d1, l1, l2, gamma, epsilon, duration;
    std::optional<int> k12, k112, k1112, periods, substeps;
    std::optional<std::string> mode, out, summary_out, frame;
    std::optional<std::vector<double>> state, eps_list, open_u;

    app.add_option("--config", config_path, "experiment configuration JSON")
        ->check(CLI::ExistingFile);
    app.add_flag("--serial", serial, "run verification sweeps single-threaded");
    app.add_option("--d0", d0, "hook offset of trailer 1 [m]");
    app.add_option("--d1", d1, "hook offset of trailer 2 [m]");
    app.add_option("--l1", l1, "drawbar length of trailer 1 [m]");
    app.add_option("--l2", l2, "drawbar length of trailer 2 [m]");
    app.add_option("--gamma", gamma, "decay gain");
    app.add_option("--epsilon", epsilon, "sampling period [s]");
    app.add_option("--k12", k12, "frequency multiplier k12");
    app.add_option("--k112", k112, "frequency multiplier k112");
    app.add_option("--k1112", k1112, "frequency multiplier k1112");
    app.add_option("--periods", periods, "horizon in sampling periods");
    app.add_option("--substeps", substeps, "RK4 substeps per period (0 = default)");
    app.add_option("--mode", mode, "simulation mode");
    app.add_option("--out", out, "trajectory/table CSV path");
    app.add_option("--summary", summary_out, "run summary JSON path");
    app.add_option("--frame", frame, "initial state frame: x or z");
    app.add_option("--state", state, "initial state components")->expected(5);
    app.add_option("--eps-list", eps_list, "order-study epsilon values")->expected(-1);
    app.add_option("--open-loop-u", open_u, "constant (u1, u2) for original-open-loop")
        ->expected(2);
    app.add_option("--duration", duration, "open-loop horizon [s]");

    auto* sub_params = app.add_subcommand("params", "print the approximation parameters");
    auto* sub_verify = app.add_subcommand("verify", "run the verification battery");
    auto* sub_sim = app.add_subcommand("simulate", "run a simulation");
    auto* sub_order = app.add_subcommand("order-study", "one-period expansion order study");

    CLI11_PARSE(app, argc, argv);

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            nlohmann::json j;
            is >> j;
            cfg = config_from_json(j);
        }
        if (d0) cfg.lengths.d0 = *d0;
        if (d1) cfg.lengths.d1 = *d1;
        if (l1) cfg.lengths.l1 = *l1;
        if (l2) cfg.lengths.l2 = *l2;
        if (gamma) cfg.gains.gamma = *gamma;
        if (epsilon) cfg.gains.epsilon = *epsilon;
        if (k12) cfg.gains.k12 = *k12;
        if (k112) cfg.gains.k112 = *k112;
        if (k1112) cfg.gains.k1112 = *k1112;
        if (periods) cfg.periods = *periods;
        if (substeps) cfg.substeps = *substeps;
        if (mode) cfg.mode = *mode;
        if (out) cfg.out = *out;
        if (summary_out) cfg.summary_out = *summary_out;
        if (frame) {
            if (*frame != "x" && *frame != "z") throw std::invalid_argument("--frame must be x or z");
            cfg.initial_frame = *frame == "z" ? Frame::z : Frame::x;
        }
        if (state) std::copy(state->begin(), state->end(), cfg.initial_state.begin());
        if (eps_list) cfg.eps_list = *eps_list;
        if (open_u) cfg.open_loop_u = {(*open_u)[0], (*open_u)[1]};
        if (duration) cfg.duration = *duration;

        if (sub_params->parsed()) cfg.mode = "params";
        if (sub_verify->parsed()) cfg.mode = "verify";
        if (sub_order->parsed()) cfg.mode = "order-study";
        if (sub_sim->parsed() && cfg.mode != "nilpotent-closed-loop"
            && cfg.mode != "original-open-loop" && cfg.mode != "original-closed-loop")
            return fail_config({"simulate requires mode nilpotent-closed-loop,"
                                " original-open-loop or original-closed-loop"});

        if (const auto problems = validate(cfg); !problems.empty()) return fail_config(problems);

        if (sub_params->parsed()) return run_params(cfg);
        if (sub_verify->parsed())
            return run_verify(cfg, serial ? sweeps::Exec::serial : sweeps::Exec::parallel);
        if (sub_order->parsed()) return run_order_study(cfg);
        return run_simulate(cfg);
    } catch (const BlowupError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
