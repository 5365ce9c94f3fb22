#include "offhook/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace offhook {

int effective_substeps(const IntegratorConfig& cfg, const ControlGains& g) {
    if (cfg.substeps_per_period > 0) return cfg.substeps_per_period;
    const int fastest = std::max({g.k12, 2 * g.k112, 3 * g.k1112});
    return 64 * fastest;
}

namespace {

using Deriv = std::function<Vec5<double>(double, const Vec5<double>&)>;

Vec5<double> rk4_step(const Deriv& f, double t, double h, const Vec5<double>& s) {
    const Vec5<double> k1 = f(t, s);
    const Vec5<double> k2 = f(t + 0.5 * h, axpy(0.5 * h, k1, s));
    const Vec5<double> k3 = f(t + 0.5 * h, axpy(0.5 * h, k2, s));
    const Vec5<double> k4 = f(t + h, axpy(h, k3, s));
    Vec5<double> out;
    for (int i = 0; i < 5; ++i)
        out[i] = s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

void require_c1(const ControlGains& g) {
    const C1Result c1 = check_C1(g);
    if (!c1.pass)
        throw std::invalid_argument(
            "frequency multipliers fail condition C1 (resonance of order <= 4)");
}

double linfit_rate(const std::vector<double>& t, const std::vector<double>& logn, double& r2) {
    // least squares for logn ~ a - rate * t
    const auto n = static_cast<double>(t.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += logn[i];
        stt += t[i] * t[i];
        sty += t[i] * logn[i];
    }
    const double denom = n * stt - st * st;
    const double b = denom != 0.0 ? (n * sty - st * sy) / denom : 0.0;
    const double a = (sy - b * st) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double pred = a + b * t[i];
        ss_res += (logn[i] - pred) * (logn[i] - pred);
        ss_tot += (logn[i] - mean) * (logn[i] - mean);
    }
    r2 = ss_tot > 1e-30 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-30 ? 1.0 : 0.0);
    return -b;
}

void track_constraints(const LengthParams& p, const Vec5<double>& x, const ControlInput& u,
                       double& worst) {
    const Vec5<double> f1 = f1_eval(p, x);
    const Vec5<double> f2 = f2_eval(p, x);
    Vec5<double> xdot;
    for (int i = 0; i < 5; ++i) xdot[i] = u.u1 * f1[i] + u.u2 * f2[i];
    for (double r : constraint_residuals(p, StateX{x}, xdot)) worst = std::max(worst, std::abs(r));
}

}  // namespace

Trajectory simulate_nilpotent_closed_loop(const ApproxParams& a, const ControlGains& g,
                                          const StateZ& z0, int periods,
                                          const IntegratorConfig& cfg) {
    require_valid(g);
    require_c1(g);
    if (periods < 1) throw std::invalid_argument("periods must be >= 1");

    const int n = effective_substeps(cfg, g);
    const double h = g.epsilon / n;
    auto node_time = [&](long k) { return g.epsilon * (static_cast<double>(k) / n); };

    Trajectory traj;
    traj.frame = Frame::z;
    traj.times.reserve(static_cast<std::size_t>(periods) * n + 1);
    traj.states.reserve(traj.times.capacity());
    traj.controls.reserve(traj.times.capacity());

    Vec5<double> z = z0.v;
    FeedbackCoeffs c{};
    auto record = [&](long k) {
        const double t = node_time(k);
        traj.times.push_back(t);
        traj.states.push_back(z);
        traj.controls.push_back(control_value(c, g, t));
        if (!all_finite(z)) throw BlowupError(t, traj.states.size() - 1);
    };
    const Deriv f = [&](double t, const Vec5<double>& s) {
        const ControlInput u = control_value(c, g, t);
        const Vec5<double> g1 = g1_eval(a, s);
        const Vec5<double> g2 = g2_eval(a, s);
        Vec5<double> d;
        for (int i = 0; i < 5; ++i) d[i] = u.u1 * g1[i] + u.u2 * g2[i];
        return d;
    };

    for (int j = 0; j < periods; ++j) {
        c = coeffs(a, g.gamma, StateZ{z});
        traj.sample_indices.push_back(traj.times.size());
        record(static_cast<long>(j) * n);
        for (int m = 0; m < n; ++m) {
            const long k = static_cast<long>(j) * n + m;
            z = rk4_step(f, node_time(k), h, z);
            if (m + 1 < n) record(k + 1);
        }
    }
    traj.sample_indices.push_back(traj.times.size());
    record(static_cast<long>(periods) * n);
    return traj;
}

Trajectory simulate_original_open_loop(const LengthParams& p,
                                       const std::function<ControlInput(double)>& u,
                                       const StateX& x0, double duration, double sample_period,
                                       const IntegratorConfig& cfg) {
    require_valid(p);
    if (!(duration > 0.0) || !(sample_period > 0.0))
        throw std::invalid_argument("duration and sample_period must be positive");
    const int n = cfg.substeps_per_period > 0 ? cfg.substeps_per_period : 64;
    const int periods = std::max(1, static_cast<int>(std::ceil(duration / sample_period - 1e-12)));
    const double h = sample_period / n;
    auto node_time = [&](long k) { return sample_period * (static_cast<double>(k) / n); };

    Trajectory traj;
    traj.frame = Frame::x;
    Vec5<double> x = x0.v;
    auto record = [&](long k) {
        const double t = node_time(k);
        const ControlInput uk = u(t);
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.controls.push_back(uk);
        if (!all_finite(x)) throw BlowupError(t, traj.states.size() - 1);
        track_constraints(p, x, uk, traj.max_constraint_residual);
    };
    const Deriv f = [&](double t, const Vec5<double>& s) {
        const ControlInput ut = u(t);
        const Vec5<double> f1 = f1_eval(p, s);
        const Vec5<double> f2 = f2_eval(p, s);
        Vec5<double> d;
        for (int i = 0; i < 5; ++i) d[i] = ut.u1 * f1[i] + ut.u2 * f2[i];
        return d;
    };

    for (int j = 0; j < periods; ++j) {
        traj.sample_indices.push_back(traj.times.size());
        record(static_cast<long>(j) * n);
        for (int m = 0; m < n; ++m) {
            const long k = static_cast<long>(j) * n + m;
            x = rk4_step(f, node_time(k), h, x);
            if (m + 1 < n) record(k + 1);
        }
    }
    traj.sample_indices.push_back(traj.times.size());
    record(static_cast<long>(periods) * n);
    return traj;
}

Trajectory simulate_original_closed_loop(const LengthParams& p, const ControlGains& g,
                                         const StateX& x0, int periods,
                                         const IntegratorConfig& cfg) {
    require_valid(p);
    require_valid(g);
    require_c1(g);
    if (periods < 1) throw std::invalid_argument("periods must be >= 1");

    const ApproxParams a = compute_params(p);
    const TransformCoeffs tc = transform_coeffs(p);
    const int n = effective_substeps(cfg, g);
    const double h = g.epsilon / n;
    const double det0 = std::abs(detF0_closed_form(p));
    auto node_time = [&](long k) { return g.epsilon * (static_cast<double>(k) / n); };

    Trajectory traj;
    traj.frame = Frame::x;
    Vec5<double> x = x0.v;
    FeedbackCoeffs c{};
    auto record = [&](long k) {
        const double t = node_time(k);
        const ControlInput uk = control_value(c, g, t);
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.controls.push_back(uk);
        traj.z_trace.push_back(x_to_z_eval(tc, x));
        if (!all_finite(x)) throw BlowupError(t, traj.states.size() - 1);
        track_constraints(p, x, uk, traj.max_constraint_residual);
    };
    const Deriv f = [&](double t, const Vec5<double>& s) {
        const ControlInput ut = control_value(c, g, t);
        const Vec5<double> f1 = f1_eval(p, s);
        const Vec5<double> f2 = f2_eval(p, s);
        Vec5<double> d;
        for (int i = 0; i < 5; ++i) d[i] = ut.u1 * f1[i] + ut.u2 * f2[i];
        return d;
    };

    for (int j = 0; j < periods; ++j) {
        // sample-and-hold: coefficients from the z-image of x(t_j)
        c = coeffs(a, g.gamma, StateZ{x_to_z_eval(tc, x)});
        if (std::abs(detF(p, StateX{x})) < 1e-6 * det0) traj.conditioning_warning = true;
        traj.sample_indices.push_back(traj.times.size());
        record(static_cast<long>(j) * n);
        for (int m = 0; m < n; ++m) {
            const long k = static_cast<long>(j) * n + m;
            x = rk4_step(f, node_time(k), h, x);
            if (m + 1 < n) record(k + 1);
        }
    }
    traj.sample_indices.push_back(traj.times.size());
    record(static_cast<long>(periods) * n);
    return traj;
}

OrderStudyResult chen_fliess_order_study(const ApproxParams& a, double gamma,
                                         const std::array<int, 3>& k, const StateZ& z0,
                                         const std::vector<double>& eps_list) {
    OrderStudyResult res;
    const int fastest = std::max({k[0], 2 * k[1], 3 * k[2]});
    for (double eps : eps_list) {
        ControlGains g{gamma, eps, k[0], k[1], k[2]};
        require_valid(g);
        require_c1(g);
        // hold the absolute step near its eps=0.1 value as eps shrinks
        const int n =
            std::max(64 * fastest, static_cast<int>(std::ceil(64.0 * fastest * 0.1 / eps)));
        const Trajectory one = simulate_nilpotent_closed_loop(a, g, z0, 1, IntegratorConfig{n});
        const Vec5<double>& zf = one.states.back();
        double err = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double d = zf[i] - (1.0 - gamma * eps) * z0.v[i];
            err += d * d;
        }
        res.points.push_back({eps, std::sqrt(err), norm(zf)});
    }
    bool trivial = true;
    for (const auto& pt : res.points) trivial = trivial && pt.error < 1e-300;
    res.trivial = trivial;
    if (trivial || res.points.size() < 2) {
        res.slope = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    std::vector<double> lx, ly;
    for (const auto& pt : res.points) {
        lx.push_back(-std::log(pt.epsilon));  // linfit_rate fits y ~ a - slope * t
        ly.push_back(std::log(pt.error));
    }
    double r2 = 0.0;
    res.slope = linfit_rate(lx, ly, r2);
    return res;
}

DecayReport decay_report(const Trajectory& traj) {
    if (traj.sample_indices.size() < 10)
        throw std::invalid_argument("decay report needs >= 10 sample instants");
    const bool use_aux = traj.frame == Frame::x;
    if (use_aux && traj.z_trace.size() != traj.states.size())
        throw std::invalid_argument("decay is measured on the z-frame trace, which is missing");
    auto node_norm = [&](std::size_t i) {
        return norm(use_aux ? traj.z_trace[i] : traj.states[i]);
    };

    DecayReport rep;
    for (std::size_t idx : traj.sample_indices) rep.sampled_norms.push_back(node_norm(idx));

    double max_sampled = 0.0;
    for (std::size_t s = 0; s < rep.sampled_norms.size(); ++s) {
        if (rep.sampled_norms[s] > max_sampled) {
            max_sampled = rep.sampled_norms[s];
            rep.peak_sample = s;
        }
    }

    double max_node = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i)
        max_node = std::max(max_node, node_norm(i));
    const double n0 = node_norm(0);

    if (max_node < 1e-300) {
        rep.all_zero = true;
        rep.fitted_rate = std::numeric_limits<double>::infinity();
        rep.fit_quality = 1.0;
        rep.overshoot = 1.0;
        return rep;
    }
    rep.overshoot = max_node / n0;

    std::vector<double> ts, ln;
    for (std::size_t s = rep.peak_sample; s < rep.sampled_norms.size(); ++s) {
        if (rep.sampled_norms[s] <= 0.0) continue;
        ts.push_back(traj.times[traj.sample_indices[s]]);
        ln.push_back(std::log(rep.sampled_norms[s]));
    }
    if (ts.size() < 2) {
        rep.fitted_rate = 0.0;
        rep.fit_quality = 0.0;
        return rep;
    }
    rep.fitted_rate = linfit_rate(ts, ln, rep.fit_quality);
    return rep;
}

}  // namespace offhook
