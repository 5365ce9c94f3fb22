#include "offhook/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "offhook/lie.hpp"

namespace offhook::sweeps {

namespace {

constexpr LengthParams kPaperLengths1{0.1, 0.1, 1.0, 1.0};
constexpr LengthParams kPaperLengths2{1.0, 1.0, 1.0, 1.0};

std::vector<LengthParams> random_lengths(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 2.0);
    std::vector<LengthParams> out(n);
    for (auto& p : out) p = {u(rng), u(rng), u(rng), u(rng)};
    return out;
}

std::vector<Vec5<double>> random_states(int n, double radius, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<Vec5<double>> out(n);
    for (auto& x : out) {
        for (auto& c : x) c = u(rng);
        const double nm = norm(x);
        if (nm > radius)
            for (auto& c : x) c *= radius / nm;
    }
    return out;
}

// OpenMP-parallel max reduction over per-sample error functions; the
// serial path runs the identical loop body.
template <class ErrFn>
double sweep_max(int samples, Exec mode, const ErrFn& err) {
    double worst = 0.0;
    if (mode == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(max : worst)
        for (int i = 0; i < samples; ++i) worst = std::max(worst, err(i));
    } else {
        for (int i = 0; i < samples; ++i) worst = std::max(worst, err(i));
    }
    return worst;
}

SmoothField make_f1(const LengthParams& p) {
    return SmoothField("f1", [p](const auto& x) { return f1_eval(p, x); });
}
SmoothField make_f2(const LengthParams& p) {
    return SmoothField("f2", [p](const auto& x) { return f2_eval(p, x); });
}
SmoothField make_g1(const ApproxParams& a) {
    return SmoothField("g1", [a](const auto& z) { return g1_eval(a, z); });
}
SmoothField make_g2(const ApproxParams& a) {
    return SmoothField("g2", [a](const auto& z) { return g2_eval(a, z); });
}

double rel_col_error(const Mat5& got, const Mat5& want, int col) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double d = got(i, col) - want(i, col);
        num += d * d;
        den += want(i, col) * want(i, col);
    }
    return std::sqrt(num) / std::max(1.0, std::sqrt(den));
}

CheckResult made(std::string name, double worst, double threshold, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.worst = worst;
    r.threshold = threshold;
    r.pass = worst <= threshold;
    r.detail = std::move(detail);
    return r;
}

}  // namespace

CheckResult check_f_bracket_oracle(int samples, std::uint64_t seed, Exec mode,
                                   MatrixFFn matrix_fn) {
    if (!matrix_fn)
        matrix_fn = [](const LengthParams& p, const StateX& x) { return bracket_matrix_F(p, x); };
    std::mt19937_64 rng(seed);
    const auto ps = random_lengths(samples, rng);
    const auto xs = random_states(samples, 0.5, rng);

    const double worst = sweep_max(samples, mode, [&](int i) {
        const LengthParams& p = ps[i];
        const StateX x{xs[i]};
        const SmoothField f1 = make_f1(p);
        const SmoothField f2 = make_f2(p);
        const Mat5 closed = matrix_fn(p, x);
        Mat5 oracle;
        const std::array<std::vector<int>, 5> words{
            {{1}, {2}, {1, 2}, {1, 1, 2}, {1, 1, 1, 2}}};
        for (int c = 0; c < 5; ++c) {
            const Vec5<double> col = iterated_bracket(words[c], f1, f2).eval(x.v);
            for (int r = 0; r < 5; ++r) oracle(r, c) = col[r];
        }
        double e = 0.0;
        for (int c = 0; c < 5; ++c) e = std::max(e, rel_col_error(closed, oracle, c));
        return e;
    });
    return made("F columns vs bracket oracle", worst, 1e-8);
}

CheckResult check_g_bracket_oracle(const ApproxParams& a, int samples, std::uint64_t seed,
                                   Exec mode) {
    std::mt19937_64 rng(seed);
    const auto zs = random_states(samples, 2.0, rng);
    const double worst = sweep_max(samples, mode, [&](int i) {
        const StateZ z{zs[i]};
        const SmoothField g1 = make_g1(a);
        const SmoothField g2 = make_g2(a);
        const Mat5 closed = bracket_matrix_G(a, z);
        Mat5 oracle;
        const std::array<std::vector<int>, 5> words{
            {{1}, {2}, {1, 2}, {1, 1, 2}, {1, 1, 1, 2}}};
        for (int c = 0; c < 5; ++c) {
            const Vec5<double> col = iterated_bracket(words[c], g1, g2).eval(z.v);
            for (int r = 0; r < 5; ++r) oracle(r, c) = col[r];
        }
        double e = 0.0;
        for (int c = 0; c < 5; ++c) e = std::max(e, rel_col_error(closed, oracle, c));
        return e;
    });
    return made("G columns vs bracket oracle", worst, 1e-10);
}

CheckResult check_detF0_identity(int samples, std::uint64_t seed, Exec mode) {
    std::mt19937_64 rng(seed);
    const auto ps = random_lengths(samples, rng);
    const double worst = sweep_max(samples, mode, [&](int i) {
        const double closed = detF0_closed_form(ps[i]);
        const double numeric = bracket_matrix_F(ps[i], StateX{}).determinant();
        return std::abs(closed - numeric) / std::abs(closed);
    });
    return made("det F(0) closed form vs numeric", worst, 1e-9);
}

CheckResult check_detG_unit(const ApproxParams& a, int samples, std::uint64_t seed, Exec mode) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Vec5<double>> zs(samples);
    for (auto& z : zs)
        for (auto& c : z) c = u(rng);
    const double worst = sweep_max(samples, mode, [&](int i) {
        return std::abs(bracket_matrix_G(a, StateZ{zs[i]}).determinant() - 1.0);
    });
    return made("det G(z) = 1", worst, 1e-12);
}

CheckResult check_nilpotency(const ApproxParams& a, int samples, std::uint64_t seed, Exec mode) {
    std::mt19937_64 rng(seed);
    const auto zs = random_states(samples, 2.0, rng);
    std::vector<std::vector<int>> words;
    for (int bits = 0; bits < 32; ++bits) {
        std::vector<int> w(5);
        for (int j = 0; j < 5; ++j) w[j] = ((bits >> j) & 1) + 1;
        words.push_back(std::move(w));
    }
    const double worst = sweep_max(samples, mode, [&](int i) {
        const SmoothField g1 = make_g1(a);
        const SmoothField g2 = make_g2(a);
        double e = 0.0;
        for (const auto& w : words) e = std::max(e, norm(iterated_bracket(w, g1, g2).eval(zs[i])));
        return e;
    });
    return made("length-5 brackets of (g1,g2) vanish", worst, 1e-9);
}

CheckResult check_growth_vector(const LengthParams& p) {
    const SmoothField f1 = make_f1(p);
    const SmoothField f2 = make_f2(p);
    const Vec5<double> origin{};

    std::array<int, 4> dims{};
    std::vector<EVec5> vecs;
    for (int len = 1; len <= 4; ++len) {
        for (int bits = 0; bits < (1 << len); ++bits) {
            std::vector<int> w(len);
            for (int j = 0; j < len; ++j) w[j] = ((bits >> j) & 1) + 1;
            vecs.push_back(to_eigen(iterated_bracket(w, f1, f2).eval(origin)));
        }
        Eigen::MatrixXd M(5, vecs.size());
        for (std::size_t c = 0; c < vecs.size(); ++c) M.col(static_cast<Eigen::Index>(c)) = vecs[c];
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
        qr.setThreshold(1e-8);
        dims[len - 1] = static_cast<int>(qr.rank());
    }
    const std::array<int, 4> want{2, 3, 4, 5};
    std::ostringstream os;
    os << "(" << dims[0] << "," << dims[1] << "," << dims[2] << "," << dims[3] << ")";
    CheckResult r = made("growth vector at 0 is (2,3,4,5)", dims == want ? 0.0 : 1.0, 0.0);
    r.detail = os.str();
    return r;
}

CheckResult check_xy_linear(int samples, std::uint64_t seed, Exec mode) {
    std::mt19937_64 rng(seed);
    const auto ps = random_lengths(samples, rng);
    const auto xs = random_states(samples, 2.0, rng);
    const double worst = sweep_max(samples, mode, [&](int i) {
        const Mat5 F0 = bracket_matrix_F(ps[i], StateX{});
        const EVec5 y_num = F0.fullPivLu().solve(to_eigen(xs[i]));
        const StateY y = x_to_y(ps[i], StateX{xs[i]});
        double e = 0.0;
        for (int c = 0; c < 5; ++c) e = std::max(e, std::abs(y.v[c] - y_num(c)));
        return e;
    });
    return made("x_to_y vs numeric F(0)^{-1} x", worst, 1e-9);
}

CheckResult check_roundtrip(const LengthParams& p, int samples, std::uint64_t seed, Exec mode) {
    std::mt19937_64 rng(seed);
    const auto zs = random_states(samples, 2.0, rng);
    const auto xs = random_states(samples, 1.0, rng);
    const double worst = sweep_max(samples, mode, [&](int i) {
        const StateZ z{zs[i]};
        const StateZ z2 = x_to_z(p, z_to_x(p, z));
        const StateX x{xs[i]};
        const StateX x2 = z_to_x(p, x_to_z(p, x));
        double e = 0.0;
        for (int c = 0; c < 5; ++c) {
            e = std::max(e, std::abs(z2.v[c] - z.v[c]));
            e = std::max(e, std::abs(x2.v[c] - x.v[c]));
        }
        return e;
    });
    return made("x_to_z / z_to_x round trips", worst, 1e-9);
}

CheckResult check_coeff_identity(const ApproxParams& a, int samples, std::uint64_t seed,
                                 Exec mode) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uz(-2.0, 2.0);
    std::uniform_real_distribution<double> ug(0.2, 3.0);
    std::vector<Vec5<double>> zs(samples);
    std::vector<double> gammas(samples);
    for (int i = 0; i < samples; ++i) {
        for (auto& c : zs[i]) c = uz(rng);
        gammas[i] = ug(rng);
    }
    const double worst = sweep_max(samples, mode, [&](int i) {
        const StateZ z{zs[i]};
        const FeedbackCoeffs c1 = coeffs(a, gammas[i], z);
        const FeedbackCoeffs c2 = coeffs_via_inverse(a, gammas[i], z);
        double e = 0.0;
        e = std::max(e, std::abs(c1.a1 - c2.a1));
        e = std::max(e, std::abs(c1.a2 - c2.a2));
        e = std::max(e, std::abs(c1.a12 - c2.a12));
        e = std::max(e, std::abs(c1.a112 - c2.a112));
        e = std::max(e, std::abs(c1.a1112 - c2.a1112));
        return e;
    });
    return made("coefficient map vs G^{-1} route", worst, 1e-10);
}

CheckResult check_homogeneity(const ApproxParams& a, int samples, std::uint64_t seed, Exec mode) {
    std::mt19937_64 rng(seed);
    const auto zs = random_states(samples, 2.0, rng);
    const double worst = sweep_max(samples, mode, [&](int i) {
        double e = 0.0;
        for (double lambda : {0.5, 2.0}) {
            const StateZ zd = dilate(StateZ{zs[i]}, lambda);
            const Vec5<double> g1d = field_g1(a, zd);
            const Vec5<double> g2d = field_g2(a, zd);
            const Vec5<double> g1 = field_g1(a, StateZ{zs[i]});
            const Vec5<double> g2 = field_g2(a, StateZ{zs[i]});
            for (int j = 0; j < 5; ++j) {
                const double scale = std::pow(lambda, Weights::w[j] - 1);
                e = std::max(e, std::abs(g1d[j] - scale * g1[j]));
                e = std::max(e, std::abs(g2d[j] - scale * g2[j]));
            }
        }
        return e;
    });
    return made("g fields homogeneous of degree -1", worst, 1e-11);
}

CheckResult check_residual_origin(const LengthParams& p) {
    double worst = 0.0;
    for (const ControlInput u : {ControlInput{0.4, 1.3}, ControlInput{1.0, 0.0},
                                 ControlInput{0.0, 1.0}, ControlInput{-0.7, 0.9}}) {
        const Vec5<double> r = z_dynamics_residual(p, StateX{}, u);
        for (double c : r) worst = std::max(worst, std::abs(c));
    }
    return made("z-dynamics residual vanishes at origin", worst, 1e-10);
}

CheckResult check_residual_orders() {
    // Pinned configuration: unit lengths (the set where the printed model
    // coefficients are self-consistent), moderate base point.
    const LengthParams p = kPaperLengths2;
    const StateZ zbar{{0.5, 0.5, 0.5, 0.5, 0.5}};
    const ControlInput u{0.7, -0.3};
    const std::array<double, 3> lambdas{0.2, 0.1, 0.05};

    std::array<std::array<double, 3>, 5> resid{};
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        const StateX x = z_to_x(p, dilate(zbar, lambdas[li]));
        const Vec5<double> r = z_dynamics_residual(p, x, u);
        for (int j = 0; j < 5; ++j) resid[j][li] = std::abs(r[j]);
    }

    double worst_margin = -1e9;  // max over components of (required - slope)
    std::ostringstream os;
    for (int j = 0; j < 5; ++j) {
        if (*std::max_element(resid[j].begin(), resid[j].end()) < 1e-13) {
            os << "w" << j + 1 << ":~0 ";
            continue;
        }
        // least-squares slope of log r vs log lambda over the three points
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t li = 0; li < 3; ++li) {
            const double lx = std::log(lambdas[li]);
            const double ly = std::log(resid[j][li]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
        const double required = Weights::w[j] - 0.15;
        worst_margin = std::max(worst_margin, required - slope);
        os << "w" << j + 1 << ":" << slope << " ";
    }
    CheckResult r = made("z-dynamics residual weighted orders", worst_margin, 0.0);
    r.detail = os.str();
    return r;
}

CheckResult check_constraint_annihilation(int samples, std::uint64_t seed, Exec mode) {
    std::mt19937_64 rng(seed);
    const auto ps = random_lengths(samples, rng);
    const auto xs = random_states(samples, 2.0, rng);
    std::uniform_real_distribution<double> uu(-2.0, 2.0);
    std::vector<ControlInput> us(samples);
    for (auto& u : us) u = {uu(rng), uu(rng)};
    const double worst = sweep_max(samples, mode, [&](int i) {
        const Vec5<double> f1 = f1_eval(ps[i], xs[i]);
        const Vec5<double> f2 = f2_eval(ps[i], xs[i]);
        Vec5<double> xdot;
        for (int c = 0; c < 5; ++c) xdot[c] = us[i].u1 * f1[c] + us[i].u2 * f2[c];
        double e = 0.0;
        for (double r : constraint_residuals(ps[i], StateX{xs[i]}, xdot))
            e = std::max(e, std::abs(r));
        return e;
    });
    return made("controlled velocities satisfy rolling constraints", worst, 1e-12);
}

CheckResult check_c1_gains(const ControlGains& g) {
    const C1Result c1 = check_C1(g);
    CheckResult r = made("condition C1 (no resonances up to order 4)", c1.pass ? 0.0 : 1.0, 0.0);
    if (!c1.pass) {
        std::ostringstream os;
        const auto& f = c1.failures.front();
        os << "tuple (" << f.tuple[0] << "," << f.tuple[1] << "," << f.tuple[2] << ") witness ("
           << f.witness[0] << "," << f.witness[1] << "," << f.witness[2] << ")";
        r.detail = os.str();
    }
    return r;
}

std::vector<CheckResult> standard_battery(const ControlGains& gains, Exec mode) {
    std::vector<CheckResult> out;
    const ApproxParams a1 = compute_params(kPaperLengths1);
    const ApproxParams a2 = compute_params(kPaperLengths2);

    out.push_back(check_f_bracket_oracle(200, 1001, mode));
    out.push_back(check_detF0_identity(100, 1002, mode));
    for (const auto& [label, a] : {std::pair{"set 1", a1}, std::pair{"set 2", a2}}) {
        CheckResult r = check_g_bracket_oracle(a, 200, 1003, mode);
        r.name += std::string(" (") + label + ")";
        out.push_back(r);
        r = check_detG_unit(a, 1000, 1004, mode);
        r.name += std::string(" (") + label + ")";
        out.push_back(r);
        r = check_nilpotency(a, 100, 1005, mode);
        r.name += std::string(" (") + label + ")";
        out.push_back(r);
        r = check_coeff_identity(a, 1000, 1006, mode);
        r.name += std::string(" (") + label + ")";
        out.push_back(r);
        r = check_homogeneity(a, 200, 1007, mode);
        r.name += std::string(" (") + label + ")";
        out.push_back(r);
    }
    out.push_back(check_growth_vector(kPaperLengths1));
    out.push_back(check_xy_linear(200, 1008, mode));
    for (const auto& [label, p] : {std::pair{"set 1", kPaperLengths1},
                                   std::pair{"set 2", kPaperLengths2}}) {
        CheckResult r = check_roundtrip(p, 1000, 1009, mode);
        r.name += std::string(" (") + label + ")";
        out.push_back(r);
        r = check_residual_origin(p);
        r.name += std::string(" (") + label + ")";
        out.push_back(r);
    }
    out.push_back(check_residual_orders());
    out.push_back(check_constraint_annihilation(300, 1010, mode));
    out.push_back(check_c1_gains(gains));
    return out;
}

}  // namespace offhook::sweeps
