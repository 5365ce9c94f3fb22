#include "offhook/controller.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace offhook {

double ControlGains::omega() const { return 2.0 * std::numbers::pi / epsilon; }

bool ControlGains::valid() const {
    return gamma > 0.0 && std::isfinite(gamma) && epsilon > 0.0 && std::isfinite(epsilon)
           && k12 >= 1 && k112 >= 1 && k1112 >= 1;
}

void require_valid(const ControlGains& g) {
    if (!g.valid())
        throw std::invalid_argument(
            "control gains require gamma > 0, epsilon > 0 and integer multipliers >= 1");
}

namespace {

int order_of(const std::array<int, 3>& c) {
    return std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]);
}

bool setwise_coprime(const std::array<int, 3>& c) {
    int g = 0;
    for (int ci : c)
        if (ci != 0) g = std::gcd(g, std::abs(ci));
    return g == 1;
}

}  // namespace

std::vector<std::array<int, 3>> find_resonances(const std::array<int, 3>& k, int max_order) {
    if (max_order < 1) throw std::invalid_argument("resonance order bound must be >= 1");
    std::vector<std::array<int, 3>> out;
    for (int c1 = -max_order; c1 <= max_order; ++c1)
        for (int c2 = -max_order; c2 <= max_order; ++c2)
            for (int c3 = -max_order; c3 <= max_order; ++c3) {
                const std::array<int, 3> c{c1, c2, c3};
                if (order_of(c) == 0 || order_of(c) > max_order) continue;
                if (c1 * k[0] + c2 * k[1] + c3 * k[2] != 0) continue;
                if (!setwise_coprime(c)) continue;
                out.push_back(c);
            }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (order_of(a) != order_of(b)) return order_of(a) < order_of(b);
        return a < b;
    });
    return out;
}

C1Result check_C1(const ControlGains& g) {
    require_valid(g);
    const std::array<std::array<int, 3>, 4> tuples{{{g.k12, g.k112, g.k1112},
                                                    {g.k12, 2 * g.k112, g.k1112},
                                                    {g.k12, g.k112, 3 * g.k1112},
                                                    {g.k12, 2 * g.k112, 3 * g.k1112}}};
    C1Result res;
    res.pass = true;
    for (const auto& tup : tuples) {
        const auto hits = find_resonances(tup, 4);
        if (hits.empty()) continue;
        res.pass = false;
        std::array<int, 3> w = hits.front();  // minimal order
        for (int wi : w) {
            if (wi > 0) break;
            if (wi < 0) {
                for (int& x : w) x = -x;
                break;
            }
        }
        res.failures.push_back({tup, w});
    }
    return res;
}

FeedbackCoeffs coeffs(const ApproxParams& a, double gamma, const StateZ& z) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const double z1 = z.v[0], z2 = z.v[1], z3 = z.v[2], z4 = z.v[3], z5 = z.v[4];
    FeedbackCoeffs c;
    c.a1 = -gamma * z1;
    c.a2 = -gamma * z2;
    c.a12 = -gamma * (z1 * z2 + z3);
    c.a112 = -gamma * (z1 * z3 + z4 + a.alpha * z2 * z2 * z2);
    c.a1112 = -gamma
              * ((a.alpha + 2.0 * a.kappa - a.theta) * z1 * z2 * z2 * z2
                 + (a.alpha + 3.0 * a.kappa) * z2 * z2 * z3 + z1 * z4 + z5);
    return c;
}

FeedbackCoeffs coeffs_via_inverse(const ApproxParams& a, double gamma, const StateZ& z) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const Mat5 G = bracket_matrix_G(a, z);
    // G is unit lower-triangular: solve G x = -gamma z by forward substitution.
    std::array<double, 5> x{};
    for (int i = 0; i < 5; ++i) {
        double s = -gamma * z.v[i];
        for (int j = 0; j < i; ++j) s -= G(i, j) * x[j];
        x[i] = s;
    }
    return {x[0], x[1], x[2], x[3], x[4]};
}

namespace {
double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }
}  // namespace

ControlInput control_value(const FeedbackCoeffs& c, const ControlGains& g, double t) {
    require_valid(g);
    const double w = g.omega();
    const double amp12 = std::sqrt(2.0 * g.k12 * w * std::abs(c.a12));
    const double base112 = std::cbrt(2.0 * g.k112 * w);
    const double amp112 = base112 * base112 * std::cbrt(std::abs(c.a112));
    const double amp1112 = std::pow(g.k1112 * w, 0.75) * std::pow(std::abs(c.a1112), 0.25);

    ControlInput u;
    u.u1 = c.a1 + amp12 * std::cos(g.k12 * w * t) + amp112 * std::cos(g.k112 * w * t)
           + 2.0 * amp1112 * std::cos(g.k1112 * w * t);
    u.u2 = c.a2 + amp12 * sgn(c.a12) * std::sin(g.k12 * w * t)
           - 2.0 * amp112 * sgn(c.a112) * std::cos(2.0 * g.k112 * w * t)
           - 6.0 * amp1112 * sgn(c.a1112) * std::sin(3.0 * g.k1112 * w * t);
    return u;
}

}  // namespace offhook
