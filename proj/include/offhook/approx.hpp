#pragma once

#include "offhook/dual.hpp"
#include "offhook/linalg.hpp"
#include "offhook/vehicle.hpp"

namespace offhook {

/// Intermediate dual-basis coordinates y = F^{-1}(0) x.
struct StateY {
    Vec5<double> v{};
};

/// Privileged coordinates of the nilpotent approximation.
struct StateZ {
    Vec5<double> v{};
};

/// Coordinate weights and degree of nonholonomy; fixed for this system.
struct Weights {
    static constexpr std::array<int, 5> w{1, 1, 2, 3, 4};
    static constexpr int degree_of_nonholonomy = 4;
};

/// Scalars of the nilpotent approximate system, derived from the lengths.
struct ApproxParams {
    double alpha = 0.0;
    double kappa = 0.0;
    double theta = 0.0;
    double beta = 0.0;
};

ApproxParams compute_params(const LengthParams& p);

// Row coefficients of the linear part of the transform: y4 and y5 as
// closed-form combinations of (x2, x3, x4, x5).
struct TransformCoeffs {
    std::array<double, 4> y4;
    std::array<double, 4> y5;
    double beta;
};

TransformCoeffs transform_coeffs(const LengthParams& p);

StateY x_to_y(const LengthParams& p, const StateX& x);
StateZ x_to_z(const LengthParams& p, const StateX& x);

/// Inverse of x_to_z. Throws std::domain_error when the 2x2 subsystem in
/// (x4, x5) is numerically singular for these lengths.
StateX z_to_x(const LengthParams& p, const StateZ& z);

template <class T>
Vec5<T> x_to_z_eval(const TransformCoeffs& c, const Vec5<T>& x) {
    const T y4 = c.y4[0] * x[1] + c.y4[1] * x[2] + c.y4[2] * x[3] + c.y4[3] * x[4];
    const T y5 = c.y5[0] * x[1] + c.y5[1] * x[2] + c.y5[2] * x[3] + c.y5[3] * x[4];
    return {x[0], x[2], -x[1], y4, y5 - c.beta * (x[2] * x[2] * x[2])};
}

template <class T>
Vec5<T> g1_eval(const ApproxParams& a, const Vec5<T>& z) {
    return {T(1.0), T(0.0), -z[1], -z[2], a.kappa * (z[1] * z[1] * z[1]) - z[3]};
}

template <class T>
Vec5<T> g2_eval(const ApproxParams& a, const Vec5<T>& z) {
    return {T(0.0), T(1.0), T(0.0), -a.alpha * (z[1] * z[1]), -a.theta * (z[1] * z[2])};
}

Vec5<double> field_g1(const ApproxParams& a, const StateZ& z);
Vec5<double> field_g2(const ApproxParams& a, const StateZ& z);

/// Closed-form G(z) = (g1, g2, [g1,g2], [g1,[g1,g2]], [g1,[g1,[g1,g2]]]);
/// unit lower-triangular, so det G = 1 identically.
Mat5 bracket_matrix_G(const ApproxParams& a, const StateZ& z);

/// Weighted dilation (lambda z1, lambda z2, lambda^2 z3, lambda^3 z4,
/// lambda^4 z5). Requires lambda > 0.
StateZ dilate(const StateZ& z, double lambda);

/// (d/dt) x_to_z along xdot = u1 f1 + u2 f2, minus u1 g1(z) + u2 g2(z) at
/// z = x_to_z(p, x). Component 2 is exactly zero.
Vec5<double> z_dynamics_residual(const LengthParams& p, const StateX& x, const ControlInput& u);

}  // namespace offhook
