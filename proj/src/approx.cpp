#include "offhook/approx.hpp"

#include <cmath>

#include "offhook/lie.hpp"

namespace offhook {

ApproxParams compute_params(const LengthParams& p) {
    require_valid(p);
    const double d0 = p.d0, d1 = p.d1, l1 = p.l1, l2 = p.l2;
    const double l1c = l1 * l1 * l1;

    ApproxParams a;
    a.alpha = (d0 * d0 * d0 * (l1c + l1 * l1 * l2 - l1 * l2 * l2 - d1 * l2 * (d1 + l2))
               + d0 * l1c * (d0 * (l1 + 2.0 * l2) + l2 * (l1 + l2)))
              / (2.0 * (d0 + l2) * l1c);
    a.kappa = d0 * d0
              * (1.5 * l2 * l2 * (d0 + l1) * (d1 + l1)
                 - l2 * (l1c + 0.5 * d0 * l1 * l1 - d1 * l1 * (d0 + 1.5 * d1) - 1.5 * d0 * d1 * d1)
                 + 0.5 * d0 * d1 * d1 * l1)
              / (3.0 * (d0 + l2) * l1c);
    a.theta = d0 * d0
              * (l2 * l2 * (d1 + l1) * (d0 + l1) + (d0 * d1 + (d0 + d1) * l1) * d1 * l2
                 + d0 * d1 * d1 * l1)
              / ((d0 + l2) * l1c);
    a.beta = d0 * l2 * (d0 * d0 * (d1 + l1) * (l1 - l2 - d1) + l1c * (d0 + l2))
             / (6.0 * (d0 + l2) * l1 * l1);
    return a;
}

TransformCoeffs transform_coeffs(const LengthParams& p) {
    require_valid(p);
    const double d0 = p.d0, d1 = p.d1, l1 = p.l1, l2 = p.l2;
    const double q01 = (d0 + l1) * (d0 + l2);
    const double q12 = (d0 + l2) * (d1 + l2);
    const double q012 = q01 * (d1 + l2);

    TransformCoeffs c;
    c.y4 = {l1 + l2,
            -d0 * (d0 * (l1 * l1 + l1 * l2 + l2 * l2) + l1 * l2 * (l1 + l2)) / q01,
            -(l2 * l2 * (l1 + l2) * (d1 + l1) / q12
              + (l1 * l1 * l2 * (d0 * d1 + (d0 + d1) * l1) + d0 * d1 * l1 * l1 * l1) / q012),
            -l2 * l2 * l2 * l2 / q12};
    c.y5 = {-l1 * l2,
            d0 * l1 * l2 * (l1 * l2 + d0 * (l1 + l2)) / q01,
            l1 * l2 * l2 * l2 * (d1 + l1) / q12
                + l1 * l1 * l2 * (l2 * (d0 * d1 + (d0 + d1) * l1) + d0 * d1 * l1) / q012,
            l1 * l2 * l2 * l2 * l2 / q12};
    c.beta = compute_params(p).beta;
    return c;
}

StateY x_to_y(const LengthParams& p, const StateX& x) {
    const TransformCoeffs c = transform_coeffs(p);
    const auto& v = x.v;
    StateY y;
    y.v = {v[0], v[2], -v[1],
           c.y4[0] * v[1] + c.y4[1] * v[2] + c.y4[2] * v[3] + c.y4[3] * v[4],
           c.y5[0] * v[1] + c.y5[1] * v[2] + c.y5[2] * v[3] + c.y5[3] * v[4]};
    return y;
}

StateZ x_to_z(const LengthParams& p, const StateX& x) {
    return StateZ{x_to_z_eval(transform_coeffs(p), x.v)};
}

StateX z_to_x(const LengthParams& p, const StateZ& z) {
    const TransformCoeffs c = transform_coeffs(p);
    const double x1 = z.v[0];
    const double x3 = z.v[1];
    const double x2 = -z.v[2];

    // remove the known x2, x3 contributions, then solve the 2x2 for (x4, x5)
    double a11 = c.y4[2], a12 = c.y4[3];
    double a21 = c.y5[2], a22 = c.y5[3];
    double b1 = z.v[3] - c.y4[0] * x2 - c.y4[1] * x3;
    double b2 = (z.v[4] + c.beta * x3 * x3 * x3) - c.y5[0] * x2 - c.y5[1] * x3;

    if (std::abs(a11) < std::abs(a21)) {
        std::swap(a11, a21);
        std::swap(a12, a22);
        std::swap(b1, b2);
    }
    if (std::abs(a11) < 1e-12)
        throw std::domain_error("x4/x5 subsystem of the inverse transform is singular for "
                                + p.describe());
    const double m = a21 / a11;
    const double piv2 = a22 - m * a12;
    if (std::abs(piv2) < 1e-12)
        throw std::domain_error("x4/x5 subsystem of the inverse transform is singular for "
                                + p.describe());
    const double x5 = (b2 - m * b1) / piv2;
    const double x4 = (b1 - a12 * x5) / a11;
    return StateX{{x1, x2, x3, x4, x5}};
}

Vec5<double> field_g1(const ApproxParams& a, const StateZ& z) { return g1_eval(a, z.v); }
Vec5<double> field_g2(const ApproxParams& a, const StateZ& z) { return g2_eval(a, z.v); }

Mat5 bracket_matrix_G(const ApproxParams& a, const StateZ& z) {
    const double z2 = z.v[1], z3 = z.v[2], z4 = z.v[3];
    Mat5 G = Mat5::Identity();
    G(2, 0) = -z2;
    G(3, 0) = -z3;
    G(4, 0) = a.kappa * z2 * z2 * z2 - z4;
    G(3, 1) = -a.alpha * z2 * z2;
    G(4, 1) = -a.theta * z2 * z3;
    G(4, 2) = -(a.alpha + 3.0 * a.kappa - a.theta) * z2 * z2;
    return G;
}

StateZ dilate(const StateZ& z, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("dilation factor must be positive");
    StateZ out;
    for (int i = 0; i < 5; ++i) out.v[i] = z.v[i] * std::pow(lambda, Weights::w[i]);
    return out;
}

Vec5<double> z_dynamics_residual(const LengthParams& p, const StateX& x, const ControlInput& u) {
    const TransformCoeffs c = transform_coeffs(p);
    const ApproxParams a = compute_params(p);

    const SmoothField transform("x_to_z", [c](const auto& xv) { return x_to_z_eval(c, xv); });
    const Mat5 J = jacobian(transform, x.v);

    const Vec5<double> f1 = field_f1(p, x);
    const Vec5<double> f2 = field_f2(p, x);
    Vec5<double> xdot;
    for (int i = 0; i < 5; ++i) xdot[i] = u.u1 * f1[i] + u.u2 * f2[i];

    const StateZ z = x_to_z(p, x);
    const Vec5<double> g1 = field_g1(a, z);
    const Vec5<double> g2 = field_g2(a, z);

    Vec5<double> r;
    for (int i = 0; i < 5; ++i) {
        double zdot_i = 0.0;
        for (int j = 0; j < 5; ++j) zdot_i += J(i, j) * xdot[j];
        r[i] = zdot_i - (u.u1 * g1[i] + u.u2 * g2[i]);
    }
    return r;
}

}  // namespace offhook
