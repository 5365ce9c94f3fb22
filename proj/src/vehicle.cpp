#include "offhook/vehicle.hpp"

#include <cmath>
#include <sstream>

namespace offhook {

std::string LengthParams::describe() const {
    std::ostringstream os;
    os << "(d0=" << d0 << ", d1=" << d1 << ", l1=" << l1 << ", l2=" << l2 << ")";
    return os.str();
}

void require_valid(const LengthParams& p) {
    if (!p.valid())
        throw std::invalid_argument("length parameters must be strictly positive and finite: "
                                    + p.describe());
}

Vec5<double> field_f1(const LengthParams& p, const StateX& x) { return f1_eval(p, x.v); }
Vec5<double> field_f2(const LengthParams& p, const StateX& x) { return f2_eval(p, x.v); }

TrailerPositions trailer_positions(const LengthParams& p, const StateX& x) {
    const double x1 = x.v[0], x2 = x.v[1], phi = x.v[2], th1 = x.v[3], th2 = x.v[4];
    TrailerPositions tp;
    tp.c1 = {x1 - p.d0 * std::cos(phi) - p.l1 * std::cos(th1),
             x2 - p.d0 * std::sin(phi) - p.l1 * std::sin(th1)};
    tp.c2 = {x1 - p.d0 * std::cos(phi) - (p.d1 + p.l1) * std::cos(th1) - p.l2 * std::cos(th2),
             x2 - p.d0 * std::sin(phi) - (p.d1 + p.l1) * std::sin(th1) - p.l2 * std::sin(th2)};
    return tp;
}

std::array<double, 3> constraint_residuals(const LengthParams& p, const StateX& x,
                                           const Vec5<double>& xdot) {
    const double phi = x.v[2], th1 = x.v[3], th2 = x.v[4];
    const double r0 = xdot[0] * std::sin(phi) - xdot[1] * std::cos(phi);

    const double xc1d = xdot[0] + p.d0 * std::sin(phi) * xdot[2] + p.l1 * std::sin(th1) * xdot[3];
    const double yc1d = xdot[1] - p.d0 * std::cos(phi) * xdot[2] - p.l1 * std::cos(th1) * xdot[3];
    const double r1 = xc1d * std::sin(th1) - yc1d * std::cos(th1);

    const double d1l1 = p.d1 + p.l1;
    const double xc2d = xdot[0] + p.d0 * std::sin(phi) * xdot[2] + d1l1 * std::sin(th1) * xdot[3]
                        + p.l2 * std::sin(th2) * xdot[4];
    const double yc2d = xdot[1] - p.d0 * std::cos(phi) * xdot[2] - d1l1 * std::cos(th1) * xdot[3]
                        - p.l2 * std::cos(th2) * xdot[4];
    const double r2 = xc2d * std::sin(th2) - yc2d * std::cos(th2);
    return {r0, r1, r2};
}

namespace {

// Hand-derived bracket components of F(x); index convention f_{column,row}.
struct AppendixTerms {
    double f34, f44, f54, f35, f45, f55;
};

AppendixTerms appendix(const LengthParams& p, const Vec5<double>& x) {
    const double d0 = p.d0, d1 = p.d1, l1 = p.l1, l2 = p.l2;
    const double c34 = std::cos(x[2] - x[3]);
    const double c35 = std::cos(x[2] - x[4]);
    const double c45 = std::cos(x[3] - x[4]);
    const double s34 = std::sin(x[2] - x[3]);
    const double s35 = std::sin(x[2] - x[4]);
    const double s45 = std::sin(x[3] - x[4]);
    const double s43 = -s34;
    const double s53 = -s35;
    const double D = d1 + l1;

    AppendixTerms t;
    t.f34 = -(d0 + l1 * c34) / (l1 * l1);
    t.f44 = -(l1 + d0 * c34) / (l1 * l1 * l1);
    t.f54 = -(d0 + l1 * c34) / (l1 * l1 * l1 * l1);

    t.f35 = (D * c45 * (l1 * (d0 * c35 + l2) * c34 + d0 * (l1 * s34 * s35 + l2))
             - l1 * (d0 * D * c34 * s53 * s45 + d0 * l1 + c35 * (l1 * l2 + d0 * D * s34 * s45)))
            / (l1 * l1 * l2 * l2);

    t.f45 = (d0 * l1 * D * D * c45 * c45 * s34 * (s34 * c35 + s53 * c34)
             + D * c45
                   * (d0 * l1 * l1 * c34 * c35 * c35
                      + l1 * c35 * (c34 * (d0 * D * s45 * s34 + l1 * l2) + d0 * (l2 + l1 * s34 * s35))
                      - d0 * l1 * D * s35 * s45 * c34 * c34
                      + d0 * l2 * l2 * c34
                      + l1 * (l2 * l2 + s35 * (d0 * D * s45 + l1 * l2 * s34)))
             + l1 * (d0 * l1 * D * s43 * s45 * c35 * c35
                     + c35 * (d0 * D * D * c34 * c34
                              + d0 * l1 * D * s35 * s45 * c34
                              - l1 * l2 * D * s34 * s45
                              - 2.0 * d0 * (l1 * l1 + d1 * l1 + 0.5 * d1 * d1))
                     + D * (l1 * l2 * s45 + d0 * D * s34) * s35 * c34
                     + d0 * D * l2 * s45 * s35
                     - l1 * (d0 * D * s34 * s45 + l1 * l2)))
            / (l1 * l1 * l1 * l2 * l2 * l2);

    t.f55 = (-d0 * l1 * D * D * c34 * c34 * c34 * ((D * c45 + l2) * c35 + D * s35 * s45)
             - D * l1 * c34 * c34
                   * (4.0 * d0 * l1 * D * (c45 * c45 - 0.5) * c35 * c35
                      + D * (-l1 * l2 * s45 * s45 + 4.0 * d0 * l1 * s35 * s45 * c45
                             - d0 * D * s45 * s34) * c35
                      - 2.0 * d0 * l1 * D * c45 * c45
                      + ((l1 * l2 * s45 + d0 * D * s34) * D * s35 - d0 * l1 * l2) * c45
                      - d0 * D * (l1 - l2 * s34 * s35))
             - D * l1 * c34
                   * (-l1 * (4.0 * d0 * D * s45 * s34 + l1 * l2) * c45 * c35 * c35
                      + (4.0 * l1 * d0 * D * s34 * s35 * c45 * c45
                         + (-l1 * l2 * D * s34 * s45
                            - d0 * (2.0 * l1 * l1 + 2.0 * d1 * l1 + l2 * l2 + d1 * d1)) * c45
                         - 2.0 * l1 * (s34 * d0 * D + 0.5 * l1 * l2 * s45) * s35
                         - l2 * d0 * D) * c35
                      + l1 * l2 * D * s34 * s35 * c45 * c45
                      + (2.0 * l1 * d0 * D * s34 * s45 - l2 * l2 * l2) * c45
                      - (l1 * l2 * D * s34
                         + d0 * (2.0 * l1 * l1 + 2.0 * d1 * l1 + l2 * l2 + d1 * d1) * s45) * s35
                      - d0 * l1 * l2 * s34 * s45)
             + l1 * l1 * (4.0 * d0 * D * c45 * c45 + d0 * l2 * c45 - l1 * s34 * s45 * l2
                          - 2.0 * d0 * D) * D * c35 * c35
             + l1 * c35
                   * (l1 * l2 * D * D * c45 * c45
                      + l1 * ((l1 * l2 * s34 + 4.0 * d0 * D * s45) * s35 + l2 * l2) * D * c45
                      + l1 * l2 * d0 * D * s45 * s35
                      - d0 * D * (4.0 * l1 * l1 + 2.0 * d1 * l1 + l2 * l2 + d1 * d1) * s45 * s34
                      - l1 * l2 * (2.0 * l1 * l1 + 2.0 * d1 * l1 + d1 * d1))
             - 2.0 * l1 * l1 * d0 * D * D * c45 * c45
             + (l1 * (d0 * (4.0 * l1 * l1 + 2.0 * d1 * l1 + l2 * l2 + d1 * d1) * s34
                      + l1 * s45 * l2 * D) * s35
                - l1 * l1 * l2 * d0 + l2 * l2 * l2 * d0) * D * c45
             - l1 * (-(l1 * l2 * s45 + d0 * D * s34) * l2 * D * s35
                     + l1 * (l1 * l2 * D * s34 * s45
                             + d0 * (2.0 * l1 * l1 + 2.0 * d1 * l1 + d1 * d1))))
            / (l1 * l1 * l1 * l1 * l2 * l2 * l2 * l2);
    return t;
}

}  // namespace

Mat5 bracket_matrix_F(const LengthParams& p, const StateX& x) {
    require_valid(p);
    const AppendixTerms t = appendix(p, x.v);
    const Vec5<double> f1 = field_f1(p, x);
    const Vec5<double> f2 = field_f2(p, x);

    Mat5 F = Mat5::Zero();
    for (int i = 0; i < 5; ++i) {
        F(i, 0) = f1[i];
        F(i, 1) = f2[i];
    }
    F(0, 2) = std::sin(x.v[2]);
    F(1, 2) = -std::cos(x.v[2]);
    F(3, 2) = t.f34;
    F(4, 2) = t.f35;
    F(3, 3) = t.f44;
    F(4, 3) = t.f45;
    F(3, 4) = t.f54;
    F(4, 4) = t.f55;
    return F;
}

double detF0_closed_form(const LengthParams& p) {
    require_valid(p);
    const double n = (p.d0 + p.l1) * (p.d0 + p.l2) * (p.d1 + p.l2);
    const double l14 = p.l1 * p.l1 * p.l1 * p.l1;
    const double l24 = p.l2 * p.l2 * p.l2 * p.l2;
    return -n / (l14 * l24);
}

double detF(const LengthParams& p, const StateX& x) {
    return bracket_matrix_F(p, x).determinant();
}

}  // namespace offhook
