#pragma once

#include <stdexcept>
#include <string>

#include "offhook/dual.hpp"
#include "offhook/linalg.hpp"

namespace offhook {

/// Mechanical lengths of the car + two off-hooked trailers [m].
/// d0/d1 are the hook offsets behind the car / first-trailer axle,
/// l1/l2 the drawbar lengths. All must be strictly positive and finite.
struct LengthParams {
    double d0 = 0.1;
    double d1 = 0.1;
    double l1 = 1.0;
    double l2 = 1.0;

    bool valid() const {
        for (double v : {d0, d1, l1, l2})
            if (!(v > 0.0) || !std::isfinite(v)) return false;
        return true;
    }
    std::string describe() const;
};

/// Throws std::invalid_argument if p is not a valid parameter set.
void require_valid(const LengthParams& p);

/// Configuration state: car position (x1,x2), car heading x3,
/// trailer headings x4, x5. Angles are raw (never wrapped).
struct StateX {
    Vec5<double> v{};
};

struct ControlInput {
    double u1 = 0.0;  // driving velocity [m/s]
    double u2 = 0.0;  // steering velocity [rad/s]
};

// Generic-scalar evaluators so the differentiation oracle can run the
// fields on nested duals. T is double or Dual<...>.
template <class T>
Vec5<T> f1_eval(const LengthParams& p, const Vec5<T>& x) {
    const T s34 = sin(x[2] - x[3]);
    const T f15 = sin(x[2] - x[4]) / p.l2
                  + (p.d1 + p.l1) * sin(x[3] - x[2]) * cos(x[3] - x[4]) / (p.l1 * p.l2);
    return {cos(x[2]), sin(x[2]), T(0.0), s34 / p.l1, f15};
}

template <class T>
Vec5<T> f2_eval(const LengthParams& p, const Vec5<T>& x) {
    const T c34 = cos(x[2] - x[3]);
    const T f25 = p.d0 * (p.d1 + p.l1) * c34 * cos(x[3] - x[4]) / (p.l1 * p.l2)
                  - p.d0 * cos(x[2] - x[4]) / p.l2;
    return {T(0.0), T(0.0), T(1.0), -p.d0 * c34 / p.l1, f25};
}

Vec5<double> field_f1(const LengthParams& p, const StateX& x);
Vec5<double> field_f2(const LengthParams& p, const StateX& x);

struct TrailerPositions {
    std::array<double, 2> c1;  // hitch point of trailer 1
    std::array<double, 2> c2;  // hitch point of trailer 2
};

TrailerPositions trailer_positions(const LengthParams& p, const StateX& x);

/// Left-hand sides of the three rolling-without-slipping constraints for a
/// candidate velocity xdot (trailer-point velocities obtained by
/// differentiating the hitch-chain positions along xdot).
std::array<double, 3> constraint_residuals(const LengthParams& p, const StateX& x,
                                           const Vec5<double>& xdot);

/// Closed-form F(x) with columns (f1, f2, [f1,f2], [f1,[f1,f2]],
/// [f1,[f1,[f1,f2]]]); the depth>=1 bracket entries use the hand-derived
/// component expressions.
Mat5 bracket_matrix_F(const LengthParams& p, const StateX& x);

/// det F(0) in closed form.
double detF0_closed_form(const LengthParams& p);

/// det F(x) computed numerically from the closed-form matrix; exposed so
/// callers can monitor how well-conditioned the transform is away from 0.
double detF(const LengthParams& p, const StateX& x);

}  // namespace offhook
