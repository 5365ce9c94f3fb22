#pragma once

#include <array>
#include <optional>
#include <vector>

#include "offhook/approx.hpp"
#include "offhook/vehicle.hpp"

namespace offhook {

/// Gains of the oscillating feedback: decay gain gamma, sampling period
/// epsilon, and the three integer frequency multipliers.
struct ControlGains {
    double gamma = 1.0;
    double epsilon = 0.1;
    int k12 = 8;
    int k112 = 6;
    int k1112 = 5;

    double omega() const;  // 2*pi/epsilon
    bool valid() const;
};

void require_valid(const ControlGains& g);

/// State-dependent controller coefficients; all zero iff z = 0.
struct FeedbackCoeffs {
    double a1 = 0.0;
    double a2 = 0.0;
    double a12 = 0.0;
    double a112 = 0.0;
    double a1112 = 0.0;
};

/// All setwise-coprime integer tuples c != 0 with sum |c_i| <= max_order
/// and c . k = 0, sorted by (order, lexicographic). Setwise coprime means
/// the gcd of the nonzero |c_i| is 1.
std::vector<std::array<int, 3>> find_resonances(const std::array<int, 3>& k, int max_order);

struct C1Failure {
    std::array<int, 3> tuple;    // the offending frequency tuple
    std::array<int, 3> witness;  // minimal-order resonance, first nonzero entry positive
};

struct C1Result {
    bool pass = false;
    std::vector<C1Failure> failures;  // one entry per offending tuple
};

/// Condition C1: no resonances of order up to 4 in (k12,k112,k1112),
/// (k12,2k112,k1112), (k12,k112,3k1112), (k12,2k112,3k1112).
C1Result check_C1(const ControlGains& g);

/// Closed-form coefficient map a(z) for Q(z) = (gamma/2)||z||^2.
FeedbackCoeffs coeffs(const ApproxParams& a, double gamma, const StateZ& z);

/// Same map computed as -G^{-1}(z) grad Q(z) by forward substitution.
FeedbackCoeffs coeffs_via_inverse(const ApproxParams& a, double gamma, const StateZ& z);

/// The epsilon-periodic trigonometric controls u(t) for frozen
/// coefficients. sign(0) is taken as 0, so a vanished coefficient
/// silences its harmonic pair entirely.
ControlInput control_value(const FeedbackCoeffs& c, const ControlGains& g, double t);

}  // namespace offhook
