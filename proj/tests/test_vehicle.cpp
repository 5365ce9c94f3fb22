#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "offhook/vehicle.hpp"

using namespace offhook;

namespace {
const LengthParams kP1{0.1, 0.1, 1.0, 1.0};
const LengthParams kP2{1.0, 1.0, 1.0, 1.0};

StateX random_state(std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> u(-r, r);
    StateX x;
    for (auto& c : x.v) c = u(rng);
    return x;
}

LengthParams random_lengths(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 2.0);
    return {u(rng), u(rng), u(rng), u(rng)};
}
}  // namespace

TEST_CASE("length parameters must be strictly positive and finite") {
    CHECK(kP1.valid());
    CHECK_FALSE(LengthParams{0.0, 0.1, 1.0, 1.0}.valid());
    CHECK_FALSE(LengthParams{0.1, -0.1, 1.0, 1.0}.valid());
    CHECK_FALSE(LengthParams{0.1, 0.1, std::nan(""), 1.0}.valid());
    CHECK_THROWS_AS(require_valid(LengthParams{1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("f1 at the origin is (1,0,0,0,0) for any lengths") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const Vec5<double> f = field_f1(random_lengths(rng), StateX{});
        CHECK(f[0] == 1.0);
        CHECK(f[1] == 0.0);
        CHECK(f[2] == 0.0);
        CHECK(f[3] == 0.0);
        CHECK(f[4] == 0.0);
    }
}

TEST_CASE("f1 at heading pi/2 with unit lengths") {
    StateX x;
    x.v = {0.0, 0.0, std::numbers::pi / 2.0, 0.0, 0.0};
    const Vec5<double> f = field_f1(kP2, x);
    CHECK(f[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f[2] == 0.0);
    CHECK(f[3] == doctest::Approx(1.0).epsilon(1e-15));
    // f15 = sin(pi/2) + 2 sin(-pi/2) cos(0) = -1
    CHECK(f[4] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("f2 at the origin for both paper length sets") {
    const Vec5<double> f2a = field_f2(kP2, StateX{});
    CHECK(f2a[0] == 0.0);
    CHECK(f2a[1] == 0.0);
    CHECK(f2a[2] == 1.0);
    CHECK(f2a[3] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(f2a[4] == doctest::Approx(1.0).epsilon(1e-15));

    const Vec5<double> f2b = field_f2(kP1, StateX{});
    CHECK(f2b[3] == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(f2b[4] == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("f2 always has zero first two components") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const Vec5<double> f = field_f2(random_lengths(rng), random_state(rng, 3.0));
        CHECK(f[0] == 0.0);
        CHECK(f[1] == 0.0);
    }
}

TEST_CASE("trailer positions at the origin") {
    const TrailerPositions tp2 = trailer_positions(kP2, StateX{});
    CHECK(tp2.c1[0] == doctest::Approx(-2.0));
    CHECK(tp2.c1[1] == doctest::Approx(0.0));
    // x1 - d0 - (d1 + l1) - l2 with unit lengths
    CHECK(tp2.c2[0] == doctest::Approx(-4.0));
    CHECK(tp2.c2[1] == doctest::Approx(0.0));

    const TrailerPositions tp1 = trailer_positions(kP1, StateX{});
    CHECK(tp1.c1[0] == doctest::Approx(-1.1));
    CHECK(tp1.c2[0] == doctest::Approx(-2.2));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        const TrailerPositions tp = trailer_positions(random_lengths(rng), StateX{});
        CHECK(tp.c1[1] == 0.0);
        CHECK(tp.c2[1] == 0.0);
    }
}

TEST_CASE("admissible velocities annihilate the rolling constraints") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> uu(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const LengthParams p = random_lengths(rng);
        const StateX x = random_state(rng, 3.0);
        const double u1 = uu(rng), u2 = uu(rng);
        const Vec5<double> f1 = field_f1(p, x);
        const Vec5<double> f2 = field_f2(p, x);
        Vec5<double> xdot;
        for (int c = 0; c < 5; ++c) xdot[c] = u1 * f1[c] + u2 * f2[c];
        for (double r : constraint_residuals(p, x, xdot)) CHECK(std::abs(r) < 1e-12);
    }
}

TEST_CASE("constraint residuals for an inadmissible sideways velocity") {
    const Vec5<double> sideways{0.0, 1.0, 0.0, 0.0, 0.0};
    const auto r = constraint_residuals(kP2, StateX{}, sideways);
    CHECK(r[0] == doctest::Approx(-1.0));
    CHECK(r[1] == doctest::Approx(-1.0));
    CHECK(r[2] == doctest::Approx(-1.0));

    const auto r0 = constraint_residuals(kP2, StateX{}, Vec5<double>{});
    CHECK(r0[0] == 0.0);
    CHECK(r0[1] == 0.0);
    CHECK(r0[2] == 0.0);
}

TEST_CASE("column 1 of F at the origin is f1(0)") {
    const Mat5 F = bracket_matrix_F(kP2, StateX{});
    CHECK(F(0, 0) == 1.0);
    CHECK(F(1, 0) == 0.0);
    CHECK(F(2, 0) == 0.0);
    CHECK(F(3, 0) == 0.0);
    CHECK(F(4, 0) == 0.0);
}

TEST_CASE("det F(0) closed form") {
    CHECK(detF0_closed_form(kP2) == doctest::Approx(-8.0).epsilon(1e-15));
    CHECK(detF0_closed_form(kP1) == doctest::Approx(-1.331).epsilon(1e-12));

    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const LengthParams p = random_lengths(rng);
        const double closed = detF0_closed_form(p);
        const double numeric = bracket_matrix_F(p, StateX{}).determinant();
        CHECK(std::abs(closed - numeric) / std::abs(closed) < 1e-9);
    }
}

TEST_CASE("detF tracks the closed form at the origin") {
    CHECK(detF(kP1, StateX{}) == doctest::Approx(detF0_closed_form(kP1)).epsilon(1e-12));
}
