#include <doctest.h>

#include <random>
#include <vector>

#include "offhook/approx.hpp"
#include "offhook/lie.hpp"
#include "offhook/vehicle.hpp"

using namespace offhook;

namespace {

const LengthParams kP2{1.0, 1.0, 1.0, 1.0};

SmoothField field_of_f1(const LengthParams& p) {
    return SmoothField("f1", [p](const auto& x) { return f1_eval(p, x); });
}
SmoothField field_of_f2(const LengthParams& p) {
    return SmoothField("f2", [p](const auto& x) { return f2_eval(p, x); });
}
SmoothField field_of_g1(const ApproxParams& a) {
    return SmoothField("g1", [a](const auto& z) { return g1_eval(a, z); });
}
SmoothField field_of_g2(const ApproxParams& a) {
    return SmoothField("g2", [a](const auto& z) { return g2_eval(a, z); });
}

Vec5<double> random_point(std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> u(-r, r);
    Vec5<double> x;
    for (auto& c : x) c = u(rng);
    return x;
}

}  // namespace

TEST_CASE("jacobian of the identity field is the identity matrix") {
    const SmoothField id("id", [](const auto& x) { return x; });
    const Mat5 J = jacobian(id, {0.3, -1.0, 2.0, 0.0, 5.0});
    CHECK((J - Mat5::Identity()).norm() == 0.0);
}

TEST_CASE("jacobian of f2 at the origin: row 4 has zero x3-derivative") {
    // derivative of -cos(x3 - x4) vanishes at zero argument
    const SmoothField f2 = field_of_f2(kP2);
    const Mat5 J = jacobian(f2, Vec5<double>{});
    CHECK(J(3, 2) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("jacobian of g1 at z2=1 has entry (5,2) = 3 kappa") {
    const ApproxParams a2 = compute_params(kP2);  // kappa = 1.5
    const SmoothField g1 = field_of_g1(a2);
    const Mat5 J = jacobian(g1, {0.0, 1.0, 0.0, 0.0, 0.0});
    CHECK(J(4, 1) == doctest::Approx(4.5).epsilon(1e-14));
}

TEST_CASE("jacobian reports singular (non-finite) evaluations") {
    const SmoothField bad("inverse-coordinate", [](const auto& x) {
        auto out = x;
        out[0] = 1.0 / x[0];
        return out;
    });
    CHECK_THROWS_AS((void)jacobian(bad, Vec5<double>{}), std::domain_error);
}

TEST_CASE("finite-difference jacobian cross-checks the dual jacobian") {
    const SmoothField f1 = field_of_f1(LengthParams{0.3, 0.7, 1.2, 0.8});
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
        const Vec5<double> x = random_point(rng, 0.6);
        const Mat5 J = jacobian(f1, x);
        const Mat5 Jfd = jacobian_fd(f1, x);
        CHECK((J - Jfd).cwiseAbs().maxCoeff() < 1e-4);
    }
}

TEST_CASE("a field bracketed with itself vanishes") {
    const SmoothField f1 = field_of_f1(kP2);
    const SmoothField b = lie_bracket(f1, f1);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) CHECK(norm(b.eval(random_point(rng, 1.0))) < 1e-13);
}

TEST_CASE("[g1,g2] at z=(0,1,0,0,0) matches the closed form") {
    const ApproxParams a2 = compute_params(kP2);  // alpha + 3 kappa - theta = 1.5
    const auto br = lie_bracket(field_of_g1(a2), field_of_g2(a2));
    const Vec5<double> v = br.eval(Vec5<double>{0.0, 1.0, 0.0, 0.0, 0.0});
    const Vec5<double> want{0.0, 0.0, 1.0, 0.0, -1.5};
    for (int i = 0; i < 5; ++i) CHECK(v[i] == doctest::Approx(want[i]).epsilon(1e-13));
}

TEST_CASE("[f1,f2] at the origin equals column 3 of F") {
    const auto br = lie_bracket(field_of_f1(kP2), field_of_f2(kP2));
    const Vec5<double> v = br.eval(Vec5<double>{});
    const Mat5 F = bracket_matrix_F(kP2, StateX{});
    for (int i = 0; i < 5; ++i) CHECK(v[i] == doctest::Approx(F(i, 2)).epsilon(1e-12));
}

TEST_CASE("word (1,2) reproduces lie_bracket(f1,f2)") {
    const SmoothField f1 = field_of_f1(kP2);
    const SmoothField f2 = field_of_f2(kP2);
    const std::vector<int> word{1, 2};
    const SmoothField w = iterated_bracket(word, f1, f2);
    const SmoothField b = lie_bracket(f1, f2);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        const Vec5<double> x = random_point(rng, 0.5);
        const Vec5<double> a = w.eval(x);
        const Vec5<double> c = b.eval(x);
        for (int j = 0; j < 5; ++j) CHECK(a[j] == doctest::Approx(c[j]).epsilon(1e-14));
    }
}

TEST_CASE("word (1,1,1,2) on (g1,g2) is the constant field e5") {
    const ApproxParams a2 = compute_params(kP2);
    const std::vector<int> word{1, 1, 1, 2};
    const SmoothField w = iterated_bracket(word, field_of_g1(a2), field_of_g2(a2));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const Vec5<double> v = w.eval(random_point(rng, 2.0));
        CHECK(std::abs(v[0]) < 1e-11);
        CHECK(std::abs(v[1]) < 1e-11);
        CHECK(std::abs(v[2]) < 1e-11);
        CHECK(std::abs(v[3]) < 1e-11);
        CHECK(v[4] == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("length-5 words on (g1,g2) vanish (step-4 nilpotency)") {
    const ApproxParams a1 = compute_params(LengthParams{0.1, 0.1, 1.0, 1.0});
    const SmoothField g1 = field_of_g1(a1);
    const SmoothField g2 = field_of_g2(a1);
    std::mt19937_64 rng(23);
    for (const auto& word :
         {std::vector<int>{1, 1, 1, 1, 2}, {2, 1, 1, 1, 2}, {1, 2, 1, 1, 2}, {2, 2, 1, 1, 2}}) {
        const SmoothField w = iterated_bracket(word, g1, g2);
        for (int i = 0; i < 5; ++i) CHECK(norm(w.eval(random_point(rng, 2.0))) < 1e-9);
    }
}

TEST_CASE("bracket words longer than the cap are rejected") {
    const SmoothField f1 = field_of_f1(kP2);
    const SmoothField f2 = field_of_f2(kP2);
    const std::vector<int> too_long{1, 2, 1, 2, 1, 2};
    CHECK_THROWS_AS((void)iterated_bracket(too_long, f1, f2), std::invalid_argument);
    const std::vector<int> bad_letter{1, 3};
    CHECK_THROWS_AS((void)iterated_bracket(bad_letter, f1, f2), std::invalid_argument);
    const std::vector<int> empty;
    CHECK_THROWS_AS((void)iterated_bracket(empty, f1, f2), std::invalid_argument);
}

TEST_CASE("antisymmetry: [f,g] = -[g,f] pointwise") {
    const ApproxParams a2 = compute_params(kP2);
    const std::vector<SmoothField> fields{field_of_f1(kP2), field_of_f2(kP2), field_of_g1(a2),
                                          field_of_g2(a2)};
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int i = 0; i < 30; ++i) {
        const auto& f = fields[pick(rng)];
        const auto& g = fields[pick(rng)];
        const Vec5<double> x = random_point(rng, 0.7);
        const Vec5<double> fg = lie_bracket(f, g).eval(x);
        const Vec5<double> gf = lie_bracket(g, f).eval(x);
        for (int j = 0; j < 5; ++j) CHECK(std::abs(fg[j] + gf[j]) < 1e-10);
    }
}

TEST_CASE("Jacobi identity on triples from {f1,f2,g1,g2}") {
    const ApproxParams a2 = compute_params(kP2);
    const std::vector<SmoothField> fields{field_of_f1(kP2), field_of_f2(kP2), field_of_g1(a2),
                                          field_of_g2(a2)};
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int i = 0; i < 10; ++i) {
        const auto& f = fields[pick(rng)];
        const auto& g = fields[pick(rng)];
        const auto& h = fields[pick(rng)];
        const Vec5<double> x = random_point(rng, 0.5);
        const Vec5<double> t1 = lie_bracket(f, lie_bracket(g, h)).eval(x);
        const Vec5<double> t2 = lie_bracket(g, lie_bracket(h, f)).eval(x);
        const Vec5<double> t3 = lie_bracket(h, lie_bracket(f, g)).eval(x);
        for (int j = 0; j < 5; ++j) CHECK(std::abs(t1[j] + t2[j] + t3[j]) < 1e-8);
    }
}
