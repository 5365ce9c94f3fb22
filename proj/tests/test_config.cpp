#include <doctest.h>

#include <charconv>
#include <sstream>

#include "offhook/config.hpp"
#include "offhook/csv.hpp"

using namespace offhook;

TEST_CASE("config JSON round trip is exact") {
    ExperimentConfig c;
    c.lengths = {0.3, 0.7, 1.2, 0.8};
    c.gains = {2.0, 0.05, 9, 7, 5};
    c.initial_frame = Frame::x;
    c.initial_state = {0.1, -0.2, 0.3, -0.4, 0.5};
    c.periods = 42;
    c.substeps = 256;
    c.mode = "original-closed-loop";
    c.out = "traj.csv";
    c.summary_out = "run.json";
    c.eps_list = {0.1, 0.05, 0.025};
    c.open_loop_u = {0.5, -0.25};
    c.duration = 7.5;

    const nlohmann::json j = to_json(c);
    const ExperimentConfig c2 = config_from_json(j);
    CHECK(to_json(c2) == j);
    CHECK(c2.lengths.d0 == c.lengths.d0);
    CHECK(c2.gains.k1112 == c.gains.k1112);
    CHECK(c2.initial_frame == Frame::x);
    CHECK(c2.initial_state == c.initial_state);
    CHECK(c2.eps_list == c.eps_list);
}

TEST_CASE("partial JSON falls back to defaults") {
    const auto j = nlohmann::json::parse(R"({"lengths": {"d0": 1.0, "d1": 1.0}})");
    const ExperimentConfig c = config_from_json(j);
    CHECK(c.lengths.d0 == 1.0);
    CHECK(c.lengths.l1 == 1.0);
    CHECK(c.gains.k12 == 8);
    CHECK(c.mode == "nilpotent-closed-loop");
}

TEST_CASE("malformed initial state is rejected") {
    CHECK_THROWS_AS(
        (void)config_from_json(nlohmann::json::parse(R"({"initial_state":{"frame":"y"}})")),
        std::invalid_argument);
    CHECK_THROWS_AS((void)config_from_json(nlohmann::json::parse(
                        R"({"initial_state":{"frame":"z","values":[1,2]}})")),
                    std::invalid_argument);
}

TEST_CASE("validation catches the documented error classes") {
    ExperimentConfig c;
    CHECK(validate(c).empty());

    ExperimentConfig bad_len = c;
    bad_len.lengths.d0 = 0.0;
    CHECK_FALSE(validate(bad_len).empty());

    ExperimentConfig bad_mode = c;
    bad_mode.mode = "sideways";
    CHECK_FALSE(validate(bad_mode).empty());

    ExperimentConfig resonant = c;
    resonant.gains.k12 = 2;
    resonant.gains.k112 = 1;
    resonant.gains.k1112 = 1;
    CHECK_FALSE(validate(resonant).empty());  // closed-loop mode checks C1

    ExperimentConfig short_eps = c;
    short_eps.mode = "order-study";
    short_eps.eps_list = {0.1};
    CHECK_FALSE(validate(short_eps).empty());

    ExperimentConfig params_mode = resonant;
    params_mode.mode = "params";  // C1 only gates closed-loop runs
    CHECK(validate(params_mode).empty());
}

TEST_CASE("fmt_double survives a parse round trip") {
    for (double v : {1.0 / 3.0, -0.0, 1e-300, 3.141592653589793, -2.5e17, 0.1}) {
        const std::string s = fmt_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}

namespace {
Trajectory tiny_trajectory() {
    Trajectory t;
    t.frame = Frame::z;
    for (int j = 0; j < 4; ++j) {
        t.times.push_back(0.05 * j);
        t.states.push_back({1.0 / 3.0 * j, 0.0, -1.0, 0.25, 1e-17});
        t.controls.push_back({0.5 * j, -0.125});
    }
    t.sample_indices = {0, 2};
    return t;
}
}  // namespace

TEST_CASE("trajectory CSV layout") {
    std::ostringstream os;
    write_trajectory_csv(os, tiny_trajectory());
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,frame,s1,s2,s3,s4,s5,u1,u2,is_sample,norm");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(is, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        REQUIRE(fields.size() == 11);
        rows.push_back(std::move(fields));
    }
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) CHECK(r[1] == "z");
    CHECK(rows[0][9] == "1");
    CHECK(rows[1][9] == "0");
    CHECK(rows[2][9] == "1");
    CHECK(rows[3][9] == "0");
    // numbers round-trip: the third state column holds exactly -1
    CHECK(rows[0][4] == "-1");
}

TEST_CASE("x-frame trajectories with a z-trace interleave both frames") {
    Trajectory t = tiny_trajectory();
    t.frame = Frame::x;
    t.z_trace = t.states;
    std::ostringstream os;
    write_trajectory_csv(os, t);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    int xrows = 0, zrows = 0;
    while (std::getline(is, line)) {
        if (line.find(",x,") != std::string::npos) ++xrows;
        if (line.find(",z,") != std::string::npos) ++zrows;
    }
    CHECK(xrows == 4);
    CHECK(zrows == 4);
}
