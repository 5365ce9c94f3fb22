#include "offhook/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace offhook {

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return {buf, res.ptr};
}

namespace {

void write_row(std::ostream& os, double t, char frame, const Vec5<double>& s,
               const ControlInput& u, bool is_sample) {
    os << fmt_double(t) << ',' << frame;
    for (double c : s) os << ',' << fmt_double(c);
    os << ',' << fmt_double(u.u1) << ',' << fmt_double(u.u2) << ',' << (is_sample ? 1 : 0) << ','
       << fmt_double(norm(s)) << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,frame,s1,s2,s3,s4,s5,u1,u2,is_sample,norm\n";
    const char frame = traj.frame == Frame::z ? 'z' : 'x';
    const bool with_z = traj.frame == Frame::x && traj.z_trace.size() == traj.states.size();
    std::size_t next_sample = 0;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        while (next_sample < traj.sample_indices.size() && traj.sample_indices[next_sample] < i)
            ++next_sample;
        const bool is_sample =
            next_sample < traj.sample_indices.size() && traj.sample_indices[next_sample] == i;
        write_row(os, traj.times[i], frame, traj.states[i], traj.controls[i], is_sample);
        if (with_z) write_row(os, traj.times[i], 'z', traj.z_trace[i], traj.controls[i], is_sample);
    }
}

}  // namespace offhook
