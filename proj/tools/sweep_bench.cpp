// Times the Monte-Carlo verification sweeps single-threaded vs OpenMP and
// checks that both modes produce identical results.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "offhook/sweeps.hpp"

using offhook::sweeps::CheckResult;
using offhook::sweeps::Exec;

namespace {

double time_ms(const std::function<CheckResult(Exec)>& fn, Exec mode, CheckResult& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = fn(mode);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    const offhook::ApproxParams a2 = offhook::compute_params({1.0, 1.0, 1.0, 1.0});

    struct Bench {
        std::string name;
        std::function<CheckResult(Exec)> fn;
    };
    const std::vector<Bench> benches{
        {"F bracket oracle (400 samples)",
         [](Exec m) { return offhook::sweeps::check_f_bracket_oracle(400, 7001, m); }},
        {"nilpotency length-5 (100 samples)",
         [&](Exec m) { return offhook::sweeps::check_nilpotency(a2, 100, 7002, m); }},
        {"det G sweep (200000 samples)",
         [&](Exec m) { return offhook::sweeps::check_detG_unit(a2, 200000, 7003, m); }},
        {"coefficient identity (200000 samples)",
         [&](Exec m) { return offhook::sweeps::check_coeff_identity(a2, 200000, 7004, m); }},
    };

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel mode runs serially\n");
#endif
    std::printf("%-40s %12s %12s %9s %s\n", "sweep", "serial[ms]", "parallel[ms]", "speedup",
                "identical");

    bool all_identical = true;
    for (const auto& b : benches) {
        CheckResult rs, rp;
        const double ts = time_ms(b.fn, Exec::serial, rs);
        const double tp = time_ms(b.fn, Exec::parallel, rp);
        const bool same = rs.worst == rp.worst && rs.pass == rp.pass;
        all_identical = all_identical && same;
        std::printf("%-40s %12.1f %12.1f %8.2fx %s\n", b.name.c_str(), ts, tp, ts / tp,
                    same ? "yes" : "NO");
    }
    if (!all_identical) {
        std::printf("serial and parallel sweeps disagree\n");
        return 1;
    }
    return 0;
}
