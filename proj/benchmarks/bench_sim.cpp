// Timing comparison of the serial reference harness against the OpenMP one,
// with a bit-exactness assertion between the two.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "grss/simulation.hpp"

using namespace grss;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& fn, SimSummary& out) {
    const auto t0 = clock_type::now();
    out = fn();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

bool identical(const ModeSummary& a, const ModeSummary& b) {
    return a.bias_mu == b.bias_mu && a.mse_mu == b.mse_mu && a.bias_sigma == b.bias_sigma &&
           a.mse_sigma == b.mse_sigma && a.used == b.used && a.dropped == b.dropped;
}

}  // namespace

int main(int argc, char** argv) {
    SimConfig cfg;
    cfg.family = Family::Normal;
    cfg.mu = 5.0;
    cfg.sigma = 3.0;
    cfg.m = 3;
    cfg.r = 5;
    cfg.replicates = argc > 1 ? std::atoi(argv[1]) : 2000;
    cfg.seed = 20240901;

    SimSummary serial, parallel;
    const double t_serial = time_ms([&] { return run_sim_serial(cfg); }, serial);
    const double t_parallel = time_ms([&] { return run_sim(cfg); }, parallel);

    if (!identical(*serial.rss, *parallel.rss) || !identical(*serial.grss, *parallel.grss)) {
        std::fprintf(stderr, "FAIL: serial and parallel summaries differ\n");
        return 1;
    }
    std::printf("replicates        %d\n", cfg.replicates);
    std::printf("serial            %10.1f ms\n", t_serial);
    std::printf("parallel (OpenMP) %10.1f ms\n", t_parallel);
    std::printf("speedup           %10.2fx\n", t_serial / t_parallel);
    std::printf("summaries bit-identical: yes\n");
    return 0;
}
