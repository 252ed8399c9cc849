#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grss/estimation.hpp"

namespace grss {

struct SimConfig {
    Family family = Family::Normal;
    double mu = 5.0;
    double sigma = 3.0;
    int m = 3;
    int r = 5;
    int replicates = 20000;
    std::uint64_t seed = 0;
    bool run_rss = true;
    bool run_grss = true;
    FitOptions fit_opts{};
};

struct ModeSummary {
    double bias_mu = 0.0;
    double mse_mu = 0.0;
    double bias_sigma = 0.0;
    double mse_sigma = 0.0;
    int used = 0;
    int dropped = 0;
};

struct SimSummary {
    std::optional<ModeSummary> rss;
    std::optional<ModeSummary> grss;
    bool valid = true;  // false when a mode dropped more than 5% of replicates
};

/// Monte Carlo bias/MSE over config.replicates paired replicates: RSS and GRSS
/// fits consume identical x values, so MSE differences reflect the side counts
/// only. workers > 0 pins the OpenMP team size; output is independent of it
/// (per-replicate substreams, fixed-order aggregation).
SimSummary run_sim(const SimConfig& config, int workers = 0);

/// Plain serial loop, kept as the reference implementation for the parallel
/// harness; must produce bit-identical summaries.
SimSummary run_sim_serial(const SimConfig& config);

struct TableRow {
    int n, m, r;
    Mode mode;
    char param;  // 'm' for location, 's' for scale
    double bias, mse;
    int used, dropped;
};

std::vector<TableRow> run_table(const std::vector<SimConfig>& grid, int workers = 0);

/// CSV report: header n,m,r,estimator,param,bias,mse,used,dropped.
void write_report_csv(std::ostream& out, const std::vector<TableRow>& rows);

struct FixtureRow {
    Family family;
    Mode mode;
    char param;
    double bias;           // theta_hat - (5, 3)
    double bootstrap_mse;  // parametric bootstrap, B replicates
};

/// Deterministic fits of the four benchmark datasets with bootstrap MSE.
std::vector<FixtureRow> fixture_report(int bootstrap_b = 10000,
                                       std::uint64_t seed = 20240901);

void write_fixture_report(std::ostream& out, const std::vector<FixtureRow>& rows);

}  // namespace grss
