#include "grss/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "grss/rng.hpp"
#include "grss/sampling.hpp"

namespace grss {

namespace {

struct ReplicateResult {
    double mu[2], sigma[2];  // indexed by mode: 0 = RSS, 1 = GRSS
    bool ok[2];
};

ReplicateResult run_replicate(const SimConfig& cfg, int k) {
    const std::uint64_t sub =
        RngStream::derive(cfg.seed, {0x73696dULL, static_cast<std::uint64_t>(k)});
    const LocationScaleModel model{cfg.family, cfg.mu, cfg.sigma};
    const GrssDataset data = draw_grss(model, cfg.m, cfg.r, sub);
    ReplicateResult res{};
    res.ok[0] = res.ok[1] = false;
    const bool want[2] = {cfg.run_rss, cfg.run_grss};
    for (int mode_ix = 0; mode_ix < 2; ++mode_ix) {
        if (!want[mode_ix]) continue;
        const Mode mode = mode_ix == 0 ? Mode::RSS : Mode::GRSS;
        try {
            const FitResult fit = fit_mle(data, cfg.family, mode, cfg.fit_opts);
            if (fit.converged) {
                res.mu[mode_ix] = fit.theta_hat.mu;
                res.sigma[mode_ix] = fit.theta_hat.sigma;
                res.ok[mode_ix] = true;
            }
        } catch (const std::exception&) {
            // dropped replicate
        }
    }
    return res;
}

SimSummary summarize(const SimConfig& cfg, const std::vector<ReplicateResult>& results) {
    SimSummary out;
    const bool want[2] = {cfg.run_rss, cfg.run_grss};
    for (int mode_ix = 0; mode_ix < 2; ++mode_ix) {
        if (!want[mode_ix]) continue;
        ModeSummary s;
        // fixed replicate-index order keeps the sums bit-exact across worker counts
        for (const auto& r : results) {
            if (!r.ok[mode_ix]) {
                ++s.dropped;
                continue;
            }
            ++s.used;
            const double dm = r.mu[mode_ix] - cfg.mu;
            const double ds = r.sigma[mode_ix] - cfg.sigma;
            s.bias_mu += dm;
            s.mse_mu += dm * dm;
            s.bias_sigma += ds;
            s.mse_sigma += ds * ds;
        }
        if (s.used > 0) {
            s.bias_mu /= s.used;
            s.mse_mu /= s.used;
            s.bias_sigma /= s.used;
            s.mse_sigma /= s.used;
        }
        if (s.dropped * 20 > cfg.replicates) out.valid = false;
        (mode_ix == 0 ? out.rss : out.grss) = s;
    }
    return out;
}

}  // namespace

SimSummary run_sim_serial(const SimConfig& cfg) {
    if (cfg.replicates < 2) throw std::invalid_argument("run_sim: need >= 2 replicates");
    std::vector<ReplicateResult> results(cfg.replicates);
    for (int k = 0; k < cfg.replicates; ++k) results[k] = run_replicate(cfg, k);
    return summarize(cfg, results);
}

SimSummary run_sim(const SimConfig& cfg, int workers) {
    if (cfg.replicates < 2) throw std::invalid_argument("run_sim: need >= 2 replicates");
    std::vector<ReplicateResult> results(cfg.replicates);
#ifdef _OPENMP
    if (workers > 0) {
#pragma omp parallel for schedule(dynamic, 32) num_threads(workers)
        for (int k = 0; k < cfg.replicates; ++k) results[k] = run_replicate(cfg, k);
    } else {
#pragma omp parallel for schedule(dynamic, 32)
        for (int k = 0; k < cfg.replicates; ++k) results[k] = run_replicate(cfg, k);
    }
#else
    (void)workers;
    for (int k = 0; k < cfg.replicates; ++k) results[k] = run_replicate(cfg, k);
#endif
    return summarize(cfg, results);
}

std::vector<TableRow> run_table(const std::vector<SimConfig>& grid, int workers) {
    if (grid.empty()) throw std::invalid_argument("run_table: empty grid");
    std::vector<TableRow> rows;
    for (const auto& cfg : grid) {
        const SimSummary sum = run_sim(cfg, workers);
        const int n = cfg.m * cfg.r;
        auto emit = [&](Mode mode, const ModeSummary& s) {
            rows.push_back({n, cfg.m, cfg.r, mode, 'm', s.bias_mu, s.mse_mu, s.used, s.dropped});
            rows.push_back({n, cfg.m, cfg.r, mode, 's', s.bias_sigma, s.mse_sigma, s.used, s.dropped});
        };
        if (sum.rss) emit(Mode::RSS, *sum.rss);
        if (sum.grss) emit(Mode::GRSS, *sum.grss);
    }
    return rows;
}

void write_report_csv(std::ostream& out, const std::vector<TableRow>& rows) {
    out << "n,m,r,estimator,param,bias,mse,used,dropped\n";
    char buf[128];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%s,%s,%.6g,%.6g,%d,%d\n", row.n, row.m,
                      row.r, mode_name(row.mode).c_str(),
                      row.param == 'm' ? "location" : "scale", row.bias, row.mse, row.used,
                      row.dropped);
        out << buf;
    }
}

std::vector<FixtureRow> fixture_report(int bootstrap_b, std::uint64_t seed) {
    std::vector<FixtureRow> rows;
    for (Family family : kAllFamilies) {
        const GrssDataset data = load_fixture(family);
        for (Mode mode : {Mode::RSS, Mode::GRSS}) {
            const FitResult fit = fit_mle(data, family, mode);
            if (!fit.converged)
                throw std::runtime_error("fixture_report: fit did not converge for " +
                                         family_name(family));
            const std::uint64_t sub =
                RngStream::derive(seed, {0x666978ULL, static_cast<std::uint64_t>(family),
                                         static_cast<std::uint64_t>(mode)});
            const BootstrapResult boot =
                bootstrap_mse(fit, family, data.m, data.r, bootstrap_b, sub);
            rows.push_back({family, mode, 'm', fit.theta_hat.mu - 5.0, boot.mse_mu});
            rows.push_back({family, mode, 's', fit.theta_hat.sigma - 3.0, boot.mse_sigma});
        }
    }
    return rows;
}

void write_fixture_report(std::ostream& out, const std::vector<FixtureRow>& rows) {
    out << "family,estimator,param,bias,bootstrap_mse\n";
    char buf[128];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.6g,%.6g\n",
                      family_name(row.family).c_str(), mode_name(row.mode).c_str(),
                      row.param == 'm' ? "location" : "scale", row.bias, row.bootstrap_mse);
        out << buf;
    }
}

}  // namespace grss
