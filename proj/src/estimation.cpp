#include "grss/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "grss/rng.hpp"

namespace grss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Objective {
    const GrssDataset& data;
    Family family;
    Mode mode;
    double boundary_gap;
    double min_x;

    bool clamped() const { return family == Family::TwoParamExponential; }

    ThetaVector theta(const double p[2]) const {
        const double sigma = std::exp(p[1]);
        if (!clamped()) return {p[0], sigma};
        return {min_x - boundary_gap * sigma - std::exp(p[0]), sigma};
    }

    double loglik(const ThetaVector& th) const {
        return mode == Mode::GRSS ? grss_loglik(data, family, th)
                                  : rss_loglik(data, family, th);
    }

    ScoreVector score(const ThetaVector& th) const {
        return mode == Mode::GRSS ? grss_score(data, family, th)
                                  : rss_score(data, family, th);
    }

    double value(const double p[2]) const {
        const ThetaVector th = theta(p);
        if (!(th.sigma > 0.0) || !std::isfinite(th.sigma)) return kInf;
        const double ll = loglik(th);
        return std::isfinite(ll) ? -ll : kInf;
    }

    // Gradient of -loglik in the transformed coordinates; valid where finite.
    void gradient(const double p[2], const ScoreVector& sc, double g[2]) const {
        const double sigma = std::exp(p[1]);
        if (!clamped()) {
            g[0] = -sc.d_mu;
            g[1] = -sc.d_sigma * sigma;
        } else {
            g[0] = sc.d_mu * std::exp(p[0]);
            g[1] = -(sc.d_sigma * sigma - sc.d_mu * boundary_gap * sigma);
        }
    }
};

struct Candidate {
    double p[2];
    double value = kInf;
    bool converged = false;
    int iterations = 0;
};

// BFGS with Armijo backtracking; accepts on function value only.
Candidate minimize(const Objective& obj, const double start[2], const FitOptions& opts) {
    Candidate c;
    c.p[0] = start[0];
    c.p[1] = start[1];
    c.value = obj.value(c.p);
    if (!std::isfinite(c.value)) return c;

    double g[2];
    obj.gradient(c.p, obj.score(obj.theta(c.p)), g);
    double H[2][2] = {{1.0, 0.0}, {0.0, 1.0}};  // inverse Hessian approximation

    for (int it = 0; it < opts.max_iterations; ++it) {
        c.iterations = it;
        const double gtol = opts.score_tolerance * (1.0 + std::fabs(c.value));
        if (std::max(std::fabs(g[0]), std::fabs(g[1])) <= gtol) {
            c.converged = true;
            return c;
        }
        double d[2] = {-(H[0][0] * g[0] + H[0][1] * g[1]),
                       -(H[1][0] * g[0] + H[1][1] * g[1])};
        double slope = d[0] * g[0] + d[1] * g[1];
        if (!(slope < 0.0)) {  // reset to steepest descent
            d[0] = -g[0];
            d[1] = -g[1];
            slope = -(g[0] * g[0] + g[1] * g[1]);
            H[0][0] = H[1][1] = 1.0;
            H[0][1] = H[1][0] = 0.0;
        }
        double t = 1.0, fn = kInf;
        double pn[2];
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            pn[0] = c.p[0] + t * d[0];
            pn[1] = c.p[1] + t * d[1];
            fn = obj.value(pn);
            if (fn <= c.value + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // Stalled; converged only if already at a near-stationary point.
            c.converged =
                std::max(std::fabs(g[0]), std::fabs(g[1])) <= std::max(gtol, 1e-6 * (1.0 + std::fabs(c.value)));
            return c;
        }
        double gn[2];
        obj.gradient(pn, obj.score(obj.theta(pn)), gn);
        const double s[2] = {pn[0] - c.p[0], pn[1] - c.p[1]};
        const double y[2] = {gn[0] - g[0], gn[1] - g[1]};
        const double sy = s[0] * y[0] + s[1] * y[1];
        if (sy > 1e-12 * std::sqrt((s[0] * s[0] + s[1] * s[1]) * (y[0] * y[0] + y[1] * y[1]))) {
            // BFGS inverse update
            const double rho = 1.0 / sy;
            const double Hy[2] = {H[0][0] * y[0] + H[0][1] * y[1],
                                  H[1][0] * y[0] + H[1][1] * y[1]};
            const double yHy = y[0] * Hy[0] + y[1] * Hy[1];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    H[a][b] += (1.0 + rho * yHy) * rho * s[a] * s[b] -
                               rho * (s[a] * Hy[b] + Hy[a] * s[b]);
        }
        c.p[0] = pn[0];
        c.p[1] = pn[1];
        c.value = fn;
        g[0] = gn[0];
        g[1] = gn[1];
    }
    c.iterations = opts.max_iterations;
    return c;
}

// Nelder-Mead polish for points where BFGS stalls (Laplace kinks). Operates in
// the transformed coordinates; derivative-free, accepts on function value.
void nelder_mead(const Objective& obj, Candidate& c, int max_iter = 400) {
    double pts[3][2] = {{c.p[0], c.p[1]},
                        {c.p[0] + 1e-2 * (1.0 + std::fabs(c.p[0])), c.p[1]},
                        {c.p[0], c.p[1] + 1e-2}};
    double fv[3] = {c.value, obj.value(pts[1]), obj.value(pts[2])};
    auto order = [&] {
        for (int a = 0; a < 2; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (fv[b] < fv[a]) {
                    std::swap(fv[a], fv[b]);
                    std::swap(pts[a][0], pts[b][0]);
                    std::swap(pts[a][1], pts[b][1]);
                }
    };
    order();
    for (int it = 0; it < max_iter; ++it) {
        const double size = std::max(
            std::fabs(pts[1][0] - pts[0][0]) + std::fabs(pts[1][1] - pts[0][1]),
            std::fabs(pts[2][0] - pts[0][0]) + std::fabs(pts[2][1] - pts[0][1]));
        if (size < 1e-12 * (1.0 + std::fabs(pts[0][0]) + std::fabs(pts[0][1]))) break;
        const double cen[2] = {0.5 * (pts[0][0] + pts[1][0]), 0.5 * (pts[0][1] + pts[1][1])};
        double refl[2] = {2.0 * cen[0] - pts[2][0], 2.0 * cen[1] - pts[2][1]};
        const double fr = obj.value(refl);
        if (fr < fv[0]) {
            double expa[2] = {3.0 * cen[0] - 2.0 * pts[2][0], 3.0 * cen[1] - 2.0 * pts[2][1]};
            const double fe = obj.value(expa);
            if (fe < fr) {
                pts[2][0] = expa[0]; pts[2][1] = expa[1]; fv[2] = fe;
            } else {
                pts[2][0] = refl[0]; pts[2][1] = refl[1]; fv[2] = fr;
            }
        } else if (fr < fv[1]) {
            pts[2][0] = refl[0]; pts[2][1] = refl[1]; fv[2] = fr;
        } else {
            double con[2] = {0.5 * (cen[0] + pts[2][0]), 0.5 * (cen[1] + pts[2][1])};
            const double fc = obj.value(con);
            if (fc < fv[2]) {
                pts[2][0] = con[0]; pts[2][1] = con[1]; fv[2] = fc;
            } else {
                for (int k = 1; k < 3; ++k) {
                    pts[k][0] = 0.5 * (pts[0][0] + pts[k][0]);
                    pts[k][1] = 0.5 * (pts[0][1] + pts[k][1]);
                    double pk[2] = {pts[k][0], pts[k][1]};
                    fv[k] = obj.value(pk);
                }
            }
        }
        order();
    }
    c.p[0] = pts[0][0];
    c.p[1] = pts[0][1];
    c.value = fv[0];
}

// A Laplace maximum may sit exactly on a data point, where the mu-score jumps
// downward through zero. Certify it by the one-sided sign change plus a
// vanishing sigma-score.
bool kink_optimal(const Objective& obj, const ThetaVector& th, double loglik,
                  const FitOptions& opts) {
    if (obj.family != Family::Laplace) return false;
    bool near_kink = false;
    for (const auto& o : obj.data.observations)
        if (std::fabs(o.x - th.mu) <= 1e-7 * (1.0 + std::fabs(o.x))) near_kink = true;
    if (!near_kink) return false;
    const double delta = 1e-6 * th.sigma;
    try {
        const ScoreVector left = obj.score({th.mu - delta, th.sigma});
        const ScoreVector right = obj.score({th.mu + delta, th.sigma});
        const ScoreVector at = obj.score(th);
        const double stol = std::max(opts.score_tolerance, 1e-6) * (1.0 + std::fabs(loglik));
        return left.d_mu >= -stol && right.d_mu <= stol && std::fabs(at.d_sigma) <= stol;
    } catch (const std::exception&) {
        return false;
    }
}

std::array<std::array<double, 2>, 2> fd_hessian(const Objective& obj, const ThetaVector& th) {
    // Central second differences of the log-likelihood in (mu, sigma).
    auto ll = [&](double mu, double sigma) {
        if (!(sigma > 0.0)) return -kInf;
        return obj.loglik({mu, sigma});
    };
    double h0 = 1e-4 * (1.0 + std::fabs(th.mu));
    double h1 = 1e-4 * (1.0 + std::fabs(th.sigma));
    if (obj.clamped()) {
        // stay inside the support boundary mu < min(x)
        const double room = obj.min_x - th.mu;
        if (room > 0.0) h0 = std::min(h0, 0.45 * room);
    }
    h1 = std::min(h1, 0.45 * th.sigma);
    const double f0 = ll(th.mu, th.sigma);
    std::array<std::array<double, 2>, 2> H{};
    H[0][0] = (ll(th.mu + h0, th.sigma) - 2.0 * f0 + ll(th.mu - h0, th.sigma)) / (h0 * h0);
    H[1][1] = (ll(th.mu, th.sigma + h1) - 2.0 * f0 + ll(th.mu, th.sigma - h1)) / (h1 * h1);
    H[0][1] = H[1][0] = (ll(th.mu + h0, th.sigma + h1) - ll(th.mu + h0, th.sigma - h1) -
                         ll(th.mu - h0, th.sigma + h1) + ll(th.mu - h0, th.sigma - h1)) /
                        (4.0 * h0 * h1);
    return H;
}

bool negative_definite(const std::array<std::array<double, 2>, 2>& H) {
    if (!std::isfinite(H[0][0]) || !std::isfinite(H[1][1]) || !std::isfinite(H[0][1]))
        return false;
    // both eigenvalues < 0  <=>  trace < 0 and det > 0
    return H[0][0] + H[1][1] < 0.0 && H[0][0] * H[1][1] - H[0][1] * H[1][0] > 0.0;
}

struct DataStats {
    double mean, sd, min;
    int distinct;
};

DataStats stats_of(const GrssDataset& data) {
    DataStats s{0.0, 0.0, kInf, 0};
    const auto& obs = data.observations;
    std::vector<double> xs;
    xs.reserve(obs.size());
    for (const auto& o : obs) {
        s.mean += o.x;
        s.min = std::min(s.min, o.x);
        xs.push_back(o.x);
    }
    s.mean /= static_cast<double>(obs.size());
    for (const auto& o : obs) s.sd += (o.x - s.mean) * (o.x - s.mean);
    s.sd = std::sqrt(s.sd / std::max<std::size_t>(obs.size() - 1, 1));
    std::sort(xs.begin(), xs.end());
    s.distinct = static_cast<int>(std::unique(xs.begin(), xs.end()) - xs.begin());
    return s;
}

// Deterministic multistart points derived from data statistics only.
std::vector<std::array<double, 2>> start_points(const Objective& obj, const DataStats& st,
                                                const FitOptions& opts) {
    std::vector<std::array<double, 2>> starts;
    const Family fam = obj.family;
    if (!obj.clamped()) {
        const double mu0 = st.mean;
        const double sig0 = std::max(st.sd / std_sd(fam), 1e-8 * (1.0 + std::fabs(st.mean)));
        static constexpr double kJitter[][2] = {
            {0.0, 1.0}, {0.5, 1.5}, {-0.5, 0.75}, {0.0, 2.0}, {0.0, 0.5},
            {0.25, 1.25}, {-0.25, 0.6}, {0.75, 0.9}};
        for (int k = 0; k < opts.multistart_count; ++k) {
            const auto& j = kJitter[k % 8];
            starts.push_back({mu0 + j[0] * st.sd, std::log(sig0 * j[1])});
        }
    } else {
        const int n = obj.data.n();
        const double sig0 = std::max(st.mean - st.min, 1e-8 * (1.0 + std::fabs(st.mean)));
        static constexpr double kFactor[] = {1.0, 1.5, 0.6, 2.5, 0.35, 1.2, 0.8, 2.0};
        for (int k = 0; k < opts.multistart_count; ++k) {
            const double sig = sig0 * kFactor[k % 8];
            // exp(u) is the distance of mu below the clamp; start at the typical
            // gap between the minimum and the support endpoint, sigma/n.
            starts.push_back({std::log(sig / n), std::log(sig)});
        }
    }
    return starts;
}

}  // namespace

std::string mode_name(Mode mode) { return mode == Mode::GRSS ? "grss" : "rss"; }

FitResult fit_mle(const GrssDataset& data, Family family, Mode mode, const FitOptions& opts) {
    data.validate();
    if (mode == Mode::GRSS && !data.has_z)
        throw std::invalid_argument("fit_mle: GRSS mode needs side counts");
    const DataStats st = stats_of(data);
    if (st.distinct < 2) throw std::invalid_argument("fit_mle: need >= 2 distinct x values");

    Objective obj{data, family, mode, opts.boundary_gap, st.min};
    FitResult best;
    best.mode = mode;
    best.loglik_at_opt = -kInf;
    FitResult best_unconverged = best;

    for (const auto& start : start_points(obj, st, opts)) {
        Candidate c = minimize(obj, start.data(), opts);
        if (!std::isfinite(c.value)) continue;
        bool kink_hit = false;
        if (!c.converged) {
            // Derivative-free polish: gradient-based steps stall when the
            // Laplace optimum lands on a data point.
            nelder_mead(obj, c);
            double g[2];
            try {
                obj.gradient(c.p, obj.score(obj.theta(c.p)), g);
                const double gtol = opts.score_tolerance * (1.0 + std::fabs(c.value));
                c.converged = std::max(std::fabs(g[0]), std::fabs(g[1])) <= gtol;
            } catch (const std::exception&) {
                c.converged = false;
            }
            if (!c.converged && kink_optimal(obj, obj.theta(c.p), -c.value, opts)) {
                c.converged = true;
                kink_hit = true;
            }
        }
        FitResult fr;
        fr.mode = mode;
        fr.theta_hat = obj.theta(c.p);
        fr.loglik_at_opt = -c.value;
        fr.iterations = c.iterations;
        fr.boundary_hit =
            kink_hit || (obj.clamped() && std::exp(c.p[0]) <= 1e-4 * fr.theta_hat.sigma);
        fr.hessian = fd_hessian(obj, fr.theta_hat);
        fr.converged = c.converged && (fr.boundary_hit || negative_definite(fr.hessian));
        if (fr.converged) {
            if (fr.loglik_at_opt > best.loglik_at_opt) best = fr;
        } else if (fr.loglik_at_opt > best_unconverged.loglik_at_opt) {
            best_unconverged = fr;
        }
    }
    if (!best.converged && std::isfinite(best_unconverged.loglik_at_opt)) return best_unconverged;
    if (best.converged && negative_definite(best.hessian)) {
        // observed-information standard errors: diagonal of (-H)^{-1}
        const auto& H = best.hessian;
        const double det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
        best.std_errors = {std::sqrt(-H[1][1] / det), std::sqrt(-H[0][0] / det)};
    }
    return best;
}

BootstrapResult bootstrap_mse(const FitResult& fit, Family family, int m, int r, int B,
                              std::uint64_t seed, const FitOptions& opts, bool strict_normal) {
    if (!fit.converged) throw std::invalid_argument("bootstrap_mse: fit did not converge");
    if (B < 2) throw std::invalid_argument("bootstrap_mse: need B >= 2");
    const Family sim_family = strict_normal ? Family::Normal : family;
    const LocationScaleModel model{sim_family, fit.theta_hat.mu, fit.theta_hat.sigma};

    std::vector<double> dmu(B), dsig(B);
    std::vector<char> ok(B, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (int b = 0; b < B; ++b) {
        const std::uint64_t sub = RngStream::derive(seed, {0x626f6f74ULL, static_cast<std::uint64_t>(b)});
        const GrssDataset ds = draw_grss(model, m, r, sub);
        try {
            const FitResult fb = fit_mle(ds, family, fit.mode, opts);
            if (fb.converged) {
                dmu[b] = fb.theta_hat.mu - fit.theta_hat.mu;
                dsig[b] = fb.theta_hat.sigma - fit.theta_hat.sigma;
                ok[b] = 1;
            }
        } catch (const std::exception&) {
            // dropped replicate
        }
    }
    BootstrapResult res;
    for (int b = 0; b < B; ++b) {
        if (!ok[b]) {
            ++res.dropped;
            continue;
        }
        ++res.used;
        res.mse_mu += dmu[b] * dmu[b];
        res.mse_sigma += dsig[b] * dsig[b];
    }
    if (res.dropped * 10 > B)
        throw std::runtime_error("bootstrap_mse: more than 10% of replicates failed to refit");
    res.mse_mu /= (res.used - 1);
    res.mse_sigma /= (res.used - 1);
    return res;
}

}  // namespace grss
