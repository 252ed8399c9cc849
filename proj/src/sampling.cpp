#include "grss/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "grss/special.hpp"

namespace grss {

void GrssDataset::validate() const {
    if (m < 1 || r < 1) throw std::invalid_argument("dataset: m and r must be >= 1");
    if (static_cast<int>(observations.size()) != m * r)
        throw std::invalid_argument("dataset: expected exactly m*r observations");
    std::vector<char> seen(static_cast<std::size_t>(m) * r, 0);
    for (const auto& o : observations) {
        if (o.rank < 1 || o.rank > m) throw std::invalid_argument("dataset: rank out of range");
        if (o.cycle < 1 || o.cycle > r) throw std::invalid_argument("dataset: cycle out of range");
        if (has_z && (o.z < 0 || o.z > m)) throw std::invalid_argument("dataset: z out of range");
        if (!std::isfinite(o.x)) throw std::invalid_argument("dataset: non-finite x");
        char& slot = seen[static_cast<std::size_t>(o.rank - 1) * r + (o.cycle - 1)];
        if (slot) throw std::invalid_argument("dataset: duplicate (rank, cycle) pair");
        slot = 1;
    }
}

double draw_order_statistic(const LocationScaleModel& model, int i, int m, RngStream& rng) {
    if (i < 1 || i > m) throw std::domain_error("draw_order_statistic: rank out of range");
    return model.quantile(rng.beta_int(i, m - i + 1));
}

namespace {
enum Purpose : std::uint64_t { kDrawX = 0, kDrawZ = 1 };
}

GrssDataset draw_grss(const LocationScaleModel& model, int m, int r, std::uint64_t seed) {
    if (m < 1 || r < 1) throw std::invalid_argument("draw_grss: m and r must be >= 1");
    GrssDataset data;
    data.m = m;
    data.r = r;
    data.has_z = true;
    data.observations.reserve(static_cast<std::size_t>(m) * r);
    const RngStream root(seed);
    for (int j = 1; j <= r; ++j) {
        for (int i = 1; i <= m; ++i) {
            RngStream sx = root.substream({static_cast<std::uint64_t>(j),
                                           static_cast<std::uint64_t>(i), kDrawX});
            const double x = draw_order_statistic(model, i, m, sx);
            RngStream sz = root.substream({static_cast<std::uint64_t>(j),
                                           static_cast<std::uint64_t>(i), kDrawZ});
            const int z = sz.binomial(m, model.cdf(x));
            data.observations.push_back({x, z, i, j});
        }
    }
    return data;
}

RssDataset draw_rss(const LocationScaleModel& model, int m, int r, std::uint64_t seed) {
    GrssDataset data = draw_grss(model, m, r, seed);
    return as_rss(data);
}

RssDataset as_rss(const GrssDataset& data) {
    RssDataset rss = data;
    rss.has_z = false;
    for (auto& o : rss.observations) o.z = 0;
    return rss;
}

double z_marginal_pmf(int i, int m, int z) {
    if (i < 1 || i > m) throw std::domain_error("z_marginal_pmf: rank out of range");
    if (z < 0 || z > m) throw std::domain_error("z_marginal_pmf: z out of range");
    // E[C(m,z) U^z (1-U)^{m-z}] with U ~ Beta(i, m-i+1): a beta-function ratio.
    using namespace special;
    return std::exp(log_binom(m, z) + log_beta(z + i, 2 * m - z - i + 1) -
                    log_beta(i, m - i + 1));
}

}  // namespace grss
