#pragma once

#include <cstdint>
#include <vector>

#include "grss/distributions.hpp"
#include "grss/rng.hpp"

namespace grss {

struct GrssObservation {
    double x;
    int z;      // in [0, m]; ignored for plain RSS
    int rank;   // i in [1, m]
    int cycle;  // j in [1, r]
};

// D = {(x, z)} with exactly one observation per (rank, cycle) pair.
// RSS datasets reuse the same container with has_z = false.
struct GrssDataset {
    int m = 0;
    int r = 0;
    bool has_z = true;
    std::vector<GrssObservation> observations;

    int n() const { return m * r; }
    void validate() const;  // throws std::invalid_argument on malformed data
};

using RssDataset = GrssDataset;

/// One draw of the i-th order statistic of m model draws (Beta quantile transform).
double draw_order_statistic(const LocationScaleModel& model, int i, int m, RngStream& rng);

RssDataset draw_rss(const LocationScaleModel& model, int m, int r, std::uint64_t seed);
GrssDataset draw_grss(const LocationScaleModel& model, int m, int r, std::uint64_t seed);

/// Strip the side counts: same x values, has_z = false.
RssDataset as_rss(const GrssDataset& data);

/// Marginal pmf of Z at rank i: beta-binomial, free of family and theta.
double z_marginal_pmf(int i, int m, int z);

}  // namespace grss
