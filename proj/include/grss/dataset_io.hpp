#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "grss/sampling.hpp"

namespace grss {

// Text format: header `m=<int> r=<int>` (optionally ` seed=<uint64>`), then one
// line per observation: `cycle rank x z`, whitespace-separated; the z column is
// absent for RSS datasets. Reals carry >= 10 significant digits.
void write_dataset(std::ostream& out, const GrssDataset& data,
                   std::optional<std::uint64_t> seed = std::nullopt);
GrssDataset read_dataset(std::istream& in);

void write_dataset_file(const std::string& path, const GrssDataset& data,
                        std::optional<std::uint64_t> seed = std::nullopt);
GrssDataset read_dataset_file(const std::string& path);

}  // namespace grss
