#pragma once

#include <cstdint>
#include <initializer_list>

#include "grss/distributions.hpp"
#include "grss/special.hpp"

namespace grss {

// Seedable counter-style stream. One root seed; substreams are derived by
// hashing a path of indices, so parallel and serial generation produce
// identical draws. All variates are quantile transforms of 53-bit uniforms,
// keeping output platform-independent.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t derive(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
        std::uint64_t s = mix(root);
        for (std::uint64_t p : path) s = mix(s ^ mix(p + 0x632be59bd9b4e019ULL));
        return s;
    }

    RngStream substream(std::initializer_list<std::uint64_t> path) const {
        return RngStream(derive(state_, path));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on the open interval (0,1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return special::norm_quantile(uniform()); }

    double draw(Family family) { return std_quantile(family, uniform()); }

    int binomial(int n, double p) {
        int z = 0;
        for (int k = 0; k < n; ++k)
            if (uniform() < p) ++z;
        return z;
    }

    /// Beta(a,b) variate for integer shapes, by quantile transform (one uniform).
    double beta_int(int a, int b) {
        if (a == 1 && b == 1) return uniform();
        return special::ibeta_int_inv(a, b, uniform());
    }

  private:
    std::uint64_t state_;
};

}  // namespace grss
