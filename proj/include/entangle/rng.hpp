#pragma once

#include "entangle/types.hpp"

#include <cstdint>
#include <random>

namespace entangle {

/// Seeded generator with a portable normal sampler (mt19937_64 output is
/// standardized; std::normal_distribution is not, so Box-Muller by hand).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cxd cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    Vector gaussian_vector(int dim) {
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v[i] = cnormal();
        return v;
    }

    /// Haar-uniform unit vector.
    Vector unit_vector(int dim) {
        Vector v = gaussian_vector(dim);
        double n = v.norm();
        while (n < 1e-12) {
            v = gaussian_vector(dim);
            n = v.norm();
        }
        return v / n;
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Counter-derived child seed (splitmix64 step), so parallel or sequential
/// restart schedules see the same per-restart stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace entangle
