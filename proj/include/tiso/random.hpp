#pragma once

#include <cstdint>
#include <random>

#include "tiso/matcore.hpp"

namespace tiso {

/// Per-trial seed derived from (seed, index) with splitmix64 mixing, so
/// sampled checks give identical results however trials are scheduled.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }
    /// Complex standard normal, E|z|^2 = 1.
    Complex complex_normal();

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

Mat complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// diagonal of R made real positive.
Mat haar_unitary(std::size_t n, Rng& rng);

}  // namespace tiso
