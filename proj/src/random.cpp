#include "tiso/random.hpp"

#include <cmath>

namespace tiso {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex{re, im} / std::sqrt(2.0);
}

Mat complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
    return m;
}

Mat haar_unitary(std::size_t n, Rng& rng) {
    // Gram-Schmidt applied twice; it produces R with a positive real
    // diagonal directly, which is the phase fix that makes Q Haar.
    Mat q = complex_gaussian(n, n, rng);
    for (std::size_t j = 0; j < n; ++j) {
        auto v = q.column(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                const auto qk = q.column(k);
                const Complex c = inner(qk, v);
                for (std::size_t i = 0; i < n; ++i) v[i] -= c * qk[i];
            }
        }
        const double norm = vector_norm(v);
        for (auto& z : v) z /= norm;
        q.set_column(j, v);
    }
    return q;
}

}  // namespace tiso
