#pragma once

// Univariate polynomials, Sylvester resultants, and the resultant test that
// two Gram characteristic polynomials det(λI - A^*A) coincide.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

#include "tiso/isom.hpp"
#include "tiso/matcore.hpp"
#include "tiso/sparse_poly.hpp"

namespace tiso {

/// Ascending coefficients with trailing zeros trimmed; the zero polynomial
/// has no coefficients.
template <class Coeff>
class UniPolyT {
public:
    UniPolyT() = default;
    explicit UniPolyT(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
        while (!coeffs_.empty() && coeffs_.back() == Coeff(0)) coeffs_.pop_back();
    }

    const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const Coeff& leading() const { return coeffs_.back(); }

    friend bool operator==(const UniPolyT&, const UniPolyT&) = default;

private:
    std::vector<Coeff> coeffs_;
};

using UniPoly = UniPolyT<Complex>;
using RatUniPoly = UniPolyT<Rational>;

/// (deg f + deg g)-square Sylvester matrix, row-major; the first deg g rows
/// carry the coefficients of f (highest degree first).
template <class Coeff>
std::vector<std::vector<Coeff>> sylvester_matrix(const UniPolyT<Coeff>& f, const UniPolyT<Coeff>& g) {
    if (f.degree() < 1 || g.degree() < 1) throw ContractError("resultant needs polynomials of positive degree");
    const auto m = static_cast<std::size_t>(f.degree());
    const auto n = static_cast<std::size_t>(g.degree());
    std::vector<std::vector<Coeff>> s(m + n, std::vector<Coeff>(m + n, Coeff(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d <= m; ++d) s[i][i + d] = f.coeffs()[m - d];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t d = 0; d <= n; ++d) s[n + i][i + d] = g.coeffs()[n - d];
    return s;
}

/// Gaussian elimination; partial pivoting for floating coefficients, first
/// nonzero pivot for exact ones.
template <class Coeff>
Coeff determinant(std::vector<std::vector<Coeff>> a) {
    const std::size_t k = a.size();
    Coeff det(1);
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        if constexpr (std::is_same_v<Coeff, Complex>) {
            for (std::size_t r = col + 1; r < k; ++r)
                if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        } else {
            while (pivot < k && a[pivot][col] == Coeff(0)) ++pivot;
            if (pivot == k) return Coeff(0);
        }
        if (a[pivot][col] == Coeff(0)) return Coeff(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < k; ++r) {
            if (a[r][col] == Coeff(0)) continue;
            const Coeff factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < k; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

template <class Coeff>
Coeff sylvester_resultant(const UniPolyT<Coeff>& f, const UniPolyT<Coeff>& g) {
    return determinant(sylvester_matrix(f, g));
}

/// det(λI - A^*A) expanded from the squared singular values of A.
UniPoly char_gram_poly(const Mat& a);

enum class ResultantScaling {
    /// |Res| / Π_{i,j} max(|r_i|, |s_j|) over the roots r_i, s_j: the product
    /// of relative root gaps, in [0, 1] for Gram polynomials.
    root_pairwise,
    /// |Res| / (|f|_1^{deg g} |g|_1^{deg f}).
    coefficient_norm,
};

/// Scaled |Res(char_gram_poly(A), char_gram_poly(phi(A)))| for one element.
double relative_gram_resultant(const LinearMapA& phi, const UpperToeplitz& a,
                               ResultantScaling scaling = ResultantScaling::root_pairwise);

/// Max of relative_gram_resultant over seeded random elements.
double resultant_isometry_test(const LinearMapA& phi, std::size_t samples, std::uint64_t seed,
                               ResultantScaling scaling = ResultantScaling::root_pairwise);

}  // namespace tiso
