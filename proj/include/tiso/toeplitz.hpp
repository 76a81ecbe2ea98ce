#pragma once

// The algebra of upper-triangular Toeplitz matrices (polynomials in the
// nilpotent shift S) and the operator system of all Toeplitz matrices.
// Algebra operations act on coefficient vectors, so products and filtration
// indices are exact.

#include <cstddef>
#include <span>
#include <vector>

#include "tiso/matcore.hpp"
#include "tiso/random.hpp"

namespace tiso {

/// Σ_k a_k S^k, stored as (a_0, ..., a_{n-1}).
class UpperToeplitz {
public:
    explicit UpperToeplitz(std::vector<Complex> coeffs);

    static UpperToeplitz zero(std::size_t n);
    static UpperToeplitz identity(std::size_t n);
    static UpperToeplitz shift_power(std::size_t n, std::size_t k);  // S^k, zero when k >= n
    static UpperToeplitz scalar(std::size_t n, Complex c);

    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    const Complex& operator[](std::size_t k) const { return coeffs_[k]; }

    UpperToeplitz conj() const;
    bool is_zero() const noexcept;

    UpperToeplitz& operator+=(const UpperToeplitz& other);
    UpperToeplitz& operator*=(Complex c);

    friend bool operator==(const UpperToeplitz&, const UpperToeplitz&) = default;

private:
    std::vector<Complex> coeffs_;
};

UpperToeplitz operator+(UpperToeplitz a, const UpperToeplitz& b);
UpperToeplitz operator-(const UpperToeplitz& a, const UpperToeplitz& b);
UpperToeplitz operator*(Complex c, UpperToeplitz a);
/// Truncated polynomial product, c_k = Σ_{i+j=k} a_i b_j for k < n.
UpperToeplitz operator*(const UpperToeplitz& a, const UpperToeplitz& b);
inline UpperToeplitz utoe_mul(const UpperToeplitz& a, const UpperToeplitz& b) { return a * b; }

/// A general Toeplitz matrix, entry (i, j) = c_{j-i}.
class ToeplitzFull {
public:
    /// diags = (c_{-(n-1)}, ..., c_0, ..., c_{n-1}), length 2n - 1.
    ToeplitzFull(std::size_t n, std::vector<Complex> diags);
    /// X + Y^*.
    static ToeplitzFull from_parts(const UpperToeplitz& x, const UpperToeplitz& y);

    std::size_t size() const noexcept { return n_; }
    const Complex& at(std::ptrdiff_t k) const { return diags_[static_cast<std::size_t>(k + static_cast<std::ptrdiff_t>(n_) - 1)]; }
    std::span<const Complex> diags() const noexcept { return diags_; }

    /// The split T = X + Y^* with the main diagonal assigned to X.
    UpperToeplitz upper_part() const;
    UpperToeplitz lower_part() const;

private:
    std::size_t n_;
    std::vector<Complex> diags_;
};

Mat shift_matrix(std::size_t n);
Mat embed(const UpperToeplitz& a);
Mat embed(const ToeplitzFull& t);
inline Mat embed_full(const ToeplitzFull& t) { return embed(t); }

/// |αI + βS^{n-1}| from the closed form of its 2x2 compression; n >= 2.
double corner_norm(Complex alpha, Complex beta, std::size_t n);

struct FiltrationIndex {
    std::size_t r;  // == n for the zero element
    friend auto operator<=>(const FiltrationIndex&, const FiltrationIndex&) = default;
};

/// Least k with a_k != 0, tested exactly on the coefficients.
FiltrationIndex filtration_index(const UpperToeplitz& a);

struct CommutantReport {
    bool in_commutant;
    double defect;             // |MS - SM|_F
    UpperToeplitz projection;  // orthogonal projection onto the algebra
    double projection_defect;  // |M - embed(projection)|_F
};

CommutantReport in_commutant_of_S(const Mat& m, const Tol& tol = {});

/// I.i.d. complex standard normal coefficients.
UpperToeplitz random_upper_toeplitz(std::size_t n, Rng& rng);
/// Random element whose filtration index is drawn uniformly from [0, n-1].
UpperToeplitz random_filtered_toeplitz(std::size_t n, Rng& rng);

}  // namespace tiso
