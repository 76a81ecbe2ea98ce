#pragma once

// Dense complex linear algebra used by every other module: a row-major
// matrix type, singular values via one-sided Jacobi, Hermitian eigenpairs via
// two-sided Jacobi, nilpotent Schur form via the kernel chain, and subspace
// utilities with explicit tolerances.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tiso {

using Complex = std::complex<double>;

/// Numerical thresholds. The defaults sit two orders of magnitude above the
/// rounding error accumulated at n <= 16.
struct Tol {
    double eps_rank = 1e-9;       // relative singular-value cutoff
    double eps_residual = 1e-8;   // Frobenius residual cutoff
    double eps_eq = 1e-10;        // scalar comparisons

    void validate() const;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotNilpotent : public std::runtime_error {
public:
    explicit NotNilpotent(double power_norm);
    double power_norm() const noexcept { return power_norm_; }

private:
    double power_norm_;
};

class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols);
    /// Takes row-major entries; throws DimensionError on a length mismatch and
    /// ContractError on a non-finite entry.
    Mat(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static Mat identity(std::size_t n);
    static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat diag(std::span<const Complex> d);
    static Mat from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    static Mat from_columns(const std::vector<std::vector<Complex>>& cols, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::vector<Complex> column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const Complex> v);

    Mat adjoint() const;
    Mat transpose() const;
    Mat conj() const;
    Mat block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;

    bool all_finite() const noexcept;

    Mat& operator+=(const Mat& other);
    Mat& operator-=(const Mat& other);
    Mat& operator*=(Complex c);

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator-(Mat a);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(Complex c, Mat a);
Mat operator*(Mat a, Complex c);
std::vector<Complex> operator*(const Mat& a, std::span<const Complex> x);

Complex trace(const Mat& a);
double frobenius_norm(const Mat& a);
Mat power(const Mat& a, std::size_t k);
/// Assembles a k x k block matrix from row-major blocks of equal shape.
Mat block_matrix(std::span<const Mat> blocks, std::size_t k);

Complex inner(std::span<const Complex> x, std::span<const Complex> y);  // x^* y
double vector_norm(std::span<const Complex> x);

/// A = u * diag(values) * v^*. `values` has cols(A) entries sorted
/// descending; v is cols x cols unitary; columns of u paired with a zero
/// singular value are zero.
struct Svd {
    std::vector<double> values;
    Mat u;
    Mat v;
};

Svd svd(const Mat& a);
/// All min(rows, cols) singular values, descending.
std::vector<double> svd_values(const Mat& a);
double operator_norm(const Mat& a);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    Mat vectors;                 // column j pairs with values[j]
};

/// Eigenpairs of (H + H^*)/2. Throws ContractError when H is not Hermitian
/// within eps_eq (relative to max(1, |H|_F)).
HermitianEigen hermitian_eigen(const Mat& h, const Tol& tol = {});
std::vector<double> hermitian_eigs(const Mat& h, const Tol& tol = {});

struct SchurForm {
    Mat q;  // unitary, phase-normalized
    Mat r;  // strictly upper triangular, Q^* T Q = R
};

/// Unitary reduction of a nilpotent matrix to strictly upper-triangular form,
/// built from an orthonormal basis adapted to ker T ⊂ ker T² ⊂ ...
SchurForm schur_strict_upper(const Mat& t, const Tol& tol = {});

std::size_t rank_eps(const Mat& a, const Tol& tol = {});
Mat nullspace_basis(const Mat& a, const Tol& tol = {});
Mat range_basis(const Mat& a, const Tol& tol = {});
/// Orthonormal basis of the orthogonal complement of span(b), b with
/// orthonormal columns.
Mat orthogonal_complement(const Mat& b, const Tol& tol = {});

struct Defect {
    bool passed;
    double defect;
    explicit operator bool() const noexcept { return passed; }
};

Defect is_unitary(const Mat& u, const Tol& tol = {});
Defect is_partial_isometry(const Mat& a, const Tol& tol = {});
/// span(b1) ⊆ span(b2) via the projection residual |(I - b2 b2^*) b1|.
bool subspace_contained(const Mat& b1, const Mat& b2, const Tol& tol = {});

/// Rotates u by a global phase so the first entry of its first column with
/// modulus > eps_eq is real positive. Returns the normalized matrix and the
/// unit factor it was multiplied by.
std::pair<Mat, Complex> normalize_phase(const Mat& u, double eps_eq);

/// min over θ of |a - e^{iθ} b|_F, and the minimizing unit factor e^{iθ}.
std::pair<double, Complex> phase_aligned_distance(const Mat& a, const Mat& b);

std::string describe_shape(const Mat& a);

}  // namespace tiso
