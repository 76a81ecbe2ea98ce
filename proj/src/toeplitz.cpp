#include "tiso/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tiso {

UpperToeplitz::UpperToeplitz(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DimensionError("UpperToeplitz needs n >= 1 coefficients");
    for (const auto& z : coeffs_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ContractError("non-finite coefficient");
}

UpperToeplitz UpperToeplitz::zero(std::size_t n) { return UpperToeplitz(std::vector<Complex>(n)); }

UpperToeplitz UpperToeplitz::identity(std::size_t n) { return scalar(n, 1.0); }

UpperToeplitz UpperToeplitz::shift_power(std::size_t n, std::size_t k) {
    std::vector<Complex> c(n);
    if (k < n) c[k] = 1.0;
    return UpperToeplitz(std::move(c));
}

UpperToeplitz UpperToeplitz::scalar(std::size_t n, Complex c) {
    std::vector<Complex> coeffs(n);
    if (n > 0) coeffs[0] = c;
    return UpperToeplitz(std::move(coeffs));
}

UpperToeplitz UpperToeplitz::conj() const {
    auto c = coeffs_;
    for (auto& z : c) z = std::conj(z);
    return UpperToeplitz(std::move(c));
}

bool UpperToeplitz::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& z) { return z == Complex{}; });
}

UpperToeplitz& UpperToeplitz::operator+=(const UpperToeplitz& other) {
    if (other.size() != size()) throw DimensionError("UpperToeplitz size mismatch");
    for (std::size_t k = 0; k < size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

UpperToeplitz& UpperToeplitz::operator*=(Complex c) {
    for (auto& z : coeffs_) z *= c;
    return *this;
}

UpperToeplitz operator+(UpperToeplitz a, const UpperToeplitz& b) { return a += b; }

UpperToeplitz operator-(const UpperToeplitz& a, const UpperToeplitz& b) { return a + Complex{-1.0} * b; }

UpperToeplitz operator*(Complex c, UpperToeplitz a) { return a *= c; }

UpperToeplitz operator*(const UpperToeplitz& a, const UpperToeplitz& b) {
    if (a.size() != b.size()) {
        throw DimensionError("utoe_mul: size " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    const std::size_t n = a.size();
    std::vector<Complex> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == Complex{}) continue;
        for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
    }
    return UpperToeplitz(std::move(c));
}

ToeplitzFull::ToeplitzFull(std::size_t n, std::vector<Complex> diags) : n_(n), diags_(std::move(diags)) {
    if (n_ == 0) throw DimensionError("ToeplitzFull needs n >= 1");
    if (diags_.size() != 2 * n_ - 1) throw DimensionError("ToeplitzFull needs 2n - 1 diagonals");
}

ToeplitzFull ToeplitzFull::from_parts(const UpperToeplitz& x, const UpperToeplitz& y) {
    if (x.size() != y.size()) throw DimensionError("from_parts: size mismatch");
    const std::size_t n = x.size();
    std::vector<Complex> d(2 * n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        d[n - 1 + k] += x[k];
        d[n - 1 - k] += std::conj(y[k]);  // (Y^*)_{i,j} = conj(y_{i-j})
    }
    return ToeplitzFull(n, std::move(d));
}

UpperToeplitz ToeplitzFull::upper_part() const {
    return UpperToeplitz(std::vector<Complex>(diags_.begin() + static_cast<std::ptrdiff_t>(n_ - 1), diags_.end()));
}

UpperToeplitz ToeplitzFull::lower_part() const {
    std::vector<Complex> y(n_);
    for (std::size_t k = 1; k < n_; ++k) y[k] = std::conj(diags_[n_ - 1 - k]);
    return UpperToeplitz(std::move(y));
}

Mat shift_matrix(std::size_t n) { return embed(UpperToeplitz::shift_power(n, 1)); }

Mat embed(const UpperToeplitz& a) {
    const std::size_t n = a.size();
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = a[j - i];
    return m;
}

Mat embed(const ToeplitzFull& t) {
    const std::size_t n = t.size();
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = t.at(static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i));
    return m;
}

double corner_norm(Complex alpha, Complex beta, std::size_t n) {
    if (n < 2) throw ContractError("corner_norm requires n >= 2");
    const double a2 = std::norm(alpha);
    const double b2 = std::norm(beta);
    const double b = std::abs(beta);
    return std::sqrt((2.0 * a2 + b2 + b * std::sqrt(4.0 * a2 + b2)) / 2.0);
}

FiltrationIndex filtration_index(const UpperToeplitz& a) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] != Complex{}) return {k};
    return {a.size()};
}

CommutantReport in_commutant_of_S(const Mat& m, const Tol& tol) {
    if (!m.is_square()) throw DimensionError("in_commutant_of_S: non-square input " + describe_shape(m));
    const std::size_t n = m.rows();
    const Mat s = shift_matrix(n);
    const double defect = frobenius_norm(m * s - s * m);

    std::vector<Complex> coeffs(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex sum{};
        for (std::size_t i = 0; i + k < n; ++i) sum += m(i, i + k);
        coeffs[k] = sum / static_cast<double>(n - k);
    }
    UpperToeplitz projection(std::move(coeffs));
    const double projection_defect = frobenius_norm(m - embed(projection));
    return {defect <= tol.eps_residual, defect, std::move(projection), projection_defect};
}

UpperToeplitz random_upper_toeplitz(std::size_t n, Rng& rng) {
    std::vector<Complex> c(n);
    for (auto& z : c) z = rng.complex_normal();
    return UpperToeplitz(std::move(c));
}

UpperToeplitz random_filtered_toeplitz(std::size_t n, Rng& rng) {
    const auto r = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    std::vector<Complex> c(n);
    for (std::size_t k = r; k < n; ++k) c[k] = rng.complex_normal();
    return UpperToeplitz(std::move(c));
}

}  // namespace tiso
