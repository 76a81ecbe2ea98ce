#pragma once

#include <Eigen/Dense>

#include "tiso/matcore.hpp"
#include "tiso/random.hpp"
#include "tiso/toeplitz.hpp"

namespace tiso::test {

inline Eigen::MatrixXcd to_eigen(const Mat& a) {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    return out;
}

inline std::vector<double> eigen_singular_values(const Mat& a) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline Mat e_basis(std::size_t n, std::initializer_list<std::size_t> idx) {
    Mat b(n, idx.size());
    std::size_t j = 0;
    for (auto i : idx) b(i, j++) = 1.0;
    return b;
}

/// Reversal permutation.
inline Mat reversal(std::size_t n) {
    Mat j(n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = 1.0;
    return j;
}

}  // namespace tiso::test
