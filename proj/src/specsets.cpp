#include "tiso/specsets.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

#include "tiso/toeplitz.hpp"

namespace tiso {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct SupportSample {
    double value;
    std::vector<Complex> vector;
};

// Top eigenpair of the Hermitian part of e^{-iθ}A.
SupportSample support(const Mat& a, double theta) {
    const Complex rot = std::polar(1.0, -theta);
    const Mat rotated = rot * a;
    const Mat h = 0.5 * (rotated + rotated.adjoint());
    const HermitianEigen eig = hermitian_eigen(h, Tol{0.0, 0.0, 1e-8});
    const std::size_t top = eig.values.size() - 1;
    return {eig.values[top], eig.vectors.column(top)};
}

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

}  // namespace

NotJordanBlock::NotJordanBlock(std::string quantity, double value)
    : std::runtime_error("not unitarily similar to the Jordan block: " + quantity + " = " + std::to_string(value)),
      quantity_(std::move(quantity)),
      value_(value) {}

RadiusReport numerical_radius(const Mat& a, std::size_t grid, std::size_t refine_iters) {
    if (!a.is_square()) throw DimensionError("numerical_radius of non-square matrix " + describe_shape(a));
    if (grid < 8) throw ContractError("numerical_radius: grid must be >= 8");

    const double step = kTwoPi / static_cast<double>(grid);
    RadiusReport best{-std::numeric_limits<double>::infinity(), 0.0, {}};
    std::size_t best_index = 0;
    for (std::size_t j = 0; j < grid; ++j) {
        const double theta = step * static_cast<double>(j);
        auto s = support(a, theta);
        if (s.value > best.radius) {
            best = {s.value, theta, std::move(s.vector)};
            best_index = j;
        }
    }

    // Golden-section search on [θ_b - step, θ_b + step]; keep the best value
    // seen so the result never drops below the grid maximum.
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = step * static_cast<double>(best_index) - step;
    double hi = lo + 2.0 * step;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    auto s1 = support(a, x1);
    auto s2 = support(a, x2);
    auto consider = [&](const SupportSample& s, double theta) {
        if (s.value > best.radius) best = {s.value, wrap_angle(theta), s.vector};
    };
    consider(s1, x1);
    consider(s2, x2);
    for (std::size_t it = 0; it < refine_iters; ++it) {
        if (s1.value >= s2.value) {
            hi = x2;
            x2 = x1;
            s2 = std::move(s1);
            x1 = hi - phi * (hi - lo);
            s1 = support(a, x1);
            consider(s1, x1);
        } else {
            lo = x1;
            x1 = x2;
            s1 = std::move(s2);
            x2 = lo + phi * (hi - lo);
            s2 = support(a, x2);
            consider(s2, x2);
        }
    }
    best.radius = std::max(best.radius, 0.0);
    return best;
}

std::vector<Complex> numerical_range_boundary(const Mat& a, std::size_t points) {
    if (!a.is_square()) throw DimensionError("numerical_range_boundary of non-square matrix");
    if (points < 3) throw ContractError("numerical_range_boundary: need at least 3 points");
    std::vector<Complex> out;
    out.reserve(points);
    for (std::size_t j = 0; j < points; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(points);
        const auto s = support(a, theta);
        out.push_back(inner(s.vector, a * std::span<const Complex>(s.vector)));
    }
    return out;
}

std::size_t nilpotency_order(const Mat& t, const Tol& tol) {
    if (!t.is_square()) throw DimensionError("nilpotency_order of non-square matrix");
    const std::size_t n = t.rows();
    const double scale = std::max(1.0, operator_norm(t));
    Mat p = Mat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        p = p * t;
        if (operator_norm(p) <= tol.eps_residual * std::pow(scale, static_cast<double>(k))) return k;
    }
    throw ContractError("matrix is not nilpotent: |T^n| = " + std::to_string(operator_norm(p)));
}

Mat jordan_block_similarity(const Mat& t, const Tol& tol) {
    if (!t.is_square()) throw DimensionError("jordan_block_similarity of non-square matrix");
    const std::size_t n = t.rows();
    const double norm_t = operator_norm(t);
    if (n >= 2 && norm_t > 1.0 + tol.eps_eq) throw NotJordanBlock("|T|", norm_t);
    const double top_power = operator_norm(power(t, n - 1));
    if (top_power < 1.0 - tol.eps_eq) throw NotJordanBlock("|T^{n-1}|", top_power);

    SchurForm schur;
    try {
        schur = schur_strict_upper(t, tol);
    } catch (const NotNilpotent& e) {
        throw NotJordanBlock("|T^n|", e.power_norm());
    }

    double off_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j) off_mass = std::max(off_mass, std::abs(schur.r(i, j)));
    if (off_mass > tol.eps_eq) throw NotJordanBlock("off-superdiagonal mass", off_mass);

    // R = D^* S D with d_1 = 1, d_{i+1} = d_i x_i, so T = (Q D^*) S (Q D^*)^*.
    std::vector<Complex> d(n);
    d[0] = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Complex x = schur.r(i, i + 1);
        if (std::abs(std::abs(x) - 1.0) > tol.eps_eq) throw NotJordanBlock("|superdiagonal entry| - 1", std::abs(x) - 1.0);
        d[i + 1] = d[i] * x / std::abs(x);
    }
    const Mat u = normalize_phase(schur.q * Mat::diag(d).adjoint(), tol.eps_eq).first;

    const double residual = frobenius_norm(u * shift_matrix(n) * u.adjoint() - t);
    if (residual > tol.eps_residual) throw NotJordanBlock("|U S U^* - T|_F", residual);
    return u;
}

HdlhVerdict hdlh_check(const Mat& t, const Tol& tol) {
    if (!t.is_square()) throw DimensionError("hdlh_check of non-square matrix");
    const std::size_t n = t.rows();
    const double norm_t = operator_norm(t);
    if (norm_t > 1.0 + tol.eps_eq) throw ContractError("hdlh_check: not a contraction, |T| = " + std::to_string(norm_t));
    const std::size_t d = nilpotency_order(t, tol);

    HdlhVerdict v{};
    v.order = d;
    v.bound = std::cos(std::numbers::pi / static_cast<double>(d + 1));
    v.radius = numerical_radius(t).radius;
    v.within_bound = v.radius <= v.bound + tol.eps_eq;
    v.attains = false;
    v.certificate_residual = std::numeric_limits<double>::infinity();
    if (std::abs(v.radius - v.bound) > tol.eps_eq) return v;

    if (d == n) {
        try {
            Mat u = jordan_block_similarity(t, tol);
            v.certificate_residual = frobenius_norm(u * shift_matrix(n) * u.adjoint() - t);
            v.block_similarity = std::move(u);
            v.attains = true;
        } catch (const NotJordanBlock&) {
        }
        return v;
    }

    // Chain x, Tx, ..., T^{d-1}x from the top right singular vector of T^{d-1}.
    const Svd top = svd(power(t, d - 1));
    if (top.values.front() < 1.0 - tol.eps_eq) return v;
    std::vector<std::vector<Complex>> cols(d);
    cols[d - 1] = top.v.column(0);
    for (std::size_t j = d - 1; j > 0; --j) cols[j - 1] = t * std::span<const Complex>(cols[j]);
    const Mat w = Mat::from_columns(cols, n);
    const Mat jd = shift_matrix(d);
    const double residual = frobenius_norm(t * w - w * jd) + frobenius_norm(t.adjoint() * w - w * jd.adjoint()) +
                            frobenius_norm(w.adjoint() * w - Mat::identity(d));
    v.certificate_residual = residual;
    if (residual <= tol.eps_residual) {
        v.block_similarity = w;
        v.attains = true;
    }
    return v;
}

}  // namespace tiso
