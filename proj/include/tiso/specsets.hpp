#pragma once

// Numerical range and numerical radius via support-function sweeps, the
// Haagerup-de la Harpe bound for nilpotent contractions, and the constructive
// unitary similarity taking a norm-one nilpotent of maximal order to S.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tiso/matcore.hpp"

namespace tiso {

class NotJordanBlock : public std::runtime_error {
public:
    NotJordanBlock(std::string quantity, double value);
    const std::string& quantity() const noexcept { return quantity_; }
    double value() const noexcept { return value_; }

private:
    std::string quantity_;
    double value_;
};

struct RadiusReport {
    double radius;
    double attaining_angle;  // in [0, 2π)
    std::vector<Complex> attaining_vector;
};

/// w(A) = max_θ λ_max((e^{-iθ}A + e^{iθ}A^*)/2): a uniform grid over θ, then
/// golden-section refinement on the bracket around the best grid point.
/// Ties on the grid go to the smaller angle.
RadiusReport numerical_radius(const Mat& a, std::size_t grid = 256, std::size_t refine_iters = 60);

/// Points <A v_j, v_j> for the top eigenvectors v_j of Re(e^{-iθ_j} A),
/// θ_j = 2πj/m. All points lie in W(A).
std::vector<Complex> numerical_range_boundary(const Mat& a, std::size_t points);

/// Least k with |T^k| <= eps_residual * max(1, |T|)^k; throws ContractError
/// when no k <= n qualifies.
std::size_t nilpotency_order(const Mat& t, const Tol& tol = {});

struct HdlhVerdict {
    std::size_t order;  // d
    double bound;       // cos(π/(d+1))
    double radius;
    bool within_bound;
    bool attains;
    /// Present iff attains. For d == n: unitary U with U S U^* = T. For d < n:
    /// an n x d isometry W with T W = W J_d and T^* W = W J_d^*, i.e. span(W)
    /// reduces T to a J_d summand.
    std::optional<Mat> block_similarity;
    double certificate_residual;
};

HdlhVerdict hdlh_check(const Mat& t, const Tol& tol = {});

/// Unitary U (phase-normalized) with U S U^* = T for a nilpotent T with
/// |T| = |T^{n-1}| = 1.
Mat jordan_block_similarity(const Mat& t, const Tol& tol = {});

}  // namespace tiso
