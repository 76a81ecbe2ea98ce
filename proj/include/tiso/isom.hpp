#pragma once

// Linear maps from the upper-triangular Toeplitz algebra into M_n, the
// factorization phi(A) = U A V that certifies an isometry, and sampled
// cross-checks of the consequences such a factorization implies.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tiso/matcore.hpp"
#include "tiso/toeplitz.hpp"

namespace tiso {

/// A linear map determined by its basis images, images[k] = phi(S^k).
class LinearMapA {
public:
    explicit LinearMapA(std::vector<Mat> images);

    static LinearMapA identity(std::size_t n);
    /// A -> A^T restricted to the algebra.
    static LinearMapA transpose(std::size_t n);

    std::size_t size() const noexcept { return images_.size(); }
    const std::vector<Mat>& images() const noexcept { return images_; }
    const Mat& image(std::size_t k) const { return images_.at(k); }

    Mat apply(const UpperToeplitz& a) const;

private:
    std::vector<Mat> images_;
};

inline Mat apply_map(const LinearMapA& phi, const UpperToeplitz& a) { return phi.apply(a); }

/// A -> U A V. Throws ContractError unless U and V are unitary.
LinearMapA synthesize_isometry(const Mat& u, const Mat& v, const Tol& tol = {});

struct FactorCert {
    Mat u;
    Mat v;
    double residual;  // max_k |phi(S^k) - U S^k V|_F
    bool phase_normalized;
};

/// Rejection witness: the stage that failed, why, by how much, and the matrix
/// the failing quantity was measured on.
struct NotIsometry {
    int stage;
    std::string reason;
    double defect;
    Mat offending;
};

using FactorResult = std::variant<FactorCert, NotIsometry>;

/// Decides whether phi is an isometry by constructing U, V with
/// phi(A) = U A V. Stages: 1 phi(I) unitary; 3 the unitalized image of S is
/// a norm-one nilpotent of maximal order; 4 its Jordan-block similarity;
/// 5 every unitalized, conjugated image equals S^k; 6 the final residual.
FactorResult factor_isometry(const LinearMapA& phi, const Tol& tol = {});

/// max_k |phi(S^k) - U S^k V|_F.
double certificate_residual(const LinearMapA& phi, const Mat& u, const Mat& v);

/// The map A -> U^* phi(A) V^*: unital with S fixed when (U, V) factor phi.
LinearMapA normalized_map(const LinearMapA& phi, const FactorCert& cert);

/// phi followed by right multiplication with phi(I)^*, so phi(I) becomes I.
LinearMapA unitalize(const LinearMapA& phi);

// Sampled cross-checks. Trial t draws from Rng(mix_seed(seed, t)); every
// result is the maximum over trials.

double verify_isometry_sampled(const LinearMapA& phi, std::size_t trials, std::uint64_t seed);
double singular_preservation_check(const LinearMapA& phi, std::size_t trials, std::uint64_t seed);
double amplified_isometry_check(const LinearMapA& phi, std::size_t k, std::size_t trials, std::uint64_t seed);
/// Requires phi(I) = I within eps_residual.
double homomorphism_check(const LinearMapA& phi, std::size_t trials, std::uint64_t seed, const Tol& tol = {});
double multiplicativity_defect(const LinearMapA& phi, const UpperToeplitz& a, const UpperToeplitz& b);

struct ChainLink {
    std::size_t k;          // compares phi(S^{k-1}) with phi(S^k)
    bool kernel_contained;  // ker phi(S^{k-1}) ⊆ ker phi(S^k)
    bool range_contained;   // ran phi(S^k) ⊆ ran phi(S^{k-1})
    bool strict;            // rank drops
    std::size_t rank_prev;
    std::size_t rank_next;
};

struct ChainReport {
    std::vector<ChainLink> links;
    bool all_contained() const;
    bool all_strict() const;
};

/// Links for k = 2..n-1.
ChainReport nested_chain_check(const LinearMapA& phi, const Tol& tol = {});

/// (y^T A^k x) for k = 0..n-1 where A is (n-1) x (n-1); plain transpose, no
/// conjugation.
std::vector<Complex> neumann_moments(const Mat& a, std::span<const Complex> x, std::span<const Complex> y);

/// T = [[x, A], [alpha, y^T]] with x, y in C^{n-1}.
struct CornerBlocks {
    Mat a;
    std::vector<Complex> x;
    std::vector<Complex> y;
    Complex alpha;
};

CornerBlocks corner_blocks(const Mat& t);

/// A linear map on all Toeplitz matrices: upper[k] = Phi(S^k) for
/// k = 0..n-1 and lower[k-1] = Phi(S^{*k}) for k = 1..n-1.
class SystemMapT {
public:
    SystemMapT(std::vector<Mat> upper, std::vector<Mat> lower);

    static SystemMapT synthesize(const Mat& u, const Mat& v, const Tol& tol = {});

    std::size_t size() const noexcept { return upper_.size(); }
    const std::vector<Mat>& upper_images() const noexcept { return upper_; }
    const std::vector<Mat>& lower_images() const noexcept { return lower_; }

    Mat apply(const ToeplitzFull& t) const;
    LinearMapA restriction() const { return LinearMapA(upper_); }

private:
    std::vector<Mat> upper_;
    std::vector<Mat> lower_;
};

/// Factors the restriction to the algebra, then checks Phi(S^{*k}) = U S^{*k} V
/// (stage 7).
FactorResult factor_system_isometry(const SystemMapT& phi, const Tol& tol = {});

}  // namespace tiso
