#include "tiso/isom.hpp"

#include <algorithm>
#include <cmath>

#include "tiso/random.hpp"
#include "tiso/specsets.hpp"

namespace tiso {

namespace {

void require_square_images(const std::vector<Mat>& images, std::size_t n, const char* what) {
    for (const auto& m : images) {
        if (m.rows() != n || m.cols() != n) {
            throw DimensionError(std::string(what) + ": image of shape " + describe_shape(m) + ", expected " +
                                 std::to_string(n) + "x" + std::to_string(n));
        }
        if (!m.all_finite()) throw ContractError(std::string(what) + ": non-finite image entry");
    }
}

void require_unitary(const Mat& u, const Tol& tol, const char* name) {
    const auto check = is_unitary(u, tol);
    if (!check) throw ContractError(std::string(name) + " is not unitary (defect " + std::to_string(check.defect) + ")");
}

NotIsometry reject(int stage, std::string reason, double defect, Mat offending) {
    return NotIsometry{stage, "stage " + std::to_string(stage) + ": " + std::move(reason), defect, std::move(offending)};
}

}  // namespace

LinearMapA::LinearMapA(std::vector<Mat> images) : images_(std::move(images)) {
    if (images_.empty()) throw DimensionError("LinearMapA needs n >= 1 images");
    require_square_images(images_, images_.size(), "LinearMapA");
}

LinearMapA LinearMapA::identity(std::size_t n) {
    std::vector<Mat> images;
    for (std::size_t k = 0; k < n; ++k) images.push_back(embed(UpperToeplitz::shift_power(n, k)));
    return LinearMapA(std::move(images));
}

LinearMapA LinearMapA::transpose(std::size_t n) {
    std::vector<Mat> images;
    for (std::size_t k = 0; k < n; ++k) images.push_back(embed(UpperToeplitz::shift_power(n, k)).transpose());
    return LinearMapA(std::move(images));
}

Mat LinearMapA::apply(const UpperToeplitz& a) const {
    if (a.size() != size()) throw DimensionError("apply_map: map size " + std::to_string(size()) + ", element size " + std::to_string(a.size()));
    Mat out(size(), size());
    for (std::size_t k = 0; k < size(); ++k)
        if (a[k] != Complex{}) out += a[k] * images_[k];
    return out;
}

LinearMapA synthesize_isometry(const Mat& u, const Mat& v, const Tol& tol) {
    require_unitary(u, tol, "U");
    require_unitary(v, tol, "V");
    if (u.rows() != v.rows()) throw DimensionError("synthesize_isometry: U and V differ in size");
    const std::size_t n = u.rows();
    std::vector<Mat> images;
    for (std::size_t k = 0; k < n; ++k) images.push_back(u * embed(UpperToeplitz::shift_power(n, k)) * v);
    return LinearMapA(std::move(images));
}

double certificate_residual(const LinearMapA& phi, const Mat& u, const Mat& v) {
    const std::size_t n = phi.size();
    double residual = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        residual = std::max(residual, frobenius_norm(phi.image(k) - u * embed(UpperToeplitz::shift_power(n, k)) * v));
    }
    return residual;
}

LinearMapA unitalize(const LinearMapA& phi) {
    const Mat w0_star = phi.image(0).adjoint();
    std::vector<Mat> images;
    for (const auto& m : phi.images()) images.push_back(m * w0_star);
    return LinearMapA(std::move(images));
}

LinearMapA normalized_map(const LinearMapA& phi, const FactorCert& cert) {
    const Mat u_star = cert.u.adjoint();
    const Mat v_star = cert.v.adjoint();
    std::vector<Mat> images;
    for (const auto& m : phi.images()) images.push_back(u_star * m * v_star);
    return LinearMapA(std::move(images));
}

FactorResult factor_isometry(const LinearMapA& phi, const Tol& tol) {
    tol.validate();
    const std::size_t n = phi.size();
    const Mat& w0 = phi.image(0);

    if (const auto unit = is_unitary(w0, tol); !unit) return reject(1, "φ(I) not unitary", unit.defect, w0);

    const LinearMapA psi = unitalize(phi);
    Mat u = Mat::identity(n);
    if (n >= 2) {
        const Mat& t = psi.image(1);
        const double norm_t = operator_norm(t);
        if (std::abs(norm_t - 1.0) > tol.eps_eq) return reject(3, "|φ(S)| != 1", std::abs(norm_t - 1.0), t);
        const double top = operator_norm(power(t, n - 1));
        if (top < 1.0 - tol.eps_eq) return reject(3, "|φ(S)^{n-1}| < 1", 1.0 - top, t);
        const double nil = operator_norm(power(t, n));
        if (nil > tol.eps_residual * std::pow(std::max(1.0, norm_t), static_cast<double>(n))) {
            return reject(3, "φ(S) not nilpotent", nil, t);
        }
        try {
            u = jordan_block_similarity(t, tol);
        } catch (const NotJordanBlock& e) {
            return reject(4, "φ(S) not unitarily similar to S (" + e.quantity() + ")", e.value(), t);
        }
    }

    const Mat u_star = u.adjoint();
    for (std::size_t k = 0; k < n; ++k) {
        const Mat conjugated = u_star * psi.image(k) * u;
        const double defect = frobenius_norm(conjugated - embed(UpperToeplitz::shift_power(n, k)));
        if (defect > tol.eps_residual) {
            return reject(5, "U^*φ(S^" + std::to_string(k) + ")φ(I)^*U != S^" + std::to_string(k), defect, phi.image(k));
        }
    }

    auto [u_norm, factor] = normalize_phase(u, tol.eps_eq);
    Mat v = std::conj(factor) * (u_star * w0);
    FactorCert cert{std::move(u_norm), std::move(v), 0.0, true};
    cert.residual = certificate_residual(phi, cert.u, cert.v);
    if (cert.residual > 10.0 * tol.eps_residual) return reject(6, "certificate residual too large", cert.residual, w0);
    return cert;
}

double verify_isometry_sampled(const LinearMapA& phi, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw ContractError("trials must be >= 1");
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, t));
        const auto a = random_upper_toeplitz(phi.size(), rng);
        worst = std::max(worst, std::abs(operator_norm(phi.apply(a)) - operator_norm(embed(a))));
    }
    return worst;
}

double singular_preservation_check(const LinearMapA& phi, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw ContractError("trials must be >= 1");
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, t));
        const auto a = random_upper_toeplitz(phi.size(), rng);
        const auto expected = svd_values(embed(a));
        const auto observed = svd_values(phi.apply(a));
        for (std::size_t i = 0; i < expected.size(); ++i) worst = std::max(worst, std::abs(expected[i] - observed[i]));
    }
    return worst;
}

double amplified_isometry_check(const LinearMapA& phi, std::size_t k, std::size_t trials, std::uint64_t seed) {
    if (k == 0) throw ContractError("amplification order must be >= 1");
    if (trials == 0) throw ContractError("trials must be >= 1");
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, t));
        std::vector<Mat> source, image;
        for (std::size_t b = 0; b < k * k; ++b) {
            const auto a = random_upper_toeplitz(phi.size(), rng);
            source.push_back(embed(a));
            image.push_back(phi.apply(a));
        }
        worst = std::max(worst, std::abs(operator_norm(block_matrix(image, k)) - operator_norm(block_matrix(source, k))));
    }
    return worst;
}

double multiplicativity_defect(const LinearMapA& phi, const UpperToeplitz& a, const UpperToeplitz& b) {
    return frobenius_norm(phi.apply(a * b) - phi.apply(a) * phi.apply(b));
}

double homomorphism_check(const LinearMapA& phi, std::size_t trials, std::uint64_t seed, const Tol& tol) {
    const double unit_defect = frobenius_norm(phi.image(0) - Mat::identity(phi.size()));
    if (unit_defect > tol.eps_residual) {
        throw ContractError("homomorphism_check needs a unital map, |φ(I) - I|_F = " + std::to_string(unit_defect));
    }
    if (trials == 0) throw ContractError("trials must be >= 1");
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, t));
        const auto a = random_upper_toeplitz(phi.size(), rng);
        const auto b = random_upper_toeplitz(phi.size(), rng);
        worst = std::max(worst, multiplicativity_defect(phi, a, b));
    }
    return worst;
}

bool ChainReport::all_contained() const {
    return std::all_of(links.begin(), links.end(), [](const ChainLink& l) { return l.kernel_contained && l.range_contained; });
}

bool ChainReport::all_strict() const {
    return std::all_of(links.begin(), links.end(), [](const ChainLink& l) { return l.strict; });
}

ChainReport nested_chain_check(const LinearMapA& phi, const Tol& tol) {
    ChainReport report;
    const std::size_t n = phi.size();
    for (std::size_t k = 2; k < n; ++k) {
        const Mat& prev = phi.image(k - 1);
        const Mat& next = phi.image(k);
        ChainLink link{};
        link.k = k;
        link.kernel_contained = subspace_contained(nullspace_basis(prev, tol), nullspace_basis(next, tol), tol);
        link.range_contained = subspace_contained(range_basis(next, tol), range_basis(prev, tol), tol);
        link.rank_prev = rank_eps(prev, tol);
        link.rank_next = rank_eps(next, tol);
        link.strict = link.rank_prev > link.rank_next;
        report.links.push_back(link);
    }
    return report;
}

std::vector<Complex> neumann_moments(const Mat& a, std::span<const Complex> x, std::span<const Complex> y) {
    if (!a.is_square() || x.size() != a.rows() || y.size() != a.rows()) {
        throw DimensionError("neumann_moments: need A (m x m) and x, y of length m");
    }
    const std::size_t count = a.rows() + 1;
    std::vector<Complex> moments;
    moments.reserve(count);
    std::vector<Complex> krylov(x.begin(), x.end());
    for (std::size_t k = 0; k < count; ++k) {
        Complex m{};
        for (std::size_t i = 0; i < y.size(); ++i) m += y[i] * krylov[i];
        moments.push_back(m);
        krylov = a * std::span<const Complex>(krylov);
    }
    return moments;
}

CornerBlocks corner_blocks(const Mat& t) {
    if (!t.is_square() || t.rows() < 2) throw DimensionError("corner_blocks needs a square matrix with n >= 2");
    const std::size_t m = t.rows() - 1;
    CornerBlocks b{t.block(0, 1, m, m), std::vector<Complex>(m), std::vector<Complex>(m), t(m, 0)};
    for (std::size_t i = 0; i < m; ++i) {
        b.x[i] = t(i, 0);
        b.y[i] = t(m, i + 1);
    }
    return b;
}

SystemMapT::SystemMapT(std::vector<Mat> upper, std::vector<Mat> lower) : upper_(std::move(upper)), lower_(std::move(lower)) {
    if (upper_.empty()) throw DimensionError("SystemMapT needs n >= 1 upper images");
    if (lower_.size() + 1 != upper_.size()) throw DimensionError("SystemMapT needs n - 1 lower images");
    require_square_images(upper_, upper_.size(), "SystemMapT");
    require_square_images(lower_, upper_.size(), "SystemMapT");
}

SystemMapT SystemMapT::synthesize(const Mat& u, const Mat& v, const Tol& tol) {
    const LinearMapA upper = synthesize_isometry(u, v, tol);
    const std::size_t n = upper.size();
    std::vector<Mat> lower;
    for (std::size_t k = 1; k < n; ++k) lower.push_back(u * embed(UpperToeplitz::shift_power(n, k)).adjoint() * v);
    return SystemMapT(upper.images(), std::move(lower));
}

Mat SystemMapT::apply(const ToeplitzFull& t) const {
    const std::size_t n = size();
    if (t.size() != n) throw DimensionError("SystemMapT::apply: size mismatch");
    Mat out(n, n);
    for (std::size_t k = 0; k < n; ++k) out += t.at(static_cast<std::ptrdiff_t>(k)) * upper_[k];
    for (std::size_t k = 1; k < n; ++k) out += t.at(-static_cast<std::ptrdiff_t>(k)) * lower_[k - 1];
    return out;
}

FactorResult factor_system_isometry(const SystemMapT& phi, const Tol& tol) {
    FactorResult result = factor_isometry(phi.restriction(), tol);
    auto* cert = std::get_if<FactorCert>(&result);
    if (cert == nullptr) return result;
    const std::size_t n = phi.size();
    for (std::size_t k = 1; k < n; ++k) {
        const Mat expected = cert->u * embed(UpperToeplitz::shift_power(n, k)).adjoint() * cert->v;
        const double defect = frobenius_norm(phi.lower_images()[k - 1] - expected);
        if (defect > tol.eps_residual) {
            return reject(7, "Φ(S^{*" + std::to_string(k) + "}) != U S^{*" + std::to_string(k) + "} V", defect,
                          phi.lower_images()[k - 1]);
        }
        cert->residual = std::max(cert->residual, defect);
    }
    return result;
}

}  // namespace tiso
