#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tiso/isom.hpp"
#include "tiso/random.hpp"

using namespace tiso;
using tiso::test::reversal;

namespace {

Mat shift_pow(std::size_t n, std::size_t k) { return embed(UpperToeplitz::shift_power(n, k)); }

FactorCert expect_cert(const FactorResult& r) {
    if (const auto* w = std::get_if<NotIsometry>(&r)) FAIL("unexpected rejection: " << w->reason);
    return std::get<FactorCert>(r);
}

NotIsometry expect_rejection(const FactorResult& r) {
    REQUIRE(std::holds_alternative<NotIsometry>(r));
    return std::get<NotIsometry>(r);
}

LinearMapA random_isometry(std::size_t n, Rng& rng) { return synthesize_isometry(haar_unitary(n, rng), haar_unitary(n, rng)); }

}  // namespace

TEST_SUITE("isom") {

TEST_CASE("applying maps") {
    Rng rng(41);
    const UpperToeplitz a = random_upper_toeplitz(4, rng);
    CHECK(apply_map(LinearMapA::identity(4), a) == embed(a));
    CHECK(apply_map(LinearMapA::identity(4), UpperToeplitz::zero(4)) == Mat(4, 4));
    CHECK(apply_map(LinearMapA::transpose(4), UpperToeplitz::shift_power(4, 1)) == shift_matrix(4).adjoint());
    CHECK_THROWS_AS(apply_map(LinearMapA::identity(3), a), DimensionError);
    CHECK_THROWS_AS(LinearMapA({Mat::identity(2), Mat::identity(3)}), DimensionError);
}

TEST_CASE("synthesized maps") {
    const LinearMapA id = synthesize_isometry(Mat::identity(3), Mat::identity(3));
    CHECK(id.images() == LinearMapA::identity(3).images());
    const LinearMapA tr = synthesize_isometry(reversal(3), reversal(3));
    CHECK(tr.images() == LinearMapA::transpose(3).images());
    Rng rng(42);
    CHECK(verify_isometry_sampled(random_isometry(5, rng), 100, 1) <= 1e-10);
    CHECK_THROWS_AS(synthesize_isometry(shift_matrix(3), Mat::identity(3)), ContractError);
}

TEST_CASE("factoring a synthesized isometry recovers U and V up to phase") {
    Rng rng(43);
    for (std::size_t n = 1; n <= 8; ++n) {
        const Mat u0 = haar_unitary(n, rng);
        const Mat v0 = haar_unitary(n, rng);
        const FactorCert cert = expect_cert(factor_isometry(synthesize_isometry(u0, v0)));
        CHECK(cert.residual <= 1e-9);
        const auto [du, theta] = phase_aligned_distance(cert.u, u0);
        CHECK(du <= 1e-8);
        CHECK(frobenius_norm(cert.v - std::conj(theta) * v0) <= 1e-8);
    }
}

TEST_CASE("transpose map factors through the reversal") {
    for (std::size_t n = 2; n <= 8; ++n) {
        const FactorCert cert = expect_cert(factor_isometry(LinearMapA::transpose(n)));
        CHECK(cert.residual <= 1e-10);
        const auto [du, theta] = phase_aligned_distance(cert.u, reversal(n));
        CHECK(du <= 1e-10);
        CHECK(frobenius_norm(cert.v - std::conj(theta) * reversal(n)) <= 1e-10);
    }
}

TEST_CASE("rejections name their stage") {
    const std::size_t n = 3;
    const NotIsometry w1 = expect_rejection(factor_isometry(LinearMapA({shift_matrix(n), shift_matrix(n), shift_matrix(n)})));
    CHECK(w1.stage == 1);
    CHECK(w1.reason == "stage 1: φ(I) not unitary");

    const NotIsometry w3 = expect_rejection(factor_isometry(LinearMapA({Mat::identity(n), 0.5 * shift_matrix(n), shift_pow(n, 2)})));
    CHECK(w3.stage == 3);
    CHECK(w3.defect == doctest::Approx(0.5));

    // φ(S) fine, φ(S²) wrong.
    const NotIsometry w5 = expect_rejection(factor_isometry(LinearMapA({Mat::identity(n), shift_matrix(n), Mat(n, n)})));
    CHECK(w5.stage == 5);
    CHECK(w5.defect == doctest::Approx(1.0));
}

TEST_CASE("property: certificates are sound") {
    Rng rng(44);
    const Tol tol;
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        LinearMapA phi = random_isometry(n, rng);
        if (t % 2 == 1) {
            // Small perturbations may be accepted or rejected, but never with a bad certificate.
            std::vector<Mat> images = phi.images();
            images[static_cast<std::size_t>(t) % n] += 1e-9 * complex_gaussian(n, n, rng);
            phi = LinearMapA(images);
        }
        const FactorResult r = factor_isometry(phi);
        if (const auto* cert = std::get_if<FactorCert>(&r)) {
            CHECK(certificate_residual(phi, cert->u, cert->v) <= 10 * tol.eps_residual);
            CHECK(is_unitary(cert->u).defect <= tol.eps_residual);
            CHECK(is_unitary(cert->v).defect <= tol.eps_residual);
        }
    }
}

TEST_CASE("property: perturbations of one image are detected") {
    Rng rng(45);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        std::vector<Mat> images = random_isometry(n, rng).images();
        Mat dir = complex_gaussian(n, n, rng);
        images[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n - 1)))] += (1e-2 / frobenius_norm(dir)) * dir;
        const FactorResult r = factor_isometry(LinearMapA(images));
        const auto* cert = std::get_if<FactorCert>(&r);
        CHECK((cert == nullptr || cert->residual > 1e-4));
    }
}

TEST_CASE("sampled norm deviation") {
    CHECK(verify_isometry_sampled(LinearMapA::identity(4), 50, 0) == 0.0);
    std::vector<Mat> half;
    const LinearMapA id = LinearMapA::identity(4);
    for (const auto& m : id.images()) half.push_back(0.5 * m);
    CHECK(verify_isometry_sampled(LinearMapA(half), 50, 0) > 0.1);
    CHECK_THROWS_AS(verify_isometry_sampled(LinearMapA::identity(4), 0, 0), ContractError);
}

TEST_CASE("singular value preservation") {
    Rng rng(46);
    CHECK(singular_preservation_check(random_isometry(5, rng), 100, 3) <= 1e-9);
    CHECK(singular_preservation_check(LinearMapA::transpose(5), 100, 3) <= 1e-9);
    std::vector<Mat> images = LinearMapA::identity(4).images();
    images[1] = 2.0 * images[1];
    // Random samples include a dominant S-coefficient often enough over 200 trials.
    CHECK(singular_preservation_check(LinearMapA(images), 200, 0) >= 1.0);
}

TEST_CASE("amplified norms") {
    Rng rng(47);
    for (std::size_t k : {1, 2, 3}) CHECK(amplified_isometry_check(LinearMapA::identity(4), k, 20, 0) == 0.0);
    const LinearMapA phi = random_isometry(4, rng);
    CHECK(amplified_isometry_check(phi, 2, 30, 1) <= 1e-8);
    CHECK(amplified_isometry_check(phi, 3, 30, 1) <= 1e-8);
    for (std::size_t n = 2; n <= 6; ++n) {
        CHECK(amplified_isometry_check(LinearMapA::transpose(n), 2, 30, 2) <= 1e-8);
        CHECK(amplified_isometry_check(LinearMapA::transpose(n), 3, 30, 2) <= 1e-8);
    }
}

TEST_CASE("homomorphism check") {
    CHECK(homomorphism_check(LinearMapA::identity(5), 20, 0) == 0.0);
    Rng rng(48);
    const Mat u = haar_unitary(5, rng);
    CHECK(homomorphism_check(synthesize_isometry(u, u.adjoint()), 50, 0) <= 1e-10);
    const LinearMapA broken({Mat::identity(3), shift_matrix(3), Mat(3, 3)});
    const UpperToeplitz s = UpperToeplitz::shift_power(3, 1);
    CHECK(multiplicativity_defect(broken, s, s) == doctest::Approx(1.0));
    // The algebra is commutative, so (AB)^T = A^T B^T there.
    CHECK(homomorphism_check(LinearMapA::transpose(3), 10, 0) <= 1e-12);
    CHECK_THROWS_AS(homomorphism_check(synthesize_isometry(u, u), 10, 0), ContractError);
}

TEST_CASE("unitalize and normalize") {
    Rng rng(49);
    const Mat u = haar_unitary(4, rng);
    const Mat v = haar_unitary(4, rng);
    const LinearMapA phi = synthesize_isometry(u, v);
    const LinearMapA psi = unitalize(phi);
    CHECK(frobenius_norm(psi.image(0) - Mat::identity(4)) < 1e-12);
    CHECK(homomorphism_check(psi, 20, 0) <= 1e-10);
    const FactorCert cert = expect_cert(factor_isometry(phi));
    const LinearMapA norm = normalized_map(phi, cert);
    for (std::size_t k = 0; k < 4; ++k) CHECK(frobenius_norm(norm.image(k) - shift_pow(4, k)) < 1e-10);
}

TEST_CASE("nested kernel and range chains") {
    for (std::size_t n = 2; n <= 7; ++n) {
        const ChainReport id = nested_chain_check(LinearMapA::identity(n));
        CHECK(id.links.size() == (n > 2 ? n - 2 : 0));
        CHECK(id.all_contained());
        CHECK(id.all_strict());
    }
    Rng rng(50);
    for (std::size_t n = 2; n <= 8; ++n) {
        const ChainReport r = nested_chain_check(random_isometry(n, rng));
        CHECK(r.all_contained());
        CHECK(r.all_strict());
    }
    std::vector<Mat> images = LinearMapA::identity(5).images();
    images[2] = shift_matrix(5);
    const ChainReport flat = nested_chain_check(LinearMapA(images));
    CHECK(flat.all_contained());
    CHECK_FALSE(flat.all_strict());
    CHECK_FALSE(flat.links.front().strict);
}

TEST_CASE("Neumann moments") {
    const std::vector<Complex> x{1.0, Complex(0, 2), 3.0};
    const std::vector<Complex> y{Complex(1, 1), 0.0, -1.0};
    const auto m0 = neumann_moments(Mat(3, 3), x, y);
    REQUIRE(m0.size() == 4);
    CHECK(m0[0] == Complex(1, 1) * 1.0 - 3.0);
    for (std::size_t k = 1; k < 4; ++k) CHECK(m0[k] == Complex(0.0));

    // Krylov space of (S, e1) is span{e1}.
    const Mat a = shift_matrix(3);
    const std::vector<Complex> e1{1.0, 0.0, 0.0};
    const std::vector<Complex> e3{0.0, 0.0, 1.0};
    for (const auto& v : neumann_moments(a, e1, e3)) CHECK(v == Complex(0.0));
    CHECK(neumann_moments(a, e3, std::vector<Complex>{0.0, 1.0, 0.0})[1] == Complex(1.0));
    CHECK_THROWS_AS(neumann_moments(a, e1, std::vector<Complex>{1.0}), DimensionError);
}

TEST_CASE("corner blocks of a normalized isometry have vanishing moments") {
    Rng rng(51);
    for (std::size_t n = 3; n <= 7; ++n) {
        const LinearMapA phi = random_isometry(n, rng);
        const LinearMapA norm = normalized_map(phi, expect_cert(factor_isometry(phi)));
        for (std::size_t k = 1; k < n; ++k) {
            const CornerBlocks b = corner_blocks(norm.image(k));
            CHECK(std::abs(b.alpha) < 1e-10);
            for (const auto& m : neumann_moments(b.a, b.x, b.y)) CHECK(std::abs(m) < 1e-10);
        }
    }
    const CornerBlocks b = corner_blocks(Mat::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}));
    CHECK(b.a == Mat::from_rows({{2, 3}, {5, 6}}));
    CHECK(b.x == std::vector<Complex>{1.0, 4.0});
    CHECK(b.y == std::vector<Complex>{8.0, 9.0});
    CHECK(b.alpha == Complex(7.0));
}

TEST_CASE("system maps on all Toeplitz matrices") {
    Rng rng(52);
    for (std::size_t n = 2; n <= 6; ++n) {
        const Mat u0 = haar_unitary(n, rng);
        const Mat v0 = haar_unitary(n, rng);
        const SystemMapT phi = SystemMapT::synthesize(u0, v0);
        std::vector<Complex> diags(2 * n - 1);
        for (auto& d : diags) d = rng.complex_normal();
        const ToeplitzFull t(n, diags);
        CHECK(frobenius_norm(phi.apply(t) - u0 * embed(t) * v0) < 1e-12);

        const FactorCert cert = expect_cert(factor_system_isometry(phi));
        CHECK(cert.residual <= 1e-8);
        const auto [du, theta] = phase_aligned_distance(cert.u, u0);
        CHECK(du <= 1e-8);
        CHECK(frobenius_norm(cert.v - std::conj(theta) * v0) <= 1e-8);

        std::vector<Mat> lower = phi.lower_images();
        lower.front() = Mat(n, n);
        const NotIsometry w = expect_rejection(factor_system_isometry(SystemMapT(phi.upper_images(), lower)));
        CHECK(w.stage == 7);
    }
    std::vector<Mat> up, low;
    for (std::size_t k = 0; k < 4; ++k) up.push_back(shift_pow(4, k));
    for (std::size_t k = 1; k < 4; ++k) low.push_back(shift_pow(4, k).adjoint());
    const FactorCert id = expect_cert(factor_system_isometry(SystemMapT(up, low)));
    CHECK(phase_aligned_distance(id.u, Mat::identity(4)).first < 1e-12);
    CHECK(id.residual < 1e-12);
    CHECK_THROWS_AS(SystemMapT(up, {}), DimensionError);
}

}
