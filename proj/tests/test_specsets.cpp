#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tiso/random.hpp"
#include "tiso/specsets.hpp"
#include "tiso/toeplitz.hpp"

using namespace tiso;

namespace {

Mat direct_sum_zero(const Mat& a, std::size_t extra) {
    Mat out(a.rows() + extra, a.cols() + extra);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    return out;
}

}  // namespace

TEST_SUITE("specsets") {

TEST_CASE("numerical radius of the shift") {
    CHECK(std::abs(numerical_radius(shift_matrix(2)).radius - 0.5) < 1e-9);
    CHECK(std::abs(numerical_radius(shift_matrix(3)).radius - std::sqrt(0.5)) < 1e-9);
    for (std::size_t n = 2; n <= 12; ++n)
        CHECK(std::abs(numerical_radius(shift_matrix(n)).radius - std::cos(std::numbers::pi / static_cast<double>(n + 1))) < 1e-6);
    CHECK(std::abs(numerical_radius(Mat::identity(4)).radius - 1.0) < 1e-12);
    CHECK_THROWS(numerical_radius(shift_matrix(3), 4));
}

TEST_CASE("attaining vector realizes the radius") {
    Rng rng(31);
    const Mat a = complex_gaussian(4, 4, rng);
    const RadiusReport r = numerical_radius(a);
    const auto& x = r.attaining_vector;
    CHECK(std::abs(vector_norm(x) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(inner(x, a * std::span<const Complex>(x))) - r.radius) < 1e-9);
}

TEST_CASE("numerical range boundary") {
    for (const auto& z : numerical_range_boundary(Mat::identity(3), 16)) CHECK(std::abs(z - Complex(1.0)) < 1e-12);
    const std::vector<Complex> d{0.0, 1.0};
    for (const auto& z : numerical_range_boundary(Mat::diag(d), 32)) {
        CHECK(std::abs(z.imag()) < 1e-12);
        CHECK(z.real() >= -1e-12);
        CHECK(z.real() <= 1.0 + 1e-12);
    }
    double top = 0.0;
    for (const auto& z : numerical_range_boundary(shift_matrix(2), 64)) {
        CHECK(std::abs(std::abs(z) - 0.5) < 1e-8);
        top = std::max(top, std::abs(z));
    }
    CHECK(std::abs(top - 0.5) < 1e-8);
    CHECK_THROWS(numerical_range_boundary(shift_matrix(2), 2));
}

TEST_CASE("property: numerical radius invariants") {
    Rng rng(32);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
        const Mat a = complex_gaussian(n, n, rng);
        const Mat b = complex_gaussian(n, n, rng);
        const Mat u = haar_unitary(n, rng);
        const double wa = numerical_radius(a).radius;
        CHECK(std::abs(numerical_radius(u * a * u.adjoint()).radius - wa) <= 1e-8);
        CHECK(numerical_radius(a + b).radius <= wa + numerical_radius(b).radius + 1e-8);
        const double na = operator_norm(a);
        CHECK(wa <= na + 1e-8);
        CHECK(na <= 2.0 * wa + 1e-8);
    }
}

TEST_CASE("Haagerup-de la Harpe check on the shift") {
    for (std::size_t n = 2; n <= 10; ++n) {
        const HdlhVerdict v = hdlh_check(shift_matrix(n));
        CHECK(v.order == n);
        CHECK(v.bound == doctest::Approx(std::cos(std::numbers::pi / static_cast<double>(n + 1))));
        CHECK(v.within_bound);
        CHECK(v.attains);
        REQUIRE(v.block_similarity.has_value());
        CHECK(v.certificate_residual <= 1e-8);
    }
}

TEST_CASE("scaled shift stays strictly below the bound") {
    const HdlhVerdict v = hdlh_check(0.5 * shift_matrix(4));
    CHECK(v.within_bound);
    CHECK_FALSE(v.attains);
    CHECK_FALSE(v.block_similarity.has_value());
}

TEST_CASE("shift plus a zero summand attains with a reducing isometry") {
    for (std::size_t n = 2; n <= 6; ++n) {
        Rng rng(33 + n);
        const Mat u = haar_unitary(n + 1, rng);
        const Mat t = u * direct_sum_zero(shift_matrix(n), 1) * u.adjoint();
        const HdlhVerdict v = hdlh_check(t);
        CHECK(v.order == n);
        CHECK(v.attains);
        REQUIRE(v.block_similarity.has_value());
        const Mat& w = *v.block_similarity;
        const Mat j = shift_matrix(n);
        CHECK(frobenius_norm(w.adjoint() * w - Mat::identity(n)) < 1e-8);
        CHECK(frobenius_norm(t * w - w * j) < 1e-8);
        CHECK(frobenius_norm(t.adjoint() * w - w * j.adjoint()) < 1e-8);
    }
    CHECK_THROWS_AS(hdlh_check(2.0 * shift_matrix(3)), ContractError);
}

TEST_CASE("nilpotency order") {
    CHECK(nilpotency_order(shift_matrix(5)) == 5);
    CHECK(nilpotency_order(power(shift_matrix(5), 2)) == 3);
    CHECK(nilpotency_order(Mat(3, 3)) == 1);
    CHECK_THROWS_AS(nilpotency_order(Mat::identity(3)), ContractError);
}

TEST_CASE("Jordan block similarity") {
    const Mat u1 = jordan_block_similarity(shift_matrix(4));
    CHECK(phase_aligned_distance(u1, Mat::identity(4)).first < 1e-12);

    const Mat j3 = test::reversal(3);
    const Mat u2 = jordan_block_similarity(shift_matrix(3).adjoint());
    CHECK(phase_aligned_distance(u2, j3).first < 1e-12);

    Rng rng(34);
    for (std::size_t n = 2; n <= 8; ++n) {
        std::vector<Complex> phases(n);
        for (auto& p : phases) p = std::polar(1.0, 6.283 * rng.uniform());
        const Mat d0 = Mat::diag(phases);
        const Mat t = d0 * shift_matrix(n) * d0.adjoint();
        const Mat u = jordan_block_similarity(t);
        CHECK(frobenius_norm(u * shift_matrix(n) * u.adjoint() - t) <= 1e-10);
    }
}

TEST_CASE("Jordan block similarity rejects other matrices") {
    CHECK_THROWS_AS(jordan_block_similarity(2.0 * shift_matrix(3)), NotJordanBlock);
    CHECK_THROWS_AS(jordan_block_similarity(power(shift_matrix(3), 2)), NotJordanBlock);
    CHECK_THROWS_AS(jordan_block_similarity(0.5 * shift_matrix(3)), NotJordanBlock);
    try {
        jordan_block_similarity(2.0 * shift_matrix(3));
    } catch (const NotJordanBlock& e) {
        CHECK(e.quantity() == "|T|");
        CHECK(e.value() == doctest::Approx(2.0));
    }
}

TEST_CASE("property: similarity is unique up to phase and never silently bad") {
    Rng rng(35);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const Mat u0 = haar_unitary(n, rng);
        const Mat tm = u0 * shift_matrix(n) * u0.adjoint();
        const Mat u1 = jordan_block_similarity(tm);
        const Mat u2 = jordan_block_similarity(tm);
        const Complex align = std::abs(u2(0, 0)) > 0 ? (u1(0, 0) / u2(0, 0)) / std::abs(u1(0, 0) / u2(0, 0)) : 1.0;
        CHECK(frobenius_norm(u1 - align * u2) <= 1e-8);
        CHECK(phase_aligned_distance(u1, u0).first <= 1e-8);
        CHECK(frobenius_norm(u1 * shift_matrix(n) * u1.adjoint() - tm) <= 10 * Tol{}.eps_residual);

        // A perturbed input either errors or still returns a valid similarity.
        const Mat perturbed = tm + 1e-3 * complex_gaussian(n, n, rng);
        try {
            const Mat up = jordan_block_similarity(perturbed);
            CHECK(frobenius_norm(up * shift_matrix(n) * up.adjoint() - perturbed) <= 10 * Tol{}.eps_residual);
        } catch (const NotJordanBlock&) {
        }
    }
}

}
