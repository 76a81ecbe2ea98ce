#include <doctest.h>

#include "tiso/multiplicative.hpp"
#include "tiso/random.hpp"

using namespace tiso;

TEST_SUITE("multiplicative") {

TEST_CASE("oracle contract") {
    CHECK_THROWS_AS(MultOracle(3, [](const UpperToeplitz&) { return Mat::identity(3); }), ContractError);
    CHECK_THROWS_AS(MultOracle(3, [](const UpperToeplitz&) { return Mat(2, 2); }), DimensionError);
    const MultOracle id(3, [](const UpperToeplitz& a) { return embed(a); });
    CHECK_THROWS_AS(id.eval(UpperToeplitz::identity(4)), DimensionError);
}

TEST_CASE("conjugation is a conjugate similarity with trivial U") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const MultClass c = classify_multiplicative(conjugation_oracle(n));
        CHECK(c.kind == MultKind::conjugate_similarity);
        REQUIRE(c.u.has_value());
        CHECK(phase_aligned_distance(*c.u, Mat::identity(n)).first <= 1e-8);
        CHECK_FALSE(c.witness.has_value());
    }
}

TEST_CASE("property: the classifier inverts both synthesizers up to phase") {
    Rng rng(61);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const Mat u0 = haar_unitary(n, rng);
        const MultClass lin = classify_multiplicative(similarity_oracle(u0), {}, 16, static_cast<std::uint64_t>(t));
        CHECK(lin.kind == MultKind::linear_similarity);
        REQUIRE(lin.u.has_value());
        CHECK(phase_aligned_distance(*lin.u, u0).first <= 1e-8);

        const MultClass con = classify_multiplicative(conjugate_similarity_oracle(u0), {}, 16, static_cast<std::uint64_t>(t));
        CHECK(con.kind == MultKind::conjugate_similarity);
        REQUIRE(con.u.has_value());
        CHECK(phase_aligned_distance(*con.u, u0).first <= 1e-8);
    }
}

TEST_CASE("coefficient twist with m = 2 is rejected with a reproducible witness") {
    for (std::size_t n = 2; n <= 6; ++n) {
        const MultOracle o = pathological_mult_examples(CoeffTwist{2}, n);
        const MultClass c = classify_multiplicative(o);
        CHECK(c.kind == MultKind::rejected);
        CHECK_FALSE(c.u.has_value());
        REQUIRE(c.witness.has_value());
        const MultWitness& w = *c.witness;
        CHECK(o.eval(w.input) == w.observed);
        CHECK(frobenius_norm(w.observed - w.expected) > 0.1);
        // φ(iI) = -I, neither iI nor -iI.
        CHECK(frobenius_norm(w.observed + Mat::identity(n)) < 1e-12);
    }
}

TEST_CASE("coefficient twist with m = 1 is the identity") {
    Rng rng(62);
    const MultOracle o = pathological_mult_examples(CoeffTwist{1}, 4);
    for (int t = 0; t < 20; ++t) {
        const UpperToeplitz a = random_filtered_toeplitz(4, rng);
        CHECK(frobenius_norm(o.eval(a) - embed(a)) < 1e-14);
    }
    CHECK(classify_multiplicative(o).kind == MultKind::linear_similarity);
}

TEST_CASE("a-twist values") {
    const MultOracle o = pathological_mult_examples(ATwist{-1.0}, 4);
    CHECK(o.eval(UpperToeplitz({0, 1, 1, 0})) == embed(UpperToeplitz({0, 1, -1, 0})));
    CHECK(o.eval(UpperToeplitz({2, 1, 1, 1})) == embed(UpperToeplitz({2, -1, 1, -1})));
    CHECK_THROWS_AS(pathological_mult_examples(ATwist{2.0}, 3), ContractError);
}

TEST_CASE("both pathological families are multiplicative and norm preserving on samples") {
    for (std::size_t n = 2; n <= 6; ++n) {
        for (int m : {-1, 2, 3}) {
            const MultOracle o = pathological_mult_examples(CoeffTwist{m}, n);
            CHECK(oracle_multiplicativity_defect(o, 50, 1) <= 1e-10);
            CHECK(oracle_norm_defect(o, 50, 1) <= 1e-10);
        }
        const MultOracle a = pathological_mult_examples(ATwist{std::polar(1.0, 0.7)}, n);
        CHECK(oracle_multiplicativity_defect(a, 50, 2) <= 1e-10);
        CHECK(oracle_norm_defect(a, 50, 2) <= 1e-10);
    }
}

TEST_CASE("a-twist is rejected on filtered samples") {
    const MultClass c = classify_multiplicative(pathological_mult_examples(ATwist{Complex(0.0, 1.0)}, 4));
    CHECK(c.kind == MultKind::rejected);
    REQUIRE(c.witness.has_value());
    CHECK(c.witness->defect > 1e-6);
}

TEST_CASE("kind names") {
    CHECK(to_string(MultKind::linear_similarity) == "linear_similarity");
    CHECK(to_string(MultKind::conjugate_similarity) == "conjugate_similarity");
    CHECK(to_string(MultKind::rejected) == "rejected");
}

}
