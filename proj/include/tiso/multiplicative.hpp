#pragma once

// Norm-preserving multiplicative maps on the Toeplitz algebra. Such maps are
// not determined by finitely many images, so they are given as evaluation
// oracles; the classifier recovers U for A -> U A U^* or A -> U conj(A) U^*,
// or returns a concrete input on which neither form holds.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "tiso/matcore.hpp"
#include "tiso/toeplitz.hpp"

namespace tiso {

class MultOracle {
public:
    using Eval = std::function<Mat(const UpperToeplitz&)>;

    /// Probes eval(0) once; throws ContractError unless it is exactly zero.
    MultOracle(std::size_t n, Eval eval);

    std::size_t size() const noexcept { return n_; }
    Mat eval(const UpperToeplitz& a) const;

private:
    std::size_t n_;
    Eval eval_;
};

enum class MultKind { linear_similarity, conjugate_similarity, rejected };

std::string to_string(MultKind kind);

struct MultWitness {
    UpperToeplitz input;
    Mat expected;  // what the tentative form predicts, in the original frame
    Mat observed;  // the oracle's value
    std::string reason;
    double defect;
};

struct MultClass {
    MultKind kind;
    std::optional<Mat> u;
    std::optional<MultWitness> witness;
};

/// A rejection only means the oracle disagrees with both forms at the probed
/// points; finitely many samples cannot establish discontinuity.
MultClass classify_multiplicative(const MultOracle& oracle, const Tol& tol = {}, std::size_t trials = 32,
                                  std::uint64_t seed = 0);

/// A -> conj(A) (entrywise).
MultOracle conjugation_oracle(std::size_t n);
/// A -> U A U^*.
MultOracle similarity_oracle(const Mat& u);
/// A -> U conj(A) U^*.
MultOracle conjugate_similarity_oracle(const Mat& u);

/// phi_psi(Σ a_i S^i) = (|a_r|/a_r) psi(a_r/|a_r|) Σ a_i S^i with psi(z) = z^m
/// on the unit circle, r the filtration index.
struct CoeffTwist {
    int m;
};
/// Σ α_i S^i -> Σ a^{i-r} α_i S^i for a fixed unit-modulus a.
struct ATwist {
    Complex a;
};
using PathologicalKind = std::variant<CoeffTwist, ATwist>;

MultOracle pathological_mult_examples(const PathologicalKind& kind, std::size_t n);

/// Sampled max of |o(AB) - o(A)o(B)|_F over random pairs with random
/// filtration indices.
double oracle_multiplicativity_defect(const MultOracle& oracle, std::size_t trials, std::uint64_t seed);
/// Sampled max of ||o(A)| - |A||.
double oracle_norm_defect(const MultOracle& oracle, std::size_t trials, std::uint64_t seed);

}  // namespace tiso
