#pragma once

// Exact multivariate polynomials over the rationals and the symbolic Gram
// characteristic polynomial of a real upper-triangular Toeplitz matrix
// Σ x_k S^{k-1}.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tiso {

using Rational = mpq_class;
using Exponent = std::vector<unsigned>;

/// Graded lexicographic order, larger monomials first (x1 > x2 > ...).
struct GrlexDescending {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

class SparsePoly {
public:
    using Terms = std::map<Exponent, Rational, GrlexDescending>;

    explicit SparsePoly(std::size_t nvars);

    static SparsePoly constant(std::size_t nvars, const Rational& c);
    /// x_{index+1}; index is zero-based.
    static SparsePoly variable(std::size_t nvars, std::size_t index);
    static SparsePoly monomial(const Exponent& exponent, const Rational& c);

    /// Parses the canonical text form ("-2*x1^2 - x2^2", "3/2*x1*x3 + 1").
    /// Throws std::invalid_argument naming the offending position.
    static SparsePoly parse(std::string_view text, std::size_t nvars);

    std::size_t nvars() const noexcept { return nvars_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(const Exponent& exponent) const;
    /// Largest term in grlex order; precondition: nonzero.
    const Terms::value_type& leading_term() const;

    Rational evaluate(std::span<const Rational> point) const;
    std::string to_string() const;

    SparsePoly& operator+=(const SparsePoly& other);
    SparsePoly& operator-=(const SparsePoly& other);
    SparsePoly& operator*=(const Rational& c);

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Adds c * x^exponent, dropping the term if it cancels.
    void add_term(const Exponent& exponent, const Rational& c);

private:
    std::size_t nvars_;
    Terms terms_;  // no zero coefficients stored
};

SparsePoly operator+(SparsePoly a, const SparsePoly& b);
SparsePoly operator-(SparsePoly a, const SparsePoly& b);
SparsePoly operator-(SparsePoly a);
SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
SparsePoly operator*(const Rational& c, SparsePoly a);

/// Quotient of an exact division; throws std::domain_error if den does not
/// divide num.
SparsePoly divide_exact(const SparsePoly& num, const SparsePoly& den);

using PolyMatrix = std::vector<std::vector<SparsePoly>>;

/// Fraction-free (Bareiss) elimination with row swaps on zero pivots.
SparsePoly bareiss_determinant(PolyMatrix m);
/// Laplace expansion along the first row.
SparsePoly cofactor_determinant(const PolyMatrix& m);

/// The Gram matrix A^*A for real A = Σ x_k S^{k-1}:
/// entry (i, j) = Σ_{l <= min(i,j)} x_{i-l} x_{j-l} (zero-based indices).
PolyMatrix sym_gram(std::size_t n);

inline constexpr std::size_t kDefaultSymbolicCap = 6;

/// r_0, ..., r_n with det(λI - A^*A) = Σ r_k λ^k, where r_k is (-1)^{n-k}
/// times the sum of the principal (n-k)-minors. Throws ResourceError above cap.
std::vector<SparsePoly> sym_char_coeffs(std::size_t n, std::size_t cap = kDefaultSymbolicCap);

/// Pure powers x_i^j (1-based i, j >= 1) with a nonzero coefficient.
std::vector<std::pair<std::size_t, unsigned>> pure_powers(const SparsePoly& p);

struct Claim1Row {
    std::size_t k;
    std::vector<std::pair<std::size_t, unsigned>> found;
    std::vector<std::pair<std::size_t, unsigned>> expected;  // x_i^{2(n-k)}, 1 <= i <= k+1, for k < n
    bool matches;
};

struct Claim1Report {
    std::size_t n;
    std::vector<Claim1Row> rows;
    bool passed;
};

Claim1Report claim1_monomial_check(std::size_t n, std::size_t cap = kDefaultSymbolicCap);

}  // namespace tiso
