#include "tiso/sparse_poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "tiso/matcore.hpp"

namespace tiso {

namespace {

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0U); }

void require_same_vars(const SparsePoly& a, const SparsePoly& b) {
    if (a.nvars() != b.nvars()) throw DimensionError("SparsePoly variable count mismatch");
}

class Parser {
public:
    Parser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

    SparsePoly run() {
        SparsePoly result(nvars_);
        skip_ws();
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = peek() == '-';
            ++pos_;
        }
        while (true) {
            skip_ws();
            auto term = parse_term();
            if (negative) term *= Rational(-1);
            result += term;
            skip_ws();
            if (pos_ == text_.size()) break;
            if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
            negative = peek() == '-';
            ++pos_;
        }
        return result;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos_) + ": " + what);
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    SparsePoly parse_term() {
        Rational coeff(1);
        Exponent exponent(nvars_, 0);
        bool any = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::string num = digits();
            if (peek() == '/') {
                ++pos_;
                num += "/" + digits();
            }
            coeff = Rational(num);
            coeff.canonicalize();
            if (coeff.get_den() == 0) fail("zero denominator");
            any = true;
            skip_ws();
            if (peek() != '*') return SparsePoly::monomial(exponent, coeff);
            ++pos_;
            skip_ws();
        }
        while (true) {
            if (peek() != 'x') fail(any ? "expected variable" : "expected coefficient or variable");
            ++pos_;
            const std::size_t index = std::stoul(digits());
            if (index == 0 || index > nvars_) fail("variable index out of range");
            unsigned power = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                power = static_cast<unsigned>(std::stoul(digits()));
            }
            exponent[index - 1] += power;
            any = true;
            skip_ws();
            if (peek() != '*') break;
            ++pos_;
            skip_ws();
        }
        return SparsePoly::monomial(exponent, coeff);
    }

    std::string_view text_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

bool GrlexDescending::operator()(const Exponent& a, const Exponent& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

SparsePoly::SparsePoly(std::size_t nvars) : nvars_(nvars) {}

SparsePoly SparsePoly::constant(std::size_t nvars, const Rational& c) {
    return monomial(Exponent(nvars, 0), c);
}

SparsePoly SparsePoly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DimensionError("variable index out of range");
    Exponent e(nvars, 0);
    e[index] = 1;
    return monomial(e, Rational(1));
}

SparsePoly SparsePoly::monomial(const Exponent& exponent, const Rational& c) {
    SparsePoly p(exponent.size());
    p.add_term(exponent, c);
    return p;
}

SparsePoly SparsePoly::parse(std::string_view text, std::size_t nvars) { return Parser(text, nvars).run(); }

Rational SparsePoly::coefficient(const Exponent& exponent) const {
    const auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

const SparsePoly::Terms::value_type& SparsePoly::leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
    return *terms_.begin();
}

Rational SparsePoly::evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw DimensionError("evaluation point has wrong length");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned p = 0; p < e[i]; ++p) term *= point[i];
        sum += term;
    }
    return sum;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool negative = sgn(c) < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Rational magnitude = abs(c);
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += magnitude.get_str();
        } else if (magnitude == 1) {
            out += mono;
        } else {
            out += magnitude.get_str() + "*" + mono;
        }
    }
    return out;
}

void SparsePoly::add_term(const Exponent& exponent, const Rational& c) {
    if (exponent.size() != nvars_) throw DimensionError("exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& other) {
    require_same_vars(*this, other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& other) {
    require_same_vars(*this, other);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
SparsePoly operator-(SparsePoly a) { return a *= Rational(-1); }
SparsePoly operator*(const Rational& c, SparsePoly a) { return a *= c; }

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    require_same_vars(a, b);
    SparsePoly out(a.nvars());
    Exponent e(a.nvars());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

SparsePoly divide_exact(const SparsePoly& num, const SparsePoly& den) {
    require_same_vars(num, den);
    if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
    const auto& [lead_e, lead_c] = den.leading_term();
    SparsePoly quotient(num.nvars());
    SparsePoly rest = num;
    Exponent e(num.nvars());
    while (!rest.is_zero()) {
        const auto& [re, rc] = rest.leading_term();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (re[i] < lead_e[i]) throw std::domain_error("inexact polynomial division");
            e[i] = re[i] - lead_e[i];
        }
        const SparsePoly step = SparsePoly::monomial(e, rc / lead_c);
        quotient += step;
        rest -= step * den;
    }
    return quotient;
}

SparsePoly bareiss_determinant(PolyMatrix m) {
    const std::size_t k = m.size();
    if (k == 0) throw DimensionError("determinant of an empty matrix");
    const std::size_t nvars = m[0][0].nvars();
    for (const auto& row : m)
        if (row.size() != k) throw DimensionError("determinant of a non-square matrix");
    bool negate = false;
    SparsePoly prev = SparsePoly::constant(nvars, Rational(1));
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (m[i][i].is_zero()) {
            std::size_t swap_row = i + 1;
            while (swap_row < k && m[swap_row][i].is_zero()) ++swap_row;
            if (swap_row == k) return SparsePoly(nvars);
            std::swap(m[i], m[swap_row]);
            negate = !negate;
        }
        for (std::size_t r = i + 1; r < k; ++r) {
            for (std::size_t c = i + 1; c < k; ++c) {
                m[r][c] = divide_exact(m[i][i] * m[r][c] - m[r][i] * m[i][c], prev);
            }
        }
        prev = m[i][i];
    }
    SparsePoly det = m[k - 1][k - 1];
    return negate ? -det : det;
}

SparsePoly cofactor_determinant(const PolyMatrix& m) {
    const std::size_t k = m.size();
    if (k == 0) throw DimensionError("determinant of an empty matrix");
    if (k == 1) return m[0][0];
    const std::size_t nvars = m[0][0].nvars();
    SparsePoly det(nvars);
    for (std::size_t j = 0; j < k; ++j) {
        if (m[0][j].is_zero()) continue;
        PolyMatrix minor;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<SparsePoly> row;
            for (std::size_t c = 0; c < k; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        const SparsePoly term = m[0][j] * cofactor_determinant(minor);
        if (j % 2 == 0) det += term; else det -= term;
    }
    return det;
}

PolyMatrix sym_gram(std::size_t n) {
    if (n == 0) throw DimensionError("sym_gram needs n >= 1");
    PolyMatrix g(n, std::vector<SparsePoly>(n, SparsePoly(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l <= std::min(i, j); ++l)
                g[i][j] += SparsePoly::variable(n, i - l) * SparsePoly::variable(n, j - l);
    return g;
}

std::vector<SparsePoly> sym_char_coeffs(std::size_t n, std::size_t cap) {
    if (n == 0) throw DimensionError("sym_char_coeffs needs n >= 1");
    if (n > cap) {
        throw ResourceError("symbolic size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    }
    const PolyMatrix g = sym_gram(n);
    std::vector<SparsePoly> r(n + 1, SparsePoly(n));
    r[n] = SparsePoly::constant(n, Rational(1));
    // Principal minors in subset-mask order.
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) idx.push_back(i);
        PolyMatrix sub(idx.size(), std::vector<SparsePoly>(idx.size(), SparsePoly(n)));
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = g[idx[a]][idx[b]];
        const std::size_t size = idx.size();
        const std::size_t k = n - size;
        const SparsePoly minor = bareiss_determinant(std::move(sub));
        if (size % 2 == 0) r[k] += minor; else r[k] -= minor;
    }
    return r;
}

std::vector<std::pair<std::size_t, unsigned>> pure_powers(const SparsePoly& p) {
    std::vector<std::pair<std::size_t, unsigned>> out;
    for (const auto& [e, c] : p.terms()) {
        std::size_t nonzero = 0, which = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) {
                ++nonzero;
                which = i;
            }
        if (nonzero == 1) out.emplace_back(which + 1, e[which]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Claim1Report claim1_monomial_check(std::size_t n, std::size_t cap) {
    const auto r = sym_char_coeffs(n, cap);
    Claim1Report report{n, {}, true};
    for (std::size_t k = 0; k <= n; ++k) {
        Claim1Row row{k, pure_powers(r[k]), {}, false};
        if (k < n)
            for (std::size_t i = 1; i <= k + 1; ++i) row.expected.emplace_back(i, static_cast<unsigned>(2 * (n - k)));
        row.matches = row.found == row.expected;
        report.passed = report.passed && row.matches;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace tiso
