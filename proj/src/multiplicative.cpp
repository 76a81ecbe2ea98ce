#include "tiso/multiplicative.hpp"

#include <cmath>

#include "tiso/random.hpp"
#include "tiso/specsets.hpp"

namespace tiso {

namespace {

MultClass rejected(MultWitness witness) { return {MultKind::rejected, std::nullopt, std::move(witness)}; }

}  // namespace

MultOracle::MultOracle(std::size_t n, Eval eval) : n_(n), eval_(std::move(eval)) {
    if (n_ == 0) throw DimensionError("MultOracle needs n >= 1");
    if (!eval_) throw ContractError("MultOracle needs an evaluator");
    const Mat at_zero = eval_(UpperToeplitz::zero(n_));
    if (at_zero.rows() != n_ || at_zero.cols() != n_) throw DimensionError("MultOracle: evaluator returns wrong shape");
    if (frobenius_norm(at_zero) != 0.0) throw ContractError("MultOracle: eval(0) must be 0");
}

Mat MultOracle::eval(const UpperToeplitz& a) const {
    if (a.size() != n_) throw DimensionError("MultOracle::eval: size mismatch");
    Mat m = eval_(a);
    if (m.rows() != n_ || m.cols() != n_) throw DimensionError("MultOracle: evaluator returns wrong shape");
    return m;
}

std::string to_string(MultKind kind) {
    switch (kind) {
        case MultKind::linear_similarity: return "linear_similarity";
        case MultKind::conjugate_similarity: return "conjugate_similarity";
        case MultKind::rejected: return "rejected";
    }
    return "unknown";
}

MultClass classify_multiplicative(const MultOracle& oracle, const Tol& tol, std::size_t trials, std::uint64_t seed) {
    const std::size_t n = oracle.size();
    const auto shift = UpperToeplitz::shift_power(n, 1);
    const Mat t = oracle.eval(shift);

    Mat u;
    try {
        u = jordan_block_similarity(t, tol);
    } catch (const NotJordanBlock& e) {
        return rejected({shift, embed(shift), t, "φ(S) not unitarily similar to S (" + e.quantity() + ")", e.value()});
    } catch (const NotNilpotent& e) {
        return rejected({shift, embed(shift), t, "φ(S) not nilpotent", e.power_norm()});
    }
    const Mat u_star = u.adjoint();

    // φ(iI) = ±iI decides between the linear and the conjugate-linear form.
    const auto i_unit = UpperToeplitz::scalar(n, Complex{0.0, 1.0});
    const Mat probe_observed = oracle.eval(i_unit);
    const Mat probe = u_star * probe_observed * u;
    const Mat i_mat = embed(i_unit);
    const double linear_gap = frobenius_norm(probe - i_mat);
    const double conj_gap = frobenius_norm(probe + i_mat);
    MultKind kind;
    if (linear_gap <= tol.eps_residual) {
        kind = MultKind::linear_similarity;
    } else if (conj_gap <= tol.eps_residual) {
        kind = MultKind::conjugate_similarity;
    } else {
        return rejected({i_unit, u * i_mat * u_star, probe_observed, "φ(iI) is neither iI nor -iI after conjugation",
                         std::min(linear_gap, conj_gap)});
    }

    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(mix_seed(seed, trial));
        const auto a = random_filtered_toeplitz(n, rng);
        const Mat form = kind == MultKind::linear_similarity ? embed(a) : embed(a.conj());
        const Mat observed = oracle.eval(a);
        const double defect = frobenius_norm(u_star * observed * u - form);
        if (defect > tol.eps_residual * std::max(1.0, frobenius_norm(form))) {
            return rejected({a, u * form * u_star, observed, "oracle disagrees with the " + to_string(kind) + " form", defect});
        }
    }
    return {kind, normalize_phase(u, tol.eps_eq).first, std::nullopt};
}

MultOracle conjugation_oracle(std::size_t n) {
    return MultOracle(n, [](const UpperToeplitz& a) { return embed(a.conj()); });
}

MultOracle similarity_oracle(const Mat& u) {
    const Mat u_star = u.adjoint();
    return MultOracle(u.rows(), [u, u_star](const UpperToeplitz& a) { return u * embed(a) * u_star; });
}

MultOracle conjugate_similarity_oracle(const Mat& u) {
    const Mat u_star = u.adjoint();
    return MultOracle(u.rows(), [u, u_star](const UpperToeplitz& a) { return u * embed(a.conj()) * u_star; });
}

MultOracle pathological_mult_examples(const PathologicalKind& kind, std::size_t n) {
    if (const auto* twist = std::get_if<CoeffTwist>(&kind)) {
        const int m = twist->m;
        return MultOracle(n, [m](const UpperToeplitz& a) {
            const std::size_t r = filtration_index(a).r;
            if (r == a.size()) return Mat(a.size(), a.size());
            const Complex unit = a[r] / std::abs(a[r]);
            // (|a_r|/a_r) = conj(unit) on the circle; psi(unit) = unit^m.
            const Complex factor = std::conj(unit) * std::pow(unit, m);
            return factor * embed(a);
        });
    }
    const Complex twist = std::get<ATwist>(kind).a;
    if (std::abs(std::abs(twist) - 1.0) > 1e-12) throw ContractError("a_twist requires |a| = 1");
    return MultOracle(n, [twist](const UpperToeplitz& a) {
        const std::size_t r = filtration_index(a).r;
        std::vector<Complex> c(a.size());
        Complex scale = 1.0;
        for (std::size_t i = r; i < a.size(); ++i) {
            c[i] = scale * a[i];
            scale *= twist;
        }
        return embed(UpperToeplitz(std::move(c)));
    });
}

double oracle_multiplicativity_defect(const MultOracle& oracle, std::size_t trials, std::uint64_t seed) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, t));
        const auto a = random_filtered_toeplitz(oracle.size(), rng);
        const auto b = random_filtered_toeplitz(oracle.size(), rng);
        worst = std::max(worst, frobenius_norm(oracle.eval(a * b) - oracle.eval(a) * oracle.eval(b)));
    }
    return worst;
}

double oracle_norm_defect(const MultOracle& oracle, std::size_t trials, std::uint64_t seed) {
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, t));
        const auto a = random_filtered_toeplitz(oracle.size(), rng);
        worst = std::max(worst, std::abs(operator_norm(oracle.eval(a)) - operator_norm(embed(a))));
    }
    return worst;
}

}  // namespace tiso
