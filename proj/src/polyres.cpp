#include "tiso/polyres.hpp"

#include <algorithm>
#include <limits>

#include "tiso/random.hpp"

namespace tiso {

namespace {

UniPoly from_roots(const std::vector<double>& roots) {
    std::vector<Complex> c{1.0};
    for (double r : roots) {
        std::vector<Complex> next(c.size() + 1);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return UniPoly(std::move(c));
}

std::vector<double> gram_roots(const Mat& a) {
    auto s = svd_values(a);
    for (auto& v : s) v *= v;
    return s;
}

double one_norm(const UniPoly& p) {
    double s = 0.0;
    for (const auto& c : p.coeffs()) s += std::abs(c);
    return s;
}

}  // namespace

UniPoly char_gram_poly(const Mat& a) {
    if (!a.is_square()) throw DimensionError("char_gram_poly of non-square matrix " + describe_shape(a));
    return from_roots(gram_roots(a));
}

double relative_gram_resultant(const LinearMapA& phi, const UpperToeplitz& a, ResultantScaling scaling) {
    const Mat source = embed(a);
    const Mat image = phi.apply(a);
    const auto rf = gram_roots(source);
    const auto rg = gram_roots(image);
    const UniPoly f = from_roots(rf);
    const UniPoly g = from_roots(rg);
    if (f == g) return 0.0;
    const double res = std::abs(sylvester_resultant(f, g));
    if (res == 0.0) return 0.0;

    if (scaling == ResultantScaling::coefficient_norm) {
        return res / (std::pow(one_norm(f), static_cast<double>(g.degree())) *
                      std::pow(one_norm(g), static_cast<double>(f.degree())));
    }
    const double top = std::max(*std::max_element(rf.begin(), rf.end()), *std::max_element(rg.begin(), rg.end()));
    const double floor = std::numeric_limits<double>::epsilon() * top;
    double log_scale = 0.0;
    for (double r : rf)
        for (double s : rg) log_scale += std::log(std::max({r, s, floor}));
    return std::exp(std::log(res) - log_scale);
}

double resultant_isometry_test(const LinearMapA& phi, std::size_t samples, std::uint64_t seed,
                               ResultantScaling scaling) {
    if (samples == 0) throw ContractError("samples must be >= 1");
    double worst = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(mix_seed(seed, t));
        worst = std::max(worst, relative_gram_resultant(phi, random_upper_toeplitz(phi.size(), rng), scaling));
    }
    return worst;
}

}  // namespace tiso
