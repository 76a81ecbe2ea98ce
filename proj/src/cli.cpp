#include "tiso/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "tiso/isom.hpp"
#include "tiso/json_io.hpp"
#include "tiso/multiplicative.hpp"
#include "tiso/polyres.hpp"
#include "tiso/random.hpp"
#include "tiso/sparse_poly.hpp"
#include "tiso/specsets.hpp"

namespace tiso {

namespace {

enum class Verdict { ok, rejected };

struct Outcome {
    Verdict verdict;
    Json payload;
};

// Thrown when a result fails its own re-check just before emission.
class RevalidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::uint64_t seed = 0;
    Tol tol;
    std::string input;
    std::size_t trials = 64;
    std::size_t points = 64;
    std::size_t samples = 100;
    std::size_t n = 3;
    int m = 2;
    double a_re = 0.0;
    double a_im = 1.0;
    double max_deviation = 1e-8;
    double threshold = 1e-6;
    std::string family;
    std::string scaling = "root-pairwise";
    std::string out_path;
};

Json witness_to_json(const NotIsometry& w) {
    return Json{{"stage", w.stage}, {"reason", w.reason}, {"defect", w.defect}, {"offending", matrix_to_json(w.offending)}};
}

Outcome run_factor(const Options& opt) {
    const LinearMapA phi = map_from_json(read_json_file(opt.input));
    const FactorResult result = factor_isometry(phi, opt.tol);
    if (const auto* w = std::get_if<NotIsometry>(&result)) return {Verdict::rejected, witness_to_json(*w)};

    const auto& cert = std::get<FactorCert>(result);
    // Same computation a reader of the report would do from U, V and the map.
    const double recomputed = certificate_residual(phi, cert.u, cert.v);
    if (!is_unitary(cert.u, opt.tol).passed || !is_unitary(cert.v, opt.tol).passed ||
        std::abs(recomputed - cert.residual) > 1e-12)
        throw RevalidationError("factor certificate failed re-validation");
    return {Verdict::ok,
            Json{{"u", matrix_to_json(cert.u)},
                 {"v", matrix_to_json(cert.v)},
                 {"residual", cert.residual},
                 {"phase_normalized", cert.phase_normalized}}};
}

Outcome run_verify(const Options& opt) {
    const LinearMapA phi = map_from_json(read_json_file(opt.input));
    const double norm_dev = verify_isometry_sampled(phi, opt.trials, opt.seed);
    const double singular_dev = singular_preservation_check(phi, opt.trials, opt.seed);
    const double amp2 = amplified_isometry_check(phi, 2, opt.trials, opt.seed);
    const double amp3 = amplified_isometry_check(phi, 3, opt.trials, opt.seed);
    const ChainReport chain = nested_chain_check(phi, opt.tol);

    Json links = Json::array();
    for (const auto& l : chain.links)
        links.push_back(Json{{"k", l.k},
                             {"kernel_contained", l.kernel_contained},
                             {"range_contained", l.range_contained},
                             {"strict", l.strict},
                             {"rank_prev", l.rank_prev},
                             {"rank_next", l.rank_next}});
    const bool ok = norm_dev <= opt.max_deviation && singular_dev <= opt.max_deviation && amp2 <= opt.max_deviation &&
                    amp3 <= opt.max_deviation && chain.all_contained() && chain.all_strict();
    return {ok ? Verdict::ok : Verdict::rejected,
            Json{{"trials", opt.trials},
                 {"max_deviation", opt.max_deviation},
                 {"norm_deviation", norm_dev},
                 {"singular_value_deviation", singular_dev},
                 {"amplified_k2", amp2},
                 {"amplified_k3", amp3},
                 {"chain", Json{{"all_contained", chain.all_contained()},
                                {"all_strict", chain.all_strict()},
                                {"links", std::move(links)}}}}};
}

Outcome run_classify(const Options& opt) {
    if (opt.n == 0) throw DimensionError("--n must be positive");
    Json params{{"family", opt.family}, {"n", opt.n}};
    std::optional<MultOracle> oracle;
    if (opt.family == "conj") {
        oracle = conjugation_oracle(opt.n);
    } else if (opt.family == "sim") {
        Rng rng(opt.seed);
        oracle = similarity_oracle(haar_unitary(opt.n, rng));
    } else if (opt.family == "coeff-twist") {
        params["m"] = opt.m;
        oracle = pathological_mult_examples(CoeffTwist{opt.m}, opt.n);
    } else if (opt.family == "a-twist") {
        params["a"] = complex_to_json({opt.a_re, opt.a_im});
        oracle = pathological_mult_examples(ATwist{{opt.a_re, opt.a_im}}, opt.n);
    } else {
        throw InputError("unknown family \"" + opt.family + "\"");
    }

    const MultClass cls = classify_multiplicative(*oracle, opt.tol, opt.trials, opt.seed);
    Json payload{{"family", std::move(params)}, {"kind", to_string(cls.kind)}};
    if (cls.u) {
        if (!is_unitary(*cls.u, opt.tol).passed) throw RevalidationError("classifier returned a non-unitary U");
        payload["u"] = matrix_to_json(*cls.u);
    }
    if (cls.witness) {
        const MultWitness& w = *cls.witness;
        const double recomputed = frobenius_norm(oracle->eval(w.input) - w.observed);
        if (recomputed > opt.tol.eps_residual) throw RevalidationError("witness does not reproduce");
        payload["witness"] = Json{{"input", toeplitz_to_json(w.input)},
                                  {"expected", matrix_to_json(w.expected)},
                                  {"observed", matrix_to_json(w.observed)},
                                  {"reason", w.reason},
                                  {"defect", w.defect}};
    }
    return {cls.kind == MultKind::rejected ? Verdict::rejected : Verdict::ok, std::move(payload)};
}

Outcome run_numrange(const Options& opt) {
    const Mat a = matrix_from_json(read_json_file(opt.input));
    if (!a.is_square()) throw DimensionError("numrange needs a square matrix, got " + describe_shape(a));
    const auto boundary = numerical_range_boundary(a, opt.points);
    const RadiusReport radius = numerical_radius(a);
    Json pts = Json::array();
    for (const auto& z : boundary) pts.push_back(complex_to_json(z));
    return {Verdict::ok,
            Json{{"boundary", std::move(pts)},
                 {"radius", radius.radius},
                 {"attaining_angle", radius.attaining_angle}}};
}

Outcome run_resultant(const Options& opt) {
    const LinearMapA phi = map_from_json(read_json_file(opt.input));
    ResultantScaling scaling = ResultantScaling::root_pairwise;
    if (opt.scaling == "coefficient-norm") {
        scaling = ResultantScaling::coefficient_norm;
    } else if (opt.scaling != "root-pairwise") {
        throw InputError("unknown scaling \"" + opt.scaling + "\"");
    }
    const double worst = resultant_isometry_test(phi, opt.samples, opt.seed, scaling);
    return {worst <= opt.threshold ? Verdict::ok : Verdict::rejected,
            Json{{"max_relative_resultant", worst},
                 {"samples", opt.samples},
                 {"scaling", opt.scaling},
                 {"threshold", opt.threshold}}};
}

Json powers_to_json(const std::vector<std::pair<std::size_t, unsigned>>& powers) {
    Json out = Json::array();
    for (const auto& [var, exp] : powers) out.push_back(Json{{"var", var}, {"exp", exp}});
    return out;
}

Outcome run_claim1(const Options& opt) {
    const Claim1Report report = claim1_monomial_check(opt.n);
    Json rows = Json::array();
    for (const auto& r : report.rows)
        rows.push_back(Json{{"k", r.k},
                            {"found", powers_to_json(r.found)},
                            {"expected", powers_to_json(r.expected)},
                            {"matches", r.matches}});
    return {report.passed ? Verdict::ok : Verdict::rejected,
            Json{{"n", report.n}, {"rows", std::move(rows)}, {"passed", report.passed}}};
}

Outcome run_synth(const Options& opt) {
    if (opt.n == 0) throw DimensionError("--n must be positive");
    Rng rng(opt.seed);
    const Mat u = haar_unitary(opt.n, rng);
    const Mat v = haar_unitary(opt.n, rng);
    const LinearMapA phi = synthesize_isometry(u, v, opt.tol);
    Json map = map_to_json(phi);
    if (!opt.out_path.empty()) {
        std::ofstream f(opt.out_path, std::ios::binary);
        if (!f) throw InputError(opt.out_path + ": cannot open for writing");
        f << map.dump(2) << '\n';
        if (!f) throw InputError(opt.out_path + ": write failed");
    }
    return {Verdict::ok, Json{{"map", std::move(map)}, {"u", matrix_to_json(u)}, {"v", matrix_to_json(v)}}};
}

Outcome run_norm(const Options& opt) {
    const Mat a = matrix_from_json(read_json_file(opt.input));
    return {Verdict::ok, Json{{"operator_norm", operator_norm(a)}}};
}

void add_tolerance_options(CLI::App& app, Options& opt) {
    app.add_option("--seed", opt.seed, "Seed for all sampling")->capture_default_str();
    app.add_option("--eps-rank", opt.tol.eps_rank, "Relative singular-value cutoff")->capture_default_str();
    app.add_option("--eps-residual", opt.tol.eps_residual, "Frobenius residual cutoff")->capture_default_str();
    app.add_option("--eps-eq", opt.tol.eps_eq, "Scalar comparison tolerance")->capture_default_str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Isometries of the upper-triangular Toeplitz algebra", "tiso"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    add_tolerance_options(app, opt);

    auto* factor = app.add_subcommand("factor", "Factor a map as A -> U A V or report why not");
    factor->add_option("map", opt.input, "MapFile")->required();

    auto* verify = app.add_subcommand("verify", "Sampled deviation suite for a map");
    verify->add_option("map", opt.input, "MapFile")->required();
    verify->add_option("--trials", opt.trials)->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--max-deviation", opt.max_deviation)->capture_default_str();

    auto* classify = app.add_subcommand("classify-mult", "Classify a built-in multiplicative map");
    classify->add_option("--family", opt.family)
        ->required()
        ->check(CLI::IsMember({"conj", "sim", "coeff-twist", "a-twist"}));
    classify->add_option("--n", opt.n)->capture_default_str();
    classify->add_option("--m", opt.m, "Exponent of the unit-circle twist")->capture_default_str();
    classify->add_option("--a-re", opt.a_re)->capture_default_str();
    classify->add_option("--a-im", opt.a_im)->capture_default_str();
    classify->add_option("--trials", opt.trials)->capture_default_str()->check(CLI::PositiveNumber);

    auto* numrange = app.add_subcommand("numrange", "Numerical range boundary and radius");
    numrange->add_option("matrix", opt.input)->required();
    numrange->add_option("--points", opt.points)->capture_default_str();

    auto* resultant = app.add_subcommand("resultant-test", "Relative Gram-polynomial resultant over samples");
    resultant->add_option("map", opt.input, "MapFile")->required();
    resultant->add_option("--samples", opt.samples)->capture_default_str()->check(CLI::PositiveNumber);
    resultant->add_option("--threshold", opt.threshold)->capture_default_str();
    resultant->add_option("--scaling", opt.scaling)
        ->capture_default_str()
        ->check(CLI::IsMember({"root-pairwise", "coefficient-norm"}));

    auto* claim1 = app.add_subcommand("claim1", "Exact pure-power check of the symbolic Gram coefficients");
    claim1->add_option("--n", opt.n)->required();

    auto* synth = app.add_subcommand("synth", "Random isometry A -> U A V from Haar unitaries");
    synth->add_option("--n", opt.n)->required();
    synth->add_option("--out", opt.out_path, "Also write the MapFile here");

    auto* norm = app.add_subcommand("norm", "Operator norm of a matrix");
    norm->add_option("matrix", opt.input)->required();

    std::vector<std::string> argv_store{"tiso"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    std::string command = args.empty() ? "" : args.front();
    auto report = [&](const char* verdict, Json payload) {
        Json r{{"command", command},
               {"verdict", verdict},
               {"payload", std::move(payload)},
               {"seed", opt.seed},
               {"tolerances", tol_to_json(opt.tol)}};
        out << r.dump(2) << '\n';
    };

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "tiso: " << e.what() << '\n';
        report("error", Json{{"message", e.what()}});
        return kExitError;
    }
    command = app.get_subcommands().front()->get_name();

    try {
        opt.tol.validate();
        Outcome outcome;
        if (*factor) outcome = run_factor(opt);
        else if (*verify) outcome = run_verify(opt);
        else if (*classify) outcome = run_classify(opt);
        else if (*numrange) outcome = run_numrange(opt);
        else if (*resultant) outcome = run_resultant(opt);
        else if (*claim1) outcome = run_claim1(opt);
        else if (*synth) outcome = run_synth(opt);
        else outcome = run_norm(opt);

        const bool ok = outcome.verdict == Verdict::ok;
        report(ok ? "ok" : "rejected", std::move(outcome.payload));
        return ok ? kExitOk : kExitRejected;
    } catch (const std::exception& e) {
        err << "tiso " << command << ": " << e.what() << '\n';
        report("error", Json{{"message", e.what()}});
        return kExitError;
    }
}

}  // namespace tiso
