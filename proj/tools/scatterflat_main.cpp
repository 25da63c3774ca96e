/// scatterflat: command-line front end for the scattering-geometry library.
///
/// Exit codes: 0 success; 2 precondition/parse errors ({code,message} JSON on
/// standard error); 1 numeric failures (pole/budget) and failed verification
/// suites. All file outputs get a sibling <path>.manifest.json.

#include <chrono>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scatterflat/chambers.hpp"
#include "scatterflat/errors.hpp"
#include "scatterflat/exactlin.hpp"
#include "scatterflat/geodesics.hpp"
#include "scatterflat/poisson.hpp"
#include "scatterflat/scatmat.hpp"
#include "scatterflat/serialize.hpp"
#include "scatterflat/specfun.hpp"
#include "scatterflat/verify.hpp"

namespace {

using nlohmann::json;
using scatterflat::specfun::Cplx;
namespace sf = scatterflat;

struct Context {
    unsigned seed = 1;
    std::string out_path;
    std::string command_echo;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    int exit_override = 0;
};

double wall_seconds(const Context& ctx) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
}

/// Send a payload to stdout or --out; file outputs get a manifest.
void emit(const Context& ctx, const std::string& payload, const json& config_echo) {
    if (ctx.out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    sf::serialize::write_file(ctx.out_path, payload);
    sf::serialize::write_manifest(ctx.out_path, ctx.command_echo, wall_seconds(ctx),
                                  config_echo);
}

json eval_options_echo() {
    const sf::specfun::EvalOptions opts;
    return json{{"target_abs_tol", opts.target_abs_tol}, {"max_terms", opts.max_terms}};
}

Cplx parse_complex_pair(double re, double im) { return Cplx(re, im); }

sf::scatmat::SpectralParameter3 lambda_from_flat(const std::vector<double>& v) {
    if (v.size() == 3)
        return sf::scatmat::SpectralParameter3::from_components(
            Cplx(v[0], 0.0), Cplx(v[1], 0.0), Cplx(v[2], 0.0));
    if (v.size() == 6)
        return sf::scatmat::SpectralParameter3::from_components(
            Cplx(v[0], v[1]), Cplx(v[2], v[3]), Cplx(v[4], v[5]));
    throw sf::PreconditionError("bad_lambda",
                                "--lambda needs 3 reals (re1,re2,re3) or 6 reals "
                                "(re1,im1,re2,im2,re3,im3)");
}

sf::poisson::WindowSpec window_from_name(const std::string& name, double sigma) {
    sf::poisson::WindowSpec w;
    w.sigma = sigma;
    if (name == "gaussian") w.kind = sf::poisson::WindowKind::gaussian;
    else if (name == "hann") w.kind = sf::poisson::WindowKind::hann;
    else if (name == "none") w.kind = sf::poisson::WindowKind::none;
    else throw sf::PreconditionError("bad_window", "unknown window '" + name + "'");
    return w;
}

std::string read_file_or_throw(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw sf::PreconditionError("io_error", "cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void register_specfun(CLI::App& app, Context& ctx) {
    auto* group = app.add_subcommand("specfun", "Special-function evaluations");
    group->require_subcommand(1);
    auto* eval = group->add_subcommand("eval", "Evaluate one special function at a point");
    auto fn = std::make_shared<std::string>();
    auto re = std::make_shared<double>(0.0);
    auto im = std::make_shared<double>(0.0);
    eval->add_option("--fn", *fn, "Function: gamma|log-gamma|zeta|omega|log-omega|f")
        ->required()
        ->check(CLI::IsMember({"gamma", "log-gamma", "zeta", "omega", "log-omega", "f"}));
    eval->add_option("--re", *re, "Real part of the argument")->required();
    eval->add_option("--im", *im, "Imaginary part of the argument");
    eval->callback([&ctx, fn, re, im]() {
        const Cplx s = parse_complex_pair(*re, *im);
        Cplx v;
        if (*fn == "gamma") v = sf::specfun::gamma_fn(s);
        else if (*fn == "log-gamma") v = sf::specfun::log_gamma(s);
        else if (*fn == "zeta") v = sf::specfun::zeta_fn(s);
        else if (*fn == "omega") v = sf::specfun::omega(s);
        else if (*fn == "log-omega") v = sf::specfun::log_omega(s);
        else v = sf::specfun::f_factor(s);
        const json out{{"re", v.real()}, {"im", v.imag()}};
        json echo = eval_options_echo();
        echo["fn"] = *fn;
        echo["re"] = *re;
        echo["im"] = *im;
        emit(ctx, out.dump(2) + "\n", echo);
    });
}

void register_scatmat(CLI::App& app, Context& ctx) {
    auto* group = app.add_subcommand("scatmat", "Scattering coefficients");
    group->require_subcommand(1);

    auto* rank1 = group->add_subcommand("rank1", "Rank-one coefficient C(s)");
    auto s_re = std::make_shared<double>(0.0);
    auto s_im = std::make_shared<double>(0.0);
    rank1->add_option("--s-re", *s_re, "Re s")->required();
    rank1->add_option("--s-im", *s_im, "Im s");
    rank1->callback([&ctx, s_re, s_im]() {
        const sf::scatmat::ScatteringValue v =
            sf::scatmat::c_rank1(parse_complex_pair(*s_re, *s_im));
        const json out{{"re", v.value.real()}, {"im", v.value.imag()}, {"at_pole", v.at_pole}};
        json echo = eval_options_echo();
        echo["s_re"] = *s_re;
        echo["s_im"] = *s_im;
        emit(ctx, out.dump(2) + "\n", echo);
    });

    auto* rank2 = group->add_subcommand("rank2", "Rank-two coefficient C(w, lambda)");
    auto word = std::make_shared<std::string>();
    auto lambda = std::make_shared<std::vector<double>>();
    rank2->add_option("--w", *word, "Weyl element as a cycle word: 12|23|13|123|132|id")
        ->required();
    rank2->add_option("--lambda", *lambda,
                      "Spectral parameter, comma-separated (3 reals or 6 re/im pairs); "
                      "components must sum to zero")
        ->required()
        ->delimiter(',');
    rank2->callback([&ctx, word, lambda]() {
        const sf::exactlin::Permutation w = sf::exactlin::Permutation::from_cycle_word(3, *word);
        const sf::scatmat::ScatteringValue v =
            sf::scatmat::c_rank2(w, lambda_from_flat(*lambda));
        const json out{{"re", v.value.real()}, {"im", v.value.imag()}, {"at_pole", v.at_pole}};
        json echo = eval_options_echo();
        echo["w"] = *word;
        echo["lambda"] = *lambda;
        emit(ctx, out.dump(2) + "\n", echo);
    });

    auto* eis = group->add_subcommand("eisenstein-check",
                                      "Truncated constant-term assembly residual");
    auto e_sre = std::make_shared<double>(2.0);
    auto e_sim = std::make_shared<double>(0.0);
    auto e_y = std::make_shared<double>(3.0);
    auto e_cmax = std::make_shared<long>(1000);
    eis->add_option("--s-re", *e_sre, "Re s (>= 1.5)")->required();
    eis->add_option("--s-im", *e_sim, "Im s");
    eis->add_option("--y", *e_y, "Cusp height y (>= 1)")->required();
    eis->add_option("--cmax", *e_cmax, "Truncation of the class sum")->required();
    eis->callback([&ctx, e_sre, e_sim, e_y, e_cmax]() {
        const double residual = sf::scatmat::eisenstein_constant_term_check(
            *e_y, parse_complex_pair(*e_sre, *e_sim), *e_cmax);
        const json out{{"residual", residual}};
        json echo = eval_options_echo();
        echo["s_re"] = *e_sre;
        echo["s_im"] = *e_sim;
        echo["y"] = *e_y;
        echo["cmax"] = *e_cmax;
        emit(ctx, out.dump(2) + "\n", echo);
    });
}

void register_geodesics(CLI::App& app, Context& ctx) {
    auto* group = app.add_subcommand("geodesics", "Cusp-to-cusp geodesic classes");
    group->require_subcommand(1);

    auto* enumerate = group->add_subcommand("enumerate", "List classes up to c_max");
    auto cmax = std::make_shared<long>(10);
    auto format = std::make_shared<std::string>("csv");
    enumerate->add_option("--cmax", *cmax, "Largest lower-left entry c")->required();
    enumerate->add_option("--format", *format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    enumerate->callback([&ctx, cmax, format]() {
        const sf::geodesics::EnumerationTable table = sf::geodesics::enumerate_classes(*cmax);
        std::string payload;
        if (*format == "json") {
            json rows = json::array();
            for (const auto& r : table.rows)
                rows.push_back({{"c", r.c},
                                {"phi", r.multiplicity},
                                {"sojourn", r.sojourn_time}});
            payload = rows.dump(2) + "\n";
        } else {
            std::ostringstream os;
            os << "c,phi,sojourn\n";
            for (const auto& r : table.rows)
                os << r.c << ',' << r.multiplicity << ','
                   << sf::serialize::fmt_double(r.sojourn_time) << '\n';
            payload = os.str();
        }
        emit(ctx, payload, json{{"cmax", *cmax}, {"format", *format}});
    });

    auto* sojourn = group->add_subcommand("sojourn", "Sojourn time of a matrix class");
    auto matrix = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("hyperbolic");
    sojourn->add_option("--matrix", *matrix, "2x2 integer matrix as JSON, e.g. [[\"2\",\"1\"],[\"1\",\"1\"]]")
        ->required();
    sojourn->add_option("--mode", *mode, "Normalization")
        ->check(CLI::IsMember({"hyperbolic", "killing"}));
    sojourn->callback([&ctx, matrix, mode]() {
        const sf::exactlin::IntMatrix g = sf::serialize::int_matrix_from_string(*matrix);
        const sf::geodesics::SojournMode m = (*mode == "killing")
                                                 ? sf::geodesics::SojournMode::killing
                                                 : sf::geodesics::SojournMode::hyperbolic;
        const double t = sf::geodesics::sojourn_time_from_matrix(g, m);
        const json out{{"mode", *mode}, {"sojourn", t}};
        emit(ctx, out.dump(2) + "\n", json{{"matrix", *matrix}, {"mode", *mode}});
    });

    auto* check = group->add_subcommand("guillemin-check",
                                        "Residual of the class sum against C(sigma)");
    auto sigma = std::make_shared<double>(2.0);
    auto g_cmax = std::make_shared<long>(1000);
    check->add_option("--sigma", *sigma, "Real evaluation point (> 1)")->required();
    check->add_option("--cmax", *g_cmax, "Truncation of the class sum")->required();
    check->callback([&ctx, sigma, g_cmax]() {
        const Cplx sum = sf::geodesics::guillemin_sum(Cplx(*sigma, 0.0), *g_cmax);
        const Cplx target = sf::scatmat::c_rank1(Cplx(*sigma, 0.0)).value;
        const json out{{"sum_re", sum.real()},
                       {"sum_im", sum.imag()},
                       {"target_re", target.real()},
                       {"target_im", target.imag()},
                       {"residual", std::abs(sum - target)}};
        json echo = eval_options_echo();
        echo["sigma"] = *sigma;
        echo["cmax"] = *g_cmax;
        emit(ctx, out.dump(2) + "\n", echo);
    });
}

void register_poisson(CLI::App& app, Context& ctx) {
    auto* group = app.add_subcommand("poisson", "Spectral-side transform pipeline");
    group->require_subcommand(1);

    auto* scan = group->add_subcommand(
        "scan", "Sample C(1/2+ir), window, transform; emit the zeta-side spectrum as CSV");
    auto rmax = std::make_shared<double>(500.0);
    auto count = std::make_shared<std::size_t>(16384);
    auto window = std::make_shared<std::string>("gaussian");
    auto sigma = std::make_shared<double>(0.0);
    scan->add_option("--rmax", *rmax, "Half-width of the sampling interval (0, 2000]");
    scan->add_option("--count", *count, "Sample count, power of two in [1024, 2^20]");
    scan->add_option("--window", *window, "Window: gaussian|hann|none")
        ->check(CLI::IsMember({"gaussian", "hann", "none"}));
    scan->add_option("--sigma", *sigma, "Gaussian width (0 = rmax/4)");
    scan->callback([&ctx, rmax, count, window, sigma]() {
        std::cerr << "scan: sampling " << *count << " points on [-" << *rmax << ", " << *rmax
                  << "]...\n";
        const sf::poisson::SpectralSamples samples =
            sf::poisson::sample_phi(*rmax, *count, window_from_name(*window, *sigma));
        std::cerr << "scan: transforming (max | |phi|-1 | = " << samples.unitarity_deviation
                  << ")...\n";
        const sf::poisson::SpectralSamples spectrum = sf::poisson::windowed_fft(samples);
        json echo = eval_options_echo();
        echo["rmax"] = *rmax;
        echo["count"] = *count;
        echo["window"] = *window;
        echo["sigma"] = *sigma;
        echo["unitarity_deviation"] = samples.unitarity_deviation;
        emit(ctx, sf::serialize::samples_to_csv(spectrum, "zeta"), echo);
    });

    auto* peaks = group->add_subcommand("peaks", "Detect peaks in a zeta-side spectrum CSV");
    auto in_path = std::make_shared<std::string>();
    auto threshold = std::make_shared<double>(5.0);
    auto min_zeta = std::make_shared<double>(0.25);
    peaks->add_option("--in", *in_path, "Input spectrum CSV (from poisson scan)")->required();
    peaks->add_option("--threshold", *threshold, "Multiple of the median magnitude");
    peaks->add_option("--min-zeta", *min_zeta, "Ignore the spectrum at or below this zeta");
    peaks->callback([&ctx, in_path, threshold, min_zeta]() {
        const sf::poisson::SpectralSamples spectrum =
            sf::serialize::samples_from_csv(read_file_or_throw(*in_path));
        const sf::poisson::PeakReport report =
            sf::poisson::detect_peaks(spectrum, *threshold, *min_zeta);
        const json echo{{"in", *in_path}, {"threshold", *threshold}, {"min_zeta", *min_zeta}};
        emit(ctx, sf::serialize::peak_report_to_json(report).dump(2) + "\n", echo);
    });

    auto* sl3 = group->add_subcommand(
        "sl3", "Singular-support vectors of the rank-two transform for a simple move");
    auto word = std::make_shared<std::string>("12");
    auto s_rmax = std::make_shared<double>(500.0);
    auto s_count = std::make_shared<std::size_t>(16384);
    auto s_window = std::make_shared<std::string>("gaussian");
    sl3->add_option("--w", *word, "Simple transposition: 12 or 23")->required();
    sl3->add_option("--rmax", *s_rmax, "Half-width of the sampling interval");
    sl3->add_option("--count", *s_count, "Sample count, power of two");
    sl3->add_option("--window", *s_window, "Window: gaussian|hann|none")
        ->check(CLI::IsMember({"gaussian", "hann", "none"}));
    sl3->callback([&ctx, word, s_rmax, s_count, s_window]() {
        const sf::exactlin::Permutation w = sf::exactlin::Permutation::from_cycle_word(3, *word);
        std::cerr << "sl3: sampling " << *s_count << " points...\n";
        const sf::poisson::Sl3SingularSupport support = sf::poisson::sl3_singular_support(
            w, *s_rmax, *s_count, window_from_name(*s_window, 0.0));
        json vectors = json::array();
        for (const auto& v : support.vectors) vectors.push_back({v[0], v[1], v[2]});
        json echo = eval_options_echo();
        echo["w"] = *word;
        echo["rmax"] = *s_rmax;
        echo["count"] = *s_count;
        echo["window"] = *s_window;
        emit(ctx, vectors.dump(2) + "\n", echo);
    });
}

void register_chambers(CLI::App& app, Context& ctx) {
    auto* group = app.add_subcommand("chambers", "Weyl chamber / end-region queries");
    group->require_subcommand(1);

    auto* classify = group->add_subcommand("classify", "Classify a point as core or an end");
    // --h is the Cartan vector here; keep help reachable as --help only.
    classify->set_help_flag("--help", "Print this help message and exit");
    auto h = std::make_shared<std::vector<double>>();
    auto r = std::make_shared<double>(1.0);
    auto literal = std::make_shared<bool>(false);
    classify->add_option("--h", *h, "Sum-zero vector h1,h2,h3")->required()->delimiter(',');
    classify->add_option("--r", *r, "Positive shift scale")->required();
    classify->add_flag("--literal", *literal, "Use the source-listed P1 inequality 12t+r>0");
    classify->callback([&ctx, h, r, literal]() {
        if (h->size() != 3)
            throw sf::PreconditionError("bad_vector", "--h needs exactly 3 components");
        const sf::chambers::CartanVector v((*h)[0], (*h)[1], (*h)[2]);
        const sf::chambers::Region region = sf::chambers::classify_point(v, *r, *literal);
        const json out{{"region", sf::chambers::region_name(region)}};
        emit(ctx, out.dump(2) + "\n",
             json{{"h", *h}, {"r", *r}, {"literal", *literal}});
    });

    auto* contains = group->add_subcommand("contains", "Shifted chamber membership");
    // Same collision as classify: --h is an option, so help is --help only.
    contains->set_help_flag("--help", "Print this help message and exit");
    auto parabolic = std::make_shared<std::string>("P0");
    auto c_h = std::make_shared<std::vector<double>>();
    auto c_r = std::make_shared<double>(1.0);
    contains->add_option("--parabolic", *parabolic, "P0|P1|P2")->required();
    contains->add_option("--h", *c_h, "Sum-zero vector h1,h2,h3")->required()->delimiter(',');
    contains->add_option("--r", *c_r, "Positive shift scale")->required();
    contains->callback([&ctx, parabolic, c_h, c_r]() {
        if (c_h->size() != 3)
            throw sf::PreconditionError("bad_vector", "--h needs exactly 3 components");
        sf::chambers::ChamberQuery q;
        q.parabolic = sf::chambers::parse_parabolic(*parabolic);
        q.r = *c_r;
        const sf::chambers::CartanVector v((*c_h)[0], (*c_h)[1], (*c_h)[2]);
        const bool inside = sf::chambers::shifted_chamber_contains(q, v);
        emit(ctx, json(inside).dump() + "\n",
             json{{"parabolic", *parabolic}, {"h", *c_h}, {"r", *c_r}});
    });
}

void register_bruhat(CLI::App& app, Context& ctx) {
    auto* group = app.add_subcommand("bruhat", "Exact Borel-relative factorization");
    group->require_subcommand(1);
    auto* dec = group->add_subcommand("decompose", "Factor an integer matrix with det +-1");
    auto matrix = std::make_shared<std::string>();
    dec->add_option("--matrix", *matrix,
                    "Matrix as JSON array of integer strings, e.g. [[\"0\",\"-1\"],[\"1\",\"0\"]]")
        ->required();
    dec->callback([&ctx, matrix]() {
        const sf::exactlin::IntMatrix g = sf::serialize::int_matrix_from_string(*matrix);
        const sf::exactlin::BruhatFactorization f = sf::exactlin::bruhat_decompose(g);
        emit(ctx, sf::serialize::factorization_to_json(f).dump(2) + "\n",
             json{{"matrix", *matrix}});
    });
}

void register_verify(CLI::App& app, Context& ctx) {
    auto* ver = app.add_subcommand("verify", "Run an acceptance suite");
    auto suite = std::make_shared<std::string>("all");
    ver->add_option("suite", *suite, "identities|guillemin|poisson|chambers|all")
        ->required()
        ->check(CLI::IsMember({"identities", "guillemin", "poisson", "chambers", "all"}));
    ver->callback([&ctx, suite]() {
        const std::vector<sf::verify::CriterionResult> results =
            sf::verify::run_suite(*suite, ctx.seed);
        std::ostringstream os;
        bool all_passed = true;
        for (const auto& r : results) {
            os << sf::verify::format_result_line(r) << '\n';
            all_passed = all_passed && r.passed;
        }
        os << (all_passed ? "SUITE PASS" : "SUITE FAIL") << " [" << *suite << "] "
           << results.size() << " criteria\n";
        emit(ctx, os.str(), json{{"suite", *suite}, {"seed", ctx.seed}});
        if (!ctx.out_path.empty()) std::cout << os.str(); // report also on stdout
        if (!all_passed) ctx.exit_override = 1;
    });
}

void set_fallthrough(CLI::App* app) {
    for (CLI::App* sub : app->get_subcommands({})) {
        sub->fallthrough(true);
        set_fallthrough(sub);
    }
}

} // namespace

int main(int argc, char** argv) {
    Context ctx;
    CLI::App app{"scatterflat: scattering matrices, sojourn times, and their "
                 "Fourier correspondence on modular and rank-two flat models"};
    app.set_version_flag("--version", sf::serialize::kToolVersion);
    app.set_config("--config", "", "key=value config file; command-line flags override it");
    app.add_option("--seed", ctx.seed, "Seed for randomized verification sampling");
    app.add_option("--out", ctx.out_path, "Write output to this path (with a manifest)");
    app.require_subcommand(1);

    {
        std::ostringstream echo;
        for (int i = 0; i < argc; ++i) echo << (i ? " " : "") << argv[i];
        ctx.command_echo = echo.str();
    }

    register_specfun(app, ctx);
    register_scatmat(app, ctx);
    register_geodesics(app, ctx);
    register_poisson(app, ctx);
    register_chambers(app, ctx);
    register_bruhat(app, ctx);
    register_verify(app, ctx);
    set_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        const json err{{"code", "parse_error"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 2;
    } catch (const sf::PreconditionError& e) {
        const json err{{"code", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 2;
    } catch (const sf::Error& e) {
        const json err{{"code", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        const json err{{"code", "internal_error"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return ctx.exit_override;
}
