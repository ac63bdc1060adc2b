#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gbeta/gbeta.hpp"

using namespace gbeta;

namespace {

struct BetaArgs {
    std::string poly, interval, rational, named;

    void add(CLI::App* app, const std::string& poly_flag = "--poly") {
        app->add_option(poly_flag, poly, "integer polynomial, ascending coefficients c0,c1,...");
        app->add_option("--interval", interval, "lo,hi isolating one root of the polynomial");
        app->add_option("--rational", rational, "rational beta p/q");
        app->add_option("--named", named, "golden, plastic or sqrt2plus2");
    }

    AlgebraicReal get() const {
        const int given = !poly.empty() + !rational.empty() + !named.empty();
        if (given != 1) throw ParseError("give exactly one of a polynomial, --rational or --named");
        if (!poly.empty()) {
            parse_int_poly(poly);  // report a malformed polynomial before a missing interval
            if (interval.empty()) throw ParseError("a polynomial needs --interval lo,hi");
            return beta_from_poly(poly, interval);
        }
        if (!rational.empty()) return beta_from_rational(rational);
        return named_beta(named);
    }
};

struct Output {
    std::string path;

    void add(CLI::App* app) { app->add_option("--out", path, "output file (written atomically); stdout if absent"); }

    void write(const std::string& content) const {
        if (path.empty()) {
            std::cout << content;
        } else {
            atomic_write(path, content);
        }
    }
};

unsigned default_bits() {
    const char* env = std::getenv("GBETA_PRECISION");
    if (!env || !*env) return 256;
    try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(env, &used);
        if (used != std::string(env).size() || v < 53 || v > 1u << 20) throw std::invalid_argument("");
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw ParseError(std::string("GBETA_PRECISION must be an integer >= 53, got '") + env + "'");
    }
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

std::vector<Rational> rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& t : split(s)) out.push_back(parse_rational(t));
    if (out.empty()) throw ParseError("empty list");
    return out;
}

std::vector<int> signs(const std::string& s) {
    std::vector<int> out;
    for (const auto& t : split(s)) {
        if (t == "+" || t == "1" || t == "+1") {
            out.push_back(1);
        } else if (t == "-" || t == "-1") {
            out.push_back(-1);
        } else {
            throw ParseError("signs are + or -, got '" + t + "'");
        }
    }
    return out;
}

std::complex<double> parse_point(const std::string& s) {
    const auto parts = split(s);
    if (parts.size() != 2) throw ParseError("point must be re,im: '" + s + "'");
    try {
        std::size_t a = 0, b = 0;
        const double re = std::stod(parts[0], &a), im = std::stod(parts[1], &b);
        if (a != parts[0].size() || b != parts[1].size()) throw std::invalid_argument("");
        return {re, im};
    } catch (const std::exception&) {
        throw ParseError("point must be re,im: '" + s + "'");
    }
}

CoefficientBox parse_box(const std::string& s) {
    if (s == "unit") return CoefficientBox::Unit;
    if (s == "sym") return CoefficientBox::Sym;
    throw ParseError("box is unit or sym, got '" + s + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized beta-maps: classification, spectra, constructions and limit sets"};
    app.require_subcommand(1);
    unsigned threads = 1;
    std::uint64_t seed = VerifyConfig{}.seed;
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for random samples and property suites");

    int code = 0;
    std::function<void()> action;
    unsigned bits = 0;

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "exact orbit of 1 and its verdict");
    BetaArgs c_beta;
    std::string c_pattern = "e0";
    std::size_t c_steps = 10000;
    Output c_out;
    c_beta.add(classify_cmd);
    classify_cmd->add_option("--pattern", c_pattern, "e0, e1, alt or custom:PRE/PER");
    classify_cmd->add_option("--max-steps", c_steps, "orbit step budget");
    c_out.add(classify_cmd);
    classify_cmd->callback([&] {
        action = [&] {
            const OrbitRecord rec = orbit_of_one(c_beta.get(), SignPattern::parse(c_pattern), c_steps);
            c_out.write(dump(to_json(rec)));
            if (!is_finite(rec.verdict)) code = 2;
        };
    });

    // charpoly
    auto* charpoly_cmd = app.add_subcommand("charpoly", "characteristic polynomial of a finite orbit");
    BetaArgs p_beta;
    std::string p_pattern = "e0";
    std::size_t p_steps = 10000;
    Output p_out;
    p_beta.add(charpoly_cmd);
    charpoly_cmd->add_option("--pattern", p_pattern, "e0, e1, alt or custom:PRE/PER");
    charpoly_cmd->add_option("--max-steps", p_steps, "orbit step budget");
    p_out.add(charpoly_cmd);
    charpoly_cmd->callback([&] {
        action = [&] {
            const OrbitRecord rec = orbit_of_one(p_beta.get(), SignPattern::parse(p_pattern), p_steps);
            if (!is_finite(rec.verdict)) {
                p_out.write(dump(Json{{"verdict", to_json(rec.verdict)}}));
                code = 2;
                return;
            }
            CharPoly cp = char_poly(rec);
            cp.flag = certify(cp.poly);
            p_out.write(dump(Json{{"verdict", to_json(rec.verdict)}, {"char_poly", to_json(cp)}}));
        };
    });

    // conjugates
    auto* conj_cmd = app.add_subcommand("conjugates", "all roots of the characteristic polynomial, as CSV");
    BetaArgs k_beta;
    std::string k_pattern = "e0";
    std::size_t k_steps = 10000;
    double k_tol = 1e-9;
    Output k_out;
    k_beta.add(conj_cmd);
    conj_cmd->add_option("--pattern", k_pattern, "e0, e1, alt or custom:PRE/PER");
    conj_cmd->add_option("--max-steps", k_steps, "orbit step budget");
    conj_cmd->add_option("--tol", k_tol, "residual tolerance");
    k_out.add(conj_cmd);
    conj_cmd->callback([&] {
        action = [&] {
            const OrbitRecord rec = orbit_of_one(k_beta.get(), SignPattern::parse(k_pattern), k_steps);
            if (!is_finite(rec.verdict)) {
                std::cerr << "orbit unresolved after " << k_steps << " steps\n";
                code = 2;
                return;
            }
            k_out.write(conjugates_csv(conjugates(rec, k_tol)));
        };
    });

    // construct
    auto* construct_cmd = app.add_subcommand("construct", "build beta from digit data");
    construct_cmd->require_subcommand(1);
    Output x_out;
    x_out.add(construct_cmd);

    auto* lemma1_cmd = construct_cmd->add_subcommand("lemma1", "beta from a digit vector M(0),...,M(N)");
    std::string l_m;
    lemma1_cmd->add_option("--m", l_m, "digit vector")->required();
    lemma1_cmd->callback([&] {
        action = [&] {
            DigitVector d;
            for (const auto& t : split(l_m)) {
                const Rational q = parse_rational(t);
                if (denominator(q) != 1) throw ParseError("digits are integers, got '" + t + "'");
                d.m.push_back(numerator(q));
            }
            const Lemma1Result r = lemma1_beta(d);
            x_out.write(dump(Json{{"beta", to_json(r.beta)},
                                  {"beta_approx", r.beta.to_double()},
                                  {"poly", to_json(r.poly)},
                                  {"poly_text", r.poly.to_string()},
                                  {"orbit", to_json(r.record)}}));
        };
    });

    std::string a_targets, a_eps, a_signs;
    auto* thma_cmd = construct_cmd->add_subcommand("thma", "simple Yrrap beta whose orbit tracks the targets");
    thma_cmd->add_option("--targets", a_targets, "targets in (0,1)")->required();
    thma_cmd->add_option("--eps", a_eps, "tracking tolerance")->required();
    thma_cmd->callback([&] {
        action = [&] { x_out.write(dump(to_json(thmA_yrrap_approx(rationals(a_targets), parse_rational(a_eps))))); };
    });

    auto* thmb_cmd = construct_cmd->add_subcommand("thmb", "E_alt beta whose orbit tracks signed targets");
    thmb_cmd->add_option("--targets", a_targets, "targets in (0,1)")->required();
    thmb_cmd->add_option("--signs", a_signs, "one of + or - per target")->required();
    thmb_cmd->add_option("--eps", a_eps, "tracking tolerance")->required();
    thmb_cmd->callback([&] {
        action = [&] {
            x_out.write(dump(to_json(thmB_alt_approx(rationals(a_targets), signs(a_signs), parse_rational(a_eps)))));
        };
    });

    auto* nonyrrap_cmd = construct_cmd->add_subcommand("nonyrrap", "Parry number with a negative conjugate in (-1,0)");
    std::string n_seed = "golden";
    std::size_t n_n = 1, n_m = 2;
    nonyrrap_cmd->add_option("--seed-beta", n_seed, "named seed Parry number");
    nonyrrap_cmd->add_option("--n", n_n, "prefix half-length N");
    nonyrrap_cmd->add_option("--m", n_m, "number of padding blocks M");
    nonyrrap_cmd->callback([&] {
        action = [&] {
            const OrbitRecord seed_rec = orbit_of_one(named_beta(n_seed), SignPattern::e0(), 10000);
            const ParrySequence s = thmC_sequence(parry_prefix(seed_rec, 2 * n_n), n_n, n_m);
            const NonYrrapCertificate cert = certify_non_yrrap(s);
            Json j = to_json(cert);
            const ApproxOrbit ao = approximate_orbit(to_bigfloat(cert.beta, 256), SignPattern::e1(), 10000, 256);
            j["approx_e1_orbit"] = Json{{"probative", false},
                                        {"steps", ao.steps},
                                        {"near_recurrence", ao.near_recurrence},
                                        {"preperiod", ao.preperiod},
                                        {"period", ao.period}};
            x_out.write(dump(j));
        };
    });

    // member, also reachable as "sets member"
    std::string m_z, m_box = "unit";
    int m_degree = 40;
    double m_tol = 1e-9;
    auto add_member = [&](CLI::App* parent) {
        auto* cmd = parent->add_subcommand("member", "is z a zero of a power series with coefficients in the box");
        cmd->add_option("--z", m_z, "re,im")->required();
        cmd->add_option("--box", m_box, "unit ([0,1]) or sym ([-1,1])");
        cmd->add_option("--degree", m_degree, "truncation degree")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", m_tol, "feasibility tolerance");
        cmd->callback([&] {
            action = [&] {
                const auto z = parse_point(m_z);
                Json j = to_json(membership(z, parse_box(m_box), m_degree, m_tol));
                j["z"] = Json::array({z.real(), z.imag()});
                std::cout << dump(j);
            };
        });
    };
    add_member(&app);
    auto* sets_cmd = app.add_subcommand("sets", "limit set tools");
    sets_cmd->require_subcommand(1);
    add_member(sets_cmd);

    // cloud
    auto* cloud_cmd = app.add_subcommand("cloud", "conjugate point cloud as CSV");
    std::string cl_pattern, cl_spec;
    Output cl_out;
    cloud_cmd->add_option("--pattern", cl_pattern, "e0 (Parry), e1 (Yrrap) or alt")->required();
    cloud_cmd->add_option("--spec", cl_spec, "JSON sample spec");
    cl_out.add(cloud_cmd);
    cloud_cmd->callback([&] {
        action = [&] {
            const Json spec = cl_spec.empty() ? Json::object() : read_json_file(cl_spec);
            PointCloud cloud;
            if (cl_pattern == "e0") {
                cloud = cloud_parry(parry_spec_from_json(spec), threads);
            } else if (cl_pattern == "e1" || cl_pattern == "alt") {
                auto samples = samples_from_json(spec, seed);
                if (cl_spec.empty()) samples = random_samples(100, 4, Rational(1, 10), seed);
                cloud = cl_pattern == "e1" ? cloud_yrrap(samples, threads) : cloud_alt(samples, threads);
            } else {
                throw ParseError("cloud pattern is e0, e1 or alt, got '" + cl_pattern + "'");
            }
            cl_out.write(cloud_csv(cloud));
            for (const auto& s : cloud.skipped) std::cerr << "skipped: " << s << "\n";
        };
    });

    // chebyshev
    auto* cheb_cmd = app.add_subcommand("chebyshev", "Chebyshev map conjugacy checks");
    BetaArgs h_beta;
    std::string h_beta_text;
    std::size_t h_samples = 1000, h_steps = 1000;
    unsigned h_bits = 0;
    h_beta.add(cheb_cmd, "--beta-poly");
    cheb_cmd->add_option("--beta", h_beta_text, "rational p/q or a named constant");
    cheb_cmd->add_option("--samples", h_samples, "grid size on [0,1]");
    cheb_cmd->add_option("--bits", h_bits, "MPFR precision (default GBETA_PRECISION or 256)");
    cheb_cmd->add_option("--max-steps", h_steps, "orbit budget for the finite orbit comparison");
    cheb_cmd->callback([&] {
        action = [&] {
            BetaArgs b = h_beta;
            if (!h_beta_text.empty()) {
                if (h_beta_text.find_first_not_of("0123456789/.-") == std::string::npos) {
                    b.rational = h_beta_text;
                } else {
                    b.named = h_beta_text;
                }
            }
            const AlgebraicReal beta = b.get();
            const unsigned nb = h_bits ? h_bits : bits;
            const double res = conjugacy_residual(to_bigfloat(beta, nb), h_samples, nb);
            const ConsistencyReport rep = finite_orbit_consistency(beta, h_steps, nb);
            std::cout << dump(Json{{"beta", to_json(beta)},
                                   {"beta_approx", beta.to_double()},
                                   {"bits", nb},
                                   {"samples", h_samples},
                                   {"conjugacy_residual", res},
                                   {"finite_orbit",
                                    {{"status", rep.status},
                                     {"exact_verdict", rep.exact_verdict},
                                     {"exact_preperiod", rep.exact_preperiod},
                                     {"exact_period", rep.exact_period},
                                     {"float_closed", rep.float_closed},
                                     {"float_preperiod", rep.float_preperiod},
                                     {"float_period", rep.float_period}}}});
        };
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a property suite (exit 0 iff all checks pass)");
    std::string v_suite;
    Output v_out;
    verify_cmd->add_option("suite", v_suite, "lemma2, lemma1, golden-bound, positivity, membership, chebyshev or all")
        ->required();
    v_out.add(verify_cmd);
    verify_cmd->callback([&] {
        action = [&] {
            const Json report = verify_report(v_suite, VerifyConfig{seed, threads, bits});
            v_out.write(dump(report));
            if (!report["ok"].get<bool>()) code = 1;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    try {
        bits = default_bits();
        if (action) action();
        return code;
    } catch (const UnresolvedOrbit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
