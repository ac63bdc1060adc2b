#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gbeta/chebyshev.hpp"
#include "gbeta/construct.hpp"
#include "gbeta/io.hpp"
#include "gbeta/random.hpp"
#include "gbeta/sets.hpp"
#include "gbeta/spectra.hpp"

namespace gbeta {

/// A random non-integer real algebraic number in (lo, hi), given by a
/// random integer polynomial of degree <= max_degree.
inline AlgebraicReal random_beta(Rng& rng, int max_degree, const Rational& lo = 1, const Rational& hi = 6) {
    while (true) {
        const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree)));
        std::vector<Integer> c(static_cast<std::size_t>(d) + 1);
        for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = rng.between(-9, 9);
        c[static_cast<std::size_t>(d)] = rng.between(1, 5);
        const IntPoly p(std::move(c));
        if (p.degree() != d) continue;
        std::vector<AlgebraicReal> ok;
        for (auto& r : isolate_real_roots(p, lo, hi)) {
            if (r.compare(lo) > 0 && r.compare(hi) < 0 && !r.is_integer()) ok.push_back(r);
        }
        if (!ok.empty()) return ok[rng.below(ok.size())];
    }
}

inline SignPattern random_pattern(Rng& rng) {
    std::vector<int> pre(rng.below(4)), per(1 + rng.below(3));
    for (auto& v : pre) v = rng.coin() ? 1 : 0;
    for (auto& v : per) v = rng.coin() ? 1 : 0;
    return {pre, per};
}

/// Digit vector satisfying every Lemma 1 hypothesis, N <= max_n, M(0) <= max_m0.
inline DigitVector random_digit_vector(Rng& rng, std::size_t max_n, std::int64_t max_m0) {
    while (true) {
        const auto N = static_cast<std::int64_t>(1 + rng.below(max_n));
        const std::int64_t lo0 = 2 * N + 3;
        if (lo0 > max_m0) continue;
        const std::int64_t m0 = rng.between(lo0, max_m0);
        DigitVector d;
        d.m.push_back(m0);
        for (std::int64_t j = 1; j <= N; ++j) {
            std::int64_t v = 0;
            while (v == 0) v = rng.between(-(m0 - 2), m0 - 2);
            d.m.push_back(v);
        }
        if (d.violation().empty()) return d;
    }
}

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::vector<std::string> failures;
    Json details = Json::object();

    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    void check(bool ok, const std::string& what) {
        ++cases;
        if (ok) {
            ++passed;
        } else if (failures.size() < 20) {
            failures.push_back(what);
        }
    }
    bool ok() const { return cases > 0 && passed == cases; }

    Json to_json() const {
        return Json{{"name", name},   {"cases", cases}, {"passed", passed},
                    {"ok", ok()},     {"failures", failures}, {"details", details}};
    }
};

struct VerifyConfig {
    std::uint64_t seed = 20240607;
    unsigned threads = 1;
    unsigned bits = 256;
};

inline SuiteResult suite_lemma2(const VerifyConfig& cfg) {
    SuiteResult r("lemma2");
    Rng rng(cfg.seed);
    for (int k = 0; k < 200; ++k) {
        const AlgebraicReal beta = random_beta(rng, 4);
        const SignPattern e = random_pattern(rng);
        const std::size_t N = 1 + rng.below(30);
        bool ok = false;
        try {
            ok = lemma2_check(beta, e, N);
        } catch (const Error&) {
            ok = false;
        }
        r.check(ok, "beta root of " + beta.poly().to_string() + " near " + fmt_double(beta.to_double()) + ", pattern " +
                        e.tag() + ", N = " + std::to_string(N));
    }
    return r;
}

inline SuiteResult suite_lemma1(const VerifyConfig& cfg) {
    SuiteResult r("lemma1");
    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int k = 0; k < 50; ++k) {
        const DigitVector d = random_digit_vector(rng, 6, 50);
        std::string label = "M =";
        for (const auto& v : d.m) label += " " + v.str();
        try {
            const Lemma1Result l = lemma1_beta(d);
            const auto* s = std::get_if<Simple>(&l.record.verdict);
            r.check(s && s->n == d.n() && vanishes_at(l.poly, l.beta), label);
        } catch (const Error& e) {
            r.check(false, label + ": " + e.what());
        }
    }
    return r;
}

inline SuiteResult suite_golden_bound(const VerifyConfig& cfg) {
    SuiteResult r("golden-bound");
    const auto samples = random_samples(100, 4, Rational(1, 10), cfg.seed);
    const PointCloud cloud = cloud_yrrap(samples, cfg.threads);
    const GoldenBound g = check_golden_bound(cloud);
    r.check(cloud.skipped.empty(), std::to_string(cloud.skipped.size()) + " samples failed to construct");
    r.check(g.pass, "max modulus " + fmt_double(g.max_modulus) + " exceeds the golden ratio");
    r.check(count_real_points(cloud, -1) == 0, "negative real conjugate of a simple Yrrap number");
    r.details = Json{{"samples", samples.size()}, {"points", cloud.points.size()}, {"max_modulus", g.max_modulus}};
    return r;
}

inline SuiteResult suite_positivity(const VerifyConfig& cfg) {
    SuiteResult r("positivity");
    const ParryCloudSpec spec{8, 100000, 2};
    const auto seqs = admissible_sequences(spec);
    // Exact side: beta is the only positive root of each Parry polynomial.
    auto exact = parallel_map(seqs.size(), cfg.threads, [&](std::size_t i) {
        const IntPoly g = primitive(parry_f(seqs[i]).reversed());
        return count_real_roots(g, Rational(0), cauchy_bound(g) + 1) == 1;
    });
    std::size_t bad = 0;
    for (bool ok : exact) bad += ok ? 0 : 1;
    r.check(bad == 0, std::to_string(bad) + " Parry polynomials with a second positive root");
    const PointCloud parry = cloud_parry(spec, cfg.threads);
    const std::size_t pos = count_real_points(parry, 1);
    r.check(pos == 0, std::to_string(pos) + " positive real Parry conjugates");
    const PointCloud yrrap = cloud_yrrap(random_samples(100, 4, Rational(1, 10), cfg.seed), cfg.threads);
    const std::size_t neg = count_real_points(yrrap, -1);
    r.check(neg == 0, std::to_string(neg) + " negative real Yrrap conjugates");
    r.details = Json{{"parry_sequences", seqs.size()},
                     {"parry_points", parry.points.size()},
                     {"yrrap_points", yrrap.points.size()},
                     {"parry_max_modulus", parry.max_modulus()}};
    return r;
}

/// Spike agreement on a 100-point grid of (-1, 0) at degree N.
inline SuiteResult spike_grid(int N, double tol) {
    SuiteResult r("spike-grid");
    for (int k = 0; k < 100; ++k) {
        const double z = -(k + 0.5) / 100.0;
        const double c = extremal_min_real(z);
        const auto v = membership({z, 0.0}, CoefficientBox::Unit, N, tol);
        const double tail = std::pow(std::abs(z), N + 1) / (1.0 - std::abs(z));
        bool ok = true;
        if (c <= -1e-6) ok = std::holds_alternative<InnerYes>(v);
        if (c >= tail + tol) ok = std::holds_alternative<No>(v);
        r.check(ok, "z = " + fmt_double(z) + ": closed form " + fmt_double(c) + ", verdict " + verdict_name(v));
    }
    return r;
}

/// Zero of the closed form on (-1, 0) by bisection.
inline double spike_endpoint() {
    double lo = -0.99, hi = -0.01;  // closed form < 0 at lo, > 0 at hi
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (extremal_min_real(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline SuiteResult suite_membership(const VerifyConfig&) {
    SuiteResult r("membership");
    const SuiteResult grid = spike_grid(60, 1e-9);
    r.check(grid.ok(), "spike grid: " + std::to_string(grid.passed) + "/" + std::to_string(grid.cases));
    for (const auto& f : grid.failures) r.failures.push_back(f);
    const double e = spike_endpoint();
    r.check(std::abs(e - (1.0 - std::sqrt(5.0)) / 2.0) < 1e-12, "spike endpoint " + fmt_double(e));
    for (int k = 1; k < 100; ++k) {
        const double z = k / 100.0;
        const auto v = membership({z, 0.0}, CoefficientBox::Unit, 40, 1e-9);
        // the truncated distance is exactly 1; near z = 1 the tail swamps it
        const double tail = std::pow(z, 41) / (1.0 - z);
        bool ok = false;
        if (const auto* n = std::get_if<No>(&v)) ok = n->lower_bound >= 1.0 - tail - 1e-12;
        if (const auto* u = std::get_if<Unknown>(&v)) ok = tail + 1e-9 >= 1.0 && u->truncated_min >= 1.0 - 1e-12;
        r.check(ok, "positive real z = " + fmt_double(z) + ": " + verdict_name(v));
    }
    {
        const auto v = membership({0.0, 0.0}, CoefficientBox::Unit, 40, 1e-9);
        const auto* n = std::get_if<No>(&v);
        r.check(n && n->lower_bound == 1.0, "z = 0");
    }
    // A witness at degree N stays a witness at N + 1.
    for (const std::complex<double> z : {std::complex<double>(-0.9, 0), {0.7, 0.6}, {-0.2, 0.75}}) {
        for (int N : {30, 40}) {
            const auto a = membership(z, CoefficientBox::Unit, N, 1e-9);
            const auto b = membership(z, CoefficientBox::Unit, N + 1, 1e-9);
            r.check(!std::holds_alternative<InnerYes>(a) || std::holds_alternative<InnerYes>(b),
                    "monotonicity at z = " + fmt_double(z.real()) + "+" + fmt_double(z.imag()) + "i");
        }
    }
    r.details = Json{{"spike_endpoint", e}};
    return r;
}

inline SuiteResult suite_chebyshev(const VerifyConfig& cfg) {
    SuiteResult r("chebyshev");
    const unsigned bits = cfg.bits;
    Json res = Json::object();
    auto residual = [&](const std::string& name, const BigFloat& b) {
        const double v = conjugacy_residual(b, 1000, bits);
        res[name] = v;
        r.check(v < 1e-9, "conjugacy residual for " + name + " is " + fmt_double(v));
    };
    residual("2.5", BigFloat(Rational(5, 2), bits));
    residual("3.3", BigFloat(Rational(33, 10), bits));
    residual("golden", to_bigfloat(named_beta("golden"), bits));
    double cheb2 = 0, cheb3 = 0;
    for (int k = 0; k <= 1000; ++k) {
        const BigFloat x(Rational(k - 500, 500), bits);
        const double xd = x.to_double();
        cheb2 = std::max(cheb2, std::abs(f_beta(BigFloat(2.0, bits), x).to_double() - (2 * xd * xd - 1)));
        cheb3 = std::max(cheb3, std::abs(f_beta(BigFloat(3.0, bits), x).to_double() - (4 * xd * xd * xd - 3 * xd)));
    }
    r.check(cheb2 < 1e-12, "F_2 differs from 2x^2 - 1 by " + fmt_double(cheb2));
    r.check(cheb3 < 1e-12, "F_3 differs from 4x^3 - 3x by " + fmt_double(cheb3));
    Json cons = Json::object();
    for (const std::string name : {"golden", "sqrt2plus2"}) {
        const ConsistencyReport rep = finite_orbit_consistency(named_beta(name), 1000, bits);
        cons[name] = rep.status;
        r.check(rep.status == "agree", "finite orbit consistency for " + name + ": " + rep.status);
    }
    r.details = Json{{"residuals", res}, {"consistency", cons}};
    return r;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"lemma2", "lemma1", "golden-bound", "positivity", "membership",
                                                "chebyshev"};
    return names;
}

inline SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
    if (name == "lemma2") return suite_lemma2(cfg);
    if (name == "lemma1") return suite_lemma1(cfg);
    if (name == "golden-bound") return suite_golden_bound(cfg);
    if (name == "positivity") return suite_positivity(cfg);
    if (name == "membership") return suite_membership(cfg);
    if (name == "chebyshev") return suite_chebyshev(cfg);
    throw ParseError("unknown suite '" + name + "'");
}

/// Report for one suite or "all". Contains no timings, so equal seeds give
/// byte-identical output.
inline Json verify_report(const std::string& suite, const VerifyConfig& cfg) {
    std::vector<std::string> names;
    if (suite == "all") {
        names = suite_names();
    } else {
        const auto& all = suite_names();
        if (std::find(all.begin(), all.end(), suite) == all.end()) throw ParseError("unknown suite '" + suite + "'");
        names = {suite};
    }
    Json suites = Json::array();
    bool ok = true;
    for (const auto& n : names) {
        const SuiteResult s = run_suite(n, cfg);
        ok = ok && s.ok();
        suites.push_back(s.to_json());
    }
    return Json{{"seed", cfg.seed}, {"suites", suites}, {"ok", ok}};
}

}  // namespace gbeta
