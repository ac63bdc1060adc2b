// One line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include "gbeta/gbeta.hpp"
#include "run_cli.hpp"

using namespace gbeta;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

const double kGoldenConj = (1 - std::sqrt(5.0)) / 2;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

const ComplexRoot* other_root(const ConjugateSet& s) {
    for (std::size_t i = 0; i < s.roots.size(); ++i) {
        if (static_cast<int>(i) != s.beta_root_index) return &s.roots[i];
    }
    return nullptr;
}

Outcome golden_parry() {
    const OrbitRecord r = orbit_of_one(named_beta("golden"), SignPattern::e0(), 1000);
    const auto* s = std::get_if<Simple>(&r.verdict);
    if (!s || s->n != 1 || s->k0 != 1) return {false, "verdict is not Simple{1,1}"};
    const CharPoly cp = char_poly(r);
    if (cp.poly != IntPoly{-1, -1, 1}) return {false, "char poly " + cp.poly.to_string()};
    const ConjugateSet cs = conjugates(r, 1e-12);
    const ComplexRoot* c = other_root(cs);
    if (cs.roots.size() != 2 || !c) return {false, "expected two roots"};
    const bool ok = std::abs(c->re_d() - (-0.6180339887)) <= 1e-10 && c->im_d() == 0;
    return {ok, "conjugate " + num(c->re_d())};
}

Outcome golden_yrrap() {
    const OrbitRecord r = orbit_of_one(named_beta("golden"), SignPattern::e1(), 1000);
    const auto* p = std::get_if<EventuallyPeriodic>(&r.verdict);
    if (!p || p->preperiod != 1 || p->period != 1) return {false, "verdict is not EventuallyPeriodic{1,1}"};
    const CharPoly cp = char_poly(r);
    if (cp.poly != IntPoly{-1, -1, 1} || cp.provenance != CharPoly::Provenance::PeriodicNumerator) {
        return {false, "char poly " + cp.poly.to_string()};
    }
    const ConjugateSet cs = conjugates(r, 1e-12);
    const ComplexRoot* c = other_root(cs);
    if (!c) return {false, "no conjugate"};
    const bool ok = std::abs(c->modulus() - std::abs(kGoldenConj)) < 1e-12 && c->modulus() <= kGolden;
    return {ok, "conjugate modulus " + num(c->modulus())};
}

Outcome lemma2_suite() {
    const SuiteResult s = suite_lemma2(VerifyConfig{});
    return {s.ok(), std::to_string(s.passed) + "/" + std::to_string(s.cases) + " identities hold"};
}

Outcome lemma1_suite() {
    const SuiteResult s = suite_lemma1(VerifyConfig{});
    return {s.ok(), std::to_string(s.passed) + "/" + std::to_string(s.cases) + " round trips"};
}

Outcome theorem_a() {
    const std::vector<Rational> a{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    const Rational eps(1, 20);
    const ApproxResult r = thmA_yrrap_approx(a, eps);
    const auto* s = std::get_if<Simple>(&r.record.verdict);
    bool ok = s && r.record.pattern.tag() == "e1" && r.beta.floor() % 2 == 1 && r.cert &&
              eisenstein_certificate(r.poly.poly, 2);
    double worst = 0;
    for (std::size_t n = 1; n <= a.size(); ++n) {
        const Interval iv = be_enclose(r.record.steps[n].point, Rational(1, Integer(1) << 80));
        ok = ok && iv.lo > a[n - 1] - eps && iv.hi < a[n - 1] + eps;
        worst = std::max(worst, std::abs(be_to_double(r.record.steps[n].point) - a[n - 1].convert_to<double>()));
    }
    return {ok, "beta " + num(r.beta.to_double()) + ", " + r.poly.poly.to_string() + ", max miss " + num(worst)};
}

Outcome theorem_c() {
    const OrbitRecord seed = orbit_of_one(named_beta("golden"), SignPattern::e0(), 1000);
    const ParrySequence s = thmC_sequence(parry_prefix(seed, 2), 1, 2);
    const long want[] = {1, 1, 0, 1, 0, 0, 0, 1, 0, 0};
    bool ok = true;
    for (std::size_t i = 0; i < 10; ++i) ok = ok && s[i] == want[i];
    ok = ok && s.length() == 8;
    if (!ok) return {false, "sequence differs from 1,1,0,1,0,0,0,1,0,0"};
    const NonYrrapCertificate c = certify_non_yrrap(s);
    const bool root_ok = c.neg_root.compare(Rational(-1)) > 0 && c.neg_root.compare(Rational(0)) < 0 &&
                         c.neg_root.width() <= Rational(1, Integer(10000000000LL));
    // the caveat may only be upgraded by a verified certificate, never dropped
    const bool caveat_ok = c.caveat == MinimalityFlag::BestEffort || c.caveat == MinimalityFlag::IrreducibleModP;
    ok = c.f_at_minus_one == -1 && root_ok && is_finite(c.parry_verdict) && c.round_trip && caveat_ok;
    return {ok, "f(-1) = " + c.f_at_minus_one.str() + ", root " + num(c.neg_root.to_double()) + ", caveat " +
                    to_string(c.caveat)};
}

Outcome spike() {
    const double e = spike_endpoint();
    const SuiteResult g = spike_grid(60, 1e-9);
    const bool ok = std::abs(e - kGoldenConj) <= 1e-12 && g.ok();
    return {ok, "endpoint " + num(e) + ", grid " + std::to_string(g.passed) + "/" + std::to_string(g.cases)};
}

Outcome disk() {
    bool ok = true;
    std::string detail;
    for (const std::complex<double> z : {std::complex<double>(0, 0.5), {0, 0.55}, {0.3, 0.4}}) {
        const auto v = membership(z, CoefficientBox::Unit, 40, 1e-9);
        ok = ok && std::holds_alternative<InnerYes>(v);
        detail += "z=" + num(z.real()) + "+" + num(z.imag()) + "i " + verdict_name(v);
        if (const auto* n = std::get_if<No>(&v)) detail += "(lb " + num(n->lower_bound) + ")";
        detail += "; ";
    }
    for (const double x : {0.3, 0.0}) {
        const auto v = membership({x, 0}, CoefficientBox::Unit, 40, 1e-9);
        const auto* n = std::get_if<No>(&v);
        const double tail = std::pow(x, 41) / (1 - x);
        ok = ok && n && n->lower_bound >= 1 - tail && n->lower_bound <= 1;
        detail += "z=" + num(x) + " " + verdict_name(v) + (n ? "(lb " + num(n->lower_bound) + ")" : "") + "; ";
    }
    return {ok, detail};
}

Outcome invariants() {
    const PointCloud parry = cloud_parry(ParryCloudSpec{8, 100000, 2}, 1);
    const PointCloud yrrap = cloud_yrrap(random_samples(100, 4, Rational(1, 10), VerifyConfig{}.seed), 1);
    const std::size_t pos = count_real_points(parry, 1);
    const std::size_t neg = count_real_points(yrrap, -1);
    const GoldenBound gy = check_golden_bound(yrrap), gp = check_golden_bound(parry);
    const bool ok = pos == 0 && neg == 0 && yrrap.skipped.empty() && gy.pass && gp.pass &&
                    gy.max_modulus <= 1.6180339888 && gp.max_modulus <= 1.6180339888;
    return {ok, std::to_string(parry.points.size()) + " Parry points, " + std::to_string(pos) + " positive; " +
                    std::to_string(yrrap.points.size()) + " Yrrap points, " + std::to_string(neg) +
                    " negative; max modulus " + num(std::max(gy.max_modulus, gp.max_modulus))};
}

Outcome chebyshev() {
    const SuiteResult s = suite_chebyshev(VerifyConfig{});
    return {s.ok(), std::to_string(s.passed) + "/" + std::to_string(s.cases) + " checks"};
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "gbeta_acceptance";
    std::filesystem::create_directories(dir);
    auto path = [&](const std::string& n) { return (dir / n).string(); };
    const std::string samples = std::string(GBETA_SAMPLES);
    int bad = 0;
    bad += run_cli("--seed 20240607 verify all --out " + path("v1.json")).code != 0;
    bad += run_cli("--seed 20240607 verify all --out " + path("v2.json")).code != 0;
    bad += run_cli("--threads 1 cloud --pattern e1 --spec " + samples + "/yrrap_random.json --out " + path("y1.csv")).code;
    bad += run_cli("--threads 8 cloud --pattern e1 --spec " + samples + "/yrrap_random.json --out " + path("y8.csv")).code;
    bad += run_cli("--threads 1 cloud --pattern e0 --spec " + samples + "/parry_depth8.json --out " + path("p1.csv")).code;
    bad += run_cli("--threads 8 cloud --pattern e0 --spec " + samples + "/parry_depth8.json --out " + path("p8.csv")).code;
    if (bad) return {false, "a CLI run failed"};
    const std::string v1 = slurp(path("v1.json")), y1 = slurp(path("y1.csv")), p1 = slurp(path("p1.csv"));
    const bool ok = !v1.empty() && v1 == slurp(path("v2.json")) && !y1.empty() && y1 == slurp(path("y8.csv")) &&
                    !p1.empty() && p1 == slurp(path("p8.csv"));
    return {ok, "report " + std::to_string(v1.size()) + " bytes, clouds " + std::to_string(y1.size()) + " and " +
                    std::to_string(p1.size()) + " bytes"};
}

struct Criterion {
    int id;
    std::string name;
    double limit_s;  // 0 for none
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> all{
        {1, "golden ratio Parry fixture", 1, golden_parry},
        {2, "golden ratio Yrrap fixture", 0, golden_yrrap},
        {3, "Lemma 2 identity suite", 120, lemma2_suite},
        {4, "Lemma 1 round trip", 60, lemma1_suite},
        {5, "Theorem A constructor", 30, theorem_a},
        {6, "Theorem C certificate", 30, theorem_c},
        {7, "spike endpoint and grid", 0, spike},
        {8, "disk membership", 0, disk},
        {9, "positivity and golden bound", 0, invariants},
        {10, "Chebyshev conjugacy", 0, chebyshev},
        {11, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && dt >= c.limit_s) {
            o.ok = false;
            o.detail += "; over the " + num(c.limit_s) + " s limit";
        }
        failed += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << o.detail << ", "
                  << num(dt) << " s)" << std::endl;
    }
    return failed ? 1 : 0;
}
