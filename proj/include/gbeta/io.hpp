#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbeta/algebraic.hpp"
#include "gbeta/betamap.hpp"
#include "gbeta/construct.hpp"
#include "gbeta/errors.hpp"
#include "gbeta/poly.hpp"
#include "gbeta/sets.hpp"
#include "gbeta/spectra.hpp"

namespace gbeta {

using Json = nlohmann::ordered_json;

// ---- beta input ------------------------------------------------------------

inline AlgebraicReal named_beta(const std::string& name) {
    if (name == "golden") return AlgebraicReal(IntPoly{-1, -1, 1}, Rational(1), Rational(2));
    if (name == "plastic") return AlgebraicReal(IntPoly{-1, -1, 0, 1}, Rational(1), Rational(2));
    if (name == "sqrt2plus2") return AlgebraicReal(IntPoly{2, -4, 1}, Rational(3), Rational(4));
    throw ParseError("unknown named constant '" + name + "' (golden, plastic, sqrt2plus2)");
}

inline std::pair<Rational, Rational> parse_interval(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("interval must be 'lo,hi': '" + text + "'");
    const Rational lo = parse_rational(text.substr(0, comma));
    const Rational hi = parse_rational(text.substr(comma + 1));
    if (!(lo < hi)) throw ParseError("interval needs lo < hi");
    return {lo, hi};
}

/// Polynomial (ascending coefficients) plus an interval holding one root.
inline AlgebraicReal beta_from_poly(const std::string& poly, const std::string& interval) {
    const IntPoly p = parse_int_poly(poly);
    const auto [lo, hi] = parse_interval(interval);
    auto roots = isolate_real_roots(p, lo, hi);
    if (roots.size() != 1) {
        throw ParseError("interval [" + to_string(lo) + ", " + to_string(hi) + "] holds " + std::to_string(roots.size()) +
                         " roots of " + p.to_string() + ", expected exactly one");
    }
    return roots.front();
}

inline AlgebraicReal beta_from_rational(const std::string& text) {
    return AlgebraicReal::from_rational(parse_rational(text));
}

// ---- JSON ------------------------------------------------------------------

inline Json to_json(const IntPoly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.str());
    return a;
}

inline Json to_json(const AlgebraicReal& a) {
    return Json{{"poly", to_json(a.poly())}, {"lo", to_string(a.lo())}, {"hi", to_string(a.hi())}};
}

inline AlgebraicReal algebraic_from_json(const Json& j) {
    try {
        std::vector<Integer> c;
        for (const auto& v : j.at("poly")) c.push_back(parse_integer(v.is_string() ? v.get<std::string>() : v.dump()));
        const Rational lo = parse_rational(j.at("lo").get<std::string>());
        const Rational hi = parse_rational(j.at("hi").get<std::string>());
        return AlgebraicReal(IntPoly(std::move(c)), lo, hi);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad algebraic number JSON: ") + e.what());
    }
}

inline Json to_json(const Verdict& v) {
    if (const auto* s = std::get_if<Simple>(&v)) return Json{{"kind", "Simple"}, {"N", s->n}, {"k0", s->k0}};
    if (const auto* p = std::get_if<EventuallyPeriodic>(&v)) {
        return Json{{"kind", "EventuallyPeriodic"}, {"preperiod", p->preperiod}, {"period", p->period}};
    }
    return Json{{"kind", "Unresolved"}, {"max_steps", std::get<Unresolved>(v).max_steps}};
}

inline Json to_json(const OrbitRecord& r) {
    Json digits = Json::array(), signs = Json::array(), cum = Json::array(), pts = Json::array();
    for (const auto& s : r.steps) {
        digits.push_back(s.digit);
        signs.push_back(s.sign);
        cum.push_back(s.cum_sign);
        pts.push_back(be_to_double(s.point));
    }
    return Json{{"beta", to_json(r.beta)},       {"beta_approx", r.beta.to_double()},
                {"pattern", r.pattern.tag()},   {"verdict", to_json(r.verdict)},
                {"digits", digits},             {"signs", signs},
                {"cum_signs", cum},             {"points_approx", pts}};
}

inline Json to_json(const CharPoly& c) {
    return Json{{"poly", to_json(c.poly)},
                {"text", c.poly.to_string()},
                {"provenance", c.provenance == CharPoly::Provenance::Simple ? "simple" : "periodic_numerator"},
                {"minimality", to_string(c.flag)}};
}

inline Json to_json(const ApproxResult& r) {
    Json d = Json::array();
    for (const auto& v : r.digits) d.push_back(v.str());
    return Json{{"beta", to_json(r.beta)},
                {"beta_approx", r.beta.to_double()},
                {"scale_M", r.m.str()},
                {"digit_vector", d},
                {"char_poly", to_json(r.poly)},
                {"eisenstein_at_2", r.cert},
                {"orbit", to_json(r.record)}};
}

inline Json to_json(const NonYrrapCertificate& c) {
    Json b = Json::array();
    for (const auto& v : c.b.b) b.push_back(v.str());
    return Json{{"b", b},
                {"f", to_json(c.f)},
                {"f_text", c.f.to_string()},
                {"f_at_minus_one", c.f_at_minus_one.str()},
                {"beta", to_json(c.beta)},
                {"beta_approx", c.beta.to_double()},
                {"neg_root", to_json(c.neg_root)},
                {"neg_root_approx", c.neg_root.to_double()},
                {"parry_verdict", to_json(c.parry_verdict)},
                {"round_trip", c.round_trip},
                {"caveat", to_string(c.caveat)}};
}

inline Json to_json(const MembershipVerdict& v) {
    Json j{{"verdict", verdict_name(v)}};
    if (const auto* y = std::get_if<InnerYes>(&v)) {
        j["degree"] = y->degree;
        j["value_inf"] = y->value_inf;
        j["witness"] = y->witness;
    } else if (const auto* n = std::get_if<No>(&v)) {
        j["lower_bound"] = n->lower_bound;
    } else {
        const auto& u = std::get<Unknown>(v);
        j["truncated_min"] = u.truncated_min;
        j["tail"] = u.tail;
    }
    return j;
}

// ---- CSV -------------------------------------------------------------------

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string conjugates_csv(const ConjugateSet& s) {
    std::string out = "re,im,residual,is_beta\n";
    for (std::size_t i = 0; i < s.roots.size(); ++i) {
        const auto& r = s.roots[i];
        out += fmt_double(r.re_d()) + "," + fmt_double(r.im_d()) + "," + fmt_double(r.residual) + "," +
               (static_cast<int>(i) == s.beta_root_index ? "1" : "0") + "\n";
    }
    return out;
}

inline std::string cloud_csv(const PointCloud& c) {
    std::string out = "re,im,source_beta,pattern,residual\n";
    for (const auto& p : c.points) {
        out += fmt_double(p.re) + "," + fmt_double(p.im) + "," + p.source_beta + "," + p.pattern + "," +
               fmt_double(p.residual) + "\n";
    }
    return out;
}

/// Writes through a sibling temp file and renames, so readers never see a
/// partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) {
            f.close();
            std::filesystem::remove(tmp);
            throw Error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

// ---- cloud sample specs ----------------------------------------------------

/// {"samples": [{"targets": [...], "eps": x, "signs": [...]}, ...],
///  "random": {"count": n, "max_n": k, "eps": x, "seed": s}}; both optional.
inline std::vector<ApproxSample> samples_from_json(const Json& j, std::uint64_t default_seed) {
    std::vector<ApproxSample> out;
    auto rat = [](const Json& v) { return v.is_string() ? parse_rational(v.get<std::string>()) : parse_rational(v.dump()); };
    try {
        if (j.contains("samples")) {
            for (const auto& s : j.at("samples")) {
                ApproxSample a;
                for (const auto& t : s.at("targets")) a.targets.push_back(rat(t));
                a.eps = rat(s.at("eps"));
                if (s.contains("signs")) {
                    for (const auto& c : s.at("signs")) a.signs.push_back(c.get<int>());
                } else {
                    a.signs.assign(a.targets.size(), 1);
                }
                out.push_back(std::move(a));
            }
        }
        if (j.contains("random")) {
            const auto& r = j.at("random");
            auto more = random_samples(r.at("count").get<std::size_t>(), r.value("max_n", std::size_t{4}),
                                       r.contains("eps") ? rat(r.at("eps")) : Rational(1, 10),
                                       r.value("seed", default_seed));
            out.insert(out.end(), more.begin(), more.end());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad sample spec: ") + e.what());
    }
    return out;
}

inline ParryCloudSpec parry_spec_from_json(const Json& j) {
    ParryCloudSpec s;
    try {
        s.max_depth = j.value("max_depth", s.max_depth);
        s.max_count = j.value("max_count", s.max_count);
        s.max_digit = j.value("max_digit", s.max_digit);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad parry spec: ") + e.what());
    }
    return s;
}

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot read " + path.string());
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace gbeta
