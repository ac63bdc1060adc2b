#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gbeta/algebraic.hpp"
#include "gbeta/betamap.hpp"
#include "gbeta/errors.hpp"
#include "gbeta/poly.hpp"
#include "gbeta/spectra.hpp"

namespace gbeta {

/// Digit data M(0..N) with 1 = sum_j M(j) / x^(j+1).
struct DigitVector {
    std::vector<Integer> m;

    std::size_t n() const { return m.size() - 1; }

    /// Empty string when every hypothesis holds, else the first failure.
    std::string violation() const {
        if (m.size() < 2) return "need at least two digits M(0), M(1)";
        for (const auto& v : m) {
            if (v == 0) return "digits must be nonzero";
        }
        if (m[0] < 2) return "M(0) must be >= 2";
        std::set<Integer> seen(m.begin(), m.end());
        if (seen.size() != m.size()) return "digits must be distinct";
        for (std::size_t j = 1; j < m.size(); ++j) {
            if (abs(m[j]) + 1 >= m[0]) return "need |M(j)| + 1 < M(0) for j >= 1";
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m.size(); ++j) {
                if (i != j && abs(m[i]) == abs(m[j]) - 1) return "need |M(i)| != |M(j)| - 1";
            }
        }
        return {};
    }
};

struct Lemma1Result {
    AlgebraicReal beta;
    IntPoly poly;  // x^(N+1) - sum M(j) x^(N-j)
    OrbitRecord record;
};

namespace detail {

inline int sgn(const Integer& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

/// The largest real root of p, which must exceed 1.
inline AlgebraicReal root_above_one(const IntPoly& p) {
    auto roots = isolate_real_roots(p, Rational(1), cauchy_bound(p) + 1);
    if (roots.empty() || roots.back().compare(Rational(1)) <= 0) {
        throw ConstructionFailed("no root above 1 for " + p.to_string());
    }
    return roots.back();
}

// E(i) for 0 <= i <= [beta] forced by the step signs e_j = sign(M(j)) sign(M(j+1));
// zero elsewhere.
inline SignPattern implied_pattern(const DigitVector& d, const Integer& int_part) {
    const std::size_t len = static_cast<std::size_t>(int_part.convert_to<long long>()) + 1;
    std::vector<int> pre(len, 0);
    for (std::size_t j = 0; j + 1 < d.m.size(); ++j) {
        if (sgn(d.m[j]) * sgn(d.m[j + 1]) < 0) {
            const auto idx = static_cast<std::size_t>(Integer(abs(d.m[j]) - 1).convert_to<long long>());
            if (idx < len) pre[idx] = 1;
        }
    }
    return {std::move(pre), {0}};
}

/// Replay check: Simple at N, digits |M(j)|, cumulative signs sign(M(j)).
inline std::string replay_mismatch(const DigitVector& d, const OrbitRecord& rec) {
    const auto* s = std::get_if<Simple>(&rec.verdict);
    const std::size_t N = d.n();
    if (!s) return "orbit is not simple";
    if (s->n != N) return "orbit hit the endpoint set at step " + std::to_string(s->n) + ", expected " + std::to_string(N);
    if (Integer(s->k0) != abs(d.m[N])) return "endpoint multiplier differs from |M(N)|";
    for (std::size_t j = 0; j <= N; ++j) {
        if (rec.steps[j].cum_sign != sgn(d.m[j])) return "cumulative sign mismatch at step " + std::to_string(j);
        if (j < N && Integer(rec.steps[j].digit) != abs(d.m[j])) return "digit mismatch at step " + std::to_string(j);
    }
    return {};
}

}  // namespace detail

inline Lemma1Result lemma1_beta(const DigitVector& d) {
    if (auto why = d.violation(); !why.empty()) throw HypothesisViolated(why);
    const std::size_t N = d.n();
    std::vector<Integer> c(N + 2, Integer(0));
    c[N + 1] = 1;
    for (std::size_t j = 0; j <= N; ++j) c[N - j] = -d.m[j];
    IntPoly p(std::move(c));
    AlgebraicReal beta = detail::root_above_one(p);
    if (beta.is_integer()) throw ConstructionFailed("solution is an integer");
    const SignPattern pattern = detail::implied_pattern(d, beta.floor());
    OrbitRecord rec = orbit_of_one(beta, pattern, N + 2);
    if (auto why = detail::replay_mismatch(d, rec); !why.empty()) throw ConstructionFailed("lemma 1 replay: " + why);
    return {std::move(beta), std::move(p), std::move(rec)};
}

// ---- approximation constructors --------------------------------------------

struct ApproxResult {
    AlgebraicReal beta;
    OrbitRecord record;  // under E_1 (Theorem A) or E_alt (Theorem B)
    CharPoly poly;
    bool cert = false;   // Eisenstein at 2
    Integer m;           // the scale that succeeded
    std::vector<Integer> digits;  // signed digit vector fed to lemma1_beta
};

namespace detail {

inline Rational min_gap(std::vector<Rational> pts) {
    pts.push_back(0);
    pts.push_back(1);
    std::sort(pts.begin(), pts.end());
    Rational g = 1;
    for (std::size_t i = 1; i < pts.size(); ++i) g = std::min(g, Rational(pts[i] - pts[i - 1]));
    return g;
}

inline void check_targets(const std::vector<Rational>& a, const Rational& eps) {
    if (a.empty()) throw DomainError("need at least one target");
    if (eps <= 0) throw DomainError("eps must be positive");
    for (const auto& v : a) {
        if (v <= 0 || v >= 1) throw DomainError("targets must lie in (0, 1)");
    }
    if (std::set<Rational>(a.begin(), a.end()).size() != a.size()) {
        throw DomainError("targets must be pairwise distinct");
    }
}

inline Integer even_near(const Rational& v) {
    Integer k = floor_of(v);
    if (k % 2 != 0) k += 1;
    return k;
}

// Closest integer to v that is 2 mod 4.
inline Integer two_mod_four_near(const Rational& v) {
    const Integer base = floor_of(v);
    Integer best = 0;
    Rational bd = -1;
    for (int off = -3; off <= 4; ++off) {
        const Integer k = base + off;
        Integer r = k % 4;
        if (r < 0) r += 4;
        if (r != 2) continue;
        const Rational dist = abs(Rational(k) - v);
        if (bd < 0 || dist < bd) {
            bd = dist;
            best = k;
        }
    }
    return best;
}

inline Integer odd_above(const Rational& v) {
    Integer k = floor_of(v) + 1;
    if (k % 2 == 0) k += 1;
    return k;
}

inline Integer even_above(const Rational& v) {
    Integer k = floor_of(v) + 1;
    if (k % 2 != 0) k += 1;
    return k;
}

// |tau^n(1) - a_n| < eps for n = 1..N.
inline bool orbit_tracks(const OrbitRecord& rec, const std::vector<Rational>& a, const Rational& eps) {
    if (rec.steps.size() < a.size() + 1) return false;
    const Rational w = std::min(Rational(eps / 1000), Rational(1, Integer(1) << 100));
    for (std::size_t k = 0; k < a.size(); ++k) {
        const Interval iv = be_enclose(rec.steps[k + 1].point, w);
        if (iv.lo <= a[k] - eps || iv.hi >= a[k] + eps) return false;
    }
    return true;
}

inline bool simple_at(const OrbitRecord& rec, std::size_t n) {
    const auto* s = std::get_if<Simple>(&rec.verdict);
    return s && s->n == n;
}

}  // namespace detail

/// Simple Yrrap beta whose E_1 orbit of 1 passes within eps of the targets.
inline ApproxResult thmA_yrrap_approx(const std::vector<Rational>& targets, const Rational& eps, int max_retries = 8) {
    detail::check_targets(targets, eps);
    const std::size_t N = targets.size();
    const Rational delta = detail::min_gap(targets);
    Integer M = detail::odd_above(std::max(Rational(7 / delta), Rational(7 / eps)));
    std::string last;
    for (int attempt = 0; attempt <= max_retries; ++attempt, M = 2 * M + 1) {
        std::vector<Integer> dv{M + 1};
        for (std::size_t n = 1; n <= N; ++n) {
            const Rational t = Rational(M) * targets[n - 1];
            Integer D = n < N ? detail::even_near(t) : detail::two_mod_four_near(t);
            dv.push_back(n % 2 == 1 ? Integer(-D) : D);
        }
        try {
            Lemma1Result l = lemma1_beta(DigitVector{dv});
            OrbitRecord rec = orbit_of_one(l.beta, SignPattern::e1(), N + 2);
            if (!detail::simple_at(rec, N)) {
                last = "E_1 orbit is not simple at step N";
                continue;
            }
            bool digits_ok = true;
            for (std::size_t n = 0; n < N; ++n) digits_ok = digits_ok && Integer(rec.steps[n].digit) == abs(dv[n]);
            if (!digits_ok) {
                last = "E_1 digits differ from the constructed digits";
                continue;
            }
            if (!detail::orbit_tracks(rec, targets, eps)) {
                last = "orbit misses a target by eps";
                continue;
            }
            if (l.beta.floor() % 2 == 0) {
                last = "integer part of beta is even";
                continue;
            }
            CharPoly cp = char_poly(rec);
            const bool cert = eisenstein_certificate(cp.poly, 2);
            if (!cert) {
                last = "no Eisenstein certificate at 2";
                continue;
            }
            cp.flag = MinimalityFlag::EisensteinCertified;
            return {std::move(l.beta), std::move(rec), std::move(cp), cert, M, dv};
        } catch (const HypothesisViolated& e) {
            last = e.what();
        } catch (const ConstructionFailed& e) {
            last = e.what();
        }
    }
    throw ConstructionFailed("theorem A recipe failed after retries: " + last);
}

/// beta whose E_alt orbit of 1 has cumulative signs `signs` and passes within
/// eps of the targets.
inline ApproxResult thmB_alt_approx(const std::vector<Rational>& targets, const std::vector<int>& signs,
                                    const Rational& eps, int max_retries = 8) {
    if (signs.size() != targets.size()) throw LengthMismatch("signs and targets differ in length");
    for (int c : signs) {
        if (c != 1 && c != -1) throw DomainError("signs must be +1 or -1");
    }
    detail::check_targets(targets, eps);
    const std::size_t N = targets.size();
    const Rational delta = detail::min_gap(targets);
    Integer M = detail::even_above(std::max(Rational(7 / delta), Rational(7 / eps)));
    std::string last;
    for (int attempt = 0; attempt <= max_retries; ++attempt, M = 2 * M) {
        std::vector<Integer> dv{M};
        for (std::size_t n = 1; n <= N; ++n) {
            const Rational t = Rational(M) * targets[n - 1];
            const Integer D = n < N ? detail::even_near(t) : detail::two_mod_four_near(t);
            dv.push_back(signs[n - 1] * D);
        }
        try {
            Lemma1Result l = lemma1_beta(DigitVector{dv});
            // The constructed pattern agrees with E_alt wherever the orbit
            // goes, so recomputing under E_alt must reproduce the orbit.
            OrbitRecord rec = orbit_of_one(l.beta, SignPattern::alt(), N + 2);
            if (!detail::simple_at(rec, N)) {
                last = "E_alt orbit is not simple at step N";
                continue;
            }
            bool ok = true;
            for (std::size_t n = 1; n <= N; ++n) ok = ok && rec.steps[n].cum_sign == signs[n - 1];
            for (std::size_t n = 0; n < N; ++n) ok = ok && Integer(rec.steps[n].digit) == abs(dv[n]);
            if (!ok) {
                last = "E_alt orbit differs from the constructed orbit";
                continue;
            }
            if (!detail::orbit_tracks(rec, targets, eps)) {
                last = "orbit misses a target by eps";
                continue;
            }
            CharPoly cp = char_poly(rec);
            const bool cert = eisenstein_certificate(cp.poly, 2);
            if (cert) cp.flag = MinimalityFlag::EisensteinCertified;
            return {std::move(l.beta), std::move(rec), std::move(cp), cert, M, dv};
        } catch (const HypothesisViolated& e) {
            last = e.what();
        } catch (const ConstructionFailed& e) {
            last = e.what();
        }
    }
    throw ConstructionFailed("theorem B recipe failed after retries: " + last);
}

// ---- Parry sequences and the non-Yrrap certificate -------------------------

/// Eventually zero digit sequence; trailing zeros are implicit.
struct ParrySequence {
    std::vector<Integer> b;

    ParrySequence() = default;
    explicit ParrySequence(std::vector<Integer> v) : b(std::move(v)) {
        while (!b.empty() && b.back() == 0) b.pop_back();
    }
    Integer operator[](std::size_t i) const { return i < b.size() ? b[i] : Integer(0); }
    std::size_t length() const { return b.size(); }
};

/// Every shift is lexicographically <= the sequence itself.
inline bool parry_admissible(const ParrySequence& s) {
    if (s.length() == 0 || s[0] < 1) return false;
    for (const auto& v : s.b) {
        if (v < 0) return false;
    }
    for (std::size_t k = 1; k < s.length(); ++k) {
        for (std::size_t i = 0; i < s.length(); ++i) {
            const Integer a = s[i + k];
            const Integer b = s[i];
            if (a < b) break;
            if (a > b) return false;
        }
    }
    return true;
}

/// Expansion coefficients of 1 under E_0: digits, then k0 for a simple orbit;
/// the periodic digit stream otherwise. `count` entries, zero padded.
inline std::vector<Integer> parry_prefix(const OrbitRecord& rec, std::size_t count) {
    if (rec.pattern.tag() != "e0") throw DomainError("parry_prefix needs an E_0 orbit");
    std::vector<Integer> out;
    if (const auto* s = std::get_if<Simple>(&rec.verdict)) {
        for (std::size_t n = 0; n < s->n; ++n) out.emplace_back(rec.steps[n].digit);
        out.emplace_back(s->k0);
    } else if (const auto* p = std::get_if<EventuallyPeriodic>(&rec.verdict)) {
        for (std::size_t n = 0; out.size() < count; ++n) {
            const std::size_t i = n < p->preperiod ? n : p->preperiod + (n - p->preperiod) % p->period;
            out.emplace_back(rec.steps[i].digit);
        }
    } else {
        throw UnresolvedOrbit("seed orbit is unresolved");
    }
    out.resize(count, Integer(0));
    return out;
}

inline ParrySequence thmC_sequence(const std::vector<Integer>& a_prefix, std::size_t N, std::size_t M) {
    if (N < 1) throw DomainError("N must be >= 1");
    if (a_prefix.size() != 2 * N) {
        throw LengthMismatch("prefix has length " + std::to_string(a_prefix.size()) + ", expected 2N = " +
                             std::to_string(2 * N));
    }
    if (M < 1) throw DomainError("M must be >= 1");
    std::vector<Integer> b(a_prefix);
    for (std::size_t k = 0; k < M; ++k) {
        std::vector<Integer> block(2 * N + 2, Integer(0));
        block[1] = 1;
        b.insert(b.end(), block.begin(), block.end());
    }
    return ParrySequence(std::move(b));
}

/// f(x) = 1 - sum b_n x^(n+1).
inline IntPoly parry_f(const ParrySequence& s) {
    std::vector<Integer> c(s.length() + 1, Integer(0));
    c[0] = 1;
    for (std::size_t n = 0; n < s.length(); ++n) c[n + 1] = -s[n];
    return IntPoly(std::move(c));
}

struct NonYrrapCertificate {
    ParrySequence b;
    AlgebraicReal beta;
    IntPoly f;
    Integer f_at_minus_one;
    AlgebraicReal neg_root;
    Verdict parry_verdict;
    bool round_trip = false;  // E_0 expansion of 1 reproduces b
    MinimalityFlag caveat = MinimalityFlag::BestEffort;
};

inline NonYrrapCertificate certify_non_yrrap(const ParrySequence& s, std::size_t max_steps = 10000) {
    if (!parry_admissible(s)) throw NotAdmissible("sequence fails the lexicographic shift condition");
    const IntPoly f = parry_f(s);
    const Integer fm1 = f.eval(Integer(-1));
    if (fm1 >= 0) {
        throw NoSignChange("f(-1) = " + fm1.str() + " >= 0; no sign change on (-1, 0), increase M");
    }
    // A root of f in (-1, 0) where f changes sign, nearest to 0.
    std::optional<AlgebraicReal> neg;
    auto cands = isolate_real_roots(f, Rational(-1), Rational(0));
    for (auto it = cands.rbegin(); it != cands.rend() && !neg; ++it) {
        if (it->is_exact()) continue;
        const AlgebraicReal r = it->refined(Rational(1, Integer(10000000000LL)));
        if (sign_at(f, r.lo()) * sign_at(f, r.hi()) < 0) neg = r;
    }
    if (!neg) throw ConstructionFailed("no sign-changing root of f in (-1, 0)");

    const IntPoly g = primitive(f.reversed());
    AlgebraicReal beta = detail::root_above_one(g);
    OrbitRecord rec = orbit_of_one(beta, SignPattern::e0(), max_steps);
    if (!is_finite(rec.verdict)) throw ConstructionFailed("E_0 orbit of beta unresolved");

    NonYrrapCertificate c{s, beta, f, fm1, *neg, rec.verdict, false, MinimalityFlag::BestEffort};
    if (std::holds_alternative<Simple>(rec.verdict)) {
        c.round_trip = ParrySequence(parry_prefix(rec, s.length())).b == s.b;
    }
    c.caveat = certify(g);
    return c;
}

}  // namespace gbeta
