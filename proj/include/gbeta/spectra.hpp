#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "gbeta/algebraic.hpp"
#include "gbeta/betamap.hpp"
#include "gbeta/errors.hpp"
#include "gbeta/poly.hpp"
#include "gbeta/roots.hpp"

namespace gbeta {

/// phi(z) = sum c_n z^{n+1}. Simple: c_0..c_{N-1} then k0 s_N at degree N+1.
/// Periodic: head c_0..c_{p-1}, then the period word repeats with the
/// multiplier sigma = s_{p+l}/s_p applied once per lap.
struct PhiSeries {
    enum class Kind { Simple, Periodic };
    Kind kind = Kind::Simple;
    std::vector<Integer> head;
    Integer top = 0;                // simple: k0 * s_N
    std::vector<Integer> period;    // periodic only
    int sigma = 1;                  // periodic only

    std::size_t n() const { return head.size(); }

    /// Coefficient of z^{n+1}.
    Integer coeff(std::size_t n) const {
        if (kind == Kind::Simple) {
            if (n < head.size()) return head[n];
            return n == head.size() ? top : Integer(0);
        }
        if (n < head.size()) return head[n];
        const std::size_t k = n - head.size();
        const std::size_t lap = k / period.size();
        Integer c = period[k % period.size()];
        if (sigma < 0 && lap % 2 == 1) c = -c;
        return c;
    }
};

enum class MinimalityFlag { EisensteinCertified, IrreducibleModP, BestEffort, Unknown };

inline std::string to_string(MinimalityFlag f) {
    switch (f) {
        case MinimalityFlag::EisensteinCertified: return "EisensteinCertified";
        case MinimalityFlag::IrreducibleModP: return "IrreducibleModP";
        case MinimalityFlag::BestEffort: return "BestEffort";
        case MinimalityFlag::Unknown: return "Unknown";
    }
    return "Unknown";
}

struct CharPoly {
    enum class Provenance { Simple, PeriodicNumerator };
    IntPoly poly;
    Provenance provenance = Provenance::Simple;
    MinimalityFlag flag = MinimalityFlag::Unknown;
};

inline PhiSeries phi_from_orbit(const OrbitRecord& rec) {
    PhiSeries s;
    const auto& st = rec.steps;
    auto cd = [&](std::size_t n) { return Integer(st[n].cum_sign) * Integer(st[n].digit); };
    if (const auto* v = std::get_if<Simple>(&rec.verdict)) {
        s.kind = PhiSeries::Kind::Simple;
        for (std::size_t n = 0; n < v->n; ++n) s.head.push_back(cd(n));
        s.top = Integer(v->k0) * st[v->n].cum_sign;
        return s;
    }
    if (const auto* v = std::get_if<EventuallyPeriodic>(&rec.verdict)) {
        s.kind = PhiSeries::Kind::Periodic;
        for (std::size_t n = 0; n < v->preperiod; ++n) s.head.push_back(cd(n));
        for (std::size_t n = v->preperiod; n < v->preperiod + v->period; ++n) s.period.push_back(cd(n));
        s.sigma = st[v->preperiod + v->period].cum_sign * st[v->preperiod].cum_sign;
        return s;
    }
    throw UnresolvedOrbit("orbit of 1 is unresolved; no generating function available");
}

/// Integer polynomial in x = 1/z with root beta.
inline CharPoly char_poly(const PhiSeries& s) {
    CharPoly out;
    std::vector<Integer> p;  // P(z), ascending
    if (s.kind == PhiSeries::Kind::Simple) {
        out.provenance = CharPoly::Provenance::Simple;
        p.assign(s.head.size() + 2, Integer(0));
        p[0] = 1;
        for (std::size_t n = 0; n < s.head.size(); ++n) p[n + 1] -= s.head[n];
        p[s.head.size() + 1] -= s.top;
    } else {
        // (1 - sum_{n<p} c_n z^{n+1})(1 - sigma z^l) - sum_{n=p}^{p+l-1} c_n z^{n+1}
        out.provenance = CharPoly::Provenance::PeriodicNumerator;
        const std::size_t pre = s.head.size();
        const std::size_t l = s.period.size();
        p.assign(pre + l + 1, Integer(0));
        std::vector<Integer> a(pre + 1, Integer(0));
        a[0] = 1;
        for (std::size_t n = 0; n < pre; ++n) a[n + 1] = -s.head[n];
        for (std::size_t i = 0; i <= pre; ++i) {
            p[i] += a[i];
            p[i + l] -= Integer(s.sigma) * a[i];
        }
        for (std::size_t k = 0; k < l; ++k) p[pre + k + 1] -= s.period[k];
    }
    IntPoly P(std::move(p));
    out.poly = primitive(P.reversed());
    return out;
}

/// poly(beta) == 0, decided in Q(beta).
inline bool vanishes_at(const IntPoly& p, const AlgebraicReal& beta) {
    const auto field = BetaField::make(beta);
    BetaElement acc = field->zero();
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = field->mul_beta(acc) + Rational(p.coeffs()[i]);
    }
    return field->is_zero_value(acc);
}

/// Char poly of a finite orbit, checked to vanish at beta.
inline CharPoly char_poly(const OrbitRecord& rec) {
    CharPoly cp = char_poly(phi_from_orbit(rec));
    if (!vanishes_at(cp.poly, rec.beta)) {
        throw ConstructionFailed("characteristic polynomial " + cp.poly.to_string() + " does not vanish at beta");
    }
    return cp;
}

/// Compares coefficients z^0..z^N of
///   1 - sum_{n<=N} s_n d_n z^{n+1}   and   (1 - beta z) sum_{n<=N} s_n tau^n(1) z^n.
inline bool lemma2_check(const AlgebraicReal& beta, const SignPattern& pattern, std::size_t N) {
    detail::require_non_integer(beta);
    const auto field = BetaField::make(beta);
    std::vector<BetaElement> pts;
    std::vector<Integer> sd;
    std::vector<int> cum;
    BetaElement x = field->one();
    int s = 1;
    for (std::size_t n = 0; n <= N; ++n) {
        pts.push_back(x);
        cum.push_back(s);
        const TauStep t = tau_step(pattern, x);
        sd.push_back(Integer(s) * t.digit);
        s *= t.sign;
        x = t.next;
    }
    for (std::size_t k = 0; k <= N; ++k) {
        BetaElement lhs = field->constant(k == 0 ? Rational(1) : Rational(-sd[k - 1]));
        BetaElement rhs = Rational(cum[k]) * pts[k];
        if (k > 0) rhs = rhs - field->mul_beta(Rational(cum[k - 1]) * pts[k - 1]);
        if (!field->is_zero_value(lhs - rhs)) return false;
    }
    return true;
}

// ---- certificates ----------------------------------------------------------

inline bool eisenstein_certificate(const IntPoly& p, const Integer& prime) {
    if (prime < 2 || p.degree() < 1) return false;
    if (p.leading() % prime == 0) return false;
    for (int i = 0; i < p.degree(); ++i) {
        if (p[i] % prime != 0) return false;
    }
    return p[0] % (prime * prime) != 0;
}

/// Smallest prime at which p is Eisenstein, or 0.
inline Integer eisenstein_prime(const IntPoly& p) {
    if (p.degree() < 1) return 0;
    Integer g = 0;
    for (int i = 0; i < p.degree(); ++i) g = gcd(g, Integer(abs(p[i])));
    if (g <= 1) return 0;
    Integer q = 2;
    for (; q * q <= g && q < 1000000; ++q) {
        if (g % q != 0) continue;
        if (eisenstein_certificate(p, q)) return q;
        while (g % q == 0) g /= q;
    }
    // What is left is prime only if trial division ran to completion.
    if (g > 1 && q * q > g && eisenstein_certificate(p, g)) return g;
    return 0;
}

namespace detail {

using Fp = std::vector<std::uint64_t>;  // ascending, trimmed

inline void fp_trim(Fp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

inline Fp fp_mod(Fp a, const Fp& m, std::uint64_t p) {
    const std::uint64_t inv = fp_inv(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t f = a.back() * inv % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            a[shift + i] = (a[shift + i] + p - f * m[i] % p) % p;
        }
        fp_trim(a);
    }
    return a;
}

inline Fp fp_mulmod(const Fp& a, const Fp& b, const Fp& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Fp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(r);
    return fp_mod(std::move(r), m, p);
}

inline Fp fp_powmod(Fp base, std::uint64_t e, const Fp& m, std::uint64_t p) {
    Fp r{1};
    base = fp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline Fp fp_gcd(Fp a, Fp b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        Fp r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Fp fp_sub_x(Fp a, std::uint64_t p) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    fp_trim(a);
    return a;
}

}  // namespace detail

/// Rabin's test: p stays of full degree mod `prime` and is irreducible there.
/// Irreducibility mod a prime not dividing the leading coefficient implies
/// irreducibility of the primitive integer polynomial.
inline bool irreducible_mod_p(const IntPoly& f, std::uint64_t prime) {
    const int n = f.degree();
    if (n < 1) return false;
    if (content(f) != 1) return false;
    detail::Fp m;
    for (const auto& c : f.coeffs()) {
        Integer r = c % Integer(prime);
        if (r < 0) r += prime;
        m.push_back(r.convert_to<std::uint64_t>());
    }
    detail::fp_trim(m);
    if (static_cast<int>(m.size()) - 1 != n) return false;
    if (n == 1) return true;
    // x^(p^k) mod m for k = 1..n
    std::vector<detail::Fp> frob(static_cast<std::size_t>(n) + 1);
    frob[0] = detail::fp_mod({0, 1}, m, prime);
    for (int k = 1; k <= n; ++k) frob[k] = detail::fp_powmod(frob[k - 1], prime, m, prime);
    if (!detail::fp_sub_x(frob[n], prime).empty()) return false;
    int rest = n;
    for (int q = 2; q <= rest; ++q) {
        if (rest % q != 0) continue;
        while (rest % q == 0) rest /= q;
        const detail::Fp g = detail::fp_gcd(m, detail::fp_sub_x(frob[n / q], prime), prime);
        if (g.size() != 1) return false;
    }
    return true;
}

inline std::uint64_t irreducibility_prime(const IntPoly& f) {
    static constexpr std::uint64_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                               43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (auto q : primes) {
        if (irreducible_mod_p(f, q)) return q;
    }
    return 0;
}

// ---- roots -----------------------------------------------------------------

struct ConjugateSet {
    IntPoly poly;
    std::vector<ComplexRoot> roots;
    int beta_root_index = -1;
    MinimalityFlag flag = MinimalityFlag::Unknown;
    std::vector<IntPoly> stripped;  // factors removed before root finding
};

class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, ConjugateSet partial) : Error(what), partial_(std::move(partial)) {}
    const ConjugateSet& partial() const { return partial_; }

private:
    ConjugateSet partial_;
};

/// All complex roots with multiplicity, sorted by (re, im).
inline ConjugateSet all_roots(const IntPoly& p, double tol) {
    if (p.degree() < 1) throw DomainError("all_roots needs a polynomial of degree >= 1");
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    ConjugateSet out;
    out.poly = p;
    const std::size_t zeros = p.lowest_nonzero();
    for (std::size_t i = 0; i < zeros; ++i) out.roots.push_back({Wide(0), Wide(0), 0.0});
    const IntPoly q = p.shift_down(zeros);
    bool ok = true;
    if (q.degree() >= 1) {
        for (const auto& [factor, mult] : squarefree_decomposition(q)) {
            if (factor.degree() < 1) continue;
            std::vector<ComplexRoot> rs;
            ok = detail::squarefree_roots(factor, rs) && ok;
            for (int r = 0; r < mult; ++r) out.roots.insert(out.roots.end(), rs.begin(), rs.end());
        }
    }
    for (auto& r : out.roots) r.residual = residual_bound(p, r.re, r.im);
    std::sort(out.roots.begin(), out.roots.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
    bool within = ok;
    for (const auto& r : out.roots) within = within && r.residual <= tol;
    if (!within || static_cast<int>(out.roots.size()) != p.degree()) {
        throw NonConvergence("root iteration did not reach residual " + std::to_string(tol) + " for " + p.to_string(),
                             out);
    }
    return out;
}

namespace detail {

// Rational roots of an integer polynomial, by the candidate test on each
// isolated real root.
inline std::vector<Rational> rational_roots(const IntPoly& f) {
    std::vector<Rational> out;
    if (f.degree() < 1) return out;
    const Integer lead = abs(f.leading());
    std::vector<Integer> dens;
    for (Integer q = 1; q * q <= lead && q <= 100000; ++q) {
        if (lead % q != 0) continue;
        dens.push_back(q);
        if (q * q != lead) dens.push_back(lead / q);
    }
    const Rational b = cauchy_bound(f);
    for (const auto& r : isolate_real_roots(f, -b, b)) {
        if (r.is_exact()) {
            out.push_back(r.lo());
            continue;
        }
        const AlgebraicReal t = r.refined(Rational(1, 4 * lead * lead + 4));
        const Rational mid = (t.lo() + t.hi()) / 2;
        for (const auto& q : dens) {
            const Rational cand(floor_of(mid * q + Rational(1, 2)), q);
            if (t.lo() <= cand && cand <= t.hi() && r.compare(cand) == 0) {
                out.push_back(cand);
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

namespace detail {

inline IntPoly monic_quotient(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> r(a.coeffs());
    const std::size_t db = b.size() - 1;
    std::vector<Integer> q(r.size() - db, Integer(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        q[k] = r[k + db];
        for (std::size_t j = 0; j <= db; ++j) r[k + j] -= q[k] * b.coeffs()[j];
    }
    return IntPoly(std::move(q));
}

constexpr int kMaxCyclotomic = 240;

// Phi_1 .. Phi_kMaxCyclotomic, built once.
inline const std::vector<IntPoly>& cyclotomics() {
    static const std::vector<IntPoly> table = [] {
        std::vector<IntPoly> t(kMaxCyclotomic + 1);
        for (int n = 1; n <= kMaxCyclotomic; ++n) {
            IntPoly f = IntPoly::monomial(static_cast<std::size_t>(n)) + IntPoly::constant(Integer(-1));
            for (int d = 1; d < n; ++d) {
                if (n % d == 0) f = monic_quotient(f, t[d]);
            }
            t[n] = f;
        }
        return t;
    }();
    return table;
}

// Cheap necessary condition for Phi_n | f: f(exp(2 pi i / n)) ~ 0.
inline bool maybe_vanishes_at_root_of_unity(const IntPoly& f, int n) {
    const double th = 2.0 * std::numbers::pi / n;
    Cx<double> z{std::cos(th), std::sin(th)}, v{0, 0};
    double scale = 0;
    for (std::size_t i = f.size(); i-- > 0;) {
        const double c = f.coeffs()[i].convert_to<double>();
        v = v * z + Cx<double>{c, 0};
        scale += std::abs(c);
    }
    return v.abs() <= 1e-6 * scale;
}

}  // namespace detail

/// Strip rational roots and cyclotomic factors (in particular every x^k +- 1).
inline IntPoly strip_trivial_factors(IntPoly f, std::vector<IntPoly>& removed) {
    for (const auto& r : detail::rational_roots(f)) {
        const IntPoly linear(std::vector<Integer>{Integer(-numerator(r)), Integer(denominator(r))});
        while (auto q = exact_divide(f, linear)) {
            f = *q;
            removed.push_back(linear);
        }
    }
    const auto& cyc = detail::cyclotomics();
    for (int n = 3; n <= detail::kMaxCyclotomic && f.degree() >= 2; ++n) {
        if (cyc[n].degree() > f.degree()) continue;
        while (f.degree() >= 2 && detail::maybe_vanishes_at_root_of_unity(f, n)) {
            auto q = exact_divide(f, cyc[n]);
            if (!q) break;
            f = *q;
            removed.push_back(cyc[n]);
        }
    }
    return primitive(f);
}

/// Index of the real root nearest `v`.
inline int nearest_real_root(const ConjugateSet& s, double v) {
    int best = -1;
    double bd = 0;
    for (std::size_t i = 0; i < s.roots.size(); ++i) {
        if (!s.roots[i].is_real()) continue;
        const double d = std::abs(s.roots[i].re_d() - v);
        if (best < 0 || d < bd) {
            best = static_cast<int>(i);
            bd = d;
        }
    }
    return best;
}

inline MinimalityFlag certify(const IntPoly& p) {
    if (eisenstein_prime(p) != 0) return MinimalityFlag::EisensteinCertified;
    if (irreducibility_prime(p) != 0) return MinimalityFlag::IrreducibleModP;
    return MinimalityFlag::BestEffort;
}

inline ConjugateSet conjugates_of(const IntPoly& poly, const AlgebraicReal& beta, double tol) {
    std::vector<IntPoly> removed;
    MinimalityFlag flag = certify(poly);
    IntPoly work = poly;
    if (flag == MinimalityFlag::BestEffort) {
        work = strip_trivial_factors(poly, removed);
        if (work.degree() >= 1 && work != poly && certify(work) != MinimalityFlag::BestEffort) {
            flag = certify(work);
        }
    }
    ConjugateSet s = all_roots(work, tol);
    s.flag = flag;
    s.stripped = std::move(removed);
    s.beta_root_index = nearest_real_root(s, beta.to_double());
    return s;
}

inline ConjugateSet conjugates(const OrbitRecord& rec, double tol) {
    return conjugates_of(char_poly(rec).poly, rec.beta, tol);
}

/// Count of distinct real roots of p in the open interval (lo, hi).
inline std::size_t count_real_roots(const IntPoly& p, const Rational& lo, const Rational& hi) {
    std::size_t n = 0;
    for (const auto& r : isolate_real_roots(p, lo, hi)) {
        if (r.compare(lo) > 0 && r.compare(hi) < 0) ++n;
    }
    return n;
}

}  // namespace gbeta
