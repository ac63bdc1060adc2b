#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gbeta/algebraic.hpp"
#include "gbeta/bigfloat.hpp"
#include "gbeta/errors.hpp"

namespace gbeta {

/// Eventually periodic 0-1 sequence: E(i) = preperiod[i] for i < |preperiod|,
/// then the period word repeats.
class SignPattern {
public:
    SignPattern(std::vector<int> preperiod, std::vector<int> period)
        : pre_(std::move(preperiod)), per_(std::move(period)) {
        if (per_.empty()) {
            throw DomainError("sign pattern period must be nonempty");
        }
        for (int v : pre_) check_bit(v);
        for (int v : per_) check_bit(v);
    }

    static SignPattern e0() { return {{}, {0}}; }
    static SignPattern e1() { return {{}, {1}}; }
    static SignPattern alt() { return {{}, {0, 1}}; }

    /// "e0", "e1", "alt" or "custom:PRE/PER" with PRE, PER words over {0,1}
    /// (PRE may be empty).
    static SignPattern parse(std::string_view text) {
        if (text == "e0") return e0();
        if (text == "e1") return e1();
        if (text == "alt") return alt();
        constexpr std::string_view prefix = "custom:";
        if (text.substr(0, prefix.size()) != prefix) {
            throw ParseError("unknown pattern '" + std::string(text) + "'");
        }
        const std::string_view body = text.substr(prefix.size());
        const auto slash = body.find('/');
        if (slash == std::string_view::npos) {
            throw ParseError("custom pattern needs PRE/PER: '" + std::string(text) + "'");
        }
        auto bits = [&](std::string_view w) {
            std::vector<int> out;
            for (char ch : w) {
                if (ch != '0' && ch != '1') throw ParseError("pattern words are over {0,1}: '" + std::string(text) + "'");
                out.push_back(ch - '0');
            }
            return out;
        };
        auto per = bits(body.substr(slash + 1));
        if (per.empty()) throw ParseError("custom pattern period must be nonempty");
        return {bits(body.substr(0, slash)), std::move(per)};
    }

    int operator()(std::size_t i) const {
        if (i < pre_.size()) return pre_[i];
        return per_[(i - pre_.size()) % per_.size()];
    }

    const std::vector<int>& preperiod() const { return pre_; }
    const std::vector<int>& period() const { return per_; }

    /// Canonical text form; round-trips through parse().
    std::string tag() const {
        if (pre_.empty() && per_ == std::vector<int>{0}) return "e0";
        if (pre_.empty() && per_ == std::vector<int>{1}) return "e1";
        if (pre_.empty() && per_ == std::vector<int>{0, 1}) return "alt";
        std::string s = "custom:";
        for (int v : pre_) s.push_back(static_cast<char>('0' + v));
        s.push_back('/');
        for (int v : per_) s.push_back(static_cast<char>('0' + v));
        return s;
    }

    bool agrees_on_prefix(const SignPattern& other, std::size_t n) const {
        for (std::size_t i = 0; i < n; ++i) {
            if ((*this)(i) != other(i)) return false;
        }
        return true;
    }

private:
    static void check_bit(int v) {
        if (v != 0 && v != 1) throw DomainError("sign pattern entries must be 0 or 1");
    }

    std::vector<int> pre_;
    std::vector<int> per_;
};

struct OrbitStep {
    BetaElement point;  // tau^n(1)
    std::int64_t digit = 0;   // d_n
    int sign = 1;       // e_n
    int cum_sign = 1;   // s_n = e_0 ... e_{n-1}
};

/// The orbit hit the endpoint set at step n: beta * tau^n(1) = k0.
struct Simple {
    std::size_t n = 0;
    std::int64_t k0 = 0;
};

struct EventuallyPeriodic {
    std::size_t preperiod = 0;
    std::size_t period = 0;
};

struct Unresolved {
    std::size_t max_steps = 0;
};

using Verdict = std::variant<Simple, EventuallyPeriodic, Unresolved>;

inline bool is_finite(const Verdict& v) { return !std::holds_alternative<Unresolved>(v); }

struct OrbitRecord {
    AlgebraicReal beta;
    SignPattern pattern;
    std::vector<OrbitStep> steps;
    Verdict verdict;
};

struct TauStep {
    BetaElement next;
    std::int64_t digit = 0;
    int sign = 1;
};

namespace detail {

inline std::int64_t to_i64(const Integer& v) {
    if (v > Integer(INT64_MAX) || v < Integer(INT64_MIN)) {
        throw DomainError("digit out of 64-bit range");
    }
    return v.convert_to<std::int64_t>();
}

inline void require_non_integer(const AlgebraicReal& beta) {
    if (beta.is_integer()) {
        throw NonIntegerRequired("beta must be a non-integer (got an integer root of " + beta.poly().to_string() + ")");
    }
    if (beta.compare(Rational(1)) <= 0) {
        throw DomainError("beta must exceed 1");
    }
}

inline void require_unit_interval(const BetaElement& x) {
    const auto& f = *x.field();
    if (f.sign(x) < 0 || f.sign(x - Rational(1)) > 0) {
        throw DomainError("point outside [0, 1]");
    }
}

// One step given the already computed floor of beta*x.
inline TauStep apply_branch(const SignPattern& pattern, const BetaElement& y, const Integer& i) {
    const int e = pattern(static_cast<std::size_t>(i.convert_to<long long>()));
    const BetaElement t = y - Rational(i);
    TauStep s;
    s.next = e == 0 ? t : Rational(1) - t;
    s.digit = to_i64(i) + e;
    s.sign = e == 0 ? 1 : -1;
    return s;
}

}  // namespace detail

/// One application of tau_{beta,E}: x -> E(i) + (-1)^E(i) (beta x - i), i = [beta x].
inline TauStep tau_step(const SignPattern& pattern, const BetaElement& x) {
    const auto& field = *x.field();
    detail::require_non_integer(field.beta());
    detail::require_unit_interval(x);
    const BetaElement y = field.mul_beta(x);
    return detail::apply_branch(pattern, y, field.floor(y).floor);
}

/// Exact orbit of 1. With stop_at_endpoint the first visit to
/// EP = {1/beta, ..., [beta]/beta} (n >= 1) ends the orbit as Simple;
/// otherwise only exact recurrence ends it.
inline OrbitRecord orbit_of_one(const AlgebraicReal& beta, const SignPattern& pattern, std::size_t max_steps,
                                bool stop_at_endpoint = true) {
    if (max_steps < 1) {
        throw DomainError("max_steps must be >= 1");
    }
    detail::require_non_integer(beta);
    const auto field = BetaField::make(beta);
    const Integer int_part = beta.floor();

    OrbitRecord rec{beta, pattern, {}, Unresolved{max_steps}};
    // Points keyed by a double approximation; equal values land within
    // kKeyRadius of each other and are confirmed exactly.
    constexpr double kKeyRadius = 1e-12;
    const Rational key_width(1, Integer(1) << 60);
    std::multimap<double, std::size_t> seen;

    BetaElement x = field->one();
    int cum = 1;
    for (std::size_t n = 0;; ++n) {
        const BetaElement y = field->mul_beta(x);
        const FloorResult fl = field->floor(y);

        const Interval iv = field->enclose(x, key_width);
        const double key = static_cast<double>((iv.lo + iv.hi) / 2);

        std::optional<std::size_t> repeat;
        if (n >= 1) {
            for (auto it = seen.lower_bound(key - kKeyRadius); it != seen.end() && it->first <= key + kKeyRadius; ++it) {
                if (be_cmp(rec.steps[it->second].point, x) == std::strong_ordering::equal) {
                    if (!repeat || it->second < *repeat) repeat = it->second;
                }
            }
        }

        TauStep st = detail::apply_branch(pattern, y, fl.floor);
        rec.steps.push_back({x, st.digit, st.sign, cum});

        if (stop_at_endpoint && n >= 1 && fl.exact && fl.floor >= 1 && fl.floor <= int_part) {
            rec.verdict = Simple{n, detail::to_i64(fl.floor)};
            return rec;
        }
        if (repeat) {
            rec.verdict = EventuallyPeriodic{*repeat, n - *repeat};
            return rec;
        }
        if (n == max_steps) {
            return rec;
        }
        seen.emplace(key, n);
        x = std::move(st.next);
        cum *= st.sign;
    }
}

inline Verdict classify(const AlgebraicReal& beta, const SignPattern& pattern, std::size_t max_steps) {
    return orbit_of_one(beta, pattern, max_steps).verdict;
}

/// True when the beta-transformation orbit of 1 is proven finite within
/// max_steps. False means unresolved, not disproven.
inline bool is_parry(const AlgebraicReal& beta, std::size_t max_steps = 10000) {
    return is_finite(classify(beta, SignPattern::e0(), max_steps));
}

/// Same for the negative beta-transformation x -> 1 - {beta x}.
inline bool is_yrrap(const AlgebraicReal& beta, std::size_t max_steps = 10000) {
    return is_finite(classify(beta, SignPattern::e1(), max_steps));
}

struct Expansion {
    std::vector<Integer> coeffs;  // s_i * d_i, i < n
    BetaElement tail;             // tau^n(x)
    int tail_sign = 1;            // s_n
};

/// First n expansion coefficients of x and the remainder point, so that
/// x = sum coeffs[i] / beta^(i+1) + s_n tau^n(x) / beta^n.
inline Expansion expand_point(const SignPattern& pattern, const BetaElement& x, std::size_t n) {
    detail::require_unit_interval(x);
    Expansion e;
    BetaElement cur = x;
    int s = 1;
    for (std::size_t i = 0; i < n; ++i) {
        TauStep st = tau_step(pattern, cur);
        e.coeffs.emplace_back(Integer(st.digit) * s);
        s *= st.sign;
        cur = std::move(st.next);
    }
    e.tail = std::move(cur);
    e.tail_sign = s;
    return e;
}

/// The partial-sum identity multiplied through by beta^n, checked exactly:
/// beta^n x = sum coeffs[i] beta^(n-1-i) + s_n tau^n(x).
inline bool expansion_identity_holds(const BetaElement& x, const Expansion& e) {
    const auto& f = *x.field();
    BetaElement lhs = x;
    for (std::size_t i = 0; i < e.coeffs.size(); ++i) lhs = f.mul_beta(lhs);
    BetaElement rhs = f.zero();
    for (const auto& c : e.coeffs) {
        rhs = f.mul_beta(rhs) + Rational(c);
    }
    rhs = rhs + Rational(e.tail_sign) * e.tail;
    return f.is_zero_value(lhs - rhs);
}

struct ApproxOrbit {
    bool near_recurrence = false;  // consistent with a finite orbit; never a proof
    std::size_t preperiod = 0;
    std::size_t period = 0;
    std::size_t steps = 0;
};

/// Floating orbit of 1 at `bits` precision. Reports the first near-recurrence
/// within 2^(-bits/2); a cross-check only.
inline ApproxOrbit approximate_orbit(const BigFloat& beta, const SignPattern& pattern, std::size_t max_steps,
                                     unsigned bits) {
    ApproxOrbit out;
    const BigFloat b(Rational(0), bits);
    const BigFloat beta_b = beta + b;
    BigFloat x(1.0, bits);
    BigFloat tol(std::ldexp(1.0, -static_cast<int>(bits / 2)), bits);
    std::vector<BigFloat> pts;
    std::multimap<double, std::size_t> seen;
    for (std::size_t n = 0; n <= max_steps; ++n) {
        const double key = x.to_double();
        for (auto it = seen.lower_bound(key - 1e-12); it != seen.end() && it->first <= key + 1e-12; ++it) {
            if (abs(pts[it->second] - x) <= tol) {
                out.near_recurrence = true;
                out.preperiod = it->second;
                out.period = n - it->second;
                out.steps = n;
                return out;
            }
        }
        seen.emplace(key, n);
        pts.push_back(x);
        const BigFloat y = beta_b * x;
        BigFloat fl = floor(y);
        long i = fl.to_long();
        const int e = pattern(static_cast<std::size_t>(i));
        const BigFloat t = y - i;
        x = e == 0 ? t : 1L - t;
        out.steps = n + 1;
    }
    return out;
}

}  // namespace gbeta
