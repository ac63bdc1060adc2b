#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "gbeta/errors.hpp"

namespace gbeta {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer floor_of(const Rational& q) {
    const Integer& n = boost::multiprecision::numerator(q);
    const Integer& d = boost::multiprecision::denominator(q);
    Integer f = n / d;  // truncates toward zero
    if (n < 0 && f * d != n) {
        f -= 1;
    }
    return f;
}

inline Integer ceil_of(const Rational& q) {
    return -floor_of(-q);
}

inline bool is_integral(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

inline int sign_of(const Integer& v) {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

inline int sign_of(const Rational& v) {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

/// Decimal integer with optional sign. GMP's own string constructor treats a
/// leading 0 as octal and 0x as hex, so the digits are checked and the
/// leading zeros dropped here.
inline Integer parse_integer(const std::string& text) {
    std::size_t i = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    const bool negative = i == 1 && text[0] == '-';
    if (i == text.size() || !std::all_of(text.begin() + static_cast<std::ptrdiff_t>(i), text.end(),
                                          [](char ch) { return ch >= '0' && ch <= '9'; })) {
        throw ParseError("malformed integer '" + text + "'");
    }
    while (i + 1 < text.size() && text[i] == '0') ++i;
    const Integer v(text.substr(i));
    return negative ? Integer(-v) : v;
}

/// Parse "p", "p/q" or a finite decimal such as "-0.125" or "1e-3" into an
/// exact rational.
inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text) {
        if (ch != ' ') {
            s.push_back(ch);
        }
    }
    if (s.empty()) {
        throw ParseError("empty rational");
    }
    try {
        if (s.find('/') != std::string::npos) {
            const auto slash = s.find('/');
            Integer num = parse_integer(s.substr(0, slash));
            Integer den = parse_integer(s.substr(slash + 1));
            if (den == 0) {
                throw ParseError("zero denominator in '" + text + "'");
            }
            return Rational(num, den);
        }
        std::string mantissa = s;
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string::npos) {
            mantissa = s.substr(0, e);
            exponent = std::stol(s.substr(e + 1));
        }
        bool negative = false;
        if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
            negative = mantissa[0] == '-';
            mantissa.erase(0, 1);
        }
        std::string digits;
        long frac_digits = 0;
        bool seen_dot = false;
        for (char ch : mantissa) {
            if (ch == '.') {
                if (seen_dot) {
                    throw ParseError("malformed number '" + text + "'");
                }
                seen_dot = true;
            } else if (ch >= '0' && ch <= '9') {
                digits.push_back(ch);
                if (seen_dot) {
                    ++frac_digits;
                }
            } else {
                throw ParseError("malformed number '" + text + "'");
            }
        }
        if (digits.empty()) {
            throw ParseError("malformed number '" + text + "'");
        }
        Integer num = parse_integer(digits);
        if (negative) {
            num = -num;
        }
        const long shift = exponent - frac_digits;
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
        return shift >= 0 ? Rational(num * scale) : Rational(num, scale);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed number '" + text + "'");
    }
}

/// Dense univariate polynomial with coefficients in ascending degree order.
/// The zero polynomial has no coefficients and degree -1.
template <typename Coeff>
class Poly {
public:
    Poly() = default;

    explicit Poly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

    Poly(std::initializer_list<long long> coeffs) {
        c_.reserve(coeffs.size());
        for (long long v : coeffs) {
            c_.emplace_back(v);
        }
        trim();
    }

    static Poly constant(const Coeff& v) { return Poly(std::vector<Coeff>{v}); }

    static Poly monomial(std::size_t degree, const Coeff& v = Coeff(1)) {
        std::vector<Coeff> c(degree + 1, Coeff(0));
        c[degree] = v;
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    const std::vector<Coeff>& coeffs() const { return c_; }

    // Coefficient of x^i; zero beyond the degree.
    Coeff operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }

    const Coeff& leading() const { return c_.back(); }

    template <typename Value>
    Value eval(const Value& x) const {
        Value acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * x + Value(*it);
        }
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) {
            return {};
        }
        std::vector<Coeff> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) {
            d[i - 1] = c_[i] * Coeff(static_cast<long>(i));
        }
        return Poly(std::move(d));
    }

    // x^deg * p(1/x)
    Poly reversed() const {
        std::vector<Coeff> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

    // Number of factors x dividing p.
    std::size_t lowest_nonzero() const {
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0) {
            ++k;
        }
        return k;
    }

    Poly shift_down(std::size_t k) const {
        if (k >= c_.size()) {
            return {};
        }
        return Poly(std::vector<Coeff>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Coeff> r(std::max(a.size(), b.size()), Coeff(0));
        for (std::size_t i = 0; i < a.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Coeff> r(std::max(a.size(), b.size()), Coeff(0));
        for (std::size_t i = 0; i < a.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b.c_[i];
        return Poly(std::move(r));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Coeff> r(a.size() + b.size() - 1, Coeff(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Poly(std::move(r));
    }

    friend Poly operator*(const Coeff& s, const Poly& p) {
        std::vector<Coeff> r(p.c_);
        for (auto& v : r) v *= s;
        return Poly(std::move(r));
    }

    Poly operator-() const { return Coeff(-1) * *this; }

    /// Human-readable form, highest degree first, e.g. "x^2 - 4*x + 2".
    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Coeff& v = c_[static_cast<std::size_t>(i)];
            if (v == 0) continue;
            Coeff mag = v < 0 ? Coeff(-v) : v;
            if (first) {
                if (v < 0) os << "-";
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            first = false;
            const bool unit = mag == 1;
            if (i == 0) {
                os << mag.str();
            } else {
                if (!unit) os << mag.str() << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) {
            c_.pop_back();
        }
    }

    std::vector<Coeff> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

inline RatPoly to_rat(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return RatPoly(std::move(c));
}

inline Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& v : p.coeffs()) {
        g = boost::multiprecision::gcd(g, v);
    }
    return g;
}

/// Content removed and leading coefficient made positive.
inline IntPoly primitive(const IntPoly& p) {
    if (p.is_zero()) {
        return p;
    }
    Integer g = content(p);
    if (p.leading() < 0) g = -g;
    std::vector<Integer> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.push_back(v / g);
    return IntPoly(std::move(c));
}

/// Scales away denominators and returns the primitive integer polynomial.
inline IntPoly to_primitive_int(const RatPoly& p) {
    Integer l = 1;
    for (const auto& v : p.coeffs()) {
        l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(v)));
    }
    std::vector<Integer> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) {
        Rational s = v * Rational(l);
        c.push_back(boost::multiprecision::numerator(s));
    }
    return primitive(IntPoly(std::move(c)));
}

inline RatPoly make_monic(const RatPoly& p) {
    if (p.is_zero()) return p;
    return Rational(1) / p.leading() * p;
}

/// Euclidean division over Q: a = q*b + r with deg r < deg b.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) {
        throw DomainError("polynomial division by zero");
    }
    if (a.degree() < b.degree()) {
        return {RatPoly{}, a};
    }
    std::vector<Rational> rem(a.coeffs());
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    const Rational lead_inv = Rational(1) / b.leading();
    const auto db = static_cast<std::size_t>(b.degree());
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k] == 0) continue;
        const Rational f = rem[k] * lead_inv;
        quo[k - db] = f;
        for (std::size_t j = 0; j <= db; ++j) {
            rem[k - db + j] -= f * b.coeffs()[j];
        }
    }
    rem.resize(db);
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

/// Monic gcd over Q. gcd(0, 0) is the zero polynomial.
inline RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    return to_primitive_int(gcd(to_rat(a), to_rat(b)));
}

/// Exact quotient a / b when b divides a over Z[x] (after primitive parts).
inline std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = divmod(to_rat(a), to_rat(b));
    if (!r.is_zero()) {
        return std::nullopt;
    }
    for (const auto& v : q.coeffs()) {
        if (!is_integral(v)) return std::nullopt;
    }
    std::vector<Integer> c;
    for (const auto& v : q.coeffs()) c.push_back(boost::multiprecision::numerator(v));
    return IntPoly(std::move(c));
}

/// Product of the distinct irreducible factors of p (primitive, lc > 0).
inline IntPoly squarefree_part(const IntPoly& p) {
    if (p.degree() <= 0) {
        return primitive(p);
    }
    const RatPoly rp = to_rat(p);
    const RatPoly g = gcd(rp, rp.derivative());
    return to_primitive_int(divmod(rp, g).first);
}

/// Yun's algorithm: p = c * prod f_i^i with f_i square-free and pairwise coprime.
/// Returns the non-constant (f_i, i) pairs.
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
    std::vector<std::pair<IntPoly, int>> out;
    if (p.degree() <= 0) {
        return out;
    }
    const RatPoly a = to_rat(p);
    RatPoly b = a.derivative();
    RatPoly c = gcd(a, b);
    RatPoly w = divmod(a, c).first;
    RatPoly y = divmod(b, c).first;
    RatPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        RatPoly g = gcd(w, z);
        if (g.degree() > 0) {
            out.emplace_back(to_primitive_int(g), i);
        }
        w = divmod(w, g).first;
        y = divmod(z, g).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

/// Sign of p(num/den) with den > 0, computed in integers only.
inline int sign_at(const IntPoly& p, const Integer& num, const Integer& den) {
    if (p.is_zero()) return 0;
    Integer acc = p.leading();
    Integer pw = 1;
    for (int i = p.degree() - 1; i >= 0; --i) {
        pw *= den;
        acc = acc * num + p.coeffs()[static_cast<std::size_t>(i)] * pw;
    }
    return sign_of(acc);
}

inline int sign_at(const IntPoly& p, const Rational& x) {
    return sign_at(p, boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

/// Cauchy bound: every complex root has modulus < 1 + max|a_i/a_n|.
inline Rational cauchy_bound(const IntPoly& p) {
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rational r(boost::multiprecision::abs(p.coeffs()[static_cast<std::size_t>(i)]),
                   boost::multiprecision::abs(p.leading()));
        m = std::max(m, r);
    }
    return m + 1;
}

/// Parses "c0,c1,..." (ascending degree) into an integer polynomial.
inline IntPoly parse_int_poly(const std::string& text) {
    std::vector<Integer> c;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        std::string t;
        for (char ch : token) {
            if (ch != ' ') t.push_back(ch);
        }
        if (t.empty()) {
            throw ParseError("empty coefficient in '" + text + "'");
        }
        try {
            c.push_back(parse_integer(t));
        } catch (const ParseError&) {
            throw ParseError("malformed coefficient '" + token + "'");
        }
    }
    IntPoly p(std::move(c));
    if (p.is_zero()) {
        throw ParseError("zero polynomial");
    }
    return p;
}

}  // namespace gbeta
