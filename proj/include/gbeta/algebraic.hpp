#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "gbeta/errors.hpp"
#include "gbeta/poly.hpp"

namespace gbeta {

/// Closed rational interval [lo, hi].
struct Interval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

inline Interval operator*(const Rational& s, const Interval& a) {
    if (s >= 0) return {s * a.lo, s * a.hi};
    return {s * a.hi, s * a.lo};
}

inline Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

namespace detail {

// q(a + w*y) as a polynomial in y.
inline RatPoly compose_linear(const IntPoly& q, const Rational& a, const Rational& w) {
    const RatPoly lin(std::vector<Rational>{a, w});
    RatPoly acc;
    for (int i = q.degree(); i >= 0; --i) {
        acc = acc * lin + RatPoly::constant(Rational(q.coeffs()[static_cast<std::size_t>(i)]));
    }
    return acc;
}

// p(y + 1)
inline IntPoly taylor_shift_one(const IntPoly& p) {
    std::vector<Integer> c(p.coeffs());
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = n - 1; j > i; --j) {
            c[j - 1] += c[j];
        }
    }
    return IntPoly(std::move(c));
}

inline int sign_variations(const IntPoly& p) {
    int v = 0;
    int prev = 0;
    for (const auto& c : p.coeffs()) {
        const int s = sign_of(c);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

// Descartes bound on the number of roots of q in the open interval (a, b).
inline int descartes_count(const IntPoly& q, const Rational& a, const Rational& b) {
    const IntPoly g = to_primitive_int(compose_linear(q, a, b - a));
    return sign_variations(taylor_shift_one(g.reversed()));
}

}  // namespace detail

class AlgebraicReal;
inline std::vector<AlgebraicReal> isolate_real_roots(const IntPoly& p, const Rational& lo, const Rational& hi);
namespace detail {
inline void isolate_open(const IntPoly& q, const Rational& a, const Rational& b, std::vector<AlgebraicReal>& out);
}

/// A real algebraic number: the unique root of a square-free integer
/// polynomial inside a rational isolating interval.
///
/// Either lo == hi (the root is that rational) or lo < hi with the defining
/// polynomial nonzero and of opposite signs at the two endpoints, so the root
/// lies strictly inside.
class AlgebraicReal {
public:
    /// Validating constructor: p must have exactly one real root in [lo, hi].
    AlgebraicReal(const IntPoly& p, const Rational& lo, const Rational& hi) {
        if (p.degree() < 1) {
            throw DomainError("algebraic number needs a polynomial of degree >= 1");
        }
        if (lo > hi) {
            throw DomainError("empty isolating interval");
        }
        auto roots = isolate_real_roots(p, lo, hi);
        if (roots.size() != 1) {
            throw DomainError("polynomial " + p.to_string() + " has " + std::to_string(roots.size()) +
                              " real roots in [" + lo.str() + ", " + hi.str() + "], expected exactly one");
        }
        *this = std::move(roots.front());
    }

    static AlgebraicReal from_rational(const Rational& q) {
        IntPoly p(std::vector<Integer>{-boost::multiprecision::numerator(q), boost::multiprecision::denominator(q)});
        return AlgebraicReal(Unchecked{}, std::move(p), q, q);
    }

    const IntPoly& poly() const { return poly_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    bool is_exact() const { return lo_ == hi_; }
    Interval interval() const { return {lo_, hi_}; }

    /// Same root, interval width <= width. Bisection; deterministic.
    AlgebraicReal refined(const Rational& width) const {
        if (width <= 0) {
            throw DomainError("refinement width must be positive");
        }
        AlgebraicReal r = *this;
        while (!r.is_exact() && r.width() > width) {
            const Rational mid = (r.lo_ + r.hi_) / 2;
            const int s = sign_at(r.poly_, mid);
            if (s == 0) {
                r.lo_ = r.hi_ = mid;
            } else if (s == r.sign_lo_) {
                r.lo_ = mid;
            } else {
                r.hi_ = mid;
            }
        }
        return r;
    }

    /// Exact sign of (value - q).
    int compare(const Rational& q) const {
        if (is_exact()) return sign_of(Rational(lo_ - q));
        if (q <= lo_) return 1;
        if (q >= hi_) return -1;
        const int s = sign_at(poly_, q);
        if (s == 0) return 0;
        return s == sign_lo_ ? 1 : -1;
    }

    Integer floor() const {
        Integer k = floor_of(lo_);
        while (compare(Rational(k + 1)) >= 0) {
            ++k;
        }
        return k;
    }

    bool is_integer() const { return compare(Rational(floor())) == 0; }

    double to_double() const {
        const AlgebraicReal r = refined(Rational(1, Integer(1) << 60));
        return static_cast<double>((r.lo_ + r.hi_) / 2);
    }

    /// True when g(value) = 0; g's roots inside the interval are roots of
    /// the defining polynomial only if g divides into it, so callers pass a
    /// divisor of poly() (or any polynomial, in which case gcd is taken).
    bool is_root_of(const IntPoly& g) const {
        if (g.is_zero()) return true;
        const IntPoly h = gcd(g, poly_);
        if (h.degree() < 1) return false;
        if (is_exact()) return sign_at(h, lo_) == 0;
        return sign_at(h, lo_) * sign_at(h, hi_) < 0;
    }

    /// Same number, defined by a smaller factor of poly() that still has it as a root.
    AlgebraicReal with_factor(const IntPoly& factor) const {
        AlgebraicReal r = *this;
        r.poly_ = primitive(factor);
        r.sign_lo_ = r.is_exact() ? 0 : sign_at(r.poly_, r.lo_);
        return r;
    }

private:
    struct Unchecked {};
    AlgebraicReal(Unchecked, IntPoly p, Rational lo, Rational hi)
        : poly_(primitive(std::move(p))), lo_(std::move(lo)), hi_(std::move(hi)) {
        sign_lo_ = is_exact() ? 0 : sign_at(poly_, lo_);
    }

    friend std::vector<AlgebraicReal> isolate_real_roots(const IntPoly&, const Rational&, const Rational&);
    friend void detail::isolate_open(const IntPoly&, const Rational&, const Rational&, std::vector<AlgebraicReal>&);

    IntPoly poly_;
    Rational lo_;
    Rational hi_;
    int sign_lo_ = 0;
};

/// One AlgebraicReal per distinct real root of p in the closed interval
/// [lo, hi], in increasing order. Descartes-rule bisection on the square-free part.
inline std::vector<AlgebraicReal> isolate_real_roots(const IntPoly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) {
        throw DomainError("cannot isolate roots of the zero polynomial");
    }
    std::vector<AlgebraicReal> out;
    if (p.degree() < 1 || lo > hi) {
        return out;
    }
    const IntPoly q = squarefree_part(p);
    if (sign_at(q, lo) == 0) out.push_back(AlgebraicReal(AlgebraicReal::Unchecked{}, q, lo, lo));
    if (lo == hi) return out;
    detail::isolate_open(q, lo, hi, out);
    if (sign_at(q, hi) == 0) out.push_back(AlgebraicReal(AlgebraicReal::Unchecked{}, q, hi, hi));
    return out;
}

namespace detail {

inline void isolate_open(const IntPoly& q, const Rational& a, const Rational& b, std::vector<AlgebraicReal>& out) {
    const int v = descartes_count(q, a, b);
    if (v == 0) return;
    if (v == 1 && sign_at(q, a) != 0 && sign_at(q, b) != 0) {
        out.push_back(AlgebraicReal(AlgebraicReal::Unchecked{}, q, a, b));
        return;
    }
    const Rational m = (a + b) / 2;
    isolate_open(q, a, m, out);
    if (sign_at(q, m) == 0) out.push_back(AlgebraicReal(AlgebraicReal::Unchecked{}, q, m, m));
    isolate_open(q, m, b, out);
}

}  // namespace detail

class BetaField;

/// An element of Q(beta): sum c[i] * beta^i, reduced modulo beta's defining
/// polynomial (vector length = its degree).
class BetaElement {
public:
    BetaElement() = default;
    BetaElement(std::shared_ptr<const BetaField> field, std::vector<Rational> coeffs)
        : field_(std::move(field)), c_(std::move(coeffs)) {}

    const std::vector<Rational>& coeffs() const { return c_; }
    const std::shared_ptr<const BetaField>& field() const { return field_; }
    bool is_zero_vector() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& v) { return v == 0; });
    }

    friend BetaElement operator+(const BetaElement& a, const BetaElement& b) {
        std::vector<Rational> c(a.c_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
        return {a.field_, std::move(c)};
    }
    friend BetaElement operator-(const BetaElement& a, const BetaElement& b) {
        std::vector<Rational> c(a.c_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
        return {a.field_, std::move(c)};
    }
    friend BetaElement operator*(const Rational& s, const BetaElement& a) {
        std::vector<Rational> c(a.c_);
        for (auto& v : c) v *= s;
        return {a.field_, std::move(c)};
    }
    BetaElement operator-() const { return Rational(-1) * *this; }

    friend BetaElement operator+(const BetaElement& a, const Rational& q) {
        BetaElement r = a;
        r.c_[0] += q;
        return r;
    }
    friend BetaElement operator-(const BetaElement& a, const Rational& q) { return a + Rational(-q); }
    friend BetaElement operator-(const Rational& q, const BetaElement& a) { return -a + q; }

    /// Representation identity. Implies value equality; the converse holds
    /// when the defining polynomial is irreducible (use be_cmp for values).
    friend bool operator==(const BetaElement& a, const BetaElement& b) { return a.c_ == b.c_; }

private:
    std::shared_ptr<const BetaField> field_;
    std::vector<Rational> c_;
};

struct FloorResult {
    Integer floor;
    bool exact = false;  // value is exactly the integer `floor`
};

/// Arithmetic context for Q(beta). Immutable once built; share via shared_ptr.
class BetaField : public std::enable_shared_from_this<BetaField> {
public:
    // Working width of beta's cached interval.
    static constexpr unsigned kBaseBits = 192;

    static std::shared_ptr<const BetaField> make(const AlgebraicReal& beta) {
        return std::shared_ptr<const BetaField>(new BetaField(beta));
    }

    const AlgebraicReal& beta() const { return beta_; }
    std::size_t degree() const { return degree_; }
    const RatPoly& modulus() const { return modulus_; }

    BetaElement constant(const Rational& q) const {
        std::vector<Rational> c(degree_, Rational(0));
        c[0] = q;
        return {shared_from_this(), std::move(c)};
    }
    BetaElement zero() const { return constant(0); }
    BetaElement one() const { return constant(1); }

    /// beta itself, reduced.
    BetaElement generator() const { return mul_beta(one()); }

    /// Reduce an arbitrary polynomial expression in beta.
    BetaElement from_poly(const RatPoly& p) const {
        RatPoly r = divmod(p, modulus_).second;
        std::vector<Rational> c(degree_, Rational(0));
        for (std::size_t i = 0; i < r.size(); ++i) c[i] = r.coeffs()[i];
        return {shared_from_this(), std::move(c)};
    }

    BetaElement mul_beta(const BetaElement& x) const {
        const auto& c = x.coeffs();
        std::vector<Rational> r(degree_, Rational(0));
        const Rational top = c[degree_ - 1];
        for (std::size_t i = degree_ - 1; i > 0; --i) r[i] = c[i - 1];
        // beta^d = -sum m_i beta^i for the monic modulus.
        for (std::size_t i = 0; i < degree_; ++i) r[i] -= top * modulus_.coeffs()[i];
        return {x.field(), std::move(r)};
    }

    /// Interval enclosure of the value, of width at most max_width.
    Interval enclose(const BetaElement& x, const Rational& max_width) const {
        Interval iv = enclose_with(x, base_powers_);
        unsigned bits = kBaseBits;
        while (iv.width() > max_width) {
            bits *= 2;
            iv = enclose_with(x, powers_at(bits));
        }
        return iv;
    }

    /// Exact test of value == 0, sound even if the modulus is reducible:
    /// value(x) = 0 iff beta is a root of gcd(x as a polynomial, modulus).
    bool is_zero_value(const BetaElement& x) const {
        if (x.is_zero_vector()) return true;
        if (degree_ == 1) return false;
        const RatPoly g(x.coeffs());
        const RatPoly h = gcd(g, modulus_);
        if (h.degree() < 1) return false;
        return beta_.is_root_of(to_primitive_int(h));
    }

    /// Exact sign of the value.
    int sign(const BetaElement& x) const {
        if (is_zero_value(x)) return 0;
        unsigned bits = kBaseBits;
        Interval iv = enclose_with(x, base_powers_);
        while (iv.lo <= 0 && iv.hi >= 0) {
            bits *= 2;
            iv = enclose_with(x, powers_at(bits));
        }
        return iv.lo > 0 ? 1 : -1;
    }

    /// Floor of the value. Integer ties are settled by the exact zero test
    /// before any refinement, so this always terminates.
    FloorResult floor(const BetaElement& x) const {
        unsigned bits = kBaseBits;
        Interval iv = enclose_with(x, base_powers_);
        bool tested = false;
        Integer tested_k;
        for (;;) {
            const Integer a = ceil_of(iv.lo);
            const Integer b = floor_of(iv.hi);
            if (a > b) {
                return {floor_of(iv.lo), false};
            }
            if (a == b) {
                if (!tested || tested_k != a) {
                    if (is_zero_value(x - Rational(a))) return {a, true};
                    tested = true;
                    tested_k = a;
                }
            }
            bits *= 2;
            iv = enclose_with(x, powers_at(bits));
        }
    }

private:
    explicit BetaField(const AlgebraicReal& beta)
        : beta_(beta.refined(Rational(1, Integer(1) << kBaseBits))),
          modulus_(make_monic(to_rat(beta.poly()))),
          degree_(static_cast<std::size_t>(beta.poly().degree())) {
        base_powers_ = power_table(beta_);
    }

    std::vector<Interval> power_table(const AlgebraicReal& b) const {
        std::vector<Interval> p;
        p.reserve(degree_);
        Interval cur{1, 1};
        const Interval bi = b.interval();
        for (std::size_t i = 0; i < degree_; ++i) {
            p.push_back(cur);
            cur = cur * bi;
        }
        return p;
    }

    std::vector<Interval> powers_at(unsigned bits) const {
        return power_table(beta_.refined(Rational(1, Integer(1) << bits)));
    }

    Interval enclose_with(const BetaElement& x, const std::vector<Interval>& powers) const {
        Interval acc{0, 0};
        const auto& c = x.coeffs();
        for (std::size_t i = 0; i < degree_; ++i) {
            if (c[i] == 0) continue;
            acc = acc + c[i] * powers[i];
        }
        return acc;
    }

    AlgebraicReal beta_;
    RatPoly modulus_;
    std::size_t degree_;
    std::vector<Interval> base_powers_;
};

inline BetaElement be_mul_beta(const BetaElement& x) { return x.field()->mul_beta(x); }

inline Integer be_floor(const BetaElement& x) { return x.field()->floor(x).floor; }

inline FloorResult be_floor_exact(const BetaElement& x) { return x.field()->floor(x); }

/// Exact trichotomy of values; equal vectors short-circuit to equal.
inline std::strong_ordering be_cmp(const BetaElement& x, const BetaElement& y) {
    if (x == y) return std::strong_ordering::equal;
    const int s = x.field()->sign(x - y);
    if (s == 0) return std::strong_ordering::equal;
    return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

inline Interval be_enclose(const BetaElement& x, const Rational& max_width) {
    return x.field()->enclose(x, max_width);
}

inline double be_to_double(const BetaElement& x) {
    const Interval iv = be_enclose(x, Rational(1, Integer(1) << 60));
    return static_cast<double>((iv.lo + iv.hi) / 2);
}

inline std::size_t be_hash(const BetaElement& x) {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& v : x.coeffs()) {
        h ^= std::hash<std::string>{}(v.str()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace gbeta
