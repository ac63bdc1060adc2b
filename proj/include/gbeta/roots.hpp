#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gbeta/algebraic.hpp"
#include "gbeta/poly.hpp"

namespace gbeta {

/// 106-bit mantissa: the precision of a double-double.
using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<106, boost::multiprecision::digit_base_2>,
                                           boost::multiprecision::et_off>;

template <typename T>
struct Cx {
    T re{0};
    T im{0};

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        // Smith's algorithm keeps intermediate magnitudes bounded.
        using std::abs;
        if (abs(b.re) >= abs(b.im)) {
            const T r = b.im / b.re;
            const T d = b.re + b.im * r;
            return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
        }
        const T r = b.re / b.im;
        const T d = b.re * r + b.im;
        return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
    }
    T norm() const { return re * re + im * im; }
    T abs() const {
        using std::sqrt;
        return sqrt(norm());
    }
    Cx conj() const { return {re, -im}; }
};

inline Wide to_wide(const Rational& q) {
    return Wide(Integer(numerator(q))) / Wide(Integer(denominator(q)));
}

namespace detail {

template <typename T>
std::vector<T> coeffs_as(const IntPoly& p) {
    std::vector<T> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.push_back(v.template convert_to<T>());
    return c;
}

// p(z) and p'(z) by Horner.
template <typename T>
void eval_with_derivative(const std::vector<T>& c, const Cx<T>& z, Cx<T>& p, Cx<T>& dp) {
    p = {c.back(), T(0)};
    dp = {T(0), T(0)};
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + Cx<T>{c[i], T(0)};
    }
}

/// Aberth-Ehrlich simultaneous iteration; returns true on convergence.
template <typename T>
bool aberth(const std::vector<T>& c, std::vector<Cx<T>>& z, const T& eps, int max_iter) {
    using std::abs;
    const std::size_t n = z.size();
    std::vector<bool> done(n, false);
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k]) continue;
            Cx<T> p, dp;
            eval_with_derivative(c, z[k], p, dp);
            if (p.re == 0 && p.im == 0) {
                done[k] = true;
                continue;
            }
            const Cx<T> ratio = p / dp;
            Cx<T> sum{T(0), T(0)};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const Cx<T> d = z[k] - z[j];
                if (d.re == 0 && d.im == 0) continue;
                sum = sum + Cx<T>{T(1), T(0)} / d;
            }
            const Cx<T> w = ratio / (Cx<T>{T(1), T(0)} - ratio * sum);
            z[k] = z[k] - w;
            const T scale = std::max(T(1), z[k].abs());
            if (w.abs() <= eps * scale) {
                done[k] = true;
            } else {
                all = false;
            }
        }
        if (all) return true;
    }
    return false;
}

template <typename T>
std::vector<Cx<T>> initial_guesses(const std::vector<double>& c) {
    const std::size_t n = c.size() - 1;
    const double a0 = std::abs(c.front());
    const double an = std::abs(c.back());
    double r = a0 > 0 ? std::pow(a0 / an, 1.0 / static_cast<double>(n)) : 1.0;
    if (!(r > 0) || !std::isfinite(r)) r = 1.0;
    std::vector<Cx<T>> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = {T(r * std::cos(th)), T(r * std::sin(th))};
    }
    return z;
}

}  // namespace detail

struct ComplexRoot {
    Wide re;
    Wide im;
    double residual = 0;  // upper bound on |p(z)| at the stored point

    double re_d() const { return re.convert_to<double>(); }
    double im_d() const { return im.convert_to<double>(); }
    double modulus() const { return std::hypot(re_d(), im_d()); }
    bool is_real() const { return im == 0; }
};

/// Rigorous-in-spirit bound on |p(z)| for z stored in Wide: computed value
/// plus the Horner rounding term 2n u sum |a_i||z|^i.
inline double residual_bound(const IntPoly& p, const Wide& re, const Wide& im) {
    const auto c = detail::coeffs_as<Wide>(p);
    Cx<Wide> z{re, im}, v, dv;
    detail::eval_with_derivative(c, z, v, dv);
    Wide absz = z.abs();
    Wide acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * absz + abs(c[i]);
    }
    const Wide u = ldexp(Wide(1), -105);
    const Wide bound = v.abs() + Wide(2 * c.size()) * u * acc;
    return bound.convert_to<double>();
}

namespace detail {

// Roots of a square-free integer polynomial of degree >= 1, with exact real
// root count and conjugate pairing.
inline bool squarefree_roots(const IntPoly& f, std::vector<ComplexRoot>& out) {
    const int n = f.degree();
    if (n == 1) {
        out.push_back({to_wide(Rational(-f.coeffs()[0], f.coeffs()[1])), Wide(0), 0.0});
        return true;
    }
    const auto cd = coeffs_as<double>(f);
    auto zd = initial_guesses<double>(cd);
    aberth<double>(cd, zd, 1e-15, 800);

    const auto cw = coeffs_as<Wide>(f);
    std::vector<Cx<Wide>> zw;
    zw.reserve(zd.size());
    for (const auto& z : zd) zw.push_back({Wide(z.re), Wide(z.im)});
    const bool ok = aberth<Wide>(cw, zw, ldexp(Wide(1), -100), 200);

    // Real roots: exact count and values from isolation.
    const Rational bound = cauchy_bound(f);
    auto reals = isolate_real_roots(f, -bound, bound);
    std::vector<bool> used(zw.size(), false);
    std::vector<Cx<Wide>> fixed;
    for (const auto& r : reals) {
        const AlgebraicReal t = r.refined(Rational(1, Integer(1) << 120));
        const Wide v2 = to_wide(Rational((t.lo() + t.hi()) / 2));
        std::size_t best = zw.size();
        Wide best_d = 0;
        for (std::size_t k = 0; k < zw.size(); ++k) {
            if (used[k]) continue;
            const Wide d = (zw[k] - Cx<Wide>{v2, Wide(0)}).abs();
            if (best == zw.size() || d < best_d) {
                best = k;
                best_d = d;
            }
        }
        if (best < zw.size()) used[best] = true;
        fixed.push_back({v2, Wide(0)});
    }
    std::vector<Cx<Wide>> rest;
    for (std::size_t k = 0; k < zw.size(); ++k) {
        if (!used[k]) rest.push_back(zw[k]);
    }
    std::sort(rest.begin(), rest.end(), [](const Cx<Wide>& a, const Cx<Wide>& b) { return a.im > b.im; });
    const std::size_t half = rest.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
        Cx<Wide> z = rest[k];
        if (z.im < 0) z.im = -z.im;
        fixed.push_back(z);
        fixed.push_back(z.conj());
    }
    for (const auto& z : fixed) out.push_back({z.re, z.im, 0.0});
    return ok;
}

}  // namespace detail

}  // namespace gbeta
