#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gbeta/algebraic.hpp"
#include "gbeta/betamap.hpp"
#include "gbeta/bigfloat.hpp"
#include "gbeta/errors.hpp"

namespace gbeta {

/// F_beta(x) = cos(beta arccos x) on [-1, 1].
inline BigFloat f_beta(const BigFloat& beta, const BigFloat& x) {
    if (x.cmp_si(-1) < 0 || x.cmp_si(1) > 0) throw DomainError("F_beta is defined on [-1, 1]");
    return cos(beta * acos(x));
}

/// h(x) = cos(pi x), carrying [0, 1] onto [-1, 1] with h(1) = -1.
inline BigFloat h_conj(const BigFloat& x) { return cos(BigFloat::pi(x.bits()) * x); }

struct ChebOrbit {
    BigFloat beta;
    std::vector<BigFloat> points;  // F^n(-1)
    bool closed = false;           // a near-recurrence was found
    std::size_t preperiod = 0;
    std::size_t period = 0;
    unsigned precision_bits = 0;
};

/// Float orbit of -1 under F_beta, stopped at the first near-recurrence
/// within 2^(-bits/2).
inline ChebOrbit cheb_orbit(const BigFloat& beta, std::size_t max_steps, unsigned bits) {
    ChebOrbit o{BigFloat(Rational(0), bits) + beta, {}, false, 0, 0, bits};
    const BigFloat tol(std::ldexp(1.0, -static_cast<int>(bits / 2)), bits);
    BigFloat y(-1.0, bits);
    for (std::size_t n = 0; n <= max_steps; ++n) {
        for (std::size_t m = 0; m < o.points.size(); ++m) {
            if (abs(o.points[m] - y) <= tol) {
                o.closed = true;
                o.preperiod = m;
                o.period = n - m;
                return o;
            }
        }
        o.points.push_back(y);
        // Rounding can push |y| a hair past 1.
        if (y.cmp_si(1) > 0) y = BigFloat(1.0, bits);
        if (y.cmp_si(-1) < 0) y = BigFloat(-1.0, bits);
        y = f_beta(o.beta, y);
    }
    return o;
}

namespace detail {

inline void require_non_integer(const BigFloat& beta) {
    if (beta.is_integer()) throw NonIntegerRequired("beta must be a non-integer");
    if (beta.cmp_si(1) <= 0) throw DomainError("beta must exceed 1");
}

}  // namespace detail

/// max |F_beta(h(x)) - h(tau_{beta,E_alt}(x))| over an equispaced grid on
/// [0, 1], skipping points within 1e-9 of a branch endpoint k/beta.
inline double conjugacy_residual(const BigFloat& beta_in, std::size_t n_samples, unsigned bits = 256) {
    detail::require_non_integer(beta_in);
    if (n_samples < 2) throw DomainError("need at least two samples");
    const BigFloat beta = BigFloat(Rational(0), bits) + beta_in;
    const BigFloat margin(1e-9, bits);
    const long top = floor(beta).to_long();
    double worst = 0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        const BigFloat x(Rational(static_cast<long>(j), static_cast<long>(n_samples - 1)), bits);
        const BigFloat y = beta * x;
        const long i = floor(y).to_long();
        bool near_end = false;
        for (long k = std::max(1L, i); k <= std::min(top, i + 1); ++k) {
            // |x - k/beta| < margin  <=>  |y - k| < margin * beta
            if (abs(y - BigFloat(static_cast<double>(k), bits)) < margin * beta) near_end = true;
        }
        if (near_end) continue;
        const BigFloat t = y - i;
        const BigFloat tau = i % 2 == 0 ? t : 1L - t;
        const double r = abs(f_beta(beta, h_conj(x)) - h_conj(tau)).to_double();
        worst = std::max(worst, r);
    }
    return worst;
}

struct ConsistencyReport {
    std::string status;  // "agree", "disagree" or "inconclusive"
    std::string exact_verdict;
    std::size_t exact_preperiod = 0;
    std::size_t exact_period = 0;
    bool float_closed = false;
    std::size_t float_preperiod = 0;
    std::size_t float_period = 0;
};

/// Compares the exact E_alt orbit of 1 (followed through the endpoint set
/// until it repeats) with the float orbit of -1 under F_beta. The exact side
/// is authoritative; h is injective, so the recurrence indices must match.
inline ConsistencyReport finite_orbit_consistency(const AlgebraicReal& beta, std::size_t max_steps, unsigned bits = 256) {
    ConsistencyReport r;
    const OrbitRecord rec = orbit_of_one(beta, SignPattern::alt(), max_steps, false);
    const ChebOrbit co = cheb_orbit(to_bigfloat(beta, bits), max_steps, bits);
    r.float_closed = co.closed;
    r.float_preperiod = co.preperiod;
    r.float_period = co.period;
    if (const auto* p = std::get_if<EventuallyPeriodic>(&rec.verdict)) {
        r.exact_verdict = "EventuallyPeriodic";
        r.exact_preperiod = p->preperiod;
        r.exact_period = p->period;
        r.status = co.closed && co.preperiod == p->preperiod && co.period == p->period ? "agree" : "disagree";
    } else {
        r.exact_verdict = "Unresolved";
        r.status = "inconclusive";
    }
    return r;
}

}  // namespace gbeta
