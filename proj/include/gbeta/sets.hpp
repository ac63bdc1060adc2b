#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "gbeta/construct.hpp"
#include "gbeta/errors.hpp"
#include "gbeta/parallel.hpp"
#include "gbeta/random.hpp"
#include "gbeta/spectra.hpp"

namespace gbeta {

inline constexpr double kGolden = 1.6180339887498948482;

/// min over f in F_[0,1] of f(z) on (-1, 0): put a_n = 1 at odd n.
inline double extremal_min_real(double z) {
    if (!(z > -1.0 && z < 0.0)) throw DomainError("extremal_min_real needs -1 < z < 0");
    return 1.0 + z / (1.0 - z * z);
}

// ---- membership ------------------------------------------------------------

enum class CoefficientBox { Unit, Sym };  // [0,1] and [-1,1]

struct InnerYes {
    std::vector<double> witness;  // a_1..a_N
    int degree = 0;
    double value_inf = 0;         // max(|Re f|, |Im f|) at the witness
};
struct No {
    double lower_bound = 0;       // lower bound on |f(z)| over the whole class
};
struct Unknown {
    double truncated_min = 0;
    double tail = 0;
};
using MembershipVerdict = std::variant<InnerYes, No, Unknown>;

inline std::string verdict_name(const MembershipVerdict& v) {
    if (std::holds_alternative<InnerYes>(v)) return "InnerYes";
    if (std::holds_alternative<No>(v)) return "No";
    return "Unknown";
}

namespace detail {

using P2 = std::array<double, 2>;

inline double cross(const P2& o, const P2& a, const P2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// min over s in [0,1] of ||a + s(b - a) - q||_inf and the minimizing s. The
// objective is convex piecewise linear; its kinks are where |dx| = |dy| or
// a coordinate vanishes.
inline std::pair<double, double> segment_linf(const P2& a, const P2& b, const P2& q) {
    const double ux = a[0] - q[0], uy = a[1] - q[1];
    const double vx = b[0] - a[0], vy = b[1] - a[1];
    std::vector<double> cand{0.0, 1.0};
    auto add = [&](double num, double den) {
        if (den != 0) {
            const double s = num / den;
            if (s > 0 && s < 1) cand.push_back(s);
        }
    };
    add(-(ux - uy), vx - vy);
    add(-(ux + uy), vx + vy);
    add(-ux, vx);
    add(-uy, vy);
    double best = std::numeric_limits<double>::infinity(), bs = 0;
    for (double s : cand) {
        const double d = std::max(std::abs(ux + s * vx), std::abs(uy + s * vy));
        if (d < best) {
            best = d;
            bs = s;
        }
    }
    return {best, bs};
}

}  // namespace detail

/// Sound trichotomy for "does some f = 1 + sum a_n z^n with a_n in the box
/// vanish at z": distances are measured in max(|Re|, |Im|), exactly over the
/// degree-N zonotope, with the tail |z|^(N+1)/(1-|z|) bounding the rest.
inline MembershipVerdict membership(std::complex<double> z, CoefficientBox box, int N, double tol) {
    if (!(std::abs(z) < 1.0)) throw DomainError("membership needs |z| < 1");
    if (N < 1) throw DomainError("degree must be >= 1");
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    const double lo = box == CoefficientBox::Unit ? 0.0 : -1.0;
    const double hi = 1.0;
    const double r = std::abs(z);
    const double tail = std::pow(r, N + 1) / (1.0 - r);

    // f = base + sum t_n g_n, t in [0,1]^N.
    std::vector<std::complex<double>> g(static_cast<std::size_t>(N));
    std::complex<double> zn = 1.0, base = 1.0;
    for (int n = 0; n < N; ++n) {
        zn *= z;
        base += lo * zn;
        g[static_cast<std::size_t>(n)] = (hi - lo) * zn;
    }
    // Flip into the upper half-plane: t g = g + u (-g) with u = 1 - t.
    std::complex<double> offset = 0.0;
    std::vector<bool> flipped(g.size(), false);
    std::vector<std::complex<double>> h(g);
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i].imag() < 0 || (h[i].imag() == 0 && h[i].real() < 0)) {
            offset += h[i];
            h[i] = -h[i];
            flipped[i] = true;
        }
    }
    std::vector<std::size_t> order(h.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::arg(h[a]) < std::arg(h[b]); });

    // Vertex k < N+1: first k sorted generators on; vertex N+k: all but the
    // first k on. Counterclockwise.
    const std::size_t n = h.size();
    std::vector<detail::P2> poly;
    poly.reserve(2 * n);
    std::complex<double> p = offset;
    for (std::size_t k = 0; k <= n; ++k) {
        if (k > 0) p += h[order[k - 1]];
        poly.push_back({p.real(), p.imag()});
    }
    for (std::size_t k = 1; k < n; ++k) {
        p -= h[order[k - 1]];
        poly.push_back({p.real(), p.imag()});
    }
    auto u_of_vertex = [&](std::size_t v) {
        std::vector<double> u(n, 0.0);
        if (v <= n) {
            for (std::size_t k = 0; k < v; ++k) u[order[k]] = 1.0;
        } else {
            for (std::size_t k = v - n; k < n; ++k) u[order[k]] = 1.0;
        }
        return u;
    };
    const detail::P2 q{-base.real(), -base.imag()};

    // Nearest boundary point.
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> u_best;
    for (std::size_t v = 0; v < poly.size(); ++v) {
        const std::size_t w = (v + 1) % poly.size();
        const auto [d, s] = detail::segment_linf(poly[v], poly[w], q);
        if (d < best) {
            best = d;
            auto ua = u_of_vertex(v);
            const auto ub = u_of_vertex(w);
            for (std::size_t i = 0; i < n; ++i) ua[i] += s * (ub[i] - ua[i]);
            u_best = std::move(ua);
        }
    }
    // Interior: the fan from vertex 0.
    bool inside = poly.size() >= 3;
    for (std::size_t v = 0; v < poly.size() && inside; ++v) {
        inside = detail::cross(poly[v], poly[(v + 1) % poly.size()], q) >= 0;
    }
    if (inside && best > tol) {
        for (std::size_t v = 1; v + 1 < poly.size(); ++v) {
            const double area = detail::cross(poly[0], poly[v], poly[v + 1]);
            if (area <= 0) continue;
            const double l1 = detail::cross(poly[0], q, poly[v + 1]) / area;
            const double l2 = detail::cross(poly[0], poly[v], q) / area;
            const double l0 = 1.0 - l1 - l2;
            if (l0 < -1e-12 || l1 < -1e-12 || l2 < -1e-12) continue;
            const auto u0 = u_of_vertex(0), u1 = u_of_vertex(v), u2 = u_of_vertex(v + 1);
            u_best.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                u_best[i] = std::clamp(l0 * u0[i] + l1 * u1[i] + l2 * u2[i], 0.0, 1.0);
            }
            best = 0.0;
            break;
        }
    }

    // Rounding slack for the double computation above.
    const double slack = 1e-13 * (N + 1);
    if (best <= tol) {
        std::vector<double> a(n);
        std::complex<double> f = 1.0, zk = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = flipped[i] ? 1.0 - u_best[i] : u_best[i];
            a[i] = lo + (hi - lo) * t;
            zk *= z;
            f += a[i] * zk;
        }
        const double v = std::max(std::abs(f.real()), std::abs(f.imag()));
        if (v <= tol) return InnerYes{std::move(a), N, v};
        return Unknown{best, tail};
    }
    if (best > tol + tail + slack) return No{best - tail};
    return Unknown{best, tail};
}

// ---- point clouds ----------------------------------------------------------

struct CloudPoint {
    double re = 0;
    double im = 0;
    std::string source_beta;
    std::string pattern;
    double residual = 0;
    bool real = false;  // exactly real (from exact isolation)
};

struct PointCloud {
    std::vector<CloudPoint> points;
    std::vector<std::string> skipped;  // samples that failed, with reasons

    double max_modulus() const {
        double m = 0;
        for (const auto& p : points) m = std::max(m, std::hypot(p.re, p.im));
        return m;
    }
};

inline std::string beta_label(const AlgebraicReal& beta) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", beta.to_double());
    return buf;
}

/// Non-beta roots of p as cloud points.
inline std::vector<CloudPoint> conjugate_points(const IntPoly& p, const AlgebraicReal& beta, const std::string& tag,
                                                double tol = 1e-12) {
    const ConjugateSet cs = conjugates_of(p, beta, tol);
    std::vector<CloudPoint> out;
    const std::string label = beta_label(beta);
    for (std::size_t i = 0; i < cs.roots.size(); ++i) {
        if (static_cast<int>(i) == cs.beta_root_index) continue;
        const auto& r = cs.roots[i];
        out.push_back({r.re_d(), r.im_d(), label, tag, r.residual, r.is_real()});
    }
    return out;
}

struct ParryCloudSpec {
    std::size_t max_depth = 8;
    std::size_t max_count = 100000;
    int max_digit = 2;
};

/// Admissible eventually-zero sequences of length 2..max_depth (length 1 gives
/// an integer beta) in (length, lexicographic) order.
inline std::vector<ParrySequence> admissible_sequences(const ParryCloudSpec& spec) {
    std::vector<ParrySequence> out;
    for (std::size_t len = 2; len <= spec.max_depth && out.size() < spec.max_count; ++len) {
        std::vector<int> d(len, 0);
        d[0] = 1;
        while (true) {
            if (d.back() != 0) {
                std::vector<Integer> v(d.begin(), d.end());
                ParrySequence s(v);
                if (parry_admissible(s)) {
                    out.push_back(std::move(s));
                    if (out.size() >= spec.max_count) break;
                }
            }
            // odometer, last digit fastest
            bool done = true;
            for (std::size_t i = len; i-- > 0;) {
                if (d[i] < spec.max_digit) {
                    ++d[i];
                    done = false;
                    break;
                }
                d[i] = i == 0 ? 1 : 0;
            }
            if (done) break;
        }
    }
    return out;
}

inline PointCloud cloud_parry(const ParryCloudSpec& spec, unsigned threads = 1) {
    PointCloud cloud;
    if (spec.max_count == 0) return cloud;
    const auto seqs = admissible_sequences(spec);
    auto per = parallel_map(seqs.size(), threads, [&](std::size_t i) {
        const IntPoly g = primitive(parry_f(seqs[i]).reversed());
        const AlgebraicReal beta = detail::root_above_one(g);
        return conjugate_points(g, beta, "e0");
    });
    for (auto& v : per) cloud.points.insert(cloud.points.end(), v.begin(), v.end());
    return cloud;
}

struct ApproxSample {
    std::vector<Rational> targets;
    std::vector<int> signs;  // used by the E_alt cloud
    Rational eps;
};

/// Deterministic random samples: n in 1..max_n targets in (0.05, 0.95) with
/// pairwise gaps >= 0.05, on a 1/1000 grid.
inline std::vector<ApproxSample> random_samples(std::size_t count, std::size_t max_n, const Rational& eps,
                                                std::uint64_t seed) {
    Rng rng(seed);
    auto below = [&](std::uint64_t m) { return rng.below(m); };
    std::vector<ApproxSample> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        ApproxSample s;
        s.eps = eps;
        const std::size_t n = 1 + static_cast<std::size_t>(below(max_n));
        while (s.targets.size() < n) {
            const Rational t(50 + static_cast<long>(below(901)), 1000);
            bool ok = true;
            for (const auto& u : s.targets) ok = ok && abs(Rational(u - t)) >= Rational(1, 20);
            if (ok) s.targets.push_back(t);
        }
        for (std::size_t i = 0; i < n; ++i) s.signs.push_back(below(2) == 0 ? 1 : -1);
        out.push_back(std::move(s));
    }
    return out;
}

namespace detail {

template <typename Build>
PointCloud approx_cloud(const std::vector<ApproxSample>& samples, unsigned threads, const std::string& tag,
                        Build build) {
    struct Out {
        std::vector<CloudPoint> pts;
        std::string skipped;
    };
    auto per = parallel_map(samples.size(), threads, [&](std::size_t i) {
        Out o;
        try {
            const ApproxResult r = build(samples[i]);
            if (!r.cert) {
                o.skipped = "sample " + std::to_string(i) + ": not Eisenstein-certified";
                return o;
            }
            o.pts = conjugate_points(r.poly.poly, r.beta, tag);
        } catch (const Error& e) {
            o.skipped = "sample " + std::to_string(i) + ": " + e.what();
        }
        return o;
    });
    PointCloud cloud;
    for (auto& o : per) {
        cloud.points.insert(cloud.points.end(), o.pts.begin(), o.pts.end());
        if (!o.skipped.empty()) cloud.skipped.push_back(o.skipped);
    }
    return cloud;
}

}  // namespace detail

inline PointCloud cloud_yrrap(const std::vector<ApproxSample>& samples, unsigned threads = 1) {
    return detail::approx_cloud(samples, threads, "e1",
                                [](const ApproxSample& s) { return thmA_yrrap_approx(s.targets, s.eps); });
}

inline PointCloud cloud_alt(const std::vector<ApproxSample>& samples, unsigned threads = 1) {
    return detail::approx_cloud(samples, threads, "alt", [](const ApproxSample& s) {
        std::vector<int> signs = s.signs;
        signs.resize(s.targets.size(), 1);
        return thmB_alt_approx(s.targets, signs, s.eps);
    });
}

struct GoldenBound {
    double max_modulus = 0;
    bool pass = true;
};

inline GoldenBound check_golden_bound(const PointCloud& cloud, double tolerance = 1e-9) {
    GoldenBound g;
    g.max_modulus = cloud.max_modulus();
    g.pass = g.max_modulus <= kGolden + tolerance;
    return g;
}

/// Exactly real points with positive (resp. negative) real part; optionally
/// only those with modulus above `min_modulus`.
inline std::size_t count_real_points(const PointCloud& c, int side, double min_modulus = 0) {
    std::size_t n = 0;
    for (const auto& p : c.points) {
        if (!p.real) continue;
        if (side > 0 && p.re > 0 && std::abs(p.re) > min_modulus) ++n;
        if (side < 0 && p.re < 0 && std::abs(p.re) > min_modulus) ++n;
    }
    return n;
}

struct ReflectionSummary {
    std::size_t count_p = 0;
    std::size_t count_y = 0;
    double mean_p_to_y = 0;  // mean distance from a P point to the reflected Y band
    double max_p_to_y = 0;
    double mean_y_to_p = 0;
    double max_y_to_p = 0;
};

/// Diagnostic only: compares P with the mirror image z -> -conj(z) of Y
/// inside the modulus band [band_lo, band_hi].
inline ReflectionSummary reflection_compare(const PointCloud& p, const PointCloud& y, double band_lo, double band_hi) {
    auto band = [&](const PointCloud& c, bool reflect) {
        std::vector<std::complex<double>> out;
        for (const auto& q : c.points) {
            const double m = std::hypot(q.re, q.im);
            if (m >= band_lo && m <= band_hi) out.emplace_back(reflect ? -q.re : q.re, q.im);
        }
        return out;
    };
    const auto bp = band(p, false);
    const auto by = band(y, true);
    ReflectionSummary s{bp.size(), by.size(), 0, 0, 0, 0};
    if (bp.empty() || by.empty()) return s;
    auto directed = [](const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b,
                       double& mean, double& mx) {
        double sum = 0;
        for (const auto& u : a) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& v : b) d = std::min(d, std::abs(u - v));
            sum += d;
            mx = std::max(mx, d);
        }
        mean = sum / static_cast<double>(a.size());
    };
    directed(bp, by, s.mean_p_to_y, s.max_p_to_y);
    directed(by, bp, s.mean_y_to_p, s.max_y_to_p);
    return s;
}

}  // namespace gbeta
