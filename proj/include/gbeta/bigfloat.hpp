#pragma once

#include <cmath>
#include <string>
#include <utility>

#include <mpfr.h>

#include "gbeta/algebraic.hpp"
#include "gbeta/poly.hpp"

namespace gbeta {

/// Owning MPFR value with an explicit precision in bits. Results of binary
/// operations take the larger operand precision; nothing depends on global
/// or thread-wide default precision, so values are safe to use from any thread.
class BigFloat {
public:
    explicit BigFloat(unsigned bits = 256) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); mpfr_set_zero(v_, 1); }

    BigFloat(double x, unsigned bits) : BigFloat(bits) { mpfr_set_d(v_, x, MPFR_RNDN); }

    BigFloat(const Rational& q, unsigned bits) : BigFloat(bits) {
        mpfr_set_q(v_, q.backend().data(), MPFR_RNDN);
    }

    BigFloat(const BigFloat& o) : BigFloat(o.bits()) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept : BigFloat(o.bits()) { mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    static BigFloat pi(unsigned bits) {
        BigFloat r(bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    std::string str(int digits = 20) const {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    bool is_integer() const { return mpfr_integer_p(v_) != 0; }

#define GBETA_BIGFLOAT_BINOP(op, fn)                                            \
    friend BigFloat operator op(const BigFloat& a, const BigFloat& b) {         \
        BigFloat r(std::max(a.bits(), b.bits()));                               \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                        \
        return r;                                                               \
    }
    GBETA_BIGFLOAT_BINOP(+, mpfr_add)
    GBETA_BIGFLOAT_BINOP(-, mpfr_sub)
    GBETA_BIGFLOAT_BINOP(*, mpfr_mul)
    GBETA_BIGFLOAT_BINOP(/, mpfr_div)
#undef GBETA_BIGFLOAT_BINOP

    friend BigFloat operator*(long k, const BigFloat& a) {
        BigFloat r(a.bits());
        mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(long k, const BigFloat& a) {
        BigFloat r(a.bits());
        mpfr_add_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(long k, const BigFloat& a) {
        BigFloat r(a.bits());
        mpfr_si_sub(r.v_, k, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, long k) {
        BigFloat r(a.bits());
        mpfr_sub_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(bits());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
    int cmp_si(long k) const { return mpfr_cmp_si(v_, k); }

    friend BigFloat abs(const BigFloat& a) { return unary(a, mpfr_abs); }
    friend BigFloat cos(const BigFloat& a) { return unary(a, mpfr_cos); }
    friend BigFloat acos(const BigFloat& a) { return unary(a, mpfr_acos); }

    friend BigFloat floor(const BigFloat& a) {
        BigFloat r(a.bits());
        mpfr_floor(r.v_, a.v_);
        return r;
    }

    long to_long() const { return mpfr_get_si(v_, MPFR_RNDZ); }

private:
    template <typename Fn>
    static BigFloat unary(const BigFloat& a, Fn fn) {
        BigFloat r(a.bits());
        fn(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

/// The algebraic number rounded to `bits` of precision.
inline BigFloat to_bigfloat(const AlgebraicReal& a, unsigned bits) {
    const AlgebraicReal r = a.refined(Rational(1, Integer(1) << (bits + 8)));
    return BigFloat(Rational((r.lo() + r.hi()) / 2), bits);
}

}  // namespace gbeta
