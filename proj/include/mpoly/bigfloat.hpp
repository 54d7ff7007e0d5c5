#pragma once

#include <mpfr.h>

#include <utility>

#include "mpoly/arith.hpp"

namespace mpoly {

// RAII wrapper around mpfr_t; all results take the precision of the left operand
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const Integer& x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
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

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(a.prec());
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(a.prec());
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(a.prec());
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(a.prec());
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& b) { return mpfr_add(v_, v_, b.v_, MPFR_RNDN), *this; }
    BigFloat& operator-=(const BigFloat& b) { return mpfr_sub(v_, v_, b.v_, MPFR_RNDN), *this; }
    BigFloat& operator*=(const BigFloat& b) { return mpfr_mul(v_, v_, b.v_, MPFR_RNDN), *this; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // log2 |x|, very negative for zero
    double log2_abs() const;
    Integer round() const;

private:
    mpfr_t v_;
};

BigFloat bf_pi(mpfr_prec_t prec);
BigFloat bf_sqrt(const BigFloat& x);
BigFloat bf_exp(const BigFloat& x);
BigFloat bf_abs(const BigFloat& x);

struct BigFloatComplex {
    BigFloat re, im;

    explicit BigFloatComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    BigFloatComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    mpfr_prec_t prec() const { return re.prec(); }

    friend BigFloatComplex operator+(const BigFloatComplex& a, const BigFloatComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigFloatComplex operator-(const BigFloatComplex& a, const BigFloatComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigFloatComplex operator*(const BigFloatComplex& a, const BigFloatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigFloatComplex operator/(const BigFloatComplex& a, const BigFloatComplex& b) {
        BigFloat n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    BigFloatComplex conj() const { return {re, -im}; }
    BigFloat norm() const { return re * re + im * im; }
    double log2_abs() const;
};

BigFloatComplex cx_exp(const BigFloatComplex& z);
BigFloatComplex cx_pow(const BigFloatComplex& z, unsigned n);
BigFloatComplex cx_from(double re, double im, mpfr_prec_t prec);

}  // namespace mpoly
