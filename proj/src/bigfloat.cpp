#include "mpoly/bigfloat.hpp"

#include <cmath>

namespace mpoly {

double BigFloat::log2_abs() const {
    if (mpfr_zero_p(v_)) return -1e300;
    long e;
    double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

Integer BigFloat::round() const {
    Integer r;
    mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDN);
    return r;
}

BigFloat bf_pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

BigFloat bf_sqrt(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat bf_exp(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat bf_abs(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

double BigFloatComplex::log2_abs() const { return 0.5 * norm().log2_abs(); }

BigFloatComplex cx_exp(const BigFloatComplex& z) {
    BigFloat m = bf_exp(z.re);
    BigFloat s(z.prec()), c(z.prec());
    mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
    return {m * c, m * s};
}

BigFloatComplex cx_pow(const BigFloatComplex& z, unsigned n) {
    BigFloatComplex r{BigFloat(1.0, z.prec()), BigFloat(0.0, z.prec())};
    BigFloatComplex b = z;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

BigFloatComplex cx_from(double re, double im, mpfr_prec_t prec) { return {BigFloat(re, prec), BigFloat(im, prec)}; }

}  // namespace mpoly
