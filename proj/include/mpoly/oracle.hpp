#pragma once

#include <cstdint>
#include <vector>

#include "mpoly/bigfloat.hpp"
#include "mpoly/bivariate.hpp"

namespace mpoly {

// truncated Laurent series in q^(1/denominator): coeffs[i] multiplies q^((valuation + i) / denominator)
struct IntSeries {
    int denominator = 1;
    long valuation = 0;
    std::vector<Integer> coeffs;

    long precision() const { return valuation + static_cast<long>(coeffs.size()); }  // first unknown exponent
    Integer coefficient(long e) const;
    friend IntSeries operator*(const IntSeries& a, const IntSeries& b);
};

// 1/q + 744 + 196884 q + ..., terms coefficients starting at q^-1
IntSeries j_qexp(std::size_t terms);

// Phi_l for invariant j, by power sums of the conjugates of j(lz) and CRT over word-size primes
BivariatePoly phi_qexp(u64 l);
// Phi_l mod p by the same route, p > 2l + 2
DensePhi phi_qexp_mod_p(u64 l, const PrimeField& F, const std::vector<Integer>& j_coeffs);

BigFloatComplex weber_f_eval(const BigFloatComplex& tau, mpfr_prec_t prec);
BigFloatComplex gamma2_eval(const BigFloatComplex& tau, mpfr_prec_t prec);

// Phi_l^g for g in {gamma2, weber-f} by floating-point sampling and a least-squares solve
BivariatePoly eval_interp_phi(Invariant inv, u64 l, std::uint64_t seed = 1, mpfr_prec_t prec = 0);

}  // namespace mpoly
