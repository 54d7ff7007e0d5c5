#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mpoly/bigfloat.hpp"
#include "mpoly/ffpoly.hpp"

namespace mpoly {

struct ClassPolynomial {
    i64 D = 0;
    std::vector<Integer> coefficients;  // low to high degree, monic

    std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    Poly reduce(const PrimeField& F) const;

    void write(std::ostream& os) const;
    static ClassPolynomial read(std::istream& is);
};

// sum over k in Z of (-1)^k x^(k(3k-1)/2), |x| < 1
BigFloatComplex pentagonal_series(const BigFloatComplex& x);
BigFloatComplex weber_f_value(const BigFloatComplex& tau);
BigFloatComplex gamma2_value(const BigFloatComplex& tau);
BigFloatComplex eval_j(const BigFloatComplex& tau);

// CM point (-b + sqrt(D)) / (2a)
BigFloatComplex cm_point(i64 a, i64 b, i64 D, mpfr_prec_t prec);

ClassPolynomial hilbert_class_poly(i64 D);
// loads from or stores into <cache_dir>/classpoly/D<|D|>.txt when a directory is given
ClassPolynomial hilbert_class_poly_cached(i64 D, const std::optional<std::string>& cache_dir);

u64 find_surface_root(const ClassPolynomial& H, const PrimeField& F);

}  // namespace mpoly
