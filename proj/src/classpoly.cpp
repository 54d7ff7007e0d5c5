#include "mpoly/classpoly.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mpoly/quadform.hpp"

namespace mpoly {

Poly ClassPolynomial::reduce(const PrimeField& F) const {
    Poly f(coefficients.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = F.from_integer(coefficients[i]);
    trim(f);
    return f;
}

void ClassPolynomial::write(std::ostream& os) const {
    os << "CLASSPOLY D=" << D << " h=" << degree() << '\n';
    for (const auto& c : coefficients) os << c.get_str() << '\n';
}

ClassPolynomial ClassPolynomial::read(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("ClassPolynomial::read: empty input");
    std::istringstream hs(header);
    std::string tag, dtok, htok;
    hs >> tag >> dtok >> htok;
    if (tag != "CLASSPOLY" || dtok.rfind("D=", 0) != 0 || htok.rfind("h=", 0) != 0)
        throw std::runtime_error("ClassPolynomial::read: bad header");
    ClassPolynomial H;
    H.D = std::stoll(dtok.substr(2));
    std::size_t h = std::stoul(htok.substr(2));
    for (std::size_t i = 0; i <= h; ++i) {
        std::string line;
        if (!std::getline(is, line)) throw std::runtime_error("ClassPolynomial::read: truncated");
        H.coefficients.emplace_back(line);
    }
    if (H.coefficients.back() != 1) throw std::runtime_error("ClassPolynomial::read: not monic");
    return H;
}

BigFloatComplex pentagonal_series(const BigFloatComplex& x) {
    const mpfr_prec_t prec = x.prec();
    double lx = x.log2_abs();
    if (!(lx < 0)) throw std::domain_error("pentagonal_series: |x| must be below 1");
    BigFloatComplex sum = cx_from(1.0, 0.0, prec);
    BigFloatComplex x2 = x * x;
    BigFloatComplex x3 = x2 * x;
    // a = x^(k(3k-1)/2), step = x^(3k+1), xk = x^k
    BigFloatComplex a = x;
    BigFloatComplex xk = x;
    BigFloatComplex step = x2 * x2;
    const double target = -static_cast<double>(prec) - 16;
    for (long k = 1;; ++k) {
        BigFloatComplex b = a * xk;
        BigFloatComplex pair = a + b;
        if (k & 1) {
            sum = sum - pair;
        } else {
            sum = sum + pair;
        }
        if (lx * static_cast<double>(k) * (3 * k - 1) / 2 < target) break;
        a = a * step;
        step = step * x3;
        xk = xk * x;
    }
    return sum;
}

BigFloatComplex weber_f_value(const BigFloatComplex& tau) {
    const mpfr_prec_t prec = tau.prec();
    if (mpfr_sgn(tau.im.get()) <= 0) throw std::domain_error("weber_f: Im(tau) must be positive");
    BigFloat pi = bf_pi(prec);
    // pi*i*tau = -pi*Im + i*pi*Re
    BigFloatComplex pit{-(pi * tau.im), pi * tau.re};
    BigFloatComplex e1 = cx_exp(pit);  // e^(pi i tau)
    BigFloatComplex q = e1 * e1;
    BigFloatComplex minus_e1{-e1.re, -e1.im};
    BigFloat d24(24.0, prec);
    BigFloatComplex pre = cx_exp(BigFloatComplex{-(pit.re / d24), -(pit.im / d24)});
    return pre * pentagonal_series(minus_e1) / pentagonal_series(q);
}

BigFloatComplex gamma2_value(const BigFloatComplex& tau) {
    BigFloatComplex f = weber_f_value(tau);
    BigFloatComplex f8 = cx_pow(f, 8);
    BigFloatComplex f24 = f8 * f8 * f8;
    return (f24 - cx_from(16.0, 0.0, tau.prec())) / f8;
}

BigFloatComplex eval_j(const BigFloatComplex& tau) {
    BigFloatComplex g = gamma2_value(tau);
    return g * g * g;
}

BigFloatComplex cm_point(i64 a, i64 b, i64 D, mpfr_prec_t prec) {
    BigFloat den(static_cast<double>(2 * a), prec);
    BigFloat re = BigFloat(static_cast<double>(-b), prec) / den;
    BigFloat im = bf_sqrt(BigFloat(from_i64(-D), prec)) / den;
    return {re, im};
}

namespace {

// returns false if some coefficient misses the rounding margin
bool try_hilbert(i64 D, const std::vector<QuadForm>& forms, mpfr_prec_t prec, std::vector<Integer>& out) {
    std::vector<BigFloat> poly{BigFloat(1.0, prec)};
    auto mul_linear = [&](const BigFloat& c0) {
        // poly *= (X + c0)
        std::vector<BigFloat> r(poly.size() + 1, BigFloat(prec));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            r[i + 1] += poly[i];
            r[i] += poly[i] * c0;
        }
        poly = std::move(r);
    };
    auto mul_quadratic = [&](const BigFloat& c1, const BigFloat& c0) {
        // poly *= (X^2 + c1 X + c0)
        std::vector<BigFloat> r(poly.size() + 2, BigFloat(prec));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            r[i + 2] += poly[i];
            r[i + 1] += poly[i] * c1;
            r[i] += poly[i] * c0;
        }
        poly = std::move(r);
    };
    for (const auto& f : forms) {
        if (f.b < 0) continue;  // handled as the conjugate of (a, -b, c)
        BigFloatComplex j = eval_j(cm_point(f.a, f.b, D, prec));
        bool ambiguous = f.b == 0 || f.b == f.a || f.a == f.c;
        if (ambiguous) {
            mul_linear(-j.re);
        } else {
            BigFloat two(2.0, prec);
            mul_quadratic(-(two * j.re), j.norm());
        }
    }
    out.clear();
    for (const auto& c : poly) {
        Integer r = c.round();
        BigFloat diff = c - BigFloat(r, prec);
        if (bf_abs(diff).to_double() >= 0.25) return false;
        out.push_back(r);
    }
    return true;
}

}  // namespace

ClassPolynomial hilbert_class_poly(i64 D) {
    if (D >= -4 || !is_discriminant(D)) throw std::domain_error("hilbert_class_poly: need a discriminant below -4");
    auto forms = reduced_forms(D);
    double inv_a = 0;
    for (const auto& f : forms) inv_a += 1.0 / static_cast<double>(f.a);
    const double pi = 3.14159265358979323846;
    double est = pi * std::sqrt(static_cast<double>(-D)) * inv_a * std::log2(std::exp(1.0)) + 64;
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(est + std::log2(static_cast<double>(forms.size()) + 1) * 2);
    ClassPolynomial H;
    H.D = D;
    for (int attempt = 0; attempt < 8; ++attempt, prec *= 2) {
        if (try_hilbert(D, forms, prec, H.coefficients)) {
            if (H.degree() != forms.size() || H.coefficients.back() != 1)
                throw std::logic_error("hilbert_class_poly: degree mismatch");
            return H;
        }
    }
    throw std::runtime_error("hilbert_class_poly: rounding margin not reached");
}

ClassPolynomial hilbert_class_poly_cached(i64 D, const std::optional<std::string>& cache_dir) {
    if (!cache_dir) return hilbert_class_poly(D);
    namespace fs = std::filesystem;
    fs::path dir = fs::path(*cache_dir) / "classpoly";
    fs::path file = dir / ("D" + std::to_string(-D) + ".txt");
    if (fs::exists(file)) {
        std::ifstream in(file);
        ClassPolynomial H = ClassPolynomial::read(in);
        if (H.D == D && static_cast<i64>(H.degree()) == class_number(D)) return H;
    }
    ClassPolynomial H = hilbert_class_poly(D);
    fs::create_directories(dir);
    std::ofstream out(file);
    H.write(out);
    return H;
}

u64 find_surface_root(const ClassPolynomial& H, const PrimeField& F) {
    Poly f = H.reduce(F);
    auto r = find_one_root(F, f);
    if (!r) throw std::runtime_error("find_surface_root: class polynomial has no root mod p");
    return *r;
}

}  // namespace mpoly
