#include "mpoly/oracle.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mpoly/classpoly.hpp"
#include "mpoly/crt.hpp"
#include "mpoly/primes.hpp"

namespace mpoly {

Integer IntSeries::coefficient(long e) const {
    if (e < valuation) return 0;
    if (e >= precision()) throw std::out_of_range("IntSeries: coefficient beyond truncation");
    return coeffs[static_cast<std::size_t>(e - valuation)];
}

IntSeries operator*(const IntSeries& a, const IntSeries& b) {
    if (a.denominator != b.denominator) throw std::invalid_argument("IntSeries: denominator mismatch");
    IntSeries r;
    r.denominator = a.denominator;
    r.valuation = a.valuation + b.valuation;
    long prec = std::min(a.precision() + b.valuation, b.precision() + a.valuation);
    std::size_t n = static_cast<std::size_t>(std::max(0L, prec - r.valuation));
    r.coeffs.assign(n, 0);
    for (std::size_t i = 0; i < a.coeffs.size() && i < n; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t k = 0; i + k < n && k < b.coeffs.size(); ++k) r.coeffs[i + k] += a.coeffs[i] * b.coeffs[k];
    }
    return r;
}

IntSeries j_qexp(std::size_t terms) {
    if (terms < 2) throw std::invalid_argument("j_qexp: need at least 2 terms");
    const std::size_t n = terms;  // coefficients of q^0 .. q^(n-1) in the power series parts
    std::vector<Integer> e4(n, 0), prod(n, 0);
    e4[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        Integer s = 0;
        for (std::size_t d = 1; d <= k; ++d)
            if (k % d == 0) s += Integer(d) * d * d;
        e4[k] = 240 * s;
    }
    // prod_{n>=1} (1 - q^n) by the pentagonal expansion
    for (long k = 0;; ++k) {
        bool any = false;
        for (long sgn : {1L, -1L}) {
            if (k == 0 && sgn == -1) continue;
            long kk = sgn * k;
            long e = kk * (3 * kk - 1) / 2;
            if (e < static_cast<long>(n)) {
                prod[static_cast<std::size_t>(e)] += (k % 2 ? -1 : 1);
                any = true;
            }
        }
        if (!any) break;
    }
    IntSeries E4{1, 0, e4};
    IntSeries P{1, 0, prod};
    IntSeries P2 = P * P, P4 = P2 * P2, P8 = P4 * P4, P16 = P8 * P8, P24 = P16 * P8;
    // inverse of P24, constant term 1
    std::vector<Integer> inv(n, 0);
    inv[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        Integer s = 0;
        for (std::size_t i = 1; i <= k; ++i) s += P24.coeffs[i] * inv[k - i];
        inv[k] = -s;
    }
    IntSeries J = E4 * E4 * E4 * IntSeries{1, 0, inv};
    J.valuation = -1;
    return J;
}

namespace {

std::size_t slot(std::size_t a, std::size_t b) { return a * (a + 1) / 2 + b; }

}  // namespace

DensePhi phi_qexp_mod_p(u64 l, const PrimeField& F, const std::vector<Integer>& j_coeffs) {
    const std::size_t n = l + 2;
    const std::size_t N = l * (l + 1);
    if (j_coeffs.size() < N + 1) throw std::invalid_argument("phi_qexp_mod_p: j series too short");
    if (F.p() <= 2 * l + 2) throw std::invalid_argument("phi_qexp_mod_p: prime too small");
    std::vector<u64> jc(N + 1);
    for (std::size_t i = 0; i <= N; ++i) jc[i] = F.from_integer(j_coeffs[i]);
    // pw[k][i] = coefficient of q^(i-k) in j^k, i = 0..N
    std::vector<std::vector<u64>> pw(N + 1);
    pw[0].assign(N + 1, 0);
    pw[0][0] = 1;
    for (std::size_t k = 1; k <= N; ++k) {
        const auto& prev = pw[k - 1];
        std::vector<u64> cur(N + 1, 0);
        for (std::size_t i = 0; i <= N; ++i) {
            u64 s = 0;
            for (std::size_t t = 0; t <= i; ++t)
                if (prev[t]) s = F.add(s, F.mul(prev[t], jc[i - t]));
            cur[i] = s;
        }
        pw[k] = std::move(cur);
    }
    const u64 lmod = F.from_int(static_cast<i64>(l));
    std::vector<Poly> S(n);  // power sums as polynomials in Y
    for (std::size_t m = 1; m < n; ++m) {
        const std::size_t top = l * m;
        std::vector<u64> s(top + 1, 0);  // s[d] = coefficient of q^-d
        const auto& Pm = pw[m];
        for (std::size_t e = 0; e <= m; ++e) s[l * e] = F.add(s[l * e], Pm[m - e]);
        for (std::size_t k = 0; k * l <= m; ++k) s[k] = F.add(s[k], F.mul(lmod, Pm[m - k * l]));
        Poly Sm(top + 1, 0);
        for (std::size_t d = top + 1; d-- > 0;) {
            u64 c = s[d];
            Sm[d] = c;
            if (c == 0) continue;
            const auto& Pd = pw[d];
            for (std::size_t i = 0; i <= d; ++i) s[d - i] = F.sub(s[d - i], F.mul(c, Pd[i]));
        }
        trim(Sm);
        S[m] = std::move(Sm);
    }
    std::vector<Poly> e(n);
    e[0] = Poly{1};
    for (std::size_t m = 1; m < n; ++m) {
        Poly acc;
        for (std::size_t i = 1; i <= m; ++i) {
            Poly t = poly_mul(F, e[m - i], S[i]);
            acc = (i % 2) ? poly_add(F, acc, t) : poly_sub(F, acc, t);
        }
        e[m] = poly_scale(F, acc, F.inv(F.from_int(static_cast<i64>(m))));
        if (degree(e[m]) > static_cast<int>(l + 1)) throw std::logic_error("phi_qexp_mod_p: degree overflow");
    }
    DensePhi phi(l + 1, F);
    for (std::size_t m = 0; m < n; ++m) {
        std::size_t a = l + 1 - m;
        for (std::size_t b = 0; b < e[m].size(); ++b) phi.at(a, b) = (m % 2) ? F.neg(e[m][b]) : e[m][b];
    }
    if (!phi.symmetric()) throw std::logic_error("phi_qexp_mod_p: result not symmetric");
    return phi;
}

BivariatePoly phi_qexp(u64 l) {
    if (l < 2 || l > 13 || !is_prime_u64(l)) throw std::invalid_argument("phi_qexp: l must be a prime up to 13");
    const std::size_t N = l * (l + 1);
    IntSeries J = j_qexp(N + 1);
    const double need = height_bound(l, Invariant::J) + 2;
    std::vector<u64> ps;
    double bits = 0;
    for (u64 p = (u64{1} << 61) - 1; bits < need + 61; p -= 2) {
        if (!is_prime_u64(p)) continue;
        ps.push_back(p);
        bits += std::log2(static_cast<double>(p));
    }
    const std::size_t n = l + 2;
    const std::size_t slots = n * (n + 1) / 2;
    auto run = [&](const std::vector<u64>& primes) {
        CrtAccumulator acc(primes, slots, CrtMode::Exact);
        for (std::size_t i = 0; i < primes.size(); ++i) {
            PrimeField F(primes[i]);
            DensePhi phi = phi_qexp_mod_p(l, F, J.coeffs);
            std::vector<u64> res(slots);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b <= a; ++b) res[slot(a, b)] = phi.at(a, b);
            acc.update(i, res);
        }
        return acc.finalize();
    };
    auto full = run(ps);
    ps.pop_back();
    if (run(ps) != full) throw std::logic_error("phi_qexp: CRT result unstable");
    BivariatePoly out(l, Invariant::J, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b <= a; ++b) out.set(static_cast<unsigned>(a), static_cast<unsigned>(b), full[slot(a, b)]);
    return out;
}

namespace {

BigFloatComplex with_prec(const BigFloatComplex& z, mpfr_prec_t prec) {
    BigFloatComplex r(prec);
    mpfr_set(r.re.get(), z.re.get(), MPFR_RNDN);
    mpfr_set(r.im.get(), z.im.get(), MPFR_RNDN);
    return r;
}

BigFloatComplex invariant_value(Invariant inv, const BigFloatComplex& tau) {
    return inv == Invariant::Gamma2 ? gamma2_value(tau) : weber_f_value(tau);
}

struct Sample {
    BigFloatComplex x, y;
};

std::vector<Sample> draw_samples(Invariant inv, u64 l, std::size_t count, mpfr_prec_t prec, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> du(-0.5, 0.5), ds(0.85, 1.15);
    const double base = 1.0 / std::sqrt(static_cast<double>(l));
    std::vector<Sample> out;
    for (std::size_t i = 0; i < count; ++i) {
        BigFloatComplex tau = cx_from(du(rng), ds(rng) * base, prec);
        BigFloatComplex ltau{tau.re * BigFloat(static_cast<double>(l), prec), tau.im * BigFloat(static_cast<double>(l), prec)};
        out.push_back({invariant_value(inv, tau), invariant_value(inv, ltau)});
    }
    return out;
}

// x^a y^b + x^b y^a (once when a == b), from power tables
BigFloatComplex monomial(const std::vector<BigFloatComplex>& xp, const std::vector<BigFloatComplex>& yp, unsigned a, unsigned b) {
    BigFloatComplex m = xp[a] * yp[b];
    if (a != b) m = m + xp[b] * yp[a];
    return m;
}

std::vector<BigFloatComplex> powers(const BigFloatComplex& z, unsigned n) {
    std::vector<BigFloatComplex> p;
    p.push_back(cx_from(1.0, 0.0, z.prec()));
    for (unsigned i = 1; i <= n; ++i) p.push_back(p.back() * z);
    return p;
}

// least squares by Householder QR; A is row-major rows x cols
std::vector<BigFloat> least_squares(std::vector<std::vector<BigFloat>> A, std::vector<BigFloat> rhs, mpfr_prec_t prec) {
    const std::size_t rows = A.size(), cols = A[0].size();
    for (std::size_t k = 0; k < cols; ++k) {
        BigFloat norm2(prec);
        for (std::size_t i = k; i < rows; ++i) norm2 += A[i][k] * A[i][k];
        BigFloat alpha = bf_sqrt(norm2);
        if (mpfr_sgn(A[k][k].get()) > 0) alpha = -alpha;
        // v = x - alpha e_k, stored in column k from row k
        std::vector<BigFloat> v(rows - k, BigFloat(prec));
        for (std::size_t i = k; i < rows; ++i) v[i - k] = A[i][k];
        v[0] -= alpha;
        BigFloat vnorm2(prec);
        for (const auto& x : v) vnorm2 += x * x;
        if (mpfr_zero_p(vnorm2.get())) continue;
        BigFloat two(2.0, prec);
        for (std::size_t j = k; j < cols; ++j) {
            BigFloat dot(prec);
            for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * A[i][j];
            BigFloat f = two * dot / vnorm2;
            for (std::size_t i = k; i < rows; ++i) A[i][j] -= f * v[i - k];
        }
        BigFloat dot(prec);
        for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * rhs[i];
        BigFloat f = two * dot / vnorm2;
        for (std::size_t i = k; i < rows; ++i) rhs[i] -= f * v[i - k];
    }
    std::vector<BigFloat> x(cols, BigFloat(prec));
    for (std::size_t k = cols; k-- > 0;) {
        BigFloat s = rhs[k];
        for (std::size_t j = k + 1; j < cols; ++j) s -= A[k][j] * x[j];
        if (mpfr_zero_p(A[k][k].get())) throw std::runtime_error("eval_interp_phi: singular sample matrix");
        x[k] = s / A[k][k];
    }
    return x;
}

}  // namespace

BigFloatComplex weber_f_eval(const BigFloatComplex& tau, mpfr_prec_t prec) { return weber_f_value(with_prec(tau, prec)); }

BigFloatComplex gamma2_eval(const BigFloatComplex& tau, mpfr_prec_t prec) { return gamma2_value(with_prec(tau, prec)); }

BivariatePoly eval_interp_phi(Invariant inv, u64 l, std::uint64_t seed, mpfr_prec_t prec) {
    if (inv == Invariant::J) throw std::invalid_argument("eval_interp_phi: use phi_qexp for j");
    const u64 level = inv == Invariant::Gamma2 ? 3 : 48;
    if (l < 2 || l > 13 || !is_prime_u64(l) || std::gcd(l, level) != 1)
        throw std::invalid_argument("eval_interp_phi: l must be a prime up to 13 coprime to the level");
    const unsigned n = static_cast<unsigned>(l + 1);
    std::vector<std::pair<unsigned, unsigned>> unknowns;
    for (unsigned a = 0; a <= l; ++a)
        for (unsigned b = 0; b <= a; ++b)
            if (in_support(inv, l, a, b)) unknowns.push_back({a, b});
    const double height = height_bound(l, Invariant::Gamma2);
    if (prec == 0) prec = std::max<mpfr_prec_t>(512, static_cast<mpfr_prec_t>(12 * height));
    std::mt19937_64 rng(seed);
    const std::size_t samples = std::max<std::size_t>(2 * (l + 2) * (l + 1), unknowns.size() + 8);
    for (int attempt = 0; attempt < 4; ++attempt, prec *= 2) {
        auto pts = draw_samples(inv, l, samples, prec, rng);
        std::vector<std::vector<BigFloat>> A;
        std::vector<BigFloat> rhs;
        for (const auto& s : pts) {
            auto xp = powers(s.x, n), yp = powers(s.y, n);
            BigFloatComplex r = xp[n] + yp[n];
            // rows are scaled by the largest known term
            BigFloat scale = bf_sqrt(r.norm());
            std::vector<BigFloat> re, im;
            for (auto [a, b] : unknowns) {
                BigFloatComplex m = monomial(xp, yp, a, b);
                re.push_back(m.re / scale);
                im.push_back(m.im / scale);
            }
            A.push_back(std::move(re));
            A.push_back(std::move(im));
            rhs.push_back(-(r.re / scale));
            rhs.push_back(-(r.im / scale));
        }
        auto sol = least_squares(std::move(A), std::move(rhs), prec);
        BivariatePoly out(l, inv, 0);
        out.set(n, 0, 1);
        bool margin_ok = true;
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            Integer r = sol[k].round();
            if (bf_abs(sol[k] - BigFloat(r, prec)).to_double() >= 0.25) margin_ok = false;
            out.set(unknowns[k].first, unknowns[k].second, r);
        }
        if (!margin_ok) continue;
        // residual at fresh samples, relative to the leading terms
        bool residual_ok = true;
        for (const auto& s : draw_samples(inv, l, 8, prec, rng)) {
            auto xp = powers(s.x, n), yp = powers(s.y, n);
            BigFloatComplex total = xp[n] + yp[n];
            double scale = total.log2_abs();
            for (const auto& [k, c] : out.entries()) {
                if (k.first == n) continue;
                BigFloatComplex m = monomial(xp, yp, k.first, k.second);
                BigFloat cf(c, prec);
                total = total + BigFloatComplex{m.re * cf, m.im * cf};
                scale = std::max(scale, m.log2_abs() + log2_abs(c));
            }
            if (total.log2_abs() > scale - static_cast<double>(prec) / 4) residual_ok = false;
        }
        if (residual_ok) return out;
    }
    throw std::runtime_error("eval_interp_phi: rounding margin not reached");
}

}  // namespace mpoly
