#include "mpoly/ffpoly.hpp"

#include <gmp.h>

#include <algorithm>
#include <stdexcept>

namespace mpoly {

namespace {
constexpr std::size_t kSchoolbookCutoff = 64;
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (p < 5 || (p >> 63)) throw std::domain_error("PrimeField: p must be a prime in (3, 2^63)");
    small_ = p < (u64(1) << 62);
    pinv_ = 1.0L / static_cast<long double>(p);
}

u64 PrimeField::pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 PrimeField::pow(u64 a, const Integer& e) const {
    u64 r = 1;
    std::size_t n = bit_length(e);
    for (std::size_t i = n; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
}

u64 PrimeField::inv(u64 a) const {
    if (a == 0) throw std::domain_error("PrimeField::inv: zero");
    return invmod(a, p_);
}

u64 PrimeField::from_int(i64 v) const {
    i64 r = v % static_cast<i64>(p_);
    if (r < 0) r += static_cast<i64>(p_);
    return static_cast<u64>(r);
}

u64 PrimeField::from_integer(const Integer& v) const {
    return static_cast<u64>(mpz_fdiv_ui(v.get_mpz_t(), p_));
}

bool PrimeField::is_square(u64 a) const { return a == 0 || pow(a, (p_ - 1) / 2) == 1; }

u64 PrimeField::smallest_nonresidue() const {
    for (u64 z = 2;; ++z) {
        if (!is_square(z)) return z;
    }
}

u64 PrimeField::sqrt(u64 a) const {
    if (a == 0) return 0;
    if (!is_square(a)) throw std::domain_error("PrimeField::sqrt: non-residue");
    if ((p_ & 3) == 3) return pow(a, (p_ + 1) / 4);
    // Tonelli-Shanks
    u64 q = p_ - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = smallest_nonresidue();
    u64 m = s;
    u64 c = pow(z, q);
    u64 t = pow(a, q);
    u64 r = pow(a, (q + 1) / 2);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mul(tt, tt);
            ++i;
        }
        u64 b = c;
        for (u64 k = 0; k + 1 < m - i; ++k) b = mul(b, b);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    return r;
}

u64 PrimeField::cube_root(u64 x) const {
    if (p_ % 3 != 2) throw std::domain_error("cube_root: requires p = 2 mod 3");
    // (2p-1)/3 may exceed 2^64 only if p >= 2^63, excluded
    return pow(x, static_cast<u64>((static_cast<u128>(2) * p_ - 1) / 3));
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_add(const PrimeField& F, const Poly& f, const Poly& g) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = F.add(r[i], g[i]);
    trim(r);
    return r;
}

Poly poly_sub(const PrimeField& F, const Poly& f, const Poly& g) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = F.sub(r[i], g[i]);
    trim(r);
    return r;
}

Poly poly_scale(const PrimeField& F, const Poly& f, u64 c) {
    Poly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = F.mul(f[i], c);
    trim(r);
    return r;
}

Poly poly_mul_schoolbook(const PrimeField& F, const Poly& f, const Poly& g) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(f[i], g[j]));
    }
    trim(r);
    return r;
}

namespace {

// Kronecker substitution: each coefficient occupies three 64-bit limbs
Poly poly_mul_kronecker(const PrimeField& F, const Poly& f, const Poly& g) {
    const Poly& a = f.size() >= g.size() ? f : g;
    const Poly& b = f.size() >= g.size() ? g : f;
    std::vector<mp_limb_t> pa(3 * a.size(), 0), pb(3 * b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) pa[3 * i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) pb[3 * i] = b[i];
    std::size_t na = pa.size(), nb = pb.size();
    while (na > 1 && pa[na - 1] == 0) --na;
    while (nb > 1 && pb[nb - 1] == 0) --nb;
    std::vector<mp_limb_t> pr(na + nb + 3, 0);
    mpn_mul(pr.data(), pa.data(), na, pb.data(), nb);
    const u64 p = F.p();
    const u64 two64 = static_cast<u64>((static_cast<u128>(1) << 64) % p);
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 l0 = 3 * i < pr.size() ? pr[3 * i] : 0;
        u64 l1 = 3 * i + 1 < pr.size() ? pr[3 * i + 1] : 0;
        u64 l2 = 3 * i + 2 < pr.size() ? pr[3 * i + 2] : 0;
        u64 v = F.mul(l2 % p, two64);
        v = F.add(v, l1 % p);
        v = F.mul(v, two64);
        r[i] = F.add(v, l0 % p);
    }
    trim(r);
    return r;
}

Poly reverse(const Poly& f, std::size_t n) {
    // coefficients of X^(n-1) f(1/X)
    Poly r(n, 0);
    for (std::size_t i = 0; i < n && i < f.size(); ++i) r[n - 1 - i] = f[i];
    trim(r);
    return r;
}

Poly truncate(Poly f, std::size_t n) {
    if (f.size() > n) f.resize(n);
    trim(f);
    return f;
}

// inverse of h modulo X^n, h(0) != 0
Poly series_inverse(const PrimeField& F, const Poly& h, std::size_t n) {
    Poly g{F.inv(h[0])};
    std::size_t k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        Poly e = truncate(poly_mul(F, truncate(h, k), g), k);
        // g <- g (2 - e)
        Poly two_minus(e.size() ? e.size() : 1, 0);
        for (std::size_t i = 0; i < e.size(); ++i) two_minus[i] = F.neg(e[i]);
        two_minus[0] = F.add(two_minus[0], 2);
        trim(two_minus);
        g = truncate(poly_mul(F, g, two_minus), k);
    }
    return g;
}

void divrem_schoolbook(const PrimeField& F, const Poly& f, const Poly& g, Poly* q, Poly* r) {
    Poly rem = f;
    trim(rem);
    int dg = degree(g);
    if (degree(rem) < dg) {
        if (q) q->clear();
        if (r) *r = rem;
        return;
    }
    Poly quo(rem.size() - g.size() + 1, 0);
    u64 linv = F.inv(g.back());
    for (int i = degree(rem); i >= dg; --i) {
        u64 c = F.mul(rem[i], linv);
        quo[i - dg] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) rem[i - dg + j] = F.sub(rem[i - dg + j], F.mul(c, g[j]));
    }
    rem.resize(dg);
    trim(rem);
    trim(quo);
    if (q) *q = std::move(quo);
    if (r) *r = std::move(rem);
}

// f mod g with precomputed inverse of reversed g (fast path)
struct Modulus {
    Poly g;
    Poly rinv;  // inverse of rev(g) mod X^(deg g)
    const PrimeField* F;

    Modulus(const PrimeField& field, Poly gg) : g(std::move(gg)), F(&field) {
        if (g.size() > kSchoolbookCutoff) rinv = series_inverse(field, reverse(g, g.size()), g.size());
    }

    Poly reduce(const Poly& f) const {
        int df = degree(f), dg = degree(g);
        if (df < dg) return f;
        std::size_t qn = df - dg + 1;
        if (rinv.empty() || qn <= kSchoolbookCutoff) {
            Poly r;
            divrem_schoolbook(*F, f, g, nullptr, &r);
            return r;
        }
        if (qn > rinv.size()) return poly_rem(*F, f, g);
        Poly qrev = truncate(poly_mul(*F, reverse(f, f.size()), truncate(rinv, qn)), qn);
        Poly quo = reverse(qrev, qn);
        Poly r = poly_sub(*F, f, poly_mul(*F, quo, g));
        return r;
    }
};

}  // namespace

Poly poly_mul(const PrimeField& F, const Poly& f, const Poly& g) {
    if (f.empty() || g.empty()) return {};
    if (std::min(f.size(), g.size()) <= kSchoolbookCutoff) return poly_mul_schoolbook(F, f, g);
    return poly_mul_kronecker(F, f, g);
}

void poly_divrem(const PrimeField& F, const Poly& f, const Poly& g, Poly* q, Poly* r) {
    if (g.empty()) throw std::domain_error("poly_divrem: division by zero");
    int df = degree(f), dg = degree(g);
    if (df < dg) {
        if (q) q->clear();
        if (r) *r = f;
        return;
    }
    std::size_t qn = df - dg + 1;
    if (dg < static_cast<int>(kSchoolbookCutoff) || qn <= kSchoolbookCutoff) {
        divrem_schoolbook(F, f, g, q, r);
        return;
    }
    Poly inv = series_inverse(F, reverse(g, g.size()), qn);
    Poly qrev = truncate(poly_mul(F, reverse(f, f.size()), inv), qn);
    Poly quo = reverse(qrev, qn);
    if (r) *r = poly_sub(F, f, poly_mul(F, quo, g));
    if (q) *q = std::move(quo);
}

Poly poly_rem(const PrimeField& F, const Poly& f, const Poly& g) {
    Poly r;
    poly_divrem(F, f, g, nullptr, &r);
    return r;
}

Poly poly_monic(const PrimeField& F, const Poly& f) {
    if (f.empty()) return f;
    return poly_scale(F, f, F.inv(f.back()));
}

Poly poly_gcd(const PrimeField& F, Poly f, Poly g) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        Poly r = poly_rem(F, f, g);
        f = std::move(g);
        g = std::move(r);
    }
    return poly_monic(F, f);
}

Poly poly_derivative(const PrimeField& F, const Poly& f) {
    if (f.size() <= 1) return {};
    Poly r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = F.mul(f[i], i % F.p());
    trim(r);
    return r;
}

u64 poly_eval(const PrimeField& F, const Poly& f, u64 x) {
    u64 r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
    return r;
}

Poly poly_powmod(const PrimeField& F, const Poly& f, const Integer& e, const Poly& m) {
    Modulus mod(F, m);
    Poly base = mod.reduce(f);
    Poly r{1};
    r = mod.reduce(r);
    std::size_t n = bit_length(e);
    for (std::size_t i = n; i-- > 0;) {
        r = mod.reduce(poly_mul(F, r, r));
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mod.reduce(poly_mul(F, r, base));
    }
    return r;
}

Poly frobenius_powmod(const PrimeField& F, const Poly& f) {
    if (degree(f) < 1) throw std::domain_error("frobenius_powmod: degree must be positive");
    Modulus mod(F, f);
    Poly r = mod.reduce(Poly{0, 1});
    const u64 p = F.p();
    int n = 63 - __builtin_clzll(p);
    for (int i = n - 1; i >= 0; --i) {
        r = mod.reduce(poly_mul(F, r, r));
        if ((p >> i) & 1) {
            // multiply by X: shift then reduce
            Poly s(r.size() + 1, 0);
            for (std::size_t k = 0; k < r.size(); ++k) s[k + 1] = r[k];
            trim(s);
            r = mod.reduce(s);
        }
    }
    return r;
}

namespace {

void split_roots(const PrimeField& F, const Poly& g, std::mt19937_64& rng, std::vector<u64>& out) {
    int d = degree(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(F.mul(F.neg(g[0]), F.inv(g[1])));
        return;
    }
    std::uniform_int_distribution<u64> dist(0, F.p() - 1);
    const Integer half = from_u64((F.p() - 1) / 2);
    for (;;) {
        u64 delta = dist(rng);
        Poly h = poly_powmod(F, Poly{delta, 1}, half, g);
        h = poly_sub(F, h, Poly{1});
        Poly a = poly_gcd(F, g, h);
        int da = degree(a);
        if (da > 0 && da < d) {
            Poly b;
            poly_divrem(F, g, a, &b, nullptr);
            split_roots(F, a, rng, out);
            split_roots(F, b, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<u64> roots(const PrimeField& F, const Poly& f0) {
    Poly f = f0;
    trim(f);
    if (f.empty()) throw std::domain_error("roots: zero polynomial");
    std::vector<u64> out;
    if (degree(f) < 1) return out;
    f = poly_monic(F, f);
    if (f[0] == 0) {
        out.push_back(0);
        std::size_t k = 0;
        while (k < f.size() && f[k] == 0) ++k;
        f.erase(f.begin(), f.begin() + k);
    }
    if (degree(f) >= 1) {
        Poly xp = frobenius_powmod(F, f);
        Poly h = poly_sub(F, xp, Poly{0, 1});
        Poly g = poly_gcd(F, f, h);
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ F.p());
        split_roots(F, g, rng, out);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<u64> find_one_root(const PrimeField& F, const Poly& f0) {
    Poly f = f0;
    trim(f);
    if (f.empty()) throw std::domain_error("find_one_root: zero polynomial");
    if (degree(f) < 1) return std::nullopt;
    f = poly_monic(F, f);
    if (f[0] == 0) return u64{0};
    Poly g = poly_gcd(F, f, poly_sub(F, frobenius_powmod(F, f), Poly{0, 1}));
    if (degree(g) < 1) return std::nullopt;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ F.p());
    std::uniform_int_distribution<u64> dist(0, F.p() - 1);
    const Integer half = from_u64((F.p() - 1) / 2);
    while (degree(g) > 1) {
        Poly h = poly_sub(F, poly_powmod(F, Poly{dist(rng), 1}, half, g), Poly{1});
        Poly a = poly_gcd(F, g, h);
        int da = degree(a);
        if (da <= 0 || da >= degree(g)) continue;
        if (2 * da <= degree(g)) {
            g = a;
        } else {
            Poly b;
            poly_divrem(F, g, a, &b, nullptr);
            g = poly_monic(F, b);
        }
    }
    return F.mul(F.neg(g[0]), F.inv(g[1]));
}

namespace {
Poly product_range(const PrimeField& F, const std::vector<u64>& r, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return Poly{F.neg(r[lo]), 1};
    std::size_t mid = (lo + hi) / 2;
    return poly_mul(F, product_range(F, r, lo, mid), product_range(F, r, mid, hi));
}
}  // namespace

Poly product_from_roots(const PrimeField& F, const std::vector<u64>& rts) {
    if (rts.empty()) return Poly{1};
    return product_range(F, rts, 0, rts.size());
}

Interpolator::Interpolator(const PrimeField& F, std::vector<u64> nodes) : F_(F), nodes_(std::move(nodes)) {
    if (nodes_.empty()) return;
    {
        std::vector<u64> s = nodes_;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("interpolate: duplicate abscissa");
    }
    std::vector<Poly> level;
    level.reserve(nodes_.size());
    for (u64 x : nodes_) level.push_back(Poly{F.neg(x), 1});
    tree_.push_back(level);
    while (tree_.back().size() > 1) {
        const auto& cur = tree_.back();
        std::vector<Poly> next;
        for (std::size_t k = 0; k < cur.size(); k += 2) {
            if (k + 1 < cur.size()) {
                next.push_back(poly_mul(F, cur[k], cur[k + 1]));
            } else {
                next.push_back(cur[k]);
            }
        }
        tree_.push_back(std::move(next));
    }
    std::vector<u64> d;
    remainders(poly_derivative(F, master()), d);
    // batch inversion
    std::vector<u64> pre(d.size() + 1, 1);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) throw std::invalid_argument("interpolate: duplicate abscissa");
        pre[i + 1] = F.mul(pre[i], d[i]);
    }
    u64 acc = F.inv(pre.back());
    weights_.assign(d.size(), 0);
    for (std::size_t i = d.size(); i-- > 0;) {
        weights_[i] = F.mul(acc, pre[i]);
        acc = F.mul(acc, d[i]);
    }
}

void Interpolator::remainders(const Poly& f, std::vector<u64>& out) const {
    std::vector<Poly> cur{poly_rem(F_, f, master())};
    for (std::size_t lev = tree_.size() - 1; lev-- > 0;) {
        const auto& nodes = tree_[lev];
        std::vector<Poly> next(nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k) next[k] = poly_rem(F_, cur[k / 2], nodes[k]);
        cur = std::move(next);
    }
    out.assign(nodes_.size(), 0);
    for (std::size_t i = 0; i < cur.size(); ++i) out[i] = cur[i].empty() ? 0 : cur[i][0];
}

std::vector<u64> Interpolator::evaluate(const Poly& f) const {
    std::vector<u64> out;
    if (nodes_.empty()) return out;
    remainders(f, out);
    return out;
}

Poly Interpolator::operator()(const std::vector<u64>& values) const {
    if (values.size() != nodes_.size()) throw std::invalid_argument("Interpolator: value count mismatch");
    if (nodes_.empty()) return {};
    std::vector<Poly> cur(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        u64 c = F_.mul(values[i], weights_[i]);
        if (c) cur[i] = Poly{c};
    }
    for (std::size_t lev = 0; lev + 1 < tree_.size(); ++lev) {
        const auto& nodes = tree_[lev];
        std::vector<Poly> next((nodes.size() + 1) / 2);
        for (std::size_t k = 0; k < nodes.size(); k += 2) {
            if (k + 1 < nodes.size()) {
                next[k / 2] = poly_add(F_, poly_mul(F_, cur[k], nodes[k + 1]), poly_mul(F_, cur[k + 1], nodes[k]));
            } else {
                next[k / 2] = std::move(cur[k]);
            }
        }
        cur = std::move(next);
    }
    return cur[0];
}

Poly interpolate(const PrimeField& F, const std::vector<std::pair<u64, u64>>& points) {
    std::vector<u64> xs, ys;
    for (const auto& [x, y] : points) {
        xs.push_back(x);
        ys.push_back(y);
    }
    Interpolator I(F, xs);
    return I(ys);
}

}  // namespace mpoly
