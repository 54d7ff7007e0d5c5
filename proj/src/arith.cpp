#include "mpoly/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mpoly {

Integer FactoredInteger::recompose() const {
    Integer r = 1;
    for (const auto& [q, e] : factors) {
        Integer t;
        mpz_pow_ui(t.get_mpz_t(), q.get_mpz_t(), e);
        r *= t;
    }
    return r;
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    i128 t0 = 0, t1 = 1;
    i128 r0 = m, r1 = a % m;
    while (r1) {
        i128 q = r0 / r1;
        i128 tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 != 1) throw std::domain_error("invmod: not invertible");
    if (t0 < 0) t0 += m;
    return static_cast<u64>(t0);
}

i64 gcd_i64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square_u64(u64 n, u64* root) {
    u64 r = isqrt_u64(n);
    if (root) *root = r;
    return static_cast<u128>(r) * r == n;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : small) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(n.get_ui());
    // 64 rounds of Miller-Rabin bound the error by 4^-64
    return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

namespace {

Integer rho(const Integer& n, unsigned long c) {
    // Brent's cycle detection with batched gcds
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const Integer& v) {
        Integer t = v * v + c;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        return t;
    };
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                Integer d = x - y;
                q = q * abs(d);
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            Integer d = abs(Integer(x - ys));
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void split(const Integer& n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Integer d = rho(n, c);
        if (d != n) {
            split(d, out);
            split(Integer(n / d), out);
            return;
        }
    }
}

}  // namespace

FactoredInteger factor(const Integer& n) {
    if (n < 1) throw std::domain_error("factor: n must be positive");
    FactoredInteger res;
    res.value = n;
    std::map<Integer, unsigned> fs;
    Integer m = n;
    static const std::vector<u64> trial = small_primes(1u << 20);
    for (u64 q : trial) {
        if (Integer(q) * q > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
                ++e;
            }
            fs[Integer(q)] = e;
        }
    }
    split(m, fs);
    for (auto& [q, e] : fs) res.factors.emplace_back(q, e);
    return res;
}

bool omega_test(const Integer& v) {
    if (v < 1) throw std::domain_error("omega_test: v must be positive");
    double lv = std::log(mpz_get_d(v.get_mpz_t()));
    if (!std::isfinite(lv)) lv = log2_abs(v) * std::log(2.0);
    double bound = std::log(lv + 3.0);
    bound *= bound;
    return static_cast<double>(factor(v).omega()) > bound;
}

int kronecker(const Integer& d, const Integer& n) { return mpz_kronecker(d.get_mpz_t(), n.get_mpz_t()); }

int kronecker(i64 d, i64 n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int r = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) r = -r;
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((d & 1) == 0) return 0;
        i64 d8 = ((d % 8) + 8) % 8;
        if ((v & 1) && (d8 == 3 || d8 == 5)) r = -r;
    }
    // Jacobi (d | n), n odd positive
    i64 a = d % n;
    if (a < 0) a += n;
    u64 b = static_cast<u64>(n);
    u64 ua = static_cast<u64>(a);
    while (ua) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            u64 b8 = b & 7;
            if (b8 == 3 || b8 == 5) r = -r;
        }
        std::swap(ua, b);
        if ((ua & 3) == 3 && (b & 3) == 3) r = -r;
        ua %= b;
    }
    return b == 1 ? r : 0;
}

double log2_abs(const Integer& n) {
    if (n == 0) return -INFINITY;
    long e;
    double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::size_t bit_length(const Integer& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

u64 to_u64(const Integer& n) {
    if (n < 0 || bit_length(n) > 64) throw std::range_error("to_u64: out of range");
    u64 r = 0;
    mpz_export(&r, nullptr, -1, sizeof(u64), 0, 0, n.get_mpz_t());
    return r;
}

i64 to_i64(const Integer& n) {
    if (!mpz_fits_slong_p(n.get_mpz_t())) throw std::range_error("to_i64: out of range");
    return mpz_get_si(n.get_mpz_t());
}

Integer from_u64(u64 v) {
    Integer r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &v);
    return r;
}

Integer from_i64(i64 v) {
    if (v >= 0) return from_u64(static_cast<u64>(v));
    return -from_u64(static_cast<u64>(-(v + 1)) + 1);
}

std::vector<u64> small_primes(u64 bound) {
    std::vector<u64> out;
    if (bound < 3) return out;
    std::vector<bool> comp(bound, false);
    for (u64 i = 2; i < bound; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j < bound; j += i) comp[j] = true;
    }
    return out;
}

}  // namespace mpoly
