#include "mpoly/primes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mpoly {

namespace {
constexpr u64 kPrimeCap = u64{1} << 61;

i64 mod_pos(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// (t^2 - v^2 l^2 D) / 4, or 0 when not an integer or too large
u64 norm_value(u64 t, u64 v, u64 l, i64 D) {
    i128 n = static_cast<i128>(t) * t - static_cast<i128>(v) * v * l * l * D;
    if (n % 4 != 0) return 0;
    n /= 4;
    if (n <= 0 || n >= static_cast<i128>(kPrimeCap)) return 0;
    return static_cast<u64>(n);
}
}  // namespace

bool PrimeSpec::valid() const {
    if (p < 5 || !is_prime_u64(p)) return false;
    if (norm_value(t, v, l, D) != p) return false;
    if (t % l != 2 % l || v % l == 0) return false;
    if (D % static_cast<i64>(p) == 0) return false;
    return p % l == 1;
}

double height_bound(u64 l, Invariant inv) {
    const double L = static_cast<double>(l);
    const double ln = std::log(L);
    const double ln2 = std::log(2.0);
    const double j_bound = 6 * L * ln + 17 * L;
    const double g2_bound = 2 * L * ln + 8 * L;
    switch (inv) {
        case Invariant::J: return j_bound / ln2;
        case Invariant::Gamma2: return g2_bound / ln2;
        case Invariant::WeberF: {
            double f = L * ln / 12 + L / 5;
            if (l <= 2400) f = std::max(f, g2_bound / 6);
            return f / ln2 + (l <= 2400 ? 64.0 : 0.0);
        }
    }
    return 0;
}

bool prime_allowed(u64 p, Invariant inv) {
    switch (inv) {
        case Invariant::J: return true;
        case Invariant::Gamma2: return p % 3 == 2;
        case Invariant::WeberF: return p % 12 == 11;
    }
    return false;
}

u64 fixed_v(i64 D) { return mod_pos(D, 8) == 1 ? 2 : 1; }

double log2_sum(const std::vector<PrimeSpec>& s) {
    double b = 0;
    for (const auto& ps : s) b += std::log2(static_cast<double>(ps.p));
    return b;
}

std::vector<PrimeSpec> select_primes_heuristic(u64 l, i64 D, double budget_bits, Invariant inv, std::size_t extra) {
    const u64 v = fixed_v(D);
    const u64 parity = static_cast<u64>(mod_pos(static_cast<i64>(v) * D, 2));
    u64 t = 2 % l;
    while (t % 2 != parity) t += l;
    std::vector<PrimeSpec> out;
    double bits = 0;
    std::size_t beyond = 0;
    for (; t < (u64{1} << 31); t += 2 * l) {
        u64 p = norm_value(t, v, l, D);
        if (p == 0) continue;
        if (p < 5 || p <= 2 * l + 2 || D % static_cast<i64>(p) == 0) continue;
        if (!prime_allowed(p, inv) || !is_prime_u64(p)) continue;
        PrimeSpec s{p, t, v, l, D};
        if (bits > budget_bits) {
            out.push_back(s);
            if (++beyond >= extra) return out;
            continue;
        }
        out.push_back(s);
        bits += std::log2(static_cast<double>(p));
        if (bits > budget_bits && extra == 0) return out;
    }
    throw std::runtime_error("select_primes_heuristic: trace search exhausted");
}

std::vector<PrimeSpec> select_primes_randomized(u64 l, i64 D, double budget_bits, std::mt19937_64& rng,
                                                Invariant inv, std::size_t extra) {
    const double absD = static_cast<double>(-D);
    const double L = static_cast<double>(l);
    const double target = budget_bits * std::log(2.0);
    double n = target / std::log(L * L * absD / 4);
    n = std::max(n, 2.0);
    double x = 4 * L * L * absD * n * std::log(n);
    std::vector<PrimeSpec> out;
    std::set<u64> seen;
    double b = 0;
    std::size_t beyond = 0;
    for (;;) {
        const double T = 2 * std::sqrt(x);
        const double V = 2 * std::sqrt(x) / (L * std::sqrt(absD));
        const u64 Tmax = static_cast<u64>(T);
        const u64 Vmax = std::max<u64>(1, static_cast<u64>(V));
        const u64 reps = static_cast<u64>(std::ceil(2 * n * std::log(x)));
        if (Tmax < l + 2) {
            x *= 2;
            continue;
        }
        std::uniform_int_distribution<u64> dv(1, Vmax);
        std::uniform_int_distribution<u64> da(0, (Tmax - 2) / l);
        for (u64 rep = 0; rep < reps; ++rep) {
            u64 v = dv(rng);
            u64 t = da(rng) * l + 2;
            if (v % l == 0 || t % 2 != static_cast<u64>(mod_pos(static_cast<i64>(v) * D, 2))) continue;
            if (omega_test(from_u64(v))) continue;
            u64 p = norm_value(t, v, l, D);
            if (p == 0 || p <= 2 * l + 2 || D % static_cast<i64>(p) == 0 || !prime_allowed(p, inv)) continue;
            if (seen.count(p) || !is_prime_u64(p)) continue;
            seen.insert(p);
            out.push_back({p, t, v, l, D});
            if (b > budget_bits) {
                if (++beyond >= extra) return out;
                continue;
            }
            b += std::log2(static_cast<double>(p));
            if (b > budget_bits && extra == 0) return out;
        }
        x *= 2;
    }
}

}  // namespace mpoly
