#include "mpoly/verify.hpp"

#include <stdexcept>

#include "mpoly/modpoly.hpp"

namespace mpoly {

bool degree_ok(const BivariatePoly& phi) {
    const unsigned n = static_cast<unsigned>(phi.l + 1);
    if (phi.get(n, 0) != 1) return false;
    for (const auto& [ab, c] : phi.entries()) {
        if (ab.first > n) return false;
        if (ab.first == n && ab.second != 0 && c != 0) return false;
    }
    return true;
}

bool kronecker_congruence(const BivariatePoly& phi) {
    if (phi.inv != Invariant::J || phi.modulus != 0) throw std::invalid_argument("kronecker_congruence: needs j over Z");
    BivariatePoly K(phi.l, Invariant::J, from_u64(phi.l));
    const unsigned l = static_cast<unsigned>(phi.l);
    K.set(l + 1, 0, 1);
    K.set(l, l, -1);
    K.set(1, 1, -1);
    BivariatePoly R = phi.reduce_mod(from_u64(phi.l));
    return R == K;
}

namespace {
u64 random_prime(std::mt19937_64& rng, Invariant inv) {
    std::uniform_int_distribution<u64> d(u64{1} << 24, (u64{1} << 28) - 1);
    for (;;) {
        u64 p = d(rng) | 1;
        if (is_prime_u64(p) && prime_allowed(p, inv)) return p;
    }
}

u64 random_nonzero(const PrimeField& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> d(1, F.p() - 1);
    return d(rng);
}
}  // namespace

IsogenyPair random_isogeny_pair(u64 l, Invariant inv, std::mt19937_64& rng) {
    for (;;) {
        IsogenyPair out;
        out.p = random_prime(rng, inv);
        PrimeField F(out.p);
        if (inv == Invariant::WeberF) {
            out.x = random_nonzero(F, rng);
            out.j1 = weber_to_j(F, out.x);
        } else {
            out.j1 = random_nonzero(F, rng);
            out.x = inv == Invariant::Gamma2 ? F.cube_root(out.j1) : out.j1;
        }
        if (out.j1 == 0 || out.j1 == 1728 % out.p) continue;
        Curve E = curve_from_j(out.j1, F);
        u64 N;
        try {
            N = curve_order(E, rng);
        } catch (const std::runtime_error&) {
            continue;
        }
        if (N % l != 0) {
            E = quadratic_twist(E);
            N = 2 * out.p + 2 - N;
            if (N % l != 0) continue;
        }
        const i64 t = static_cast<i64>(out.p + 1) - static_cast<i64>(N);
        try {
            out.j2 = j_invariant(velu(E, point_of_order_l(E, t, l, rng), l));
        } catch (const TwistMismatch&) {
            continue;
        }
        return out;
    }
}

std::size_t isogeny_vanishing_failures(const BivariatePoly& phi, std::size_t samples, std::mt19937_64& rng) {
    if (phi.modulus != 0) throw std::invalid_argument("isogeny_vanishing_failures: needs a polynomial over Z");
    std::size_t failures = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        IsogenyPair q = random_isogeny_pair(phi.l, phi.inv, rng);
        PrimeField F(q.p);
        bool ok;
        if (phi.inv == Invariant::J) {
            ok = phi.evaluate(F, q.j1, q.j2) == 0;
        } else if (phi.inv == Invariant::Gamma2) {
            ok = phi.evaluate(F, q.x, F.cube_root(q.j2)) == 0;
        } else {
            // some root y of Phi(x, Y) has J(y) = j2
            Poly psi(73, 0);
            psi[72] = 1;
            psi[48] = F.neg(48);
            psi[24] = F.sub(768, q.j2);
            psi[0] = F.neg(4096);
            Poly g = poly_gcd(F, phi.reduce_mod(from_u64(q.p)).instantiate(F, q.x), psi);
            ok = degree(g) > 0;
        }
        if (!ok) ++failures;
    }
    return failures;
}

std::size_t weber_root_pair_failures(const BivariatePoly& phi_f, const BivariatePoly& phi_j, std::size_t samples,
                                     std::mt19937_64& rng) {
    std::size_t failures = 0;
    for (std::size_t s = 0; s < samples;) {
        PrimeField F(random_prime(rng, Invariant::WeberF));
        u64 x = random_nonzero(F, rng);
        auto y = find_one_root(F, phi_f.instantiate(F, x));
        if (!y || *y == 0) continue;
        if (phi_j.evaluate(F, weber_to_j(F, x), weber_to_j(F, *y)) != 0) ++failures;
        ++s;
    }
    return failures;
}

std::vector<Check> verify_polynomial(const BivariatePoly& phi, std::uint64_t seed, std::size_t samples) {
    std::vector<Check> out;
    std::mt19937_64 rng(seed);
    {
        bool ok = true;
        PrimeField F(1000003);
        const BivariatePoly R = phi.modulus == 0 ? phi.reduce_mod(from_u64(F.p())) : phi;
        for (int k = 0; k < 8 && phi.modulus == 0; ++k) {
            u64 x = random_nonzero(F, rng), y = random_nonzero(F, rng);
            ok = ok && R.evaluate(F, x, y) == R.evaluate(F, y, x);
        }
        out.push_back({"symmetry", ok, ""});
    }
    out.push_back({"degree", degree_ok(phi), ""});
    {
        bool ok = phi.sparsity_ok();
        out.push_back({"sparsity", ok, invariant_name(phi.inv)});
    }
    if (phi.inv == Invariant::J && phi.modulus == 0)
        out.push_back({"kronecker-congruence", kronecker_congruence(phi), ""});
    if (phi.modulus == 0) {
        std::size_t f = isogeny_vanishing_failures(phi, samples, rng);
        out.push_back({"isogeny-vanishing", f == 0, std::to_string(samples - f) + "/" + std::to_string(samples)});
    } else {
        out.push_back({"isogeny-vanishing", true, "skipped for a reduced polynomial"});
    }
    return out;
}

}  // namespace mpoly
