#include "mpoly/ec.hpp"

#include <map>
#include <set>

namespace mpoly {

bool is_nonsingular(const Curve& E) {
    const auto& F = E.F;
    u64 a3 = F.mul(F.mul(E.A, E.A), E.A);
    u64 d = F.add(F.mul(4, a3), F.mul(27, F.mul(E.B, E.B)));
    return d != 0;
}

bool on_curve(const Curve& E, const CurvePoint& P) {
    if (P.inf) return true;
    const auto& F = E.F;
    u64 rhs = F.add(F.mul(F.add(F.mul(P.x, P.x), E.A), P.x), E.B);
    return F.mul(P.y, P.y) == rhs;
}

u64 j_invariant(const Curve& E) {
    const auto& F = E.F;
    u64 a3 = F.mul(4, F.mul(F.mul(E.A, E.A), E.A));
    u64 d = F.add(a3, F.mul(27, F.mul(E.B, E.B)));
    if (d == 0) throw std::domain_error("j_invariant: singular curve");
    return F.mul(F.mul(1728 % F.p(), a3), F.inv(d));
}

Curve curve_from_j(u64 j, const PrimeField& F) {
    j %= F.p();
    if (j == 0 || j == 1728 % F.p()) throw std::domain_error("curve_from_j: j must differ from 0 and 1728");
    u64 k = F.mul(j, F.inv(F.sub(1728 % F.p(), j)));
    return Curve{F, F.mul(3, k), F.mul(2, k)};
}

Curve quadratic_twist(const Curve& E) {
    const auto& F = E.F;
    u64 z = F.smallest_nonresidue();
    u64 z2 = F.mul(z, z);
    return Curve{F, F.mul(E.A, z2), F.mul(E.B, F.mul(z2, z))};
}

CurvePoint negate(const Curve& E, const CurvePoint& P) {
    if (P.inf) return P;
    return CurvePoint{false, P.x, E.F.neg(P.y)};
}

CurvePoint group_law(const CurvePoint& P, const CurvePoint& Q, const Curve& E) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    const auto& F = E.F;
    u64 lambda;
    if (P.x == Q.x) {
        if (F.add(P.y, Q.y) == 0) return CurvePoint::infinity();
        u64 num = F.add(F.mul(3, F.mul(P.x, P.x)), E.A);
        lambda = F.mul(num, F.inv(F.add(P.y, P.y)));
    } else {
        lambda = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
    }
    u64 x3 = F.sub(F.sub(F.mul(lambda, lambda), P.x), Q.x);
    u64 y3 = F.sub(F.mul(lambda, F.sub(P.x, x3)), P.y);
    return CurvePoint{false, x3, y3};
}

CurvePoint scalar_mul(u64 n, const CurvePoint& P, const Curve& E) {
    CurvePoint r = CurvePoint::infinity(), b = P;
    while (n) {
        if (n & 1) r = group_law(r, b, E);
        b = group_law(b, b, E);
        n >>= 1;
    }
    return r;
}

CurvePoint scalar_mul(const Integer& n, const CurvePoint& P, const Curve& E) {
    if (n < 0) return scalar_mul(Integer(-n), negate(E, P), E);
    CurvePoint r = CurvePoint::infinity();
    for (std::size_t i = bit_length(n); i-- > 0;) {
        r = group_law(r, r, E);
        if (mpz_tstbit(n.get_mpz_t(), i)) r = group_law(r, P, E);
    }
    return r;
}

CurvePoint random_point(const Curve& E, std::mt19937_64& rng) {
    const auto& F = E.F;
    std::uniform_int_distribution<u64> dist(0, F.p() - 1);
    for (;;) {
        u64 x = dist(rng);
        u64 rhs = F.add(F.mul(F.add(F.mul(x, x), E.A), x), E.B);
        if (!F.is_square(rhs)) continue;
        u64 y = F.sqrt(rhs);
        if (rng() & 1) y = F.neg(y);
        return CurvePoint{false, x, y};
    }
}

CurvePoint point_of_order_l(const Curve& E, i64 t, u64 l, std::mt19937_64& rng) {
    i128 order = static_cast<i128>(E.F.p()) + 1 - t;
    if (order <= 0 || order % l != 0) throw std::domain_error("point_of_order_l: l does not divide p + 1 - t");
    // cofactor of the l-part; the Sylow l-subgroup is E[l] when the trace is right
    int vl = 0;
    while (order % l == 0) {
        order /= l;
        ++vl;
    }
    const u64 m = static_cast<u64>(order);
    for (int failures = 0; failures < 32; ++failures) {
        CurvePoint Q = random_point(E, rng);
        CurvePoint P = scalar_mul(m, Q, E);
        if (P.inf) continue;
        for (int k = 1; k < vl; ++k) {
            CurvePoint R = scalar_mul(l, P, E);
            if (R.inf) break;
            P = R;
        }
        if (scalar_mul(l, P, E).inf) return P;
    }
    throw TwistMismatch("point_of_order_l: no point of order l found; wrong twist");
}

namespace {
int l_order_exponent(CurvePoint P, u64 l, const Curve& E, int cap) {
    int e = 0;
    while (!P.inf) {
        if (e == cap) throw TwistMismatch("l_torsion_basis: point order is not a power of l; wrong twist");
        P = scalar_mul(l, P, E);
        ++e;
    }
    return e;
}

CurvePoint mul_pow(CurvePoint P, u64 l, int e, const Curve& E) {
    for (int k = 0; k < e; ++k) P = scalar_mul(l, P, E);
    return P;
}
}  // namespace

TorsionBasis l_torsion_basis(const Curve& E, i64 t, u64 l, std::mt19937_64& rng) {
    i128 order = static_cast<i128>(E.F.p()) + 1 - t;
    if (order <= 0 || order % l != 0) throw std::domain_error("l_torsion_basis: l does not divide p + 1 - t");
    int vl = 0;
    while (order % l == 0) {
        order /= l;
        ++vl;
    }
    const u64 m = static_cast<u64>(order);
    CurvePoint S1;
    int b = 0;
    for (int failures = 0; failures < 32 && b < vl; ++failures) {
        CurvePoint S = scalar_mul(m, random_point(E, rng), E);
        int e = l_order_exponent(S, l, E, vl);
        if (e > b) {
            b = e;
            S1 = S;
        }
    }
    if (b == 0) throw TwistMismatch("l_torsion_basis: no point of order l found; wrong twist");
    TorsionBasis out;
    out.P = mul_pow(S1, l, b - 1, E);
    if (b == vl) return out;
    for (int tries = 0; tries < 32; ++tries) {
        CurvePoint S = scalar_mul(m, random_point(E, rng), E);
        for (int c = l_order_exponent(S, l, E, vl); c > 0; c = l_order_exponent(S, l, E, vl)) {
            if (c > b) {
                S1 = S;
                b = c;
                out.P = mul_pow(S1, l, b - 1, E);
                if (b == vl) return out;
                break;
            }
            CurvePoint T = mul_pow(S, l, c - 1, E);
            u64 k = 1;
            for (CurvePoint R = out.P; k < l && !(R == T); ++k) R = group_law(R, out.P, E);
            if (k == l) {
                out.Q = T;
                out.full = true;
                return out;
            }
            // S - k l^(b-c) S1 has smaller order
            CurvePoint U = scalar_mul(k, mul_pow(S1, l, b - c, E), E);
            S = group_law(S, negate(E, U), E);
        }
    }
    return out;
}

u64 curve_order(const Curve& E, std::mt19937_64& rng) {
    const u64 p = E.F.p();
    const u64 r = isqrt_u64(4 * p) + 1;  // 2 sqrt(p) rounded up
    const u64 lo = p + 1 > r ? p + 1 - r : 1, hi = p + 1 + r;
    const u64 m = isqrt_u64(hi - lo) + 1;
    std::vector<u64> candidates;
    for (u64 N = lo; N <= hi; ++N) candidates.push_back(N);
    for (int round = 0; round < 16 && candidates.size() > 1; ++round) {
        CurvePoint P = random_point(E, rng);
        std::map<std::pair<u64, u64>, std::vector<u64>> baby;  // jP -> j
        CurvePoint B = CurvePoint::infinity();
        for (u64 j = 0; j < m; ++j) {
            baby[{B.inf ? p : B.x, B.inf ? p : B.y}].push_back(j);
            B = group_law(B, P, E);
        }
        const CurvePoint step = B;  // mP
        std::set<u64> hits;
        CurvePoint T = scalar_mul(lo, P, E);
        for (u64 k = 0; lo + k * m <= hi; ++k) {
            // (lo + km + j) P = O  <=>  jP = -T
            CurvePoint nT = negate(E, T);
            auto it = baby.find({nT.inf ? p : nT.x, nT.inf ? p : nT.y});
            if (it != baby.end())
                for (u64 j : it->second)
                    if (lo + k * m + j <= hi) hits.insert(lo + k * m + j);
            T = group_law(T, step, E);
        }
        std::vector<u64> kept;
        for (u64 N : candidates)
            if (hits.count(N)) kept.push_back(N);
        candidates = std::move(kept);
    }
    if (candidates.size() != 1) throw std::runtime_error("curve_order: ambiguous group order");
    return candidates[0];
}

Curve velu(const Curve& E, const CurvePoint& P, u64 l) {
    if (l < 3 || l % 2 == 0) throw std::domain_error("velu: l must be an odd prime");
    if (P.inf) throw std::domain_error("velu: kernel generator is the identity");
    const auto& F = E.F;
    u64 t = 0, w = 0;
    CurvePoint Q = P;
    for (u64 i = 0; i < (l - 1) / 2; ++i) {
        if (Q.inf) throw std::domain_error("velu: point has the wrong order");
        u64 s = F.add(F.mul(6, F.mul(Q.x, Q.x)), F.add(E.A, E.A));
        u64 u = F.add(F.mul(4, F.mul(Q.y, Q.y)), F.mul(s, Q.x));
        t = F.add(t, s);
        w = F.add(w, u);
        Q = group_law(Q, P, E);
    }
    return Curve{F, F.sub(E.A, F.mul(5, t)), F.sub(E.B, F.mul(7, w))};
}

}  // namespace mpoly
