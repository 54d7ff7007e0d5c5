#pragma once

#include <random>
#include <stdexcept>

#include "mpoly/ffpoly.hpp"

namespace mpoly {

struct Curve {
    PrimeField F;
    u64 A = 0, B = 0;
};

struct CurvePoint {
    bool inf = true;
    u64 x = 0, y = 0;

    static CurvePoint infinity() { return {}; }
    bool operator==(const CurvePoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
};

struct TwistMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_nonsingular(const Curve& E);
bool on_curve(const Curve& E, const CurvePoint& P);
u64 j_invariant(const Curve& E);
Curve curve_from_j(u64 j, const PrimeField& F);
Curve quadratic_twist(const Curve& E);

CurvePoint negate(const Curve& E, const CurvePoint& P);
CurvePoint group_law(const CurvePoint& P, const CurvePoint& Q, const Curve& E);
CurvePoint scalar_mul(u64 n, const CurvePoint& P, const Curve& E);
CurvePoint scalar_mul(const Integer& n, const CurvePoint& P, const Curve& E);
CurvePoint random_point(const Curve& E, std::mt19937_64& rng);

// P != O with l P = O from a random multiple by the prime-to-l part of p + 1 - t;
// throws TwistMismatch after 32 failures
CurvePoint point_of_order_l(const Curve& E, i64 t, u64 l, std::mt19937_64& rng);

// points spanning the rational l-torsion; the second is absent when it is cyclic
struct TorsionBasis {
    CurvePoint P, Q;
    bool full = false;
};
TorsionBasis l_torsion_basis(const Curve& E, i64 t, u64 l, std::mt19937_64& rng);

// #E(F_p) by baby-step giant-step in the Hasse interval; throws std::runtime_error if ambiguous
u64 curve_order(const Curve& E, std::mt19937_64& rng);

Curve velu(const Curve& E, const CurvePoint& P, u64 l);

}  // namespace mpoly
