#include <gtest/gtest.h>

#include "mpoly/ec.hpp"

using namespace mpoly;

namespace {
std::vector<CurvePoint> all_points(const Curve& E) {
    std::vector<CurvePoint> pts{CurvePoint::infinity()};
    const auto& F = E.F;
    for (u64 x = 0; x < F.p(); ++x)
        for (u64 y = 0; y < F.p(); ++y)
            if (on_curve(E, {false, x, y})) pts.push_back({false, x, y});
    return pts;
}
}  // namespace

TEST(Ec, CurveFromJ) {
    Curve E = curve_from_j(1, PrimeField(5));
    EXPECT_EQ(E.A, 4u);
    EXPECT_EQ(E.B, 1u);
    EXPECT_THROW(curve_from_j(1728, PrimeField(1000003)), std::domain_error);
    EXPECT_THROW(curve_from_j(0, PrimeField(1000003)), std::domain_error);
    std::mt19937_64 rng(1);
    PrimeField F(4611686018427387847ULL);
    for (int i = 0; i < 200; ++i) {
        u64 j = rng() % F.p();
        if (j == 0 || j == 1728) continue;
        Curve C = curve_from_j(j, F);
        EXPECT_TRUE(is_nonsingular(C));
        EXPECT_EQ(j_invariant(C), j);
        EXPECT_EQ(j_invariant(quadratic_twist(C)), j);
    }
}

TEST(Ec, GroupLawBasics) {
    std::mt19937_64 rng(2);
    PrimeField F(1000003);
    Curve E{F, 3, 7};
    for (int i = 0; i < 1000; ++i) {
        CurvePoint P = random_point(E, rng), Q = random_point(E, rng), R = random_point(E, rng);
        ASSERT_TRUE(on_curve(E, P));
        ASSERT_EQ(group_law(P, CurvePoint::infinity(), E), P);
        ASSERT_TRUE(group_law(P, negate(E, P), E).inf);
        ASSERT_EQ(group_law(group_law(P, Q, E), R, E), group_law(P, group_law(Q, R, E), E));
        ASSERT_TRUE(on_curve(E, group_law(P, Q, E)));
    }
}

TEST(Ec, SmallCurveOrderFive) {
    // exhaustive scan over F_13 for a point of order 5
    PrimeField F(13);
    bool found = false;
    for (u64 A = 0; A < 13 && !found; ++A)
        for (u64 B = 0; B < 13 && !found; ++B) {
            Curve E{F, A, B};
            if (!is_nonsingular(E)) continue;
            auto pts = all_points(E);
            for (const auto& P : pts) {
                if (P.inf) continue;
                CurvePoint Q = P;
                int ord = 1;
                while (!Q.inf) {
                    Q = group_law(Q, P, E);
                    ++ord;
                }
                if (ord == 5) {
                    EXPECT_TRUE(scalar_mul(5, P, E).inf);
                    EXPECT_FALSE(scalar_mul(4, P, E).inf);
                    EXPECT_TRUE(scalar_mul(Integer(10), P, E).inf);
                    found = true;
                    break;
                }
            }
        }
    EXPECT_TRUE(found);
}

TEST(Ec, PointOfOrderLAndTwist) {
    // search small p = 1 mod 3 and curves with full rational 3-torsion: #E = p + 1 - t with 9 | #E
    std::mt19937_64 rng(3);
    int cases = 0;
    for (u64 p = 31; p < 400 && cases < 6; ++p) {
        if (!is_prime_u64(p) || p % 3 != 1) continue;
        PrimeField F(p);
        for (u64 A = 1; A < p && cases < 6; ++A) {
            Curve E{F, A, 1};
            if (!is_nonsingular(E)) continue;
            auto pts = all_points(E);
            i64 t = static_cast<i64>(p + 1) - static_cast<i64>(pts.size());
            if (pts.size() % 9 != 0 || pts.size() % 27 == 0 || ((t - 2) % 3 + 3) % 3 != 0) continue;
            int three_torsion = 0;
            for (const auto& P : pts)
                if (scalar_mul(3, P, E).inf) ++three_torsion;
            if (three_torsion != 9) continue;
            CurvePoint P = point_of_order_l(E, t, 3, rng);
            EXPECT_FALSE(P.inf);
            EXPECT_TRUE(scalar_mul(3, P, E).inf);
            // the twist has trace -t, and p + 1 + t is prime to 3
            EXPECT_THROW(point_of_order_l(quadratic_twist(E), t, 3, rng), TwistMismatch);
            Curve E2 = velu(E, P, 3);
            EXPECT_TRUE(is_nonsingular(E2));
            // isogenous curves have the same number of points
            EXPECT_EQ(all_points(E2).size(), pts.size());
            ++cases;
        }
    }
    EXPECT_EQ(cases, 6);
}

TEST(Ec, VeluSingleIterationForThree) {
    PrimeField F(1000003);
    Curve E{F, 5, 11};
    CurvePoint P{false, 0, 0};
    // P need not be on E for the formula's arithmetic; check the loop structure only
    Curve E2 = velu(E, P, 3);
    u64 s = F.add(F.mul(6, 0), F.add(5, 5));
    u64 u = F.add(F.mul(4, 0), F.mul(s, 0));
    EXPECT_EQ(E2.A, F.sub(5, F.mul(5, s)));
    EXPECT_EQ(E2.B, F.sub(11, F.mul(7, u)));
}
