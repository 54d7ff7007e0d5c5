#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mpoly/ffpoly.hpp"

using namespace mpoly;

namespace {
Poly random_poly(std::mt19937_64& rng, const PrimeField& F, int deg) {
    Poly f(deg + 1);
    for (auto& c : f) c = rng() % F.p();
    if (f.back() == 0) f.back() = 1;
    return f;
}
const u64 kP = 4611686018427387847ULL;  // largest prime below 2^62
}  // namespace

TEST(FpPoly, MulExamples) {
    PrimeField F5(5);
    EXPECT_EQ(poly_mul(F5, Poly{1, 1}, Poly{4, 1}), (Poly{4, 0, 1}));
    EXPECT_TRUE(poly_mul(F5, Poly{1, 2}, Poly{}).empty());
}

TEST(FpPoly, FastMulMatchesSchoolbook) {
    std::mt19937_64 rng(3);
    for (u64 p : {u64(1000003), kP, u64(9223372036854775783ULL)}) {
        PrimeField F(p);
        for (int deg : {64, 65, 200, 513}) {
            Poly f = random_poly(rng, F, deg), g = random_poly(rng, F, deg + 7);
            EXPECT_EQ(poly_mul(F, f, g), poly_mul_schoolbook(F, f, g)) << p << " " << deg;
        }
    }
}

TEST(FpPoly, MulRingLaws) {
    std::mt19937_64 rng(4);
    PrimeField F(kP);
    for (int i = 0; i < 20; ++i) {
        Poly a = random_poly(rng, F, rng() % 150), b = random_poly(rng, F, rng() % 150), c = random_poly(rng, F, rng() % 150);
        EXPECT_EQ(poly_mul(F, a, b), poly_mul(F, b, a));
        EXPECT_EQ(poly_mul(F, poly_mul(F, a, b), c), poly_mul(F, a, poly_mul(F, b, c)));
        EXPECT_EQ(poly_mul(F, a, poly_add(F, b, c)), poly_add(F, poly_mul(F, a, b), poly_mul(F, a, c)));
    }
}

TEST(FpPoly, DivRem) {
    std::mt19937_64 rng(5);
    PrimeField F(kP);
    for (int i = 0; i < 20; ++i) {
        Poly f = random_poly(rng, F, 300 + rng() % 100), g = random_poly(rng, F, 70 + rng() % 150);
        Poly q, r;
        poly_divrem(F, f, g, &q, &r);
        EXPECT_LT(degree(r), degree(g));
        EXPECT_EQ(poly_add(F, poly_mul(F, q, g), r), f);
    }
}

TEST(FpPoly, FrobeniusExamples) {
    PrimeField F5(5), F7(7);
    EXPECT_TRUE(frobenius_powmod(F5, Poly{0, 0, 1}).empty());
    EXPECT_EQ(frobenius_powmod(F7, Poly{4, 1}), (Poly{3}));
}

TEST(FpPoly, FrobeniusMatchesNaive) {
    std::mt19937_64 rng(6);
    for (int deg : {4, 30, 100}) {
        PrimeField F(1000003);
        Poly f = random_poly(rng, F, deg);
        // naive: repeated multiplication by X with schoolbook reduction
        Poly x{1};
        Poly r;
        for (u64 k = 0; k < 1000003; ++k) {
            x.insert(x.begin(), 0);
            poly_divrem(F, x, f, nullptr, &r);
            x = r;
        }
        EXPECT_EQ(frobenius_powmod(F, f), x);
    }
}

TEST(FpPoly, RootsExamples) {
    PrimeField F5(5), F7(7);
    EXPECT_EQ(roots(F5, Poly{4, 0, 1}), (std::vector<u64>{1, 4}));
    EXPECT_TRUE(roots(F7, Poly{1, 0, 1}).empty());
}

TEST(FpPoly, RootsMatchScan) {
    std::mt19937_64 rng(8);
    PrimeField F(101);
    for (int i = 0; i < 50; ++i) {
        std::vector<u64> rts;
        for (int k = 0; k < 20; ++k) rts.push_back(rng() % 101);
        Poly f = product_from_roots(F, rts);
        if (i % 2) f = poly_mul(F, f, Poly{2, 0, 1});  // X^2 + 2 irreducible mod 101
        std::vector<u64> scan;
        for (u64 x = 0; x < 101; ++x)
            if (poly_eval(F, f, x) == 0) scan.push_back(x);
        EXPECT_EQ(roots(F, f), scan);
    }
    PrimeField G(9973);
    for (int i = 0; i < 5; ++i) {
        Poly f = random_poly(rng, G, 12);
        std::vector<u64> scan;
        for (u64 x = 0; x < 9973; ++x)
            if (poly_eval(G, f, x) == 0) scan.push_back(x);
        EXPECT_EQ(roots(G, f), scan);
    }
}

TEST(FpPoly, ProductFromRootsRoundTrip) {
    std::mt19937_64 rng(9);
    PrimeField F(kP);
    EXPECT_EQ(product_from_roots(F, {}), (Poly{1}));
    EXPECT_EQ(product_from_roots(PrimeField(5), {1, 4}), (Poly{4, 0, 1}));
    std::vector<u64> rts;
    for (int k = 0; k < 100; ++k) rts.push_back(rng() % F.p());
    Poly f = product_from_roots(F, rts);
    std::sort(rts.begin(), rts.end());
    EXPECT_EQ(roots(F, f), rts);
}

TEST(FpPoly, InterpolateExamples) {
    PrimeField F5(5);
    EXPECT_EQ(interpolate(F5, {{0, 1}, {1, 2}}), (Poly{1, 1}));
    EXPECT_EQ(interpolate(F5, {{3, 4}}), (Poly{4}));
    EXPECT_THROW(interpolate(F5, {{3, 4}, {3, 1}}), std::invalid_argument);
}

TEST(FpPoly, InterpolateEvaluateRoundTrip) {
    std::mt19937_64 rng(10);
    PrimeField F(kP);
    for (int n : {1, 2, 50, 63, 64, 65, 130, 257, 512}) {
        Poly f = random_poly(rng, F, n - 1);
        std::vector<u64> xs;
        std::set<u64> seen;
        while (xs.size() < static_cast<std::size_t>(n)) {
            u64 x = rng() % F.p();
            if (seen.insert(x).second) xs.push_back(x);
        }
        Interpolator I(F, xs);
        std::vector<u64> ys;
        for (u64 x : xs) ys.push_back(poly_eval(F, f, x));
        EXPECT_EQ(I.evaluate(f), ys);
        EXPECT_EQ(I(ys), f) << n;
    }
}

TEST(FpPoly, CubeRoot) {
    PrimeField F11(11);
    EXPECT_EQ(F11.cube_root(0), 0u);
    EXPECT_EQ(F11.cube_root(5), 3u);
    EXPECT_THROW(PrimeField(13).cube_root(2), std::domain_error);
    std::mt19937_64 rng(11);
    int fields = 0;
    while (fields < 10) {
        u64 p = (rng() >> 2) | 1;
        if (p % 3 != 2 || !is_prime_u64(p)) continue;
        ++fields;
        PrimeField F(p);
        for (int i = 0; i < 1000; ++i) {
            u64 x = rng() % p;
            u64 y = F.cube_root(x);
            ASSERT_EQ(F.mul(F.mul(y, y), y), x);
        }
    }
}

TEST(FpPoly, Sqrt) {
    std::mt19937_64 rng(12);
    for (u64 p : {u64(1000033), u64(998244353), kP}) {
        PrimeField F(p);
        for (int i = 0; i < 200; ++i) {
            u64 x = rng() % p;
            u64 s = F.mul(x, x);
            u64 r = F.sqrt(s);
            ASSERT_EQ(F.mul(r, r), s);
        }
    }
}
