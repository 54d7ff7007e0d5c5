#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "mpoly/primes.hpp"

using namespace mpoly;

TEST(Primes, HeightBounds) {
    EXPECT_NEAR(height_bound(101, Invariant::J), 6511, 3);
    EXPECT_NEAR(height_bound(211, Invariant::J), 14949, 3);
    double l = 1009;
    EXPECT_DOUBLE_EQ(height_bound(1009, Invariant::Gamma2), (2 * l * std::log(l) + 8 * l) / std::log(2.0));
    EXPECT_GT(height_bound(13, Invariant::WeberF), height_bound(13, Invariant::Gamma2) / 6);
}

TEST(Primes, HeuristicMatchesScan) {
    const u64 l = 11;
    const i64 D = -151;  // D = 1 mod 8 so v = 2
    ASSERT_EQ(fixed_v(D), 2u);
    auto s = select_primes_heuristic(l, D, 200.0);
    ASSERT_GE(s.size(), 3u);
    std::vector<u64> scan;
    for (u64 t = 0; scan.size() < 3; ++t) {
        if (t % l != 2 || t % 2 != 0) continue;
        i128 n = static_cast<i128>(t) * t + static_cast<i128>(4) * l * l * 151;
        u64 p = static_cast<u64>(n / 4);
        if (p > 2 * l + 2 && is_prime_u64(p)) scan.push_back(p);
    }
    for (int i = 0; i < 3; ++i) EXPECT_EQ(s[i].p, scan[i]);
    for (const auto& ps : s) {
        EXPECT_TRUE(ps.valid());
        EXPECT_EQ(ps.p % l, 1u);
    }
    EXPECT_GT(log2_sum(s), 200.0);
}

TEST(Primes, HeuristicFiltersAndExtras) {
    auto base = select_primes_heuristic(13, -71, 500.0, Invariant::Gamma2);
    auto more = select_primes_heuristic(13, -71, 500.0, Invariant::Gamma2, 2);
    ASSERT_EQ(more.size(), base.size() + 2);
    for (std::size_t i = 0; i < base.size(); ++i) EXPECT_EQ(base[i].p, more[i].p);
    for (const auto& ps : more) {
        EXPECT_TRUE(ps.valid());
        EXPECT_EQ(ps.p % 3, 2u);
    }
    for (const auto& ps : select_primes_heuristic(7, -71, 300.0, Invariant::WeberF))
        EXPECT_EQ(ps.p % 12, 11u);
}

TEST(Primes, RandomizedValidity) {
    std::mt19937_64 rng(5);
    const u64 l = 7;
    const i64 D = -71;
    auto s = select_primes_randomized(l, D, 300.0, rng);
    std::set<u64> ps;
    for (const auto& x : s) {
        EXPECT_TRUE(x.valid());
        EXPECT_FALSE(omega_test(from_u64(x.v)));
        EXPECT_TRUE(ps.insert(x.p).second);
    }
    EXPECT_GT(log2_sum(s), 300.0);
}
