#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mpoly/crt.hpp"

using namespace mpoly;

TEST(Crt, HandExample) {
    CrtAccumulator acc({5, 7}, 1, CrtMode::Exact);
    EXPECT_EQ(acc.M(), 35);
    EXPECT_EQ(acc.M_i(0), 7);
    EXPECT_EQ(acc.a_i(0), 3u);
    EXPECT_EQ(acc.M_i(1), 5);
    EXPECT_EQ(acc.a_i(1), 3u);
    acc.update(0, {3});
    acc.update(1, {4});
    EXPECT_EQ(acc.finalize()[0], -17);
}

TEST(Crt, ExplicitHandExample) {
    // M = 35 < 4 * 17, so only the non-strict finalize applies
    CrtAccumulator acc({5, 7}, 1, CrtMode::Explicit, 10);
    acc.update(0, {3});
    acc.update(1, {4});
    EXPECT_EQ(acc.finalize(false)[0], 3);
    EXPECT_THROW(acc.finalize(true), std::runtime_error);
}

TEST(Crt, Singleton) {
    CrtAccumulator acc({1000003}, 1, CrtMode::Exact);
    EXPECT_EQ(acc.M_i(0), 1);
    EXPECT_EQ(acc.a_i(0), 1u);
}

TEST(Crt, Errors) {
    EXPECT_THROW(CrtAccumulator({5, 5}, 1, CrtMode::Exact), std::invalid_argument);
    CrtAccumulator acc({5, 7}, 1, CrtMode::Exact);
    acc.update(0, {1});
    EXPECT_THROW(acc.update(0, {1}), std::logic_error);
    EXPECT_THROW(acc.finalize(), std::logic_error);
}

namespace {
std::vector<u64> random_primes(std::size_t n, std::mt19937_64& rng) {
    std::vector<u64> ps;
    std::uniform_int_distribution<u64> d(u64{1} << 40, u64{1} << 62);
    while (ps.size() < n) {
        u64 p = d(rng);
        if (is_prime_u64(p) && std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    }
    return ps;
}
}  // namespace

TEST(Crt, DefiningProperty) {
    std::mt19937_64 rng(1);
    auto ps = random_primes(200, rng);
    CrtAccumulator acc(ps, 0, CrtMode::Exact);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        Integer r = (acc.M_i(i) % ps[i]) * acc.a_i(i) % ps[i];
        EXPECT_EQ(r, 1);
    }
}

TEST(Crt, PlantAndRecoverBothModes) {
    std::mt19937_64 rng(2);
    auto ps = random_primes(12, rng);
    gmp_randclass gr(gmp_randinit_default);
    gr.seed(7);
    const std::size_t n = 10000;
    std::vector<Integer> planted(n);
    Integer M = 1;
    for (u64 p : ps) M *= from_u64(p);
    for (std::size_t k = 0; k < n; ++k) {
        planted[k] = gr.get_z_range(M / 4);
        if (k % 2) planted[k] = -planted[k];
        if (k % 97 == 0) planted[k] = 0;
    }
    Integer m = from_u64(std::uniform_int_distribution<u64>(2, ~u64{0})(rng));
    CrtAccumulator exact(ps, n, CrtMode::Exact);
    CrtAccumulator expl(ps, n, CrtMode::Explicit, m);
    std::vector<std::size_t> order(ps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
        std::vector<u64> res(n);
        for (std::size_t k = 0; k < n; ++k) {
            Integer r = planted[k] % ps[i];
            if (r < 0) r += ps[i];
            res[k] = to_u64(r);
        }
        exact.update(i, res);
        expl.update(i, res);
    }
    auto a = exact.finalize();
    auto b = expl.finalize();
    for (std::size_t k = 0; k < n; ++k) {
        ASSERT_EQ(a[k], planted[k]);
        Integer r = planted[k] % m;
        if (r < 0) r += m;
        ASSERT_EQ(b[k], r);
    }
}
