#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "mpoly/modpoly.hpp"
#include "mpoly/oracle.hpp"
#include "mpoly/verify.hpp"

using namespace mpoly;

namespace {
ComputeOptions opts(Invariant inv, std::uint64_t seed = 1) {
    ComputeOptions o;
    o.inv = inv;
    o.seed = seed;
    return o;
}
}  // namespace

TEST(Modpoly, InterpolationNodes) {
    EXPECT_EQ(interpolation_nodes(11, Invariant::J), 13u);
    EXPECT_EQ(interpolation_nodes(11, Invariant::WeberF), 13u);
    EXPECT_EQ(interpolation_nodes(11, Invariant::Gamma2), 5u);
    EXPECT_EQ(interpolation_nodes(13, Invariant::Gamma2), 6u);
}

TEST(Modpoly, SelectedOrdersSatisfyConstraints) {
    for (Invariant inv : {Invariant::J, Invariant::Gamma2, Invariant::WeberF})
        for (u64 l : {5ull, 7ull, 11ull, 13ull, 31ull}) {
            OrderSelection s = select_order(l, inv);
            const i64 L = static_cast<i64>(l);
            EXPECT_GE(s.h_O, static_cast<i64>(interpolation_nodes(l, inv)));
            EXPECT_EQ(s.h_R, s.h_O * (L - kronecker(s.d_K, L)));
            EXPECT_EQ(s.D, s.u * s.u * s.d_K);
            EXPECT_NE(s.u % L, 0);
            if (inv != Invariant::J) EXPECT_NE(s.D % 3, 0);
            if (inv == Invariant::WeberF) EXPECT_EQ(((s.D % 8) + 8) % 8, 1);
            EXPECT_EQ(presentation_from_generators(s.D, s.surface_norms).size(), static_cast<std::size_t>(s.h_O));
            EXPECT_EQ(presentation_from_generators(L * L * s.D, s.floor_norms).size(), static_cast<std::size_t>(s.h_R));
            for (i64 q : s.surface_norms) EXPECT_NE(q, L);
            for (i64 q : s.floor_norms) EXPECT_NE(q, L);
            if (s.v == 2) {
                for (i64 q : s.surface_norms) EXPECT_NE(q, 2);
                for (i64 q : s.floor_norms) EXPECT_NE(q, 2);
            }
        }
}

TEST(Modpoly, GeneratorPlanRejectsUnusableNorms) {
    EXPECT_EQ(generator_plan(-71, 7, {2, 3}, {}), (std::optional<std::vector<i64>>{{2}}));
    EXPECT_EQ(generator_plan(-71, 7, {2, 3}, {2}), (std::optional<std::vector<i64>>{{3}}));
    EXPECT_FALSE(generator_plan(-71, 7, {2, 3}, {2, 3}).has_value());
}

TEST(Modpoly, ComputeMatchesOracleForJ) {
    PhiStore store;
    for (u64 l : {3ull, 5ull, 7ull}) EXPECT_EQ(compute(l, opts(Invariant::J), store).phi, phi_qexp(l)) << l;
}

TEST(Modpoly, ComputeMatchesOracleForClassInvariants) {
    PhiStore store;
    for (u64 l : {5ull, 7ull}) {
        EXPECT_EQ(compute(l, opts(Invariant::Gamma2), store).phi, eval_interp_phi(Invariant::Gamma2, l)) << l;
        BivariatePoly f = compute(l, opts(Invariant::WeberF), store).phi;
        EXPECT_EQ(f, eval_interp_phi(Invariant::WeberF, l)) << l;
        EXPECT_EQ(f.get(static_cast<unsigned>(l), static_cast<unsigned>(l)), -1);
    }
}

TEST(Modpoly, ReducedModulusMatchesReduction) {
    PhiStore store;
    for (const char* m : {"2305843009213693951", "1000000000000000000000000000057", "1000000"}) {
        ComputeOptions o = opts(Invariant::J);
        o.modulus = Integer(m);
        BivariatePoly reduced = compute(11, o, store).phi;
        EXPECT_EQ(reduced, phi_qexp(11).reduce_mod(Integer(m))) << m;
    }
}

TEST(Modpoly, SeedsAndSelectorsAgree) {
    PhiStore store;
    BivariatePoly a = compute(13, opts(Invariant::J, 1), store).phi;
    BivariatePoly b = compute(13, opts(Invariant::J, 77), store).phi;
    ComputeOptions r = opts(Invariant::J, 5);
    r.selector = Selector::Randomized;
    ComputeResult c = compute(13, r, store);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c.phi);
    EXPECT_TRUE(c.stable);
}

TEST(Modpoly, ForcedDiscriminant) {
    PhiStore store;
    ComputeOptions o = opts(Invariant::J);
    o.forced_D = -1011;
    ComputeResult r = compute(7, o, store);
    EXPECT_EQ(r.order.D, -1011);
    EXPECT_EQ(r.phi, phi_qexp(7));
}

TEST(Modpoly, PhiFromGamma2) {
    for (u64 l : {5ull, 7ull, 11ull}) {
        BivariatePoly g = eval_interp_phi(Invariant::Gamma2, l);
        EXPECT_EQ(phi_from_gamma2(g), phi_qexp(l)) << l;
        Integer m("1000000007");
        EXPECT_EQ(phi_from_gamma2(g.reduce_mod(m)), phi_qexp(l).reduce_mod(m)) << l;
    }
    BivariatePoly bad = eval_interp_phi(Invariant::Gamma2, 5);
    bad.set(1, 0, 1);
    EXPECT_THROW(phi_from_gamma2(bad), std::invalid_argument);
}

TEST(Modpoly, WeberToJ) {
    PrimeField F(1000003);
    for (u64 x : {2ull, 3ull, 12345ull}) {
        u64 j = weber_to_j(F, x);
        u64 x24 = F.pow(x, 24);
        u64 a = F.sub(x24, 16);
        EXPECT_EQ(F.mul(j, x24), F.mul(F.mul(a, a), a));
    }
}

TEST(Modpoly, StoreCacheRoundTrip) {
    auto dir = std::filesystem::temp_directory_path() / "mpoly_store_test";
    std::filesystem::remove_all(dir);
    {
        PhiStore store(dir.string());
        EXPECT_EQ(store.get(Invariant::J, 5), phi_qexp(5));
    }
    auto path = dir / "modpoly" / "j" / "l5.txt";
    ASSERT_TRUE(std::filesystem::exists(path));
    PhiStore again(dir.string());
    EXPECT_EQ(again.get(Invariant::J, 5), phi_qexp(5));
    {
        std::ofstream corrupt(path);
        corrupt << "MODPOLY v1 inv=j l=5 mod=0\n1 1 1\n";
    }
    PhiStore third(dir.string());
    EXPECT_EQ(third.get(Invariant::J, 5), phi_qexp(5));
    std::filesystem::remove_all(dir);
}
