#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "mpoly/classpoly.hpp"
#include "mpoly/modpoly.hpp"
#include "mpoly/oracle.hpp"
#include "mpoly/volcano.hpp"

using namespace mpoly;

namespace {
// smallest prime p = s^2 + 23 above min_p
u64 split_prime_for_23(u64 min_p) {
    for (u64 s = 1;; ++s) {
        u64 p = s * s + 23;
        if (p >= min_p && is_prime_u64(p)) return p;
    }
}
}  // namespace

TEST(Volcano, TorsorOfMinus23MatchesClassPolynomialRoots) {
    const u64 p = split_prime_for_23(1000);
    PrimeField F(p);
    ClassPolynomial H = hilbert_class_poly(-23);
    DensePhi phi3(phi_qexp(3), F);
    Presentation P = presentation_from_generators(-23, {3});
    u64 j0 = find_surface_root(H, F);
    TorsorEnumeration T = enumerate_torsor(j0, P, {&phi3}, Level::Surface);
    ASSERT_EQ(T.size(), 3u);
    auto expected = roots(F, H.reduce(F));
    std::vector<u64> got = T.elements;
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(got, expected);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(T.find(T.elements[i]), static_cast<long>(i));
}

TEST(Volcano, CmStepRejectsNonNeighbour) {
    const u64 p = split_prime_for_23(1000);
    PrimeField F(p);
    ClassPolynomial H = hilbert_class_poly(-23);
    DensePhi phi3(phi_qexp(3), F);
    u64 j0 = find_surface_root(H, F);
    u64 j1 = cm_step(phi3, j0, std::nullopt);
    EXPECT_EQ(phi3.evaluate(j0, j1), 0u);
    u64 j2 = cm_step(phi3, j1, j0);
    EXPECT_EQ(phi3.evaluate(j1, j2), 0u);
    EXPECT_NE(j2, j0);
    u64 bogus = F.add(j0, 1);
    EXPECT_THROW(cm_step(phi3, j1, bogus), VolcanoError);
}

TEST(Volcano, CyclePartitionsForMinus1011) {
    OrderSelection sel = order_for_discriminant(7, Invariant::J, -1011);
    Presentation S = presentation_from_generators(-1011, sel.surface_norms);
    CyclePartition sc = surface_cycles(S, 7);
    ASSERT_EQ(sc.cycles.size(), 4u);
    for (const auto& c : sc.cycles) EXPECT_EQ(c.size(), 3u);
    auto nb = surface_neighbors(S, 7);
    for (std::size_t i = 0; i < nb.size(); ++i) {
        ASSERT_EQ(nb[i].size(), 2u);
        for (auto k : nb[i]) EXPECT_EQ(sc.cycle_of[k], sc.cycle_of[i]);
    }
    EXPECT_EQ(sel.h_O, 12);
    EXPECT_EQ(sel.h_R, 72);
    Presentation R = presentation_from_generators(49 * -1011, sel.floor_norms);
    CyclePartition fc = floor_cycles(R, kerphi_generator(-1011, 7));
    ASSERT_EQ(fc.cycles.size(), 12u);
    for (const auto& c : fc.cycles) EXPECT_EQ(c.size(), 6u);
}

TEST(Volcano, InspectTwoLevelInstanceMinus1011) {
    PhiStore store;
    VolcanoReport r = inspect_volcano(7, -1011, 0, store, 1);
    EXPECT_EQ(r.h_O, 12);
    EXPECT_EQ(r.h_R, 72);
    EXPECT_EQ(r.ell_O, 12u);
    EXPECT_EQ(r.ell_R, 72u);
    ASSERT_EQ(r.surface_cycles.size(), 4u);
    for (const auto& c : r.surface_cycles) EXPECT_EQ(c.size(), 3u);
    ASSERT_EQ(r.sibling_groups.size(), 12u);
    for (const auto& g : r.sibling_groups) EXPECT_EQ(g.size(), 6u);
    EXPECT_TRUE(r.surface_roots_ok);
    EXPECT_TRUE(r.floor_roots_ok);
    std::set<u64> surface;
    for (const auto& c : r.surface_cycles) surface.insert(c.begin(), c.end());
    for (u64 parent : r.group_parent) EXPECT_TRUE(surface.count(parent));
    VolcanoReport again = inspect_volcano(7, -1011, r.p, store, 1);
    EXPECT_EQ(again.sibling_groups, r.sibling_groups);
    EXPECT_EQ(again.surface_cycles, r.surface_cycles);
}

TEST(Volcano, CountsForSelectedOrders) {
    PhiStore store;
    for (u64 l : {5ull, 7ull, 11ull}) {
        OrderSelection sel = select_order(l, Invariant::J);
        VolcanoReport r = inspect_volcano(l, sel.D, 0, store, 3);
        EXPECT_EQ(static_cast<i64>(r.ell_O), r.h_O);
        EXPECT_EQ(r.h_R, r.h_O * (static_cast<i64>(l) - kronecker(r.d_K, static_cast<i64>(l))));
        EXPECT_EQ(static_cast<i64>(r.ell_R), r.h_R);
        EXPECT_TRUE(r.surface_roots_ok) << l;
        EXPECT_TRUE(r.floor_roots_ok) << l;
    }
}
