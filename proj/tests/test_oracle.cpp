#include <gtest/gtest.h>

#include <random>

#include "mpoly/classpoly.hpp"
#include "mpoly/ec.hpp"
#include "mpoly/oracle.hpp"

using namespace mpoly;

TEST(Oracle, JSeries) {
    IntSeries J = j_qexp(6);
    EXPECT_EQ(J.coefficient(-1), 1);
    EXPECT_EQ(J.coefficient(0), 744);
    EXPECT_EQ(J.coefficient(1), 196884);
    EXPECT_EQ(J.coefficient(2), 21493760);
    EXPECT_EQ(J.coefficient(3), 864299970);
    EXPECT_EQ(J.coefficient(-2), 0);
    EXPECT_THROW(J.coefficient(10), std::out_of_range);
}

TEST(Oracle, Phi2) {
    BivariatePoly P = phi_qexp(2);
    EXPECT_EQ(P.get(0, 0), Integer("-157464000000000"));
    EXPECT_EQ(P.get(3, 0), 1);
    EXPECT_EQ(P.get(2, 2), -1);
    EXPECT_EQ(P.get(1, 0), Integer("8748000000"));
    EXPECT_EQ(P.get(2, 1), 1488);
    EXPECT_EQ(P.get(1, 1), 40773375);
    EXPECT_EQ(P.get(2, 0), -162000);
    EXPECT_EQ(P.nonzero_count(), 7u);
}

TEST(Oracle, Phi2TwoIsogenies) {
    // 2-isogenous pairs over F_1009 from explicit 2-torsion: x0 root of x^3 + Ax + B
    PrimeField F(1009);
    BivariatePoly P = phi_qexp(2);
    int checked = 0;
    for (u64 A = 1; A < 40; ++A)
        for (u64 B = 1; B < 40; ++B) {
            Curve E{F, A, B};
            if (!is_nonsingular(E)) continue;
            for (u64 x0 : roots(F, Poly{B, A, 0, 1})) {
                // degree-2 Velu step: t = 3 x0^2 + A, w = x0 t
                u64 t = F.add(F.mul(3, F.mul(x0, x0)), A);
                u64 w = F.mul(x0, t);
                Curve E2{F, F.sub(A, F.mul(5, t)), F.sub(B, F.mul(7, w))};
                EXPECT_EQ(P.evaluate(F, j_invariant(E), j_invariant(E2)), 0u);
                ++checked;
            }
        }
    EXPECT_GT(checked, 100);
}

TEST(Oracle, StructureAndKronecker) {
    for (u64 l : {3u, 5u, 7u}) {
        BivariatePoly P = phi_qexp(l);
        EXPECT_TRUE(P.symmetric_monic()) << l;
        EXPECT_EQ(P.get(l, l), -1) << l;
        // (X^l - Y)(X - Y^l) mod l
        BivariatePoly R = P.reduce_mod(l);
        BivariatePoly K(l, Invariant::J, l);
        K.set(l + 1, 0, 1);
        K.set(l, l, l - 1);
        K.set(1, 1, l - 1);
        EXPECT_EQ(R, K) << l;
    }
}

TEST(Oracle, WeberValues) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> du(-0.5, 0.5), dv(0.6, 1.5);
    const mpfr_prec_t prec = 256;
    for (int i = 0; i < 20; ++i) {
        BigFloatComplex tau = cx_from(du(rng), dv(rng), prec);
        BigFloatComplex f24 = cx_pow(weber_f_eval(tau, prec), 24);
        BigFloatComplex g = f24 - cx_from(16.0, 0.0, prec);
        BigFloatComplex J = g * g * g / f24;
        BigFloatComplex j = eval_j(tau);
        EXPECT_LT((J - j).log2_abs() - j.log2_abs(), -200);
        BigFloatComplex g2 = gamma2_eval(tau, prec);
        EXPECT_LT((g2 * g2 * g2 - j).log2_abs() - j.log2_abs(), -200);
    }
    // real on the imaginary axis
    BigFloatComplex f = weber_f_eval(cx_from(0.0, std::sqrt(2.0), prec), prec);
    EXPECT_LT(f.im.log2_abs() - f.re.log2_abs(), -200);
}

TEST(Oracle, EvalInterpWeber) {
    BivariatePoly P5 = eval_interp_phi(Invariant::WeberF, 5);
    BivariatePoly E(5, Invariant::WeberF, 0);
    E.set(6, 0, 1);
    E.set(5, 5, -1);
    E.set(1, 1, 4);
    EXPECT_EQ(P5, E);
    BivariatePoly P7 = eval_interp_phi(Invariant::WeberF, 7);
    EXPECT_EQ(P7.get(7, 7), -1);
    EXPECT_TRUE(P7.sparsity_ok());
    EXPECT_EQ(eval_interp_phi(Invariant::WeberF, 7, 99), P7);
}
