#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "mpoly/classpoly.hpp"
#include "mpoly/quadform.hpp"

using namespace mpoly;

namespace {
std::vector<Integer> ints(std::initializer_list<const char*> xs) {
    std::vector<Integer> r;
    for (auto x : xs) r.emplace_back(x);
    return r;
}

double j_abs_error(const BigFloatComplex& z, double re) {
    return std::hypot(z.re.to_double() - re, z.im.to_double());
}
}  // namespace

TEST(Classpoly, JAtSpecialPoints) {
    const mpfr_prec_t prec = 200;
    EXPECT_LT(j_abs_error(eval_j(cm_point(1, 1, -7, prec)), -3375.0), 1e-30);
    EXPECT_LT(j_abs_error(eval_j(cm_point(1, 0, -4, prec)), 1728.0), 1e-30);
    EXPECT_LT(j_abs_error(eval_j(cm_point(1, 1, -3, prec)), 0.0), 1e-30);
    EXPECT_LT(j_abs_error(eval_j(cm_point(1, 0, -8, prec)), 8000.0), 1e-30);
}

TEST(Classpoly, WeberRelation) {
    // f^24 - 16 = gamma2 f^8 and j = gamma2^3 at a generic point
    const mpfr_prec_t prec = 256;
    BigFloatComplex tau{BigFloat(0.1234, prec), BigFloat(1.377, prec)};
    BigFloatComplex f = weber_f_value(tau);
    BigFloatComplex g = gamma2_value(tau);
    BigFloatComplex f8 = cx_pow(f, 8);
    BigFloatComplex lhs = f8 * f8 * f8 - cx_from(16.0, 0.0, prec) - g * f8;
    EXPECT_LT(lhs.log2_abs(), -200);
    // j(tau + 1) = j(tau) and j(-1/tau) = j(tau)
    BigFloatComplex j0 = eval_j(tau);
    BigFloatComplex j1 = eval_j(tau + cx_from(1.0, 0.0, prec));
    BigFloatComplex j2 = eval_j(cx_from(-1.0, 0.0, prec) / tau);
    EXPECT_LT((j0 - j1).log2_abs(), -180);
    EXPECT_LT((j0 - j2).log2_abs(), -180);
}

TEST(Classpoly, SmallHilbert) {
    EXPECT_EQ(hilbert_class_poly(-7).coefficients, ints({"3375", "1"}));
    EXPECT_EQ(hilbert_class_poly(-8).coefficients, ints({"-8000", "1"}));
    EXPECT_EQ(hilbert_class_poly(-15).coefficients, ints({"-121287375", "191025", "1"}));
    EXPECT_EQ(hilbert_class_poly(-20).coefficients, ints({"-681472000", "-1264000", "1"}));
    EXPECT_EQ(hilbert_class_poly(-23).coefficients,
              ints({"12771880859375", "-5151296875", "3491750", "1"}));
    EXPECT_EQ(hilbert_class_poly(-71).coefficients,
              ints({"737707086760731113357714241006081263", "-425319473946139603274605151187659",
                    "5138800366453976780323726329446", "-823534263439730779968091389",
                    "98394038810047812049302", "-3091990138604570", "313645809715", "1"}));
}

TEST(Classpoly, DegreeMatchesClassNumber) {
    for (i64 D : {-239, -311, -1004, -3299, -20014}) {
        if (!is_discriminant(D)) continue;
        auto H = hilbert_class_poly(D);
        EXPECT_EQ(static_cast<i64>(H.degree()), class_number(D)) << D;
    }
}

TEST(Classpoly, SplitsModNormPrime) {
    // 4p = t^2 - v^2 D: H_D splits completely
    auto H = hilbert_class_poly(-23);
    for (u64 t = 1; t < 200; t += 2) {
        u64 four_p = t * t + 23;
        if (four_p % 4) continue;
        u64 p = four_p / 4;
        if (p < 5 || !is_prime_u64(p)) continue;
        PrimeField F(p);
        auto rts = roots(F, H.reduce(F));
        EXPECT_EQ(rts.size(), 3u) << p;
        u64 r = find_surface_root(H, F);
        EXPECT_EQ(poly_eval(F, H.reduce(F), r), 0u);
    }
}

TEST(Classpoly, CacheRoundTrip) {
    auto dir = std::filesystem::temp_directory_path() / "mpoly_classpoly_cache_test";
    std::filesystem::remove_all(dir);
    auto a = hilbert_class_poly_cached(-71, dir.string());
    auto b = hilbert_class_poly_cached(-71, dir.string());
    EXPECT_EQ(a.coefficients, b.coefficients);
    EXPECT_TRUE(std::filesystem::exists(dir / "classpoly" / "D71.txt"));
    std::stringstream ss;
    a.write(ss);
    EXPECT_EQ(ClassPolynomial::read(ss).coefficients, a.coefficients);
    std::filesystem::remove_all(dir);
}
