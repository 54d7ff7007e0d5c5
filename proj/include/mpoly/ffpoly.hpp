#pragma once

#include <optional>
#include <random>
#include <vector>

#include "mpoly/arith.hpp"

namespace mpoly {

class PrimeField {
public:
    PrimeField() = default;
    explicit PrimeField(u64 p);

    u64 p() const { return p_; }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a ? p_ - a : 0; }
    u64 mul(u64 a, u64 b) const {
        if (small_) {
            u64 q = static_cast<u64>(static_cast<long double>(a) * b * pinv_);
            i64 r = static_cast<i64>(a * b - q * p_);
            if (r < 0) r += p_;
            if (r >= static_cast<i64>(p_)) r -= p_;
            return static_cast<u64>(r);
        }
        return mulmod(a, b, p_);
    }
    u64 pow(u64 a, u64 e) const;
    u64 pow(u64 a, const Integer& e) const;
    u64 inv(u64 a) const;
    u64 from_int(i64 v) const;
    u64 from_integer(const Integer& v) const;
    bool is_square(u64 a) const;
    // some square root of a square; throws for non-residues
    u64 sqrt(u64 a) const;
    u64 cube_root(u64 x) const;
    u64 smallest_nonresidue() const;

private:
    u64 p_ = 0;
    long double pinv_ = 0;
    bool small_ = false;
};

using Poly = std::vector<u64>;  // low to high degree, trimmed

void trim(Poly& f);
inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_add(const PrimeField& F, const Poly& f, const Poly& g);
Poly poly_sub(const PrimeField& F, const Poly& f, const Poly& g);
Poly poly_scale(const PrimeField& F, const Poly& f, u64 c);
Poly poly_mul(const PrimeField& F, const Poly& f, const Poly& g);
Poly poly_mul_schoolbook(const PrimeField& F, const Poly& f, const Poly& g);
// quotient and remainder; g nonzero
void poly_divrem(const PrimeField& F, const Poly& f, const Poly& g, Poly* q, Poly* r);
Poly poly_rem(const PrimeField& F, const Poly& f, const Poly& g);
Poly poly_gcd(const PrimeField& F, Poly f, Poly g);  // monic
Poly poly_monic(const PrimeField& F, const Poly& f);
Poly poly_derivative(const PrimeField& F, const Poly& f);
u64 poly_eval(const PrimeField& F, const Poly& f, u64 x);
// f^e mod m
Poly poly_powmod(const PrimeField& F, const Poly& f, const Integer& e, const Poly& m);
Poly frobenius_powmod(const PrimeField& F, const Poly& f);

std::vector<u64> roots(const PrimeField& F, const Poly& f);
// some root of f, or none
std::optional<u64> find_one_root(const PrimeField& F, const Poly& f);
Poly product_from_roots(const PrimeField& F, const std::vector<u64>& rts);

// subproduct tree over fixed nodes; reused across many interpolations
class Interpolator {
public:
    Interpolator(const PrimeField& F, std::vector<u64> nodes);
    Poly operator()(const std::vector<u64>& values) const;
    std::vector<u64> evaluate(const Poly& f) const;  // multipoint evaluation at the nodes
    const Poly& master() const { return tree_.back()[0]; }
    std::size_t size() const { return nodes_.size(); }

private:
    void remainders(const Poly& f, std::vector<u64>& out) const;
    PrimeField F_;
    std::vector<u64> nodes_;
    std::vector<std::vector<Poly>> tree_;  // tree_[0] = leaves
    std::vector<u64> weights_;
};

Poly interpolate(const PrimeField& F, const std::vector<std::pair<u64, u64>>& points);

}  // namespace mpoly
