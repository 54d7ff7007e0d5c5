#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mpoly/ffpoly.hpp"

namespace mpoly {

enum class Invariant { J, Gamma2, WeberF };

std::string invariant_name(Invariant inv);  // "j", "gamma2", "weber-f"
Invariant parse_invariant(const std::string& name);

// Symmetric polynomial in X, Y with coefficients over Z (modulus 0) or in [0, modulus).
// Entries are keyed by (a, b) with a >= b and stand for X^a Y^b + X^b Y^a (once when a == b).
class BivariatePoly {
public:
    u64 l = 0;
    Invariant inv = Invariant::J;
    Integer modulus = 0;

    BivariatePoly() = default;
    BivariatePoly(u64 l_, Invariant inv_, Integer modulus_ = 0) : l(l_), inv(inv_), modulus(std::move(modulus_)) {}

    Integer get(unsigned a, unsigned b) const;
    void set(unsigned a, unsigned b, Integer c);
    const std::map<std::pair<unsigned, unsigned>, Integer>& entries() const { return coeffs_; }
    std::size_t nonzero_count() const { return coeffs_.size(); }

    BivariatePoly reduce_mod(const Integer& m) const;
    std::size_t max_coeff_bits() const;

    bool symmetric_monic() const;  // X^(l+1) coefficient is 1 and degrees are at most l+1
    bool sparsity_ok() const;      // support obeys the congruence of the invariant

    // Phi(X, y) as a polynomial in X over F_p
    Poly instantiate(const PrimeField& F, u64 y) const;
    u64 evaluate(const PrimeField& F, u64 x, u64 y) const;

    void write(std::ostream& os) const;
    static BivariatePoly read(std::istream& is);
    void write_file(const std::string& path) const;
    static BivariatePoly read_file(const std::string& path);

    friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) {
        return a.l == b.l && a.inv == b.inv && a.modulus == b.modulus && a.coeffs_ == b.coeffs_;
    }

private:
    std::map<std::pair<unsigned, unsigned>, Integer> coeffs_;
};

// true when X^a Y^b may appear in the polynomial of the given invariant
bool in_support(Invariant inv, u64 l, unsigned a, unsigned b);

// dense reduction mod p: row a holds the coefficients of X^a as a polynomial in Y
class DensePhi {
public:
    DensePhi() = default;
    DensePhi(const BivariatePoly& phi, const PrimeField& F);
    DensePhi(std::size_t degree, const PrimeField& F) : F_(F), n_(degree + 1), c_(n_ * n_, 0) {}

    std::size_t degree() const { return n_ - 1; }
    const PrimeField& field() const { return F_; }
    u64 at(std::size_t a, std::size_t b) const { return c_[a * n_ + b]; }
    u64& at(std::size_t a, std::size_t b) { return c_[a * n_ + b]; }
    Poly instantiate(u64 y) const;  // Phi(X, y)
    u64 evaluate(u64 x, u64 y) const;
    bool symmetric() const;
    BivariatePoly to_bivariate(u64 l, Invariant inv) const;

private:
    PrimeField F_;
    std::size_t n_ = 0;
    std::vector<u64> c_;
};

}  // namespace mpoly
