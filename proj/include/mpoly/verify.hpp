#pragma once

#include <random>
#include <string>
#include <vector>

#include "mpoly/bivariate.hpp"
#include "mpoly/ec.hpp"

namespace mpoly {

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
};

// X^(l+1) coefficient 1 and no other term of X-degree above l
bool degree_ok(const BivariatePoly& phi);
// Phi = (X^l - Y)(X - Y^l) mod l; invariant j over Z only
bool kronecker_congruence(const BivariatePoly& phi);

struct IsogenyPair {
    u64 p = 0;
    u64 x = 0;  // invariant value over j1 (j1 itself, its cube root, or a Weber root)
    u64 j1 = 0, j2 = 0;
};

// random prime in [2^24, 2^28) admissible for inv, and a Velu l-isogeny j1 -> j2 over it
IsogenyPair random_isogeny_pair(u64 l, Invariant inv, std::mt19937_64& rng);

// samples whose pair is not a zero of phi; phi must be over Z
std::size_t isogeny_vanishing_failures(const BivariatePoly& phi, std::size_t samples, std::mt19937_64& rng);

// random roots (x, y) of a Weber polynomial over fresh p = 11 mod 12 with Phi_l(J(x), J(y)) != 0
std::size_t weber_root_pair_failures(const BivariatePoly& phi_f, const BivariatePoly& phi_j, std::size_t samples,
                                     std::mt19937_64& rng);

std::vector<Check> verify_polynomial(const BivariatePoly& phi, std::uint64_t seed, std::size_t samples = 20);

}  // namespace mpoly
