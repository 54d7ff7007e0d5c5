#pragma once

#include <random>
#include <vector>

#include "mpoly/bivariate.hpp"

namespace mpoly {

// 4p = t^2 - v^2 l^2 D
struct PrimeSpec {
    u64 p = 0;
    u64 t = 0;
    u64 v = 0;
    u64 l = 0;
    i64 D = 0;

    bool valid() const;
};

// log2 of the height bound of Phi_l^g
double height_bound(u64 l, Invariant inv);

// congruence filter on p required by the invariant
bool prime_allowed(u64 p, Invariant inv);

// fixed v, increasing t; stops once the primes carry more than budget_bits
std::vector<PrimeSpec> select_primes_heuristic(u64 l, i64 D, double budget_bits, Invariant inv = Invariant::J,
                                               std::size_t extra = 0);

// randomized selection with a grow-on-failure search region
std::vector<PrimeSpec> select_primes_randomized(u64 l, i64 D, double budget_bits, std::mt19937_64& rng,
                                                Invariant inv = Invariant::J, std::size_t extra = 0);

u64 fixed_v(i64 D);  // 2 if D = 1 mod 8, else 1

double log2_sum(const std::vector<PrimeSpec>& s);

}  // namespace mpoly
