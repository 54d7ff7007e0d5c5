#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mpoly {

using Integer = mpz_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

struct FactoredInteger {
    Integer value;
    std::vector<std::pair<Integer, unsigned>> factors;

    std::size_t omega() const { return factors.size(); }
    Integer recompose() const;
};

bool is_prime(const Integer& n);
bool is_prime_u64(u64 n);

FactoredInteger factor(const Integer& n);

// true means reject: omega(v) > (ln(ln v + 3))^2
bool omega_test(const Integer& v);

int kronecker(const Integer& d, const Integer& n);
int kronecker(i64 d, i64 n);

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);  // throws if not invertible

i64 gcd_i64(i64 a, i64 b);
u64 isqrt_u64(u64 n);
bool is_square_u64(u64 n, u64* root = nullptr);

double log2_abs(const Integer& n);  // log2|n|, -inf for 0
std::size_t bit_length(const Integer& n);

u64 to_u64(const Integer& n);
i64 to_i64(const Integer& n);
Integer from_u64(u64 v);
Integer from_i64(i64 v);

std::vector<u64> small_primes(u64 bound);  // all primes < bound

}  // namespace mpoly
