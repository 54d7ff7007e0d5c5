#pragma once

#include <vector>

#include "mpoly/arith.hpp"

namespace mpoly {

enum class CrtMode { Exact, Explicit };

class CrtAccumulator {
public:
    // m is ignored in exact mode
    CrtAccumulator(std::vector<u64> primes, std::size_t coefficient_count, CrtMode mode, Integer m = 0);

    CrtMode mode() const { return mode_; }
    const Integer& M() const { return M_; }
    const std::vector<u64>& primes() const { return primes_; }
    const Integer& M_i(std::size_t i) const { return Mi_[i]; }
    u64 a_i(std::size_t i) const { return ai_[i]; }

    void update(std::size_t prime_index, const std::vector<u64>& residues);
    // exact: symmetric lift into (-M/2, M/2); explicit: values in [0, m).
    // strict explicit mode rejects sums whose fractional part lies in [1/4, 3/4], i.e. M <= 4|c|.
    std::vector<Integer> finalize(bool strict = true) const;

private:
    std::vector<u64> primes_;
    std::size_t count_;
    CrtMode mode_;
    Integer m_;
    Integer M_;
    std::vector<Integer> Mi_;
    std::vector<u64> ai_;
    std::vector<Integer> Mi_mod_m_;
    std::vector<bool> done_;
    std::vector<Integer> sum_;     // exact: sum of x_i M_i; explicit: sum of x_i (M_i mod m)
    std::vector<u128> frac_;       // explicit: fractional part of sum x_i / p_i, scaled by 2^128
    std::vector<u64> whole_;       // explicit: integer part of the same sum
};

}  // namespace mpoly
