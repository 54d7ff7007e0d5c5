#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mpoly/bivariate.hpp"
#include "mpoly/ec.hpp"
#include "mpoly/quadform.hpp"

namespace mpoly {

struct VolcanoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// next element on an isogeny path using Phi_{l0} mod p
u64 cm_step(const DensePhi& phi, u64 cur, std::optional<u64> prev);

enum class Level { Surface, Floor };

struct TorsorEnumeration {
    Level level = Level::Surface;
    const Presentation* presentation = nullptr;
    std::vector<u64> elements;  // elements[i] corresponds to presentation->table[i]
    std::unordered_map<u64, std::size_t> index;

    std::size_t size() const { return elements.size(); }
    long find(u64 x) const {
        auto it = index.find(x);
        return it == index.end() ? -1 : static_cast<long>(it->second);
    }
};

// walk polynomials are given per generator of the presentation, in the same order
TorsorEnumeration enumerate_torsor(u64 start, const Presentation& pres, const std::vector<const DensePhi*>& walk,
                                   Level level);

struct CyclePartition {
    std::vector<std::vector<std::size_t>> cycles;  // table indices
    std::vector<std::size_t> cycle_of;             // index -> cycle number
};

// l-isogeny cycles on the surface: cosets of the class of a prime above l
CyclePartition surface_cycles(const Presentation& pres, u64 l);
// multiset of surface l-neighbours of each index (empty when l is inert)
std::vector<std::vector<std::size_t>> surface_neighbors(const Presentation& pres, u64 l);

// sibling groups on the floor: cosets of the kernel generator
CyclePartition floor_cycles(const Presentation& floor, const QuadForm& gen2);

// a floor j-invariant l-isogenous to the surface j-invariant j_i, or throws VolcanoError
u64 descend_to_floor(u64 j_i, u64 l, const PrimeField& F, i64 t, const std::unordered_map<u64, std::size_t>& surface,
                     std::mt19937_64& rng);

}  // namespace mpoly
