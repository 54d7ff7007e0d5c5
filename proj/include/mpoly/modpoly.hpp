#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mpoly/bivariate.hpp"
#include "mpoly/classpoly.hpp"
#include "mpoly/primes.hpp"
#include "mpoly/quadform.hpp"
#include "mpoly/volcano.hpp"

namespace mpoly {

struct OrderSelection {
    u64 l = 0;
    Invariant inv = Invariant::J;
    i64 D = 0;
    i64 d_K = 0;
    i64 u = 1;
    i64 h_O = 0;
    i64 h_R = 0;
    u64 v = 1;
    std::vector<i64> surface_norms;  // generator norms for cl(O), split one first
    std::vector<i64> floor_norms;    // generator norms for cl(R)
};

std::size_t interpolation_nodes(u64 l, Invariant inv);
std::vector<i64> walk_norms(Invariant inv);

// generator norms (split first, then at most one ramified) generating cl(D), if any
std::optional<std::vector<i64>> generator_plan(i64 D, i64 h, const std::vector<i64>& allowed,
                                               const std::set<i64>& excluded);

OrderSelection select_order(u64 l, Invariant inv, i64 smooth_bound = 256);
// the same checks for a prescribed discriminant; throws if unsuitable
OrderSelection order_for_discriminant(u64 l, Invariant inv, i64 D);

// small modular polynomials over Z: oracle values up to 13, computed values beyond
class PhiStore {
public:
    explicit PhiStore(std::optional<std::string> cache_dir = std::nullopt) : cache_dir_(std::move(cache_dir)) {}
    const BivariatePoly& get(Invariant inv, u64 l);
    const std::optional<std::string>& cache_dir() const { return cache_dir_; }
    void put(const BivariatePoly& phi);

private:
    std::optional<std::string> cache_dir_;
    std::map<std::pair<int, u64>, BivariatePoly> mem_;
};

// data shared by every prime of a run
struct RunContext {
    OrderSelection sel;
    ClassPolynomial H;
    Presentation surface, floor;
    std::vector<std::vector<std::size_t>> neighbors;  // surface l-neighbours per index
    CyclePartition siblings;                           // floor sibling groups
    QuadForm kernel_generator;
    std::vector<const BivariatePoly*> surface_walk, floor_walk;

    RunContext(const OrderSelection& s, PhiStore& store);
};

// per-prime computation; keeps the enumerations for inspection
class PrimeJob {
public:
    PrimeJob(const RunContext& ctx, const PrimeSpec& spec, std::mt19937_64& rng);
    DensePhi run();
    void enumerate();

    const PrimeField& field() const { return F_; }
    const TorsorEnumeration& surface() const { return surf_; }
    const TorsorEnumeration& floor() const { return floor_; }
    // j-invariants of the enumerations (equal to the elements for invariant j)
    const std::vector<u64>& surface_j() const { return surf_j_; }
    const std::vector<u64>& floor_j() const { return floor_j_; }

private:
    std::vector<u64> neighbor_roots(std::size_t i, std::size_t floor_index, u64 sign) const;

    const RunContext& ctx_;
    PrimeSpec spec_;
    std::mt19937_64& rng_;
    PrimeField F_;
    std::vector<DensePhi> surf_walk_, floor_walk_;
    TorsorEnumeration surf_, floor_;
    std::vector<u64> surf_j_, floor_j_;
    std::unordered_map<u64, std::size_t> surf_j_index_, floor_j_index_;
};

struct VolcanoReport {
    u64 l = 0, p = 0, v = 0;
    i64 t = 0, D = 0, d_K = 0, h_O = 0, h_R = 0;
    std::size_t ell_O = 0, ell_R = 0;                    // enumerated set sizes
    std::vector<std::vector<u64>> surface_cycles;        // j-invariants along l-isogeny cycles
    std::vector<std::vector<u64>> sibling_groups;        // floor j-invariants sharing a parent
    std::vector<u64> group_parent;                       // surface j-invariant above each group
    bool surface_roots_ok = false, floor_roots_ok = false;  // l+1 and 1 roots of Phi_l(X, j)
};

// p = 0 picks the first selected prime
VolcanoReport inspect_volcano(u64 l, i64 D, u64 p, PhiStore& store, std::uint64_t seed);

DensePhi phi_mod_p(const RunContext& ctx, const PrimeSpec& spec, std::mt19937_64& rng);

enum class Selector { Heuristic, Randomized };

struct ComputeOptions {
    Invariant inv = Invariant::J;
    std::optional<Integer> modulus;  // explicit CRT when set
    std::uint64_t seed = 1;
    unsigned threads = 1;
    Selector selector = Selector::Heuristic;
    std::optional<i64> forced_D;
    std::function<void(const std::string&)> log;
};

struct ComputeResult {
    BivariatePoly phi;
    OrderSelection order;
    double bound_bits = 0;
    std::size_t primes_used = 0;
    std::size_t primes_discarded = 0;
    double prime_bits = 0;
    bool stable = false;
};

ComputeResult compute(u64 l, const ComputeOptions& opts, PhiStore& store);

BivariatePoly phi_from_gamma2(const BivariatePoly& phi_g2);

// J(x) = (x^24 - 16)^3 / x^24
u64 weber_to_j(const PrimeField& F, u64 x);

}  // namespace mpoly
