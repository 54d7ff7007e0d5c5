#include "mpoly/crt.hpp"

#include <set>
#include <stdexcept>

namespace mpoly {

namespace {

Integer product_tree(const std::vector<u64>& p, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return from_u64(p[lo]);
    std::size_t mid = (lo + hi) / 2;
    return product_tree(p, lo, mid) * product_tree(p, mid, hi);
}

// floor(x * 2^128 / p) for x < p
u128 scaled_fraction(u64 x, u64 p) {
    u128 num = static_cast<u128>(x) << 64;
    u64 hi = static_cast<u64>(num / p);
    u128 rem = num % p;
    u64 lo = static_cast<u64>((rem << 64) / p);
    return (static_cast<u128>(hi) << 64) | lo;
}

}  // namespace

CrtAccumulator::CrtAccumulator(std::vector<u64> primes, std::size_t coefficient_count, CrtMode mode, Integer m)
    : primes_(std::move(primes)), count_(coefficient_count), mode_(mode), m_(std::move(m)) {
    if (primes_.empty()) throw std::invalid_argument("CrtAccumulator: no primes");
    if (std::set<u64>(primes_.begin(), primes_.end()).size() != primes_.size())
        throw std::invalid_argument("CrtAccumulator: duplicate primes");
    if (mode_ == CrtMode::Explicit && m_ < 1) throw std::invalid_argument("CrtAccumulator: modulus must be positive");
    M_ = product_tree(primes_, 0, primes_.size());
    for (u64 p : primes_) {
        Integer Mi = M_ / p;
        Integer r = Mi % p;
        ai_.push_back(invmod(to_u64(r), p));
        if (mode_ == CrtMode::Explicit) Mi_mod_m_.push_back(Mi % m_);
        Mi_.push_back(std::move(Mi));
    }
    done_.assign(primes_.size(), false);
    sum_.assign(count_, 0);
    if (mode_ == CrtMode::Explicit) {
        frac_.assign(count_, 0);
        whole_.assign(count_, 0);
    }
}

void CrtAccumulator::update(std::size_t i, const std::vector<u64>& residues) {
    if (i >= primes_.size()) throw std::out_of_range("CrtAccumulator::update: bad prime index");
    if (done_[i]) throw std::logic_error("CrtAccumulator::update: prime already updated");
    if (residues.size() != count_) throw std::invalid_argument("CrtAccumulator::update: wrong residue count");
    done_[i] = true;
    const u64 p = primes_[i];
    for (std::size_t k = 0; k < count_; ++k) {
        u64 x = mulmod(residues[k] % p, ai_[i], p);
        if (x == 0) continue;
        if (mode_ == CrtMode::Exact) {
            mpz_addmul_ui(sum_[k].get_mpz_t(), Mi_[i].get_mpz_t(), x);
        } else {
            mpz_addmul_ui(sum_[k].get_mpz_t(), Mi_mod_m_[i].get_mpz_t(), x);
            if (mpz_size(sum_[k].get_mpz_t()) > 2 * mpz_size(m_.get_mpz_t()) + 2) sum_[k] %= m_;
            u128 f = scaled_fraction(x, p);
            u128 before = frac_[k];
            frac_[k] += f;
            if (frac_[k] < before) ++whole_[k];
        }
    }
}

std::vector<Integer> CrtAccumulator::finalize(bool strict) const {
    for (bool d : done_)
        if (!d) throw std::logic_error("CrtAccumulator::finalize: missing prime");
    std::vector<Integer> out(count_);
    if (mode_ == CrtMode::Exact) {
        Integer half = M_ / 2;
        for (std::size_t k = 0; k < count_; ++k) {
            Integer c = sum_[k] % M_;
            if (c > half) c -= M_;
            out[k] = std::move(c);
        }
        return out;
    }
    Integer M_mod_m = M_ % m_;
    const u128 quarter = static_cast<u128>(1) << 126;
    const u128 three_quarters = quarter * 3;
    for (std::size_t k = 0; k < count_; ++k) {
        u64 r = whole_[k];
        u128 f = frac_[k];
        if (strict && f >= quarter && f < three_quarters)
            throw std::runtime_error("CrtAccumulator::finalize: fractional part too close to 1/2");
        if (f >= (static_cast<u128>(1) << 127)) ++r;
        Integer c = sum_[k] - from_u64(r) * M_mod_m;
        c %= m_;
        if (c < 0) c += m_;
        out[k] = std::move(c);
    }
    return out;
}

}  // namespace mpoly
