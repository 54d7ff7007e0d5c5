#pragma once

#include <iosfwd>
#include <set>
#include <unordered_map>
#include <vector>

#include "mpoly/arith.hpp"

namespace mpoly {

// Coefficients are machine words; |D| < 2^62 is enforced.
struct QuadForm {
    i64 a = 1, b = 1, c = 1;

    i64 disc() const { return static_cast<i64>(static_cast<i128>(b) * b - static_cast<i128>(4) * a * c); }
    bool primitive() const { return gcd_i64(gcd_i64(a, b), c) == 1; }
    bool reduced() const;
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const QuadForm& o) const { return !(*this == o); }
};

std::ostream& operator<<(std::ostream& os, const QuadForm& f);

bool is_discriminant(i64 D);
QuadForm make_form(i64 a, i64 b, i64 D);  // c from the discriminant
QuadForm principal_form(i64 D);
QuadForm reduce(QuadForm f);
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm inverse(const QuadForm& f);
QuadForm power(const QuadForm& f, u64 n);
u64 form_order(const QuadForm& f);

// D = u^2 * d_K
struct DiscriminantSplit {
    i64 d_K;
    i64 u;
};
DiscriminantSplit fundamental_split(i64 D);

std::vector<QuadForm> reduced_forms(i64 D);
i64 class_number(i64 D);
// h(u^2 d_K) from h(d_K), d_K < -4 fundamental
i64 class_number_from_fundamental(i64 h_K, i64 d_K, i64 u);

QuadForm prime_form(i64 D, i64 l0);

class Presentation {
public:
    i64 D = 0;
    std::vector<QuadForm> generators;
    std::vector<i64> norms;
    std::vector<u64> relative_orders;
    std::vector<std::vector<u64>> power_relations;
    std::vector<QuadForm> table;  // index = x_1 + r_1 (x_2 + r_2 (x_3 + ...))

    std::size_t size() const { return table.size(); }
    // index of a reduced form, or -1
    long index_of(const QuadForm& f) const;
    std::vector<u64> exponents(std::size_t idx) const;
    std::size_t index_from_exponents(const std::vector<u64>& x) const;
    std::size_t stride(std::size_t gen) const;
    std::size_t multiply(std::size_t i, std::size_t j) const;
    void rebuild_index();

    void write(std::ostream& os) const;
    static Presentation read(std::istream& is);

private:
    std::unordered_map<u64, std::size_t> index_;
};

// greedy generators by ascending prime norm; prime_cap bounds the search
Presentation polycyclic_presentation(i64 D, const std::set<i64>& excluded, i64 prime_cap = 100000);

// generators taken in the given order; each must enlarge the subgroup
Presentation presentation_from_generators(i64 D, const std::vector<i64>& norms);

bool is_fundamental(i64 d);
// entry n holds h(-n) when -n is a fundamental discriminant, else 0
std::vector<i64> fundamental_class_numbers(i64 bound);

QuadForm kerphi_generator(i64 D_O, i64 l);

}  // namespace mpoly
