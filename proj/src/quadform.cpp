#include "mpoly/quadform.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mpoly {

namespace {

constexpr i64 kMaxAbsDisc = i64(1) << 62;

void check_disc(i64 D) {
    if (D >= 0) throw std::domain_error("quadratic form: discriminant must be negative");
    if (D <= -kMaxAbsDisc) throw std::range_error("quadratic form: discriminant too large");
}

// floor division for i128
i128 fdiv(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 mod_pos(i128 a, i128 m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

// u*a + v*b = g = gcd(a, b) >= 0
i64 xgcd(i64 a, i64 b, i64& u, i64& v) {
    i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b) {
        i64 q = a / b;
        i64 t = a - q * b;
        a = b;
        b = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
        t = v0 - q * v1;
        v0 = v1;
        v1 = t;
    }
    if (a < 0) {
        a = -a;
        u0 = -u0;
        v0 = -v0;
    }
    u = u0;
    v = v0;
    return a;
}

u64 form_key(const QuadForm& f) { return (static_cast<u64>(f.a) << 32) ^ static_cast<u64>(f.b + (i64(1) << 31)); }

}  // namespace

bool QuadForm::reduced() const {
    if (!(std::llabs(b) <= a && a <= c)) return false;
    if ((std::llabs(b) == a || a == c) && b < 0) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const QuadForm& f) { return os << '(' << f.a << ',' << f.b << ',' << f.c << ')'; }

bool is_discriminant(i64 D) {
    i64 r = ((D % 4) + 4) % 4;
    return r == 0 || r == 1;
}

QuadForm make_form(i64 a, i64 b, i64 D) {
    i128 num = static_cast<i128>(b) * b - D;
    if (num % (4 * static_cast<i128>(a)) != 0) throw std::domain_error("make_form: b^2 - D not divisible by 4a");
    return QuadForm{a, b, static_cast<i64>(num / (4 * static_cast<i128>(a)))};
}

QuadForm principal_form(i64 D) {
    check_disc(D);
    if (!is_discriminant(D)) throw std::domain_error("principal_form: invalid discriminant");
    i64 b = (D & 1) ? 1 : 0;
    return make_form(1, b, D);
}

QuadForm reduce(QuadForm f) {
    i64 D = f.disc();
    check_disc(D);
    if (f.a <= 0) throw std::domain_error("reduce: a must be positive");
    i128 a = f.a, b = f.b, c = f.c;
    auto normalize = [&]() {
        // b into (-a, a]
        i128 k = fdiv(a - b, 2 * a);
        i128 nb = b + 2 * k * a;
        c = c + k * (b + k * a);
        b = nb;
    };
    normalize();
    while (a > c) {
        i128 t = a;
        a = c;
        c = t;
        b = -b;
        normalize();
    }
    if (a == c && b < 0) b = -b;
    return QuadForm{static_cast<i64>(a), static_cast<i64>(b), static_cast<i64>(c)};
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    i64 D = f.disc();
    if (g.disc() != D) throw std::domain_error("compose: discriminant mismatch");
    if (!f.primitive() || !g.primitive()) throw std::domain_error("compose: imprimitive form");
    QuadForm f1 = f, f2 = g;
    if (f1.a > f2.a) std::swap(f1, f2);
    i64 a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b, c2 = f2.c;
    i64 s = (b1 + b2) / 2;
    i64 n = b2 - s;
    i64 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        i64 u, v;
        d = xgcd(a2, a1, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        i64 xx, yy;
        d1 = xgcd(s, d, xx, yy);
        x2 = xx;
        y2 = -yy;
    }
    i64 v1 = a1 / d1, v2 = a2 / d1;
    i128 r128 = (static_cast<i128>(y1) * y2 % v1) * n - static_cast<i128>(x2) * (c2 % v1);
    i64 r = mod_pos(r128, v1);
    i128 b3 = static_cast<i128>(b2) + static_cast<i128>(2) * v2 * r;
    i128 a3 = static_cast<i128>(v1) * v2;
    i128 num = b3 * b3 - D;
    i128 c3 = num / (4 * a3);
    // bring b3 into range before narrowing
    i128 k = fdiv(a3 - b3, 2 * a3);
    i128 nb = b3 + 2 * k * a3;
    c3 = c3 + k * (b3 + k * a3);
    return reduce(QuadForm{static_cast<i64>(a3), static_cast<i64>(nb), static_cast<i64>(c3)});
}

QuadForm inverse(const QuadForm& f) { return reduce(QuadForm{f.a, -f.b, f.c}); }

QuadForm power(const QuadForm& f, u64 n) {
    QuadForm r = principal_form(f.disc());
    QuadForm base = reduce(f);
    while (n) {
        if (n & 1) r = compose(r, base);
        base = compose(base, base);
        n >>= 1;
    }
    return r;
}

u64 form_order(const QuadForm& f) {
    QuadForm id = principal_form(f.disc());
    QuadForm g = reduce(f);
    QuadForm x = g;
    u64 n = 1;
    while (x != id) {
        x = compose(x, g);
        ++n;
    }
    return n;
}

DiscriminantSplit fundamental_split(i64 D) {
    check_disc(D);
    if (!is_discriminant(D)) throw std::domain_error("fundamental_split: invalid discriminant");
    auto fac = factor(from_i64(-D));
    i64 d = D, u = 1;
    for (const auto& [q, e] : fac.factors) {
        i64 qq = to_i64(q);
        for (unsigned k = 0; k + 2 <= e; k += 2) {
            if (d % (qq * qq) != 0) break;
            i64 nd = d / (qq * qq);
            if (!is_discriminant(nd)) break;
            d = nd;
            u *= qq;
        }
    }
    return {d, u};
}

std::vector<QuadForm> reduced_forms(i64 D) {
    check_disc(D);
    if (!is_discriminant(D)) throw std::domain_error("reduced_forms: invalid discriminant");
    std::vector<QuadForm> out;
    i64 bmax = static_cast<i64>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    for (i64 b = (D & 1); b <= bmax; b += 2) {
        i64 N = (b * b - D) / 4;
        for (i64 a = std::max<i64>(b, 1); a * a <= N; ++a) {
            if (N % a) continue;
            i64 c = N / a;
            if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
            out.push_back({a, b, c});
            if (b != 0 && b != a && a != c) out.push_back({a, -b, c});
        }
    }
    return out;
}

i64 class_number(i64 D) {
    check_disc(D);
    if (!is_discriminant(D)) throw std::domain_error("class_number: invalid discriminant");
    i64 h = 0;
    i64 bmax = static_cast<i64>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    for (i64 b = (D & 1); b <= bmax; b += 2) {
        i64 N = (b * b - D) / 4;
        for (i64 a = std::max<i64>(b, 1); a * a <= N; ++a) {
            if (N % a) continue;
            i64 c = N / a;
            if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
            h += (b != 0 && b != a && a != c) ? 2 : 1;
        }
    }
    return h;
}

i64 class_number_from_fundamental(i64 h_K, i64 d_K, i64 u) {
    // unit index is 1 for d_K < -4
    i64 num = h_K * u;
    auto fac = factor(from_i64(u));
    for (const auto& [q, e] : fac.factors) {
        i64 qq = to_i64(q);
        num = num / qq * (qq - kronecker(d_K, qq));
    }
    return num;
}

QuadForm prime_form(i64 D, i64 l0) {
    check_disc(D);
    if (kronecker(D, l0) == -1) throw std::domain_error("prime_form: prime is inert");
    auto split = fundamental_split(D);
    if (split.u % l0 == 0) throw std::domain_error("prime_form: prime divides the conductor");
    for (i64 b = 0; b <= 2 * l0; ++b) {
        i128 num = static_cast<i128>(b) * b - D;
        if (num % (4 * static_cast<i128>(l0)) == 0) return QuadForm{l0, b, static_cast<i64>(num / (4 * l0))};
    }
    throw std::logic_error("prime_form: no square root found");
}

long Presentation::index_of(const QuadForm& f) const {
    auto it = index_.find(form_key(f));
    if (it == index_.end()) return -1;
    return static_cast<long>(it->second);
}

std::size_t Presentation::stride(std::size_t gen) const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < gen; ++i) s *= relative_orders[i];
    return s;
}

std::vector<u64> Presentation::exponents(std::size_t idx) const {
    std::vector<u64> x(relative_orders.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = idx % relative_orders[i];
        idx /= relative_orders[i];
    }
    return x;
}

std::size_t Presentation::index_from_exponents(const std::vector<u64>& x) const {
    std::size_t idx = 0;
    for (std::size_t i = x.size(); i-- > 0;) idx = idx * relative_orders[i] + x[i];
    return idx;
}

std::size_t Presentation::multiply(std::size_t i, std::size_t j) const {
    long k = index_of(compose(table[i], table[j]));
    if (k < 0) throw std::logic_error("Presentation::multiply: product not in table");
    return static_cast<std::size_t>(k);
}

void Presentation::rebuild_index() {
    index_.clear();
    index_.reserve(table.size() * 2);
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!index_.emplace(form_key(table[i]), i).second) throw std::logic_error("Presentation: duplicate table entry");
    }
}

Presentation polycyclic_presentation(i64 D, const std::set<i64>& excluded, i64 prime_cap) {
    Presentation P;
    P.D = D;
    const i64 h = class_number(D);
    P.table.push_back(principal_form(D));
    P.rebuild_index();
    const i64 u = fundamental_split(D).u;
    for (u64 q : small_primes(static_cast<u64>(prime_cap))) {
        if (static_cast<i64>(P.table.size()) >= h) break;
        i64 l0 = static_cast<i64>(q);
        if (excluded.count(l0) || u % l0 == 0 || kronecker(D, l0) == -1) continue;
        QuadForm g = reduce(prime_form(D, l0));
        u64 r = 1;
        QuadForm beta = g;
        while (P.index_of(beta) < 0) {
            beta = compose(beta, g);
            ++r;
        }
        if (r == 1) continue;
        std::size_t old = P.table.size();
        P.power_relations.push_back(P.exponents(static_cast<std::size_t>(P.index_of(beta))));
        P.generators.push_back(g);
        P.norms.push_back(l0);
        P.relative_orders.push_back(r);
        // the new relation vector has a zero in the new slot
        P.power_relations.back().push_back(0);
        for (auto& rel : P.power_relations) rel.resize(P.relative_orders.size(), 0);
        P.table.resize(old * r);
        QuadForm ge = principal_form(D);
        for (u64 e = 1; e < r; ++e) {
            ge = compose(ge, g);
            for (std::size_t k = 0; k < old; ++k) P.table[e * old + k] = compose(P.table[k], ge);
        }
        P.rebuild_index();
    }
    if (static_cast<i64>(P.table.size()) != h) throw std::runtime_error("polycyclic_presentation: prime cap reached before generating the class group");
    return P;
}

Presentation presentation_from_generators(i64 D, const std::vector<i64>& norms) {
    Presentation P;
    P.D = D;
    P.table.push_back(principal_form(D));
    P.rebuild_index();
    for (i64 l0 : norms) {
        QuadForm g = reduce(prime_form(D, l0));
        u64 r = 1;
        QuadForm beta = g;
        while (P.index_of(beta) < 0) {
            beta = compose(beta, g);
            ++r;
        }
        if (r == 1) throw std::invalid_argument("presentation_from_generators: redundant generator");
        std::size_t old = P.table.size();
        P.power_relations.push_back(P.exponents(static_cast<std::size_t>(P.index_of(beta))));
        P.generators.push_back(g);
        P.norms.push_back(l0);
        P.relative_orders.push_back(r);
        P.power_relations.back().push_back(0);
        for (auto& rel : P.power_relations) rel.resize(P.relative_orders.size(), 0);
        P.table.resize(old * r);
        QuadForm ge = principal_form(D);
        for (u64 e = 1; e < r; ++e) {
            ge = compose(ge, g);
            for (std::size_t k = 0; k < old; ++k) P.table[e * old + k] = compose(P.table[k], ge);
        }
        P.rebuild_index();
    }
    return P;
}

bool is_fundamental(i64 d) {
    if (d >= 0 || !is_discriminant(d)) return false;
    i64 m = -d;
    if (m % 4 == 0) {
        i64 r = ((d / 4) % 4 + 4) % 4;
        if (r != 2 && r != 3) return false;
        m /= 4;
    }
    for (i64 q = 2; q * q <= m; ++q)
        if (m % (q * q) == 0) return false;
    return true;
}

std::vector<i64> fundamental_class_numbers(i64 bound) {
    std::vector<i64> h(static_cast<std::size_t>(bound) + 1, 0);
    // every reduced form (a, b, c) with 0 <= |b| <= a <= c and b^2 - 4ac >= -bound
    for (i64 a = 1; 3 * a * a <= bound; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            for (i64 c = a;; ++c) {
                i64 n = 4 * a * c - b * b;
                if (n > bound) break;
                if (b < 0 && c == a) continue;
                ++h[static_cast<std::size_t>(n)];
            }
        }
    }
    std::vector<char> squarefree(static_cast<std::size_t>(bound) + 1, 1);
    for (i64 q = 2; q * q <= bound; ++q)
        for (i64 k = q * q; k <= bound; k += q * q) squarefree[static_cast<std::size_t>(k)] = 0;
    for (i64 n = 0; n <= bound; ++n) {
        bool fund = false;
        if (n % 4 == 3) fund = squarefree[static_cast<std::size_t>(n)];
        if (n % 4 == 0) {
            i64 m = n / 4;
            fund = (m % 4 == 1 || m % 4 == 2) && squarefree[static_cast<std::size_t>(m)];
        }
        if (!fund) h[static_cast<std::size_t>(n)] = 0;
    }
    return h;
}

void Presentation::write(std::ostream& os) const {
    os << "PRESENTATION v1 D=" << D << " k=" << generators.size() << '\n';
    for (std::size_t i = 0; i < generators.size(); ++i) {
        os << norms[i] << ' ' << generators[i].a << ' ' << generators[i].b << ' ' << generators[i].c << ' ' << relative_orders[i];
        for (u64 x : power_relations[i]) os << ' ' << x;
        os << '\n';
    }
}

Presentation Presentation::read(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("Presentation::read: empty input");
    std::istringstream hs(header);
    std::string tag, ver, dtok, ktok;
    hs >> tag >> ver >> dtok >> ktok;
    if (tag != "PRESENTATION" || ver != "v1" || dtok.rfind("D=", 0) != 0 || ktok.rfind("k=", 0) != 0)
        throw std::runtime_error("Presentation::read: bad header");
    Presentation P;
    P.D = std::stoll(dtok.substr(2));
    std::size_t k = std::stoul(ktok.substr(2));
    for (std::size_t i = 0; i < k; ++i) {
        i64 n, a, b, c;
        u64 r;
        if (!(is >> n >> a >> b >> c >> r)) throw std::runtime_error("Presentation::read: truncated");
        P.norms.push_back(n);
        P.generators.push_back({a, b, c});
        P.relative_orders.push_back(r);
        std::vector<u64> rel(k);
        for (auto& x : rel) is >> x;
        P.power_relations.push_back(rel);
    }
    // regenerate the table from the generators
    P.table.push_back(principal_form(P.D));
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t old = P.table.size();
        P.table.resize(old * P.relative_orders[i]);
        QuadForm ge = principal_form(P.D);
        for (u64 e = 1; e < P.relative_orders[i]; ++e) {
            ge = compose(ge, P.generators[i]);
            for (std::size_t j = 0; j < old; ++j) P.table[e * old + j] = compose(P.table[j], ge);
        }
    }
    P.rebuild_index();
    return P;
}

QuadForm kerphi_generator(i64 D_O, i64 l) {
    if (l % 2 == 0) throw std::domain_error("kerphi_generator: l must be odd");
    if (fundamental_split(D_O).u % l == 0) throw std::domain_error("kerphi_generator: l divides the conductor");
    const i64 DR = l * l * D_O;
    const i64 want = l - kronecker(D_O, l);
    const i64 b0 = (D_O & 1) ? 1 : 0;
    for (i64 i = 0; i < l; ++i) {
        i64 t = 2 * i - b0;
        i64 norm = (t * t - D_O) / 4;
        if (norm % l == 0) continue;
        QuadForm f{l * l, l * t, norm};
        if (f.disc() != DR || !f.primitive()) continue;
        if (static_cast<i64>(form_order(f)) == want) return f;
    }
    throw std::runtime_error("kerphi_generator: no generator found");
}

}  // namespace mpoly
