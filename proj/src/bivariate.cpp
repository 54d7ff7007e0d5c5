#include "mpoly/bivariate.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mpoly {

std::string invariant_name(Invariant inv) {
    switch (inv) {
        case Invariant::J: return "j";
        case Invariant::Gamma2: return "gamma2";
        case Invariant::WeberF: return "weber-f";
    }
    return "?";
}

Invariant parse_invariant(const std::string& name) {
    if (name == "j") return Invariant::J;
    if (name == "gamma2") return Invariant::Gamma2;
    if (name == "weber-f" || name == "weber_f" || name == "weber") return Invariant::WeberF;
    throw std::invalid_argument("unknown invariant: " + name);
}

bool in_support(Invariant inv, u64 l, unsigned a, unsigned b) {
    auto check = [&](unsigned x, unsigned y) {
        switch (inv) {
            case Invariant::J: return true;
            case Invariant::Gamma2: return (x + l * y) % 3 == (l + 1) % 3;
            case Invariant::WeberF: return (l * x + y) % 24 == (l + 1) % 24;
        }
        return false;
    };
    return check(a, b) || check(b, a);
}

Integer BivariatePoly::get(unsigned a, unsigned b) const {
    if (a < b) std::swap(a, b);
    auto it = coeffs_.find({a, b});
    return it == coeffs_.end() ? Integer(0) : it->second;
}

void BivariatePoly::set(unsigned a, unsigned b, Integer c) {
    if (a < b) std::swap(a, b);
    if (modulus != 0) {
        c %= modulus;
        if (c < 0) c += modulus;
    }
    if (c == 0) {
        coeffs_.erase({a, b});
    } else {
        coeffs_[{a, b}] = std::move(c);
    }
}

BivariatePoly BivariatePoly::reduce_mod(const Integer& m) const {
    BivariatePoly r(l, inv, m);
    for (const auto& [k, c] : coeffs_) r.set(k.first, k.second, c);
    return r;
}

std::size_t BivariatePoly::max_coeff_bits() const {
    std::size_t m = 0;
    for (const auto& [k, c] : coeffs_) m = std::max(m, bit_length(c));
    return m;
}

bool BivariatePoly::symmetric_monic() const {
    unsigned n = static_cast<unsigned>(l + 1);
    if (get(n, 0) != 1) return false;
    for (const auto& [k, c] : coeffs_) {
        if (k.first > n) return false;
        if (k.first == n && k.second != 0) return false;
    }
    return true;
}

bool BivariatePoly::sparsity_ok() const {
    for (const auto& [k, c] : coeffs_)
        if (!in_support(inv, l, k.first, k.second)) return false;
    return true;
}

Poly BivariatePoly::instantiate(const PrimeField& F, u64 y) const {
    return DensePhi(*this, F).instantiate(y);
}

u64 BivariatePoly::evaluate(const PrimeField& F, u64 x, u64 y) const {
    u64 s = 0;
    for (const auto& [k, c] : coeffs_) {
        u64 v = F.from_integer(c);
        u64 t = F.mul(F.pow(x, k.first), F.pow(y, k.second));
        if (k.first != k.second) t = F.add(t, F.mul(F.pow(x, k.second), F.pow(y, k.first)));
        s = F.add(s, F.mul(v, t));
    }
    return s;
}

void BivariatePoly::write(std::ostream& os) const {
    os << "MODPOLY v1 inv=" << invariant_name(inv) << " l=" << l << " mod=" << modulus.get_str() << '\n';
    for (const auto& [k, c] : coeffs_) os << k.first << ' ' << k.second << ' ' << c.get_str() << '\n';
}

BivariatePoly BivariatePoly::read(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("MODPOLY: empty input");
    std::istringstream hs(header);
    std::string tag, ver, inv, ltok, mtok;
    hs >> tag >> ver >> inv >> ltok >> mtok;
    if (tag != "MODPOLY" || ver != "v1" || inv.rfind("inv=", 0) != 0 || ltok.rfind("l=", 0) != 0 ||
        mtok.rfind("mod=", 0) != 0)
        throw std::runtime_error("MODPOLY: bad header");
    BivariatePoly P(std::stoull(ltok.substr(2)), parse_invariant(inv.substr(4)), Integer(mtok.substr(4)));
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        unsigned a, b;
        std::string c;
        if (!(ls >> a >> b >> c) || a < b) throw std::runtime_error("MODPOLY: bad line: " + line);
        P.set(a, b, Integer(c));
    }
    return P;
}

void BivariatePoly::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

BivariatePoly BivariatePoly::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return read(in);
}

DensePhi::DensePhi(const BivariatePoly& phi, const PrimeField& F) : F_(F), n_(phi.l + 2), c_(n_ * n_, 0) {
    for (const auto& [k, c] : phi.entries()) {
        u64 v = F.from_integer(c);
        at(k.first, k.second) = v;
        at(k.second, k.first) = v;
    }
}

Poly DensePhi::instantiate(u64 y) const {
    std::vector<u64> ypow(n_);
    ypow[0] = 1;
    for (std::size_t i = 1; i < n_; ++i) ypow[i] = F_.mul(ypow[i - 1], y);
    Poly f(n_);
    for (std::size_t a = 0; a < n_; ++a) {
        u64 s = 0;
        const u64* row = &c_[a * n_];
        for (std::size_t b = 0; b < n_; ++b)
            if (row[b]) s = F_.add(s, F_.mul(row[b], ypow[b]));
        f[a] = s;
    }
    trim(f);
    return f;
}

u64 DensePhi::evaluate(u64 x, u64 y) const { return poly_eval(F_, instantiate(y), x); }

bool DensePhi::symmetric() const {
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (at(a, b) != at(b, a)) return false;
    return true;
}

BivariatePoly DensePhi::to_bivariate(u64 l, Invariant inv) const {
    BivariatePoly P(l, inv, from_u64(F_.p()));
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b <= a; ++b)
            if (at(a, b)) P.set(static_cast<unsigned>(a), static_cast<unsigned>(b), from_u64(at(a, b)));
    return P;
}

}  // namespace mpoly
