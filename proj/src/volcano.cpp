#include "mpoly/volcano.hpp"

#include <algorithm>
#include <string>

namespace mpoly {

u64 cm_step(const DensePhi& phi, u64 cur, std::optional<u64> prev) {
    const PrimeField& F = phi.field();
    Poly f = phi.instantiate(cur);
    if (prev) {
        Poly q, r;
        poly_divrem(F, f, Poly{F.neg(*prev), 1}, &q, &r);
        if (!r.empty()) throw VolcanoError("cm_step: previous element is not a neighbour");
        f = std::move(q);
    }
    auto rts = roots(F, f);
    if (prev) {
        if (rts.size() != 1) throw VolcanoError("cm_step: expected one root, found " + std::to_string(rts.size()));
    } else if (rts.empty() || rts.size() > 2) {
        throw VolcanoError("cm_step: expected one or two roots at path start, found " + std::to_string(rts.size()));
    }
    return rts.front();
}

TorsorEnumeration enumerate_torsor(u64 start, const Presentation& pres, const std::vector<const DensePhi*>& walk,
                                   Level level) {
    if (walk.size() != pres.generators.size()) throw std::invalid_argument("enumerate_torsor: walk/generator mismatch");
    TorsorEnumeration E;
    E.level = level;
    E.presentation = &pres;
    E.elements.assign(pres.size(), 0);
    E.elements[0] = start;
    std::size_t filled = 1;
    for (std::size_t g = 0; g < pres.generators.size(); ++g) {
        const std::size_t stride = pres.stride(g);
        const u64 r = pres.relative_orders[g];
        const DensePhi& phi = *walk[g];
        const bool ramified = kronecker(pres.D, pres.norms[g]) == 0;
        if (g == 0 && !ramified) {
            // one path from the start element
            std::optional<u64> prev;
            u64 cur = start;
            for (u64 e = 1; e < r; ++e) {
                u64 next = cm_step(phi, cur, prev);
                prev = cur;
                cur = next;
                E.elements[e] = cur;
            }
            if (r > 2 && cm_step(phi, cur, prev) != start) throw VolcanoError("enumerate_torsor: path does not close");
        } else if (ramified && r == 2) {
            for (std::size_t k = 0; k < stride; ++k) E.elements[stride + k] = cm_step(phi, E.elements[k], std::nullopt);
        } else {
            throw VolcanoError("enumerate_torsor: unsupported generator layout");
        }
        filled = stride * r;
    }
    if (filled != pres.size()) throw std::logic_error("enumerate_torsor: incomplete enumeration");
    E.index.reserve(E.elements.size() * 2);
    for (std::size_t i = 0; i < E.elements.size(); ++i)
        if (!E.index.emplace(E.elements[i], i).second) throw VolcanoError("enumerate_torsor: duplicate element");
    return E;
}

std::vector<std::vector<std::size_t>> surface_neighbors(const Presentation& pres, u64 l) {
    const i64 L = static_cast<i64>(l);
    std::vector<std::vector<std::size_t>> out(pres.size());
    const int chi = kronecker(pres.D, L);
    if (chi == -1) return out;
    QuadForm g = reduce(prime_form(pres.D, L));
    std::vector<QuadForm> steps{g};
    if (chi == 1) steps.push_back(inverse(g));
    for (std::size_t i = 0; i < pres.size(); ++i) {
        for (const auto& s : steps) {
            long k = pres.index_of(compose(pres.table[i], s));
            if (k < 0) throw std::logic_error("surface_neighbors: product not in table");
            out[i].push_back(static_cast<std::size_t>(k));
        }
    }
    return out;
}

namespace {
CyclePartition cosets(const Presentation& pres, const QuadForm& g) {
    CyclePartition P;
    P.cycle_of.assign(pres.size(), pres.size());
    for (std::size_t i = 0; i < pres.size(); ++i) {
        if (P.cycle_of[i] != pres.size()) continue;
        std::vector<std::size_t> cyc;
        std::size_t cur = i;
        do {
            P.cycle_of[cur] = P.cycles.size();
            cyc.push_back(cur);
            long k = pres.index_of(compose(pres.table[cur], g));
            if (k < 0) throw std::logic_error("cosets: product not in table");
            cur = static_cast<std::size_t>(k);
        } while (cur != i);
        P.cycles.push_back(std::move(cyc));
    }
    return P;
}
}  // namespace

CyclePartition surface_cycles(const Presentation& pres, u64 l) {
    const i64 L = static_cast<i64>(l);
    if (kronecker(pres.D, L) == -1) throw std::domain_error("surface_cycles: l is inert");
    return cosets(pres, reduce(prime_form(pres.D, L)));
}

CyclePartition floor_cycles(const Presentation& floor, const QuadForm& gen2) {
    CyclePartition P = cosets(floor, reduce(gen2));
    const std::size_t len = form_order(gen2);
    for (const auto& c : P.cycles)
        if (c.size() != len) throw std::logic_error("floor_cycles: cycle length mismatch");
    return P;
}

u64 descend_to_floor(u64 j_i, u64 l, const PrimeField& F, i64 t, const std::unordered_map<u64, std::size_t>& surface,
                     std::mt19937_64& rng) {
    Curve E = curve_from_j(j_i, F);
    const i64 trace = t;
    const Integer order = from_u64(F.p()) + 1 - from_i64(t);
    if (!scalar_mul(order, random_point(E, rng), E).inf) E = quadratic_twist(E);
    for (int attempt = 0; attempt < 8; ++attempt) {
        TorsionBasis basis;
        try {
            basis = l_torsion_basis(E, trace, l, rng);
        } catch (const TwistMismatch&) {
            E = quadratic_twist(E);
            basis = l_torsion_basis(E, trace, l, rng);
        }
        std::vector<CurvePoint> kernels{basis.P};
        if (basis.full) {
            kernels.push_back(basis.Q);
            CurvePoint R = basis.Q;
            for (u64 k = 1; k < l; ++k) {
                R = group_law(R, basis.P, E);
                kernels.push_back(R);
            }
            std::shuffle(kernels.begin(), kernels.end(), rng);
        }
        for (const auto& P : kernels) {
            u64 j2 = j_invariant(velu(E, P, l));
            if (!surface.count(j2)) return j2;
        }
    }
    throw VolcanoError("descend_to_floor: isogenies stay on the surface");
}

}  // namespace mpoly
