#include "mpoly/modpoly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "mpoly/crt.hpp"
#include "mpoly/oracle.hpp"
#include "mpoly/verify.hpp"

namespace mpoly {

std::size_t interpolation_nodes(u64 l, Invariant inv) {
    if (inv == Invariant::Gamma2) return static_cast<std::size_t>((l + 1 + 2) / 3 + 1);
    return static_cast<std::size_t>(l + 2);
}

std::vector<i64> walk_norms(Invariant inv) {
    if (inv == Invariant::WeberF) return {5, 7, 11, 13};
    return {2, 3, 5, 7, 11, 13};
}

u64 weber_to_j(const PrimeField& F, u64 x) {
    u64 x24 = F.pow(x, 24);
    u64 a = F.sub(x24, 16);
    return F.mul(F.mul(F.mul(a, a), a), F.inv(x24));
}

std::optional<std::vector<i64>> generator_plan(i64 D, i64 h, const std::vector<i64>& allowed,
                                               const std::set<i64>& excluded) {
    const i64 u = fundamental_split(D).u;
    auto usable = [&](i64 q) { return !excluded.count(q) && u % q != 0; };
    if (h == 1) return std::vector<i64>{};
    const QuadForm id = principal_form(D);
    for (i64 q : allowed) {
        if (!usable(q) || kronecker(D, q) != 1) continue;
        QuadForm g = reduce(prime_form(D, q));
        u64 n = 1;
        for (QuadForm x = g; x != id && static_cast<i64>(n) <= h; x = compose(x, g)) ++n;
        if (static_cast<i64>(n) == h) return std::vector<i64>{q};
        if (2 * static_cast<i64>(n) != h) continue;
        QuadForm half = n % 2 == 0 ? power(g, n / 2) : id;
        for (i64 r : allowed) {
            if (!usable(r) || kronecker(D, r) != 0) continue;
            QuadForm gr = reduce(prime_form(D, r));
            if (gr == id || (n % 2 == 0 && gr == half)) continue;
            return std::vector<i64>{q, r};
        }
    }
    // two ramified generators only cover groups of order at most 4
    if (h <= 4) {
        std::vector<i64> plan;
        std::set<std::pair<i64, i64>> seen{{id.a, id.b}};
        for (i64 r : allowed) {
            if (!usable(r) || kronecker(D, r) != 0) continue;
            QuadForm gr = reduce(prime_form(D, r));
            if (seen.count({gr.a, gr.b})) continue;
            plan.push_back(r);
            std::set<std::pair<i64, i64>> grown = seen;
            for (auto [a, b] : seen) grown.insert({reduce(compose(make_form(a, b, D), gr)).a, reduce(compose(make_form(a, b, D), gr)).b});
            seen = grown;
            if (static_cast<i64>(seen.size()) == h) return plan;
        }
    }
    return std::nullopt;
}

namespace {

bool smooth(i64 u, i64 b) {
    for (i64 q = 2; q * q <= u; ++q)
        while (u % q == 0) {
            if (q > b) return false;
            u /= q;
        }
    return u <= b;
}

i64 mod_pos(i64 a, i64 m) { return ((a % m) + m) % m; }

std::optional<OrderSelection> check_order(u64 l, Invariant inv, i64 D, i64 d_K, i64 u, i64 h_O) {
    const i64 L = static_cast<i64>(l);
    if (d_K >= -4 || u % L == 0) return std::nullopt;
    if (h_O < static_cast<i64>(interpolation_nodes(l, inv))) return std::nullopt;
    if (inv != Invariant::J && D % 3 == 0) return std::nullopt;
    if (inv == Invariant::WeberF && mod_pos(D, 8) != 1) return std::nullopt;
    OrderSelection s;
    s.l = l;
    s.inv = inv;
    s.D = D;
    s.d_K = d_K;
    s.u = u;
    s.h_O = h_O;
    s.h_R = h_O * (L - kronecker(d_K, L));
    s.v = fixed_v(D);
    std::vector<i64> allowed;
    for (i64 q : walk_norms(inv))
        if (q != L) allowed.push_back(q);
    std::set<i64> excluded{L};
    for (i64 q = 2; q <= static_cast<i64>(s.v); ++q)
        if (s.v % q == 0) excluded.insert(q);
    auto surf = generator_plan(D, s.h_O, allowed, excluded);
    if (!surf) return std::nullopt;
    auto flo = generator_plan(L * L * D, s.h_R, allowed, excluded);
    if (!flo) return std::nullopt;
    s.surface_norms = *surf;
    s.floor_norms = *flo;
    return s;
}

}  // namespace

OrderSelection order_for_discriminant(u64 l, Invariant inv, i64 D) {
    if (!is_discriminant(D) || D >= -4) throw std::invalid_argument("order_for_discriminant: bad discriminant");
    auto split = fundamental_split(D);
    i64 h = class_number_from_fundamental(class_number(split.d_K), split.d_K, split.u);
    auto s = check_order(l, inv, D, split.d_K, split.u, h);
    if (!s) throw std::runtime_error("order_for_discriminant: discriminant " + std::to_string(D) + " is not suitable");
    return *s;
}

OrderSelection select_order(u64 l, Invariant inv, i64 b) {
    if (l < 3 || l % 2 == 0 || !is_prime_u64(l)) throw std::invalid_argument("select_order: l must be an odd prime");
    const i64 need = static_cast<i64>(interpolation_nodes(l, inv));
    for (i64 C = std::max<i64>(4096, 16 * need * need); C <= (i64{1} << 24); C *= 4) {
        auto hs = fundamental_class_numbers(C);
        struct Cand {
            i64 h, absD, d_K, u;
        };
        std::vector<Cand> cands;
        for (i64 n = 5; n <= C; ++n) {
            i64 hK = hs[static_cast<std::size_t>(n)];
            if (hK == 0 || hK > b) continue;
            for (i64 u = 1; u * u * n <= C; ++u) {
                if (u % static_cast<i64>(l) == 0 || !smooth(u, b)) continue;
                i64 h = class_number_from_fundamental(hK, -n, u);
                if (h >= need) cands.push_back({h, u * u * n, -n, u});
            }
        }
        std::sort(cands.begin(), cands.end(),
                  [](const Cand& x, const Cand& y) { return std::tie(x.h, x.absD) < std::tie(y.h, y.absD); });
        for (const auto& c : cands)
            if (auto s = check_order(l, inv, -c.absD, c.d_K, c.u, c.h)) return *s;
    }
    if (inv == Invariant::J) {
        for (i64 n = 1; n < 12; ++n) {
            i64 u = 1;
            for (i64 k = 0; k < n; ++k) u *= 3;
            i64 D = -7 * u * u;
            i64 h = class_number_from_fundamental(1, -7, u);
            if (auto s = check_order(l, inv, D, -7, u, h)) return *s;
        }
    }
    throw std::runtime_error("select_order: no suitable order found");
}

namespace {
std::string store_path(const std::string& dir, Invariant inv, u64 l) {
    return (std::filesystem::path(dir) / "modpoly" / invariant_name(inv) / ("l" + std::to_string(l) + ".txt")).string();
}
}  // namespace

void PhiStore::put(const BivariatePoly& phi) {
    mem_[{static_cast<int>(phi.inv), phi.l}] = phi;
    if (cache_dir_ && phi.modulus == 0) {
        auto path = store_path(*cache_dir_, phi.inv, phi.l);
        std::filesystem::create_directories(std::filesystem::path(path).parent_path());
        phi.write_file(path);
    }
}

const BivariatePoly& PhiStore::get(Invariant inv, u64 l) {
    auto key = std::make_pair(static_cast<int>(inv), l);
    auto it = mem_.find(key);
    if (it != mem_.end()) return it->second;
    if (cache_dir_) {
        auto path = store_path(*cache_dir_, inv, l);
        if (std::filesystem::exists(path)) {
            BivariatePoly P = BivariatePoly::read_file(path);
            if (P.l == l && P.inv == inv && P.modulus == 0 && degree_ok(P) && P.sparsity_ok())
                return mem_[key] = std::move(P);
        }
    }
    BivariatePoly P;
    if (l <= 13) {
        P = inv == Invariant::J ? phi_qexp(l) : eval_interp_phi(inv, l);
    } else {
        ComputeOptions opts;
        opts.inv = inv;
        P = compute(l, opts, *this).phi;
    }
    put(P);
    return mem_[key];
}

RunContext::RunContext(const OrderSelection& s, PhiStore& store) : sel(s) {
    H = hilbert_class_poly_cached(sel.D, store.cache_dir());
    surface = presentation_from_generators(sel.D, sel.surface_norms);
    const i64 L = static_cast<i64>(sel.l);
    floor = presentation_from_generators(L * L * sel.D, sel.floor_norms);
    if (static_cast<i64>(surface.size()) != sel.h_O || static_cast<i64>(floor.size()) != sel.h_R)
        throw std::logic_error("RunContext: presentation size mismatch");
    neighbors = surface_neighbors(surface, sel.l);
    kernel_generator = kerphi_generator(sel.D, L);
    siblings = floor_cycles(floor, kernel_generator);
    const Invariant walk_inv = sel.inv == Invariant::WeberF ? Invariant::WeberF : Invariant::J;
    for (i64 q : sel.surface_norms) surface_walk.push_back(&store.get(walk_inv, static_cast<u64>(q)));
    for (i64 q : sel.floor_norms) floor_walk.push_back(&store.get(walk_inv, static_cast<u64>(q)));
}

PrimeJob::PrimeJob(const RunContext& ctx, const PrimeSpec& spec, std::mt19937_64& rng)
    : ctx_(ctx), spec_(spec), rng_(rng), F_(spec.p) {
    for (const auto* P : ctx.surface_walk) surf_walk_.emplace_back(*P, F_);
    for (const auto* P : ctx.floor_walk) floor_walk_.emplace_back(*P, F_);
}

namespace {
std::vector<const DensePhi*> pointers(const std::vector<DensePhi>& v) {
    std::vector<const DensePhi*> out;
    for (const auto& d : v) out.push_back(&d);
    return out;
}

u64 weber_root(const PrimeField& F, u64 j) {
    // (X^24 - 16)^3 - j X^24
    Poly psi(73, 0);
    psi[72] = 1;
    psi[48] = F.neg(48);
    psi[24] = F.sub(768, j);
    psi[0] = F.neg(4096);
    auto r = find_one_root(F, psi);
    if (!r) throw VolcanoError("weber_root: no root");
    return *r;
}

std::unordered_map<u64, std::size_t> index_of_values(const std::vector<u64>& v) {
    std::unordered_map<u64, std::size_t> m;
    m.reserve(v.size() * 2);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!m.emplace(v[i], i).second) throw VolcanoError("duplicate j-invariant in enumeration");
    return m;
}
}  // namespace

void PrimeJob::enumerate() {
    const auto& sel = ctx_.sel;
    for (i64 q : sel.surface_norms)
        if (spec_.v % static_cast<u64>(q) == 0) throw VolcanoError("walk norm divides v");
    for (i64 q : sel.floor_norms)
        if (spec_.v % static_cast<u64>(q) == 0) throw VolcanoError("walk norm divides v");
    const i64 t = static_cast<i64>(spec_.t);
    u64 j0 = find_surface_root(ctx_.H, F_);
    if (sel.inv == Invariant::WeberF) {
        surf_ = enumerate_torsor(weber_root(F_, j0), ctx_.surface, pointers(surf_walk_), Level::Surface);
        for (u64 x : surf_.elements) surf_j_.push_back(weber_to_j(F_, x));
        surf_j_index_ = index_of_values(surf_j_);
        u64 j1 = descend_to_floor(j0, sel.l, F_, t, surf_j_index_, rng_);
        floor_ = enumerate_torsor(weber_root(F_, j1), ctx_.floor, pointers(floor_walk_), Level::Floor);
        for (u64 x : floor_.elements) floor_j_.push_back(weber_to_j(F_, x));
        floor_j_index_ = index_of_values(floor_j_);
    } else {
        surf_ = enumerate_torsor(j0, ctx_.surface, pointers(surf_walk_), Level::Surface);
        surf_j_ = surf_.elements;
        surf_j_index_ = surf_.index;
        u64 j1 = descend_to_floor(j0, sel.l, F_, t, surf_j_index_, rng_);
        floor_ = enumerate_torsor(j1, ctx_.floor, pointers(floor_walk_), Level::Floor);
        floor_j_ = floor_.elements;
        floor_j_index_ = floor_.index;
    }
}

std::vector<u64> PrimeJob::neighbor_roots(std::size_t i, std::size_t floor_index, u64 sign) const {
    std::vector<u64> r;
    for (std::size_t k : ctx_.neighbors[i]) r.push_back(surf_.elements[k]);
    for (std::size_t k : ctx_.siblings.cycles[ctx_.siblings.cycle_of[floor_index]])
        r.push_back(F_.mul(sign, floor_.elements[k]));
    return r;
}

DensePhi PrimeJob::run() {
    enumerate();
    const auto& sel = ctx_.sel;
    const u64 l = sel.l;
    const std::size_t n = interpolation_nodes(l, sel.inv);
    const i64 t = static_cast<i64>(spec_.t);
    std::vector<std::size_t> floor_idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        u64 jd = descend_to_floor(surf_j_[i], l, F_, t, surf_j_index_, rng_);
        auto it = floor_j_index_.find(jd);
        if (it == floor_j_index_.end()) throw VolcanoError("descended j-invariant not on the floor");
        floor_idx[i] = it->second;
    }
    auto build = [&](u64 sign) {
        std::vector<Poly> rows;  // Phi(X, node_i)
        for (std::size_t i = 0; i < n; ++i) {
            auto rts = neighbor_roots(i, floor_idx[i], sign);
            if (sel.inv == Invariant::Gamma2)
                for (auto& x : rts) x = F_.cube_root(x);
            if (rts.size() != l + 1) throw VolcanoError("wrong number of l-isogenous neighbours");
            rows.push_back(product_from_roots(F_, rts));
        }
        return rows;
    };
    DensePhi out(l + 1, F_);
    auto coefficient = [](const Poly& f, std::size_t a) { return a < f.size() ? f[a] : u64{0}; };
    if (sel.inv == Invariant::Gamma2) {
        std::vector<u64> nodes(surf_j_.begin(), surf_j_.begin() + static_cast<long>(n));
        std::vector<u64> gam(n);
        for (std::size_t i = 0; i < n; ++i) gam[i] = F_.cube_root(nodes[i]);
        Interpolator I(F_, nodes);
        auto rows = build(1);
        for (std::size_t a = 0; a <= l + 1; ++a) {
            const std::size_t c = static_cast<std::size_t>(((l + 1) % 3 + 3 - (l * a) % 3) % 3);
            std::vector<u64> w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = F_.mul(coefficient(rows[i], a), F_.inv(F_.pow(gam[i], c)));
            Poly phi = I(w);
            for (std::size_t k = 0; k < phi.size(); ++k) {
                if (!phi[k]) continue;
                std::size_t b = c + 3 * k;
                if (b > l + 1) throw VolcanoError("gamma2 coefficient beyond the degree bound");
                out.at(a, b) = phi[k];
            }
        }
    } else {
        std::vector<u64> nodes;
        for (std::size_t i = 0; i < n; ++i) nodes.push_back(surf_.elements[i]);
        Interpolator I(F_, nodes);
        auto fill = [&](const std::vector<Poly>& rows, DensePhi& d) {
            for (std::size_t a = 0; a <= l + 1; ++a) {
                std::vector<u64> w(n);
                for (std::size_t i = 0; i < n; ++i) w[i] = coefficient(rows[i], a);
                Poly phi = I(w);
                for (std::size_t b = 0; b < phi.size(); ++b) d.at(a, b) = phi[b];
            }
        };
        if (sel.inv == Invariant::J) {
            fill(build(1), out);
        } else {
            DensePhi plus(l + 1, F_), minus(l + 1, F_);
            fill(build(1), plus);
            fill(build(F_.neg(1)), minus);
            const u64 m1 = F_.neg(1);
            bool ok_plus = plus.at(l, l) == m1, ok_minus = minus.at(l, l) == m1;
            if (ok_plus == ok_minus) throw VolcanoError("Weber sign test is ambiguous");
            out = ok_plus ? plus : minus;
        }
    }
    if (out.at(l + 1, 0) != 1) throw VolcanoError("result is not monic");
    for (std::size_t b = 1; b <= l + 1; ++b)
        if (out.at(l + 1, b)) throw VolcanoError("result has wrong degree");
    if (!out.symmetric()) throw VolcanoError("result is not symmetric");
    return out;
}

namespace {
std::size_t root_multiplicity_total(const PrimeField& F, Poly f) {
    std::size_t total = 0;
    for (u64 r : roots(F, f)) {
        const Poly lin{F.neg(r), 1};
        for (;;) {
            Poly q, rem;
            poly_divrem(F, f, lin, &q, &rem);
            if (!rem.empty()) break;
            f = std::move(q);
            ++total;
        }
    }
    return total;
}
}  // namespace

VolcanoReport inspect_volcano(u64 l, i64 D, u64 p, PhiStore& store, std::uint64_t seed) {
    OrderSelection sel = order_for_discriminant(l, Invariant::J, D);
    RunContext ctx(sel, store);
    PrimeSpec spec;
    if (p == 0) {
        spec = select_primes_heuristic(l, D, 1.0, Invariant::J, 0).at(0);
    } else {
        const u64 v = sel.v;
        const Integer t2 = from_u64(4) * from_u64(p) + from_u64(v * v * l * l) * from_i64(D);
        if (t2 < 0 || !mpz_perfect_square_p(t2.get_mpz_t()))
            throw std::invalid_argument("inspect: p does not satisfy the norm equation");
        const u64 t = to_u64(Integer(sqrt(t2)));
        spec = PrimeSpec{p, t, v, l, D};
        if ((p + 1 - t) % l != 0) spec.t = static_cast<u64>(-static_cast<i64>(t));
        if (!spec.valid()) throw std::invalid_argument("inspect: invalid prime");
    }
    std::mt19937_64 rng(seed);
    PrimeJob job(ctx, spec, rng);
    job.enumerate();
    const PrimeField& F = job.field();
    DensePhi phi(store.get(Invariant::J, l), F);
    VolcanoReport r;
    r.l = l;
    r.p = spec.p;
    r.t = static_cast<i64>(spec.t);
    r.v = spec.v;
    r.D = D;
    r.d_K = sel.d_K;
    r.h_O = sel.h_O;
    r.h_R = sel.h_R;
    r.ell_O = job.surface_j().size();
    r.ell_R = job.floor_j().size();
    CyclePartition cyc;
    if (kronecker(sel.d_K, static_cast<i64>(l)) == -1) {
        for (std::size_t i = 0; i < r.ell_O; ++i) cyc.cycles.push_back({i});
    } else {
        cyc = surface_cycles(ctx.surface, l);
    }
    for (const auto& c : cyc.cycles) {
        std::vector<u64> js;
        for (auto i : c) js.push_back(job.surface_j()[i]);
        r.surface_cycles.push_back(std::move(js));
    }
    r.surface_roots_ok = true;
    for (u64 j : job.surface_j())
        if (root_multiplicity_total(F, phi.instantiate(j)) != l + 1) r.surface_roots_ok = false;
    r.floor_roots_ok = true;
    for (const auto& c : ctx.siblings.cycles) {
        std::vector<u64> js;
        for (auto i : c) js.push_back(job.floor_j()[i]);
        auto parent = roots(F, phi.instantiate(js[0]));
        r.group_parent.push_back(parent.size() == 1 ? parent[0] : 0);
        for (u64 j : js)
            if (root_multiplicity_total(F, phi.instantiate(j)) != 1) r.floor_roots_ok = false;
        r.sibling_groups.push_back(std::move(js));
    }
    return r;
}

DensePhi phi_mod_p(const RunContext& ctx, const PrimeSpec& spec, std::mt19937_64& rng) {
    PrimeJob job(ctx, spec, rng);
    return job.run();
}

namespace {
std::size_t slot(std::size_t a, std::size_t b) { return a * (a + 1) / 2 + b; }
}  // namespace

ComputeResult compute(u64 l, const ComputeOptions& opts, PhiStore& store) {
    auto log = [&](const std::string& s) {
        if (opts.log) opts.log(s);
    };
    ComputeResult res;
    res.order = opts.forced_D ? order_for_discriminant(l, opts.inv, *opts.forced_D) : select_order(l, opts.inv);
    const auto& sel = res.order;
    {
        std::ostringstream os;
        os << "order D=" << sel.D << " h(O)=" << sel.h_O << " h(R)=" << sel.h_R << " v=" << sel.v;
        log(os.str());
    }
    RunContext ctx(sel, store);
    res.bound_bits = height_bound(l, opts.inv);
    const double need = res.bound_bits + (opts.modulus ? 2.0 : 1.0);
    auto select = [&](std::size_t extra) {
        if (opts.selector == Selector::Heuristic) return select_primes_heuristic(l, sel.D, need, opts.inv, extra);
        std::mt19937_64 r(opts.seed ^ 0x5851f42d4c957f2dULL);
        std::vector<PrimeSpec> out;
        for (const auto& s : select_primes_randomized(l, sel.D, need, r, opts.inv, extra)) {
            bool usable = true;
            for (const auto* norms : {&sel.surface_norms, &sel.floor_norms})
                for (i64 q : *norms) usable = usable && s.v % static_cast<u64>(q) != 0;
            if (usable) out.push_back(s);
        }
        return out;
    };
    std::size_t extra = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(select(0).size()))) + 2;
    const std::size_t n = l + 2, slots = n * (n + 1) / 2;
    std::vector<PrimeSpec> specs;
    std::map<u64, std::optional<std::vector<u64>>> results;  // by prime
    // base primes in selection order until the budget is met, then two more successes
    std::vector<u64> base, all;
    double bits = 0;
    auto choose = [&]() {
        base.clear();
        all.clear();
        bits = 0;
        for (const auto& s : specs) {
            auto it = results.find(s.p);
            if (it == results.end() || !it->second) continue;
            if (bits <= need) {
                base.push_back(s.p);
                bits += std::log2(static_cast<double>(s.p));
            }
            all.push_back(s.p);
            if (bits > need && all.size() == base.size() + 2) return true;
        }
        return false;
    };
    bool enough = false;
    for (int round = 0; round < 8 && !enough; ++round) {
        specs = select(extra);
        std::vector<const PrimeSpec*> todo;
        for (const auto& s : specs)
            if (!results.count(s.p)) todo.push_back(&s);
        std::atomic<std::size_t> next{0};
        std::mutex mu;
        std::size_t done = 0;
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next++;
                if (i >= todo.size()) return;
                const PrimeSpec& spec = *todo[i];
                std::optional<std::vector<u64>> out;
                std::string reason;
                for (int attempt = 0; attempt < 3 && !out; ++attempt) {
                    std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ULL + spec.p * 31 + attempt);
                    try {
                        DensePhi d = phi_mod_p(ctx, spec, rng);
                        std::vector<u64> r(slots);
                        for (std::size_t a = 0; a < n; ++a)
                            for (std::size_t b = 0; b <= a; ++b) r[slot(a, b)] = d.at(a, b);
                        out = std::move(r);
                    } catch (const VolcanoError& e) {
                        reason = e.what();
                    } catch (const TwistMismatch& e) {
                        reason = e.what();
                    }
                }
                std::lock_guard<std::mutex> lock(mu);
                if (!out) log("prime " + std::to_string(spec.p) + " discarded: " + reason);
                results[spec.p] = std::move(out);
                if (++done % 20 == 0) log("primes done: " + std::to_string(done) + "/" + std::to_string(todo.size()));
            }
        };
        unsigned threads = std::max(1u, opts.threads);
        std::vector<std::thread> pool;
        for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        enough = choose();
        if (!enough) {
            extra *= 2;
            log("not enough primes succeeded; extending the prime set");
        }
    }
    if (!enough) throw std::runtime_error("compute: too many primes failed");
    for (const auto& [p, r] : results)
        if (!r) ++res.primes_discarded;
    res.primes_used = base.size();
    res.prime_bits = bits;
    log("primes used: " + std::to_string(base.size()) + " (+2 check), discarded: " + std::to_string(res.primes_discarded));
    auto crt = [&](const std::vector<u64>& ps) {
        CrtAccumulator acc(ps, slots, opts.modulus ? CrtMode::Explicit : CrtMode::Exact, opts.modulus.value_or(0));
        for (std::size_t k = 0; k < ps.size(); ++k) acc.update(k, *results.at(ps[k]));
        return acc.finalize();
    };
    auto r1 = crt(base);
    auto r2 = crt(all);
    res.stable = r1 == r2;
    if (!res.stable) throw std::runtime_error("compute: result changed when extra primes were added");
    res.phi = BivariatePoly(l, opts.inv, opts.modulus.value_or(0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b <= a; ++b)
            res.phi.set(static_cast<unsigned>(a), static_cast<unsigned>(b), r1[slot(a, b)]);
    return res;
}

namespace {
using Dense = std::vector<std::vector<Integer>>;

Dense dense_mul(const Dense& A, const Dense& B, const Integer& m) {
    Dense C(A.size() + B.size() - 1, std::vector<Integer>(A[0].size() + B[0].size() - 1, 0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[i].size(); ++j) {
            if (A[i][j] == 0) continue;
            for (std::size_t k = 0; k < B.size(); ++k)
                for (std::size_t r = 0; r < B[k].size(); ++r)
                    if (B[k][r] != 0) C[i + k][j + r] += A[i][j] * B[k][r];
        }
    if (m != 0)
        for (auto& row : C)
            for (auto& c : row) c %= m;
    return C;
}
}  // namespace

BivariatePoly phi_from_gamma2(const BivariatePoly& g) {
    if (g.inv != Invariant::Gamma2) throw std::invalid_argument("phi_from_gamma2: expected a gamma2 polynomial");
    BivariatePoly out(g.l, Invariant::J, g.modulus);
    if (g.nonzero_count() == 0) return out;
    if (!g.sparsity_ok()) throw std::invalid_argument("phi_from_gamma2: sparsity violated");
    const std::size_t n = g.l + 2;
    Dense A[3];
    for (auto& d : A) d.assign(n, std::vector<Integer>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) A[a % 3][a][b] = g.get(static_cast<unsigned>(a), static_cast<unsigned>(b));
    const Integer& m = g.modulus;
    Dense S = dense_mul(dense_mul(A[0], A[0], m), A[0], m);
    auto add = [&](const Dense& T, long scale) {
        for (std::size_t i = 0; i < T.size(); ++i)
            for (std::size_t j = 0; j < T[i].size(); ++j) S[i][j] += scale * T[i][j];
    };
    add(dense_mul(dense_mul(A[1], A[1], m), A[1], m), 1);
    add(dense_mul(dense_mul(A[2], A[2], m), A[2], m), 1);
    add(dense_mul(dense_mul(A[0], A[1], m), A[2], m), -3);
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < S[i].size(); ++j) {
            Integer c = S[i][j];
            if (m != 0) c %= m;
            if (c == 0) continue;
            if (i % 3 || j % 3) throw std::logic_error("phi_from_gamma2: residue classes inconsistent");
            if (i >= j) out.set(static_cast<unsigned>(i / 3), static_cast<unsigned>(j / 3), c);
        }
    return out;
}

}  // namespace mpoly
