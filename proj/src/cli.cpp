#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpoly/modpoly.hpp"
#include "mpoly/oracle.hpp"
#include "mpoly/verify.hpp"

using namespace mpoly;
using json = nlohmann::json;

namespace {

struct RunConfig {
    u64 l = 0;
    std::string inv = "j";
    std::string mod;
    std::string out;
    std::string cache = "cache";
    std::uint64_t seed = 1;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string selector = "heuristic";
    i64 D = 0;
    u64 p = 0;
    std::string file;
    std::string format = "json";
    std::size_t samples = 20;
    std::vector<u64> ls;
    bool quiet = false;
};

void write_output(const BivariatePoly& phi, const std::string& out) {
    if (out.empty() || out == "-") {
        phi.write(std::cout);
    } else {
        phi.write_file(out);
    }
}

ComputeOptions options_from(const RunConfig& c) {
    ComputeOptions o;
    o.inv = parse_invariant(c.inv);
    if (!c.mod.empty()) {
        Integer m(c.mod);
        if (m < 2) throw std::invalid_argument("--mod must be at least 2");
        o.modulus = m;
    }
    o.seed = c.seed;
    o.threads = c.threads;
    o.selector = c.selector == "randomized" ? Selector::Randomized : Selector::Heuristic;
    if (c.D != 0) o.forced_D = c.D;
    if (!c.quiet) o.log = [](const std::string& s) { std::cerr << s << "\n"; };
    return o;
}

int cmd_compute(const RunConfig& c) {
    PhiStore store(c.cache);
    auto t0 = std::chrono::steady_clock::now();
    ComputeResult r = compute(c.l, options_from(c), store);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.phi.modulus == 0) store.put(r.phi);
    write_output(r.phi, c.out);
    std::cerr << "l=" << c.l << " inv=" << invariant_name(r.phi.inv) << " D=" << r.order.D << " h(O)=" << r.order.h_O
              << " h(R)=" << r.order.h_R << " primes=" << r.primes_used << " discarded=" << r.primes_discarded
              << " bound_bits=" << static_cast<long>(std::ceil(r.bound_bits)) << " max_coeff_bits=" << r.phi.max_coeff_bits()
              << " stable=" << (r.stable ? "yes" : "no") << " seconds=" << secs << "\n";
    return 0;
}

int cmd_verify(const RunConfig& c) {
    BivariatePoly phi = BivariatePoly::read_file(c.file);
    bool all = true;
    for (const auto& ch : verify_polynomial(phi, c.seed, c.samples)) {
        std::cout << (ch.ok ? "PASS " : "FAIL ") << ch.name;
        if (!ch.detail.empty()) std::cout << " (" << ch.detail << ")";
        std::cout << "\n";
        all = all && ch.ok;
    }
    return all ? 0 : 1;
}

int cmd_inspect(const RunConfig& c) {
    PhiStore store(c.cache);
    VolcanoReport r = inspect_volcano(c.l, c.D, c.p, store, c.seed);
    std::vector<std::size_t> cycle_lengths, group_sizes;
    for (const auto& cy : r.surface_cycles) cycle_lengths.push_back(cy.size());
    for (const auto& g : r.sibling_groups) group_sizes.push_back(g.size());
    if (c.format == "dot") {
        std::cout << "graph volcano {\n";
        for (const auto& cy : r.surface_cycles)
            for (std::size_t i = 0; i < cy.size(); ++i) {
                std::cout << "  s" << cy[i] << " [shape=box];\n";
                if (cy.size() > 1) std::cout << "  s" << cy[i] << " -- s" << cy[(i + 1) % cy.size()] << ";\n";
            }
        for (std::size_t g = 0; g < r.sibling_groups.size(); ++g)
            for (u64 j : r.sibling_groups[g]) std::cout << "  s" << r.group_parent[g] << " -- f" << j << ";\n";
        std::cout << "}\n";
    } else {
        json out = {{"l", r.l},
                    {"p", r.p},
                    {"t", r.t},
                    {"v", r.v},
                    {"D", r.D},
                    {"d_K", r.d_K},
                    {"h_O", r.h_O},
                    {"h_R", r.h_R},
                    {"ell_O", r.ell_O},
                    {"ell_R", r.ell_R},
                    {"surface_cycle_lengths", cycle_lengths},
                    {"sibling_group_sizes", group_sizes},
                    {"surface_roots_ok", r.surface_roots_ok},
                    {"floor_roots_ok", r.floor_roots_ok},
                    {"surface_cycles", r.surface_cycles},
                    {"sibling_groups", r.sibling_groups},
                    {"group_parent", r.group_parent}};
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_oracle(const RunConfig& c) {
    Invariant inv = parse_invariant(c.inv);
    BivariatePoly phi = inv == Invariant::J ? phi_qexp(c.l) : eval_interp_phi(inv, c.l, c.seed);
    write_output(phi, c.out);
    return 0;
}

int cmd_bench(const RunConfig& c) {
    std::cout << "l\tinv\tD\th(O)\tprimes\tmax_bits\tseconds\n";
    for (u64 l : c.ls) {
        PhiStore store(c.cache);
        RunConfig one = c;
        one.l = l;
        one.quiet = true;
        auto t0 = std::chrono::steady_clock::now();
        ComputeResult r = compute(l, options_from(one), store);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << l << "\t" << invariant_name(r.phi.inv) << "\t" << r.order.D << "\t" << r.order.h_O << "\t"
                  << r.primes_used << "\t" << r.phi.max_coeff_bits() << "\t" << secs << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modular polynomials via isogeny volcanoes and the CRT"};
    app.require_subcommand(1);
    RunConfig c;
    const std::vector<std::string> invs{"j", "gamma2", "weber-f"};

    auto common = [&](CLI::App* s) {
        s->add_option("--cache", c.cache, "cache directory");
        s->add_option("--seed", c.seed, "random seed");
    };
    auto* compute_cmd = app.add_subcommand("compute", "compute Phi_l over Z or mod m");
    compute_cmd->add_option("--l", c.l, "odd prime level")->required()->check(CLI::Range(3ull, 100000ull));
    compute_cmd->add_option("--inv", c.inv, "invariant")->check(CLI::IsMember(invs));
    compute_cmd->add_option("--mod", c.mod, "reduce modulo m (decimal)");
    compute_cmd->add_option("--out", c.out, "output file (default stdout)");
    compute_cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    compute_cmd->add_option("--selector", c.selector, "prime selection")
        ->check(CLI::IsMember({"heuristic", "randomized"}));
    compute_cmd->add_option("--D", c.D, "force the order discriminant");
    compute_cmd->add_flag("--quiet", c.quiet, "no progress output");
    common(compute_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "check a polynomial file");
    verify_cmd->add_option("file", c.file, "polynomial file")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--samples", c.samples, "random isogenies to test");
    verify_cmd->add_option("--seed", c.seed, "random seed");

    auto* inspect_cmd = app.add_subcommand("inspect", "dump the volcano structure for one prime");
    inspect_cmd->add_option("--l", c.l, "odd prime level")->required();
    inspect_cmd->add_option("--D", c.D, "surface discriminant")->required();
    inspect_cmd->add_option("--p", c.p, "prime (default: first selected prime)");
    inspect_cmd->add_option("--format", c.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    common(inspect_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle", "reference polynomial for small l");
    oracle_cmd->add_option("--l", c.l, "odd prime level")->required()->check(CLI::Range(3ull, 13ull));
    oracle_cmd->add_option("--inv", c.inv, "invariant")->check(CLI::IsMember(invs));
    oracle_cmd->add_option("--out", c.out, "output file (default stdout)");
    oracle_cmd->add_option("--seed", c.seed, "sampling seed");

    auto* bench_cmd = app.add_subcommand("bench", "time compute over several l");
    bench_cmd->add_option("--l", c.ls, "levels")->required();
    bench_cmd->add_option("--inv", c.inv, "invariant")->check(CLI::IsMember(invs));
    bench_cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--selector", c.selector, "prime selection")
        ->check(CLI::IsMember({"heuristic", "randomized"}));
    common(bench_cmd);
    CLI11_PARSE(app, argc, argv);
    try {
        if (compute_cmd->parsed()) return cmd_compute(c);
        if (verify_cmd->parsed()) return cmd_verify(c);
        if (inspect_cmd->parsed()) return cmd_inspect(c);
        if (oracle_cmd->parsed()) return cmd_oracle(c);
        if (bench_cmd->parsed()) return cmd_bench(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
