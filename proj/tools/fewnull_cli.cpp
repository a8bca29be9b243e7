// Command-line driver: support/system generation, certificate computation
// and verification, ER statistics, experiment sweeps, and the all-squares
// solver. Exit codes: 0 success, 1 not-found/false, 2 usage, 3 I/O.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fewnull/allsquares.hpp"
#include "fewnull/certify.hpp"
#include "fewnull/experiment.hpp"
#include "fewnull/io.hpp"

using namespace fewnull;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<int> expand_n_range(const std::string& n_list, int n_max, int n_step) {
    std::vector<int> ns;
    std::stringstream ss(n_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) ns.push_back(std::stoi(item));
    }
    if (ns.empty()) throw CLI::ValidationError("--n", "empty n range");
    if (n_max > 0) {
        int step = n_step > 0 ? n_step : ns.back();
        for (int n = ns.back() + step; n <= n_max; n += step) ns.push_back(n);
    }
    return ns;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open for writing: " + out_path);
    f << content;
}

int cmd_gen(const std::string& mode, int n, int64_t k, double beta, bool has_beta, uint64_t prime,
            uint64_t seed, double p_edge, bool has_p, double q_loop, bool has_q,
            const std::string& out, const std::string& system_out, int64_t m,
            bool squares_exclusive) {
    ExperimentConfig cfg;
    cfg.mode = parse_mode(mode);
    cfg.k = k;
    cfg.squares_include_constant = !squares_exclusive;
    if (has_beta) cfg.beta = beta;
    if (has_p) cfg.p_edge = p_edge;
    if (has_q) cfg.q_loop = q_loop;
    cfg.prime = prime;
    cfg.seed = seed;

    Rng rng(seed);
    Support support = gen_trial_support(cfg, n, rng);
    if (!out.empty()) write_support_file(out, support);

    if (!system_out.empty()) {
        PrimeField field(prime);
        int64_t rows = m > 0 ? m : n;
        FewnomialSystem sys = random_system(support, field, rows, rng);
        write_system_file(system_out, sys);
    }
    std::fprintf(stderr, "gen: %s n=%d |M|=%lld seed=%llu\n", mode.c_str(), n,
                 static_cast<long long>(support.size()), static_cast<unsigned long long>(seed));
    return kExitSuccess;
}

int cmd_certify(const std::string& system_path, const std::string& cert_path, int64_t cap) {
    FewnomialSystem sys = read_system_file(system_path);
    CertifyOptions opts;
    if (cap > 0) opts.m2_cap = cap;
    CertifyResult res = compute_certificate(sys, opts);
    std::fprintf(stderr, "certify: phase1=%.3fms phase2=%.3fms rank=%lld\n", res.phase1_ms,
                 res.phase2_ms, static_cast<long long>(res.product_rank));
    if (!res.found()) {
        std::cout << "not-found\n";
        return kExitNotFound;
    }
    if (!cert_path.empty()) write_certificate_file(cert_path, res.certificate, sys.support);
    std::cout << "found\n";
    return kExitSuccess;
}

int cmd_verify(const std::string& system_path, const std::string& cert_path) {
    FewnomialSystem sys = read_system_file(system_path);
    Certificate cert = read_certificate_file(cert_path, sys.support, sys.field, sys.m());
    bool ok = verify_certificate(sys, cert);
    std::cout << (ok ? "true" : "false") << '\n';
    return ok ? kExitSuccess : kExitNotFound;
}

int cmd_stats(const std::string& n_list, double p, double q, int64_t trials, uint64_t seed,
              const std::string& out) {
    std::vector<StatsRecord> records;
    for (int n : expand_n_range(n_list, 0, 0))
        records.push_back(run_er_stats(n, p, q, trials, seed ^ Rng::mix(static_cast<uint64_t>(n))));
    std::ostringstream os;
    write_stats_csv(os, records);
    emit(out, os.str());
    return kExitSuccess;
}

int cmd_experiment(const std::string& mode, const std::string& n_list, int n_max, int n_step,
                   int64_t k, double beta, bool has_beta, int64_t trials, uint64_t prime,
                   uint64_t seed, int jobs, const std::string& out, double p_edge, bool has_p,
                   double q_loop, bool has_q, bool squares_exclusive) {
    ExperimentConfig cfg;
    cfg.mode = parse_mode(mode);
    cfg.ns = expand_n_range(n_list, n_max, n_step);
    cfg.k = k;
    cfg.squares_include_constant = !squares_exclusive;
    if (has_beta) cfg.beta = beta;
    if (has_p) cfg.p_edge = p_edge;
    if (has_q) cfg.q_loop = q_loop;
    cfg.trials = trials;
    cfg.prime = prime;
    cfg.seed = seed;
    cfg.jobs = jobs;
    auto records = run_experiment(cfg);
    std::ostringstream os;
    write_experiment_csv(os, records);
    emit(out, os.str());
    return kExitSuccess;
}

int cmd_solve_allsquares(const std::string& system_path, const std::string& mu_token, bool reps,
                         int64_t max_ell, int64_t max_prime) {
    FewnomialSystem sys = read_system_file(system_path);
    AllSquaresSystem as = AllSquaresSystem::from_system(std::move(sys));
    SolveOptions opts;
    if (max_ell > 0) opts.max_ell = max_ell;
    if (max_prime > 0) opts.max_prime = static_cast<uint64_t>(max_prime);

    OrbitRepresentation rep = orbit_representation(as, opts);
    std::ostringstream os;
    os << "n=" << as.n() << " k=" << as.k << " ell=" << as.ell() << '\n';
    os << "core_vars:";
    for (int v : rep.core.vars) os << " x" << v;
    os << "\ncore_solutions: " << rep.orbits.size() << '\n';
    for (size_t i = 0; i < rep.orbits.size(); ++i) {
        const auto& orbit = rep.orbits[i];
        os << "orbit " << i << ": core=(";
        for (size_t j = 0; j < orbit.core_point.size(); ++j) os << (j ? "," : "") << orbit.core_point[j].v;
        os << ")";
        for (size_t j = 0; j < rep.relations.vars.size(); ++j)
            os << " x" << rep.relations.vars[j] << "^2=" << orbit.square_values[j].v
               << (orbit.residue[j] ? "[QR]" : "[NR]");
        if (orbit.representative) {
            os << " representative:";
            if (reps) {
                os << " (";
                for (int v = 1; v <= as.n(); ++v)
                    os << (v > 1 ? "," : "") << (*orbit.representative)[static_cast<size_t>(v)].v;
                os << ")";
            } else {
                os << " yes";
            }
        } else {
            os << " representative: none";
        }
        os << '\n';
    }
    if (!mu_token.empty()) {
        auto coeffs = eliminant(as, parse_monomial(mu_token), opts);
        os << "P_mu(" << mu_token << "):";
        for (const Fp& c : coeffs) os << ' ' << c.v;
        os << '\n';
    }
    std::cout << os.str();
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic fewnomial inconsistency certificates over GF(p)"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random support and optionally a system");
    std::string g_mode = "uniform-affine", g_out, g_sysout;
    int g_n = 10;
    int64_t g_k = 1, g_m = 0;
    double g_beta = 0, g_p = 0, g_q = 0;
    uint64_t g_prime = PrimeField::kDefaultPrime, g_seed = 1;
    auto* g_beta_opt = gen->add_option("--beta", g_beta, "square-count exponent");
    auto* g_p_opt = gen->add_option("--p-edge", g_p, "er edge probability override");
    auto* g_q_opt = gen->add_option("--q-loop", g_q, "er loop probability override");
    gen->add_option("--mode", g_mode, "er | uniform-affine | uniform-homogeneous | uniform-unconstrained");
    gen->add_option("--n", g_n, "variable count")->required();
    gen->add_option("--k", g_k, "support excess: |M| = n+k+1");
    gen->add_option("--prime", g_prime, "field modulus");
    gen->add_option("--seed", g_seed, "rng seed");
    gen->add_option("--out", g_out, "support file path");
    gen->add_option("--system-out", g_sysout, "also write a random system here");
    gen->add_option("--m", g_m, "equation count for --system-out (default n)");
    bool g_sqex = false;
    gen->add_flag("--squares-exclusive", g_sqex,
                  "beta census counts only non-constant squares (floor(n^beta) of them)");

    // certify
    auto* certify = app.add_subcommand("certify", "compute a certificate for a system file");
    std::string c_system, c_out;
    int64_t c_cap = 0;
    certify->add_option("system", c_system, "system file")->required();
    certify->add_option("--out", c_out, "certificate file path");
    certify->add_option("--cap", c_cap, "degree-4 dimension cap");

    // verify
    auto* verify = app.add_subcommand("verify", "check a certificate against a system file");
    std::string v_system, v_cert;
    verify->add_option("system", v_system, "system file")->required();
    verify->add_option("certificate", v_cert, "certificate file")->required();

    // stats
    auto* stats = app.add_subcommand("stats", "isolated-edge moments: formula vs Monte Carlo");
    std::string s_n = "100", s_out;
    double s_p = 0, s_q = 0;
    int64_t s_trials = 10000;
    uint64_t s_seed = 1;
    stats->add_option("--n", s_n, "vertex parameter(s), comma separated")->required();
    stats->add_option("--p-edge", s_p, "edge probability")->required();
    stats->add_option("--q-loop", s_q, "loop probability")->required();
    stats->add_option("--trials", s_trials, "number of draws");
    stats->add_option("--seed", s_seed, "rng seed");
    stats->add_option("--out", s_out, "CSV path (default stdout)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "success-rate sweep, CSV output");
    std::string e_mode = "uniform-affine", e_n = "10", e_out;
    int e_nmax = 0, e_nstep = 0, e_jobs = 1;
    int64_t e_k = 1, e_trials = 100;
    double e_beta = 0, e_p = 0, e_q = 0;
    uint64_t e_prime = PrimeField::kDefaultPrime, e_seed = 1;
    auto* e_beta_opt = exp->add_option("--beta", e_beta, "square-count exponent");
    auto* e_p_opt = exp->add_option("--p-edge", e_p, "er edge probability override");
    auto* e_q_opt = exp->add_option("--q-loop", e_q, "er loop probability override");
    exp->add_option("--mode", e_mode, "er | uniform-affine | uniform-homogeneous | uniform-unconstrained");
    exp->add_option("--n", e_n, "n values, comma separated")->required();
    exp->add_option("--n-max", e_nmax, "extend the n list up to this bound");
    exp->add_option("--n-step", e_nstep, "arithmetic step for --n-max (default: last n)");
    exp->add_option("--k", e_k, "support excess");
    exp->add_option("--trials", e_trials, "trials per point");
    exp->add_option("--prime", e_prime, "field modulus");
    exp->add_option("--seed", e_seed, "rng seed");
    exp->add_option("--jobs", e_jobs, "worker threads");
    exp->add_option("--out", e_out, "CSV path (default stdout)");
    bool e_sqex = false;
    exp->add_flag("--squares-exclusive", e_sqex,
                  "beta census counts only non-constant squares (floor(n^beta) of them)");

    // solve-allsquares
    auto* solve = app.add_subcommand("solve-allsquares", "orbit report for an all-squares system");
    std::string a_system, a_mu;
    bool a_reps = false;
    int64_t a_max_ell = 0, a_max_prime = 0;
    solve->add_option("system", a_system, "system file")->required();
    solve->add_option("--mu", a_mu, "square-free monomial for the eliminant, e.g. x2*x3");
    solve->add_flag("--reps", a_reps, "print full representative points");
    solve->add_option("--max-ell", a_max_ell, "edge-variable cap");
    solve->add_option("--max-prime", a_max_prime, "field cap for exhaustive search");

    try {
        app.parse(argc, argv);
        if (gen->parsed())
            return cmd_gen(g_mode, g_n, g_k, g_beta, g_beta_opt->count() > 0, g_prime, g_seed, g_p,
                           g_p_opt->count() > 0, g_q, g_q_opt->count() > 0, g_out, g_sysout, g_m,
                           g_sqex);
        if (certify->parsed()) return cmd_certify(c_system, c_out, c_cap);
        if (verify->parsed()) return cmd_verify(v_system, v_cert);
        if (stats->parsed()) return cmd_stats(s_n, s_p, s_q, s_trials, s_seed, s_out);
        if (exp->parsed())
            return cmd_experiment(e_mode, e_n, e_nmax, e_nstep, e_k, e_beta, e_beta_opt->count() > 0,
                                  e_trials, e_prime, e_seed, e_jobs, e_out, e_p, e_p_opt->count() > 0,
                                  e_q, e_q_opt->count() > 0, e_sqex);
        if (solve->parsed()) return cmd_solve_allsquares(a_system, a_mu, a_reps, a_max_ell, a_max_prime);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitSuccess : kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitUsage;
}
