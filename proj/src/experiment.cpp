#include "fewnull/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace fewnull {

ExperimentMode parse_mode(const std::string& name) {
    if (name == "er") return ExperimentMode::er;
    if (name == "uniform-affine") return ExperimentMode::uniform_affine;
    if (name == "uniform-homogeneous") return ExperimentMode::uniform_homogeneous;
    if (name == "uniform-unconstrained") return ExperimentMode::uniform_unconstrained;
    throw std::invalid_argument("unknown mode: " + name);
}

std::string mode_name(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::er: return "er";
        case ExperimentMode::uniform_affine: return "uniform-affine";
        case ExperimentMode::uniform_homogeneous: return "uniform-homogeneous";
        case ExperimentMode::uniform_unconstrained: return "uniform-unconstrained";
    }
    return "?";
}

namespace {

int64_t squares_from_beta(int n, double beta) {
    return static_cast<int64_t>(std::floor(std::pow(static_cast<double>(n), beta)));
}

}  // namespace

Support gen_trial_support(const ExperimentConfig& cfg, int n, Rng& rng) {
    const int64_t size = n + cfg.k + 1;
    switch (cfg.mode) {
        case ExperimentMode::uniform_affine: {
            if (!cfg.beta) throw std::invalid_argument("uniform-affine mode requires beta");
            int64_t b = squares_from_beta(n, *cfg.beta) + (cfg.squares_include_constant ? 0 : 1);
            UniformModelParams params{n, size - b, b, UniformModelParams::Variant::affine};
            return gen_uniform_support(params, rng);
        }
        case ExperimentMode::uniform_homogeneous: {
            if (!cfg.beta) throw std::invalid_argument("uniform-homogeneous mode requires beta");
            int64_t b = squares_from_beta(n, *cfg.beta);
            UniformModelParams params{n, size - b, b, UniformModelParams::Variant::homogeneous};
            return gen_uniform_support(params, rng).dehomogenized();
        }
        case ExperimentMode::uniform_unconstrained:
            return gen_unconstrained_support(n, size, rng);
        case ExperimentMode::er: {
            // Expectation-matched parameters: n^beta squares over n+1 slots,
            // total census n+k+1.
            double q = cfg.q_loop ? *cfg.q_loop
                       : cfg.beta ? std::min(1.0, static_cast<double>(squares_from_beta(n, *cfg.beta)) / (n + 1))
                                  : 0.5;
            double slots = static_cast<double>(n + 1) * n / 2.0;
            double p = cfg.p_edge ? *cfg.p_edge
                                  : std::clamp((static_cast<double>(size) - (n + 1) * q) / slots, 0.0, 1.0);
            return gen_er_support({n, p, q}, rng).dehomogenized();
        }
    }
    throw std::logic_error("unreachable");
}

TrialResult run_single_trial(const ExperimentConfig& cfg, int n, Rng& rng) {
    PrimeField field(cfg.prime);
    Support support = gen_trial_support(cfg, n, rng);

    TrialResult out;
    out.nu = matching_number(build_graph(support)).nu;
    if (!support.contains_constant()) return out;  // the origin is a solution

    FewnomialSystem sys = random_system(support, field, n, rng);
    CertifyOptions opts;
    opts.m2_cap = cfg.m2_cap;
    CertifyResult res = compute_certificate(sys, opts);
    out.success = res.found();
    out.phase1_ms = res.phase1_ms;
    out.phase2_ms = res.phase2_ms;
    return out;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.ns.empty()) throw std::invalid_argument("run_experiment: empty n range");
    if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    std::vector<int> ns = cfg.ns;
    std::sort(ns.begin(), ns.end());

    std::vector<ExperimentRecord> records;
    for (int n : ns) {
        const uint64_t point_seed = cfg.seed ^ Rng::mix(static_cast<uint64_t>(n));
        std::vector<TrialResult> results(static_cast<size_t>(cfg.trials));
        std::atomic<int64_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;

        auto worker = [&]() {
            for (;;) {
                int64_t t = next.fetch_add(1);
                if (t >= cfg.trials || failed.load()) break;
                try {
                    Rng rng = Rng::for_trial(point_seed, static_cast<uint64_t>(t));
                    results[static_cast<size_t>(t)] = run_single_trial(cfg, n, rng);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                }
            }
        };
        int jobs = std::max(1, cfg.jobs);
        std::vector<std::thread> pool;
        for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);

        ExperimentRecord rec;
        rec.n = n;
        rec.k = cfg.k;
        rec.beta = cfg.mode == ExperimentMode::uniform_unconstrained ? std::nullopt : cfg.beta;
        rec.trials = cfg.trials;
        double nu_sum = 0, t1_sum = 0, t2_sum = 0;
        for (const auto& r : results) {
            rec.successes += r.success ? 1 : 0;
            nu_sum += static_cast<double>(r.nu);
            t1_sum += r.phase1_ms;
            t2_sum += r.phase2_ms;
        }
        rec.rate = static_cast<double>(rec.successes) / static_cast<double>(rec.trials);
        rec.mean_nu = nu_sum / static_cast<double>(rec.trials);
        rec.mean_t_phase1_ms = t1_sum / static_cast<double>(rec.trials);
        rec.mean_t_phase2_ms = t2_sum / static_cast<double>(rec.trials);
        records.push_back(rec);
    }
    return records;
}

void write_experiment_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
    os << "n,k,beta,trials,successes,rate,mean_nu,mean_t_phase1_ms,mean_t_phase2_ms\n";
    auto sorted = records;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    for (const auto& r : sorted) {
        os << r.n << ',' << r.k << ',';
        if (r.beta) os << *r.beta;
        char buf[160];
        std::snprintf(buf, sizeof(buf), ",%lld,%lld,%.6f,%.6f,%.3f,%.3f\n",
                      static_cast<long long>(r.trials), static_cast<long long>(r.successes), r.rate,
                      r.mean_nu, r.mean_t_phase1_ms, r.mean_t_phase2_ms);
        os << buf;
    }
}

StatsRecord run_er_stats(int n, double p, double q, int64_t trials, uint64_t seed) {
    if (trials < 2) throw std::invalid_argument("run_er_stats: trials must be >= 2");
    std::vector<int64_t> counts(static_cast<size_t>(trials));
    for (int64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(seed, static_cast<uint64_t>(t));
        counts[static_cast<size_t>(t)] = count_isolated_edges(build_graph(gen_er_support({n, p, q}, rng)));
    }
    double T = static_cast<double>(trials);
    double mean = 0;
    for (int64_t c : counts) mean += static_cast<double>(c);
    mean /= T;
    double m2 = 0, m4 = 0;
    for (int64_t c : counts) {
        double d = static_cast<double>(c) - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= T;
    m4 /= T;
    double sample_var = m2 * T / (T - 1);

    IsolatedEdgeStats st = isolated_edge_stats(n, p, q);
    StatsRecord rec;
    rec.n = n;
    rec.p = p;
    rec.q = q;
    rec.trials = trials;
    rec.mean_formula = st.mean;
    rec.mean_empirical = mean;
    rec.mean_z = st.variance > 0 ? (mean - st.mean) / std::sqrt(st.variance / T) : 0.0;
    rec.var_formula = st.variance;
    rec.var_empirical = sample_var;
    double var_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / T);
    rec.var_z = var_se > 0 ? (sample_var - st.variance) / var_se : 0.0;
    return rec;
}

void write_stats_csv(std::ostream& os, const std::vector<StatsRecord>& records) {
    os << "n,p,q,trials,mean_formula,mean_empirical,mean_z,var_formula,var_empirical,var_z\n";
    for (const auto& r : records) {
        char buf[240];
        std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g,%lld,%.9g,%.9g,%.4f,%.9g,%.9g,%.4f\n", r.n, r.p,
                      r.q, static_cast<long long>(r.trials), r.mean_formula, r.mean_empirical, r.mean_z,
                      r.var_formula, r.var_empirical, r.var_z);
        os << buf;
    }
}

}  // namespace fewnull
