#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fewnull/certify.hpp"
#include "fewnull/random_support.hpp"

namespace fewnull {

enum class ExperimentMode { er, uniform_affine, uniform_homogeneous, uniform_unconstrained };

ExperimentMode parse_mode(const std::string& name);
std::string mode_name(ExperimentMode mode);

/// Sweep configuration. Per point with index n, trial t draws from the
/// stream Rng::for_trial(seed ^ Rng::mix(n), t), so records do not depend on
/// scheduling. beta drives the square census: floor(n^beta) squares, where
/// by default the constant counts as one of them (in the homogenized view it
/// is the square of the extra variable). This calibration reproduces the
/// published success-rate curves; set squares_include_constant = false for
/// the reading with floor(n^beta) non-constant squares. The ER model matches
/// the same census in expectation. uniform-unconstrained ignores beta.
struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::uniform_affine;
    std::vector<int> ns;
    int64_t k = 1;
    std::optional<double> beta;
    int64_t trials = 100;
    uint64_t prime = PrimeField::kDefaultPrime;
    uint64_t seed = 1;
    int jobs = 1;
    std::optional<double> p_edge;  // er mode override
    std::optional<double> q_loop;  // er mode override
    bool squares_include_constant = true;
    int64_t m2_cap = int64_t{1} << 25;
};

struct ExperimentRecord {
    int n = 0;
    int64_t k = 0;
    std::optional<double> beta;
    int64_t trials = 0;
    int64_t successes = 0;
    double rate = 0;
    double mean_nu = 0;
    double mean_t_phase1_ms = 0;
    double mean_t_phase2_ms = 0;
};

struct TrialResult {
    bool success = false;
    int64_t nu = 0;
    double phase1_ms = 0;
    double phase2_ms = 0;
};

/// Support for one trial, affine (dehomogenized when the model is
/// homogeneous; such supports lack the constant unless X0^2 was drawn).
Support gen_trial_support(const ExperimentConfig& cfg, int n, Rng& rng);

/// Full trial: draw a support, then a random system of n equations, then
/// search for a certificate. A support without the constant term is an
/// immediate failure: the origin solves every such system. Successes are
/// verified in-process before being reported.
TrialResult run_single_trial(const ExperimentConfig& cfg, int n, Rng& rng);

/// Runs the sweep with a worker pool of cfg.jobs threads; deterministic
/// given (config, seed) up to the timing fields.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

/// CSV schema: n,k,beta,trials,successes,rate,mean_nu,mean_t_phase1_ms,mean_t_phase2_ms
void write_experiment_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);

/// Empirical moments of the isolated-edge count against the closed forms.
struct StatsRecord {
    int n = 0;
    double p = 0, q = 0;
    int64_t trials = 0;
    double mean_formula = 0, mean_empirical = 0, mean_z = 0;
    double var_formula = 0, var_empirical = 0, var_z = 0;
};

StatsRecord run_er_stats(int n, double p, double q, int64_t trials, uint64_t seed);

/// CSV schema: n,p,q,trials,mean_formula,mean_empirical,mean_z,var_formula,var_empirical,var_z
void write_stats_csv(std::ostream& os, const std::vector<StatsRecord>& records);

}  // namespace fewnull
