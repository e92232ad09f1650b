#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmf/characters.hpp"
#include "rmf/ideals.hpp"
#include "rmf/multiplicative.hpp"
#include "rmf/rational.hpp"
#include "rmf/tau.hpp"

namespace rmf {

enum class ModelKind { Residue, Cyclotomic, Tau };

const char* to_string(ModelKind model);

struct SteerDirective {
    double target = 0.0;
    std::uint64_t residue = 1;
    std::uint64_t modulus = 1;
};

// One Monte Carlo experiment: T independent trials of the chosen model,
// evaluated at every x of an ascending grid. Trials are keyed (seed, trial),
// so results do not depend on execution order or worker count.
struct TrialConfig {
    ModelKind model = ModelKind::Residue;

    // residue model
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> residue_set{1};

    // cyclotomic model
    std::uint64_t field_index = 1;

    // tau model
    unsigned weight = 11;

    std::vector<std::uint64_t> x_grid;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    double z_score = 1.96;
    std::optional<SteerDirective> steering;  // residue model only
    unsigned threads = 0;                    // 0: RMF_THREADS env or hardware default
};

struct ProbabilityEstimate {
    std::uint64_t x = 0;
    std::uint64_t negatives = 0;
    std::uint64_t trials = 0;
    double p_hat = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
};

struct ExperimentResult {
    std::vector<ProbabilityEstimate> estimates;  // one per grid x
    std::vector<std::string> warnings;
};

ExperimentResult run_probability_experiment(const TrialConfig& config);

// Exact P(sum < 0) over all 2^k sign patterns; k is the number of random
// coordinates (primes <= x, or ideal slots of norm <= x) and is capped at 20.
// The tau model has continuous randomness and is not supported.
struct ExactProbability {
    std::uint64_t negatives = 0;
    std::uint64_t patterns = 1;

    Rational value() const {
        return Rational(static_cast<long long>(negatives), static_cast<long long>(patterns));
    }
};

ExactProbability exhaustive_small_probability(const TrialConfig& config, std::uint64_t x);

constexpr unsigned kExhaustiveMaxCoordinates = 20;

// Wilson score interval for a binomial proportion, clamped to [0,1].
std::pair<double, double> wilson_interval(std::uint64_t count, std::uint64_t trials,
                                          double z_score);

// Sub-Gaussian tail bound exp(-lambda^2 / (2 sum_sq)) for sums of
// independent +-1 variables with weights a_k, sum_sq = sum a_k^2.
double hoeffding_bound(double lambda, double sum_sq);

// Reference curve exp(-exp(ln x / (C ln ln x))); requires x > e^e so the
// inner logarithm exceeds 1. A plotting overlay, never a fitted claim.
double decay_reference(double x, double C);

// Main-term / tail / direct-sum decomposition of one trial of a model:
// the truncated Euler product (resp. its ideal or Sato-Tate analogue), the
// smooth tail beyond x up to the enumeration cap, and the plain partial sum.
// |main - tail - direct| <= residual must hold.
struct SplitDiagnostics {
    std::complex<double> main_term{0.0, 0.0};
    std::complex<double> tail_term{0.0, 0.0};
    std::complex<double> direct_sum{0.0, 0.0};
    double residual = 0.0;
    bool exact_mode = false;
    std::uint64_t tail_terms = 0;

    double identity_gap() const { return std::abs(main_term - tail_term - direct_sum); }
};

// character_index applies to the residue model (which character's split to
// inspect); it is ignored by the other models.
SplitDiagnostics split_diagnostics(const TrialConfig& config, std::uint64_t trial, std::uint64_t x,
                                   std::uint64_t enumeration_cap, std::uint64_t character_index = 0);

// Tau-model split at caller-supplied angles (the config path draws random
// ones keyed by trial).
SplitDiagnostics tau_split_diagnostics(const AngleAssignment& angles, const PrimeSieve& sieve,
                                       std::uint64_t x, std::uint64_t enumeration_cap);

unsigned resolve_worker_count(unsigned requested);

}  // namespace rmf
