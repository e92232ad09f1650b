#include "rmf/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rmf/kahan.hpp"

namespace rmf {

const char* to_string(ModelKind model) {
    switch (model) {
        case ModelKind::Residue: return "residue";
        case ModelKind::Cyclotomic: return "cyclotomic";
        case ModelKind::Tau: return "tau";
    }
    return "?";
}

unsigned resolve_worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RMF_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

void validate_grid(const TrialConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("trial count must be positive");
    if (config.x_grid.empty()) throw std::invalid_argument("x grid must be nonempty");
    for (std::size_t i = 0; i < config.x_grid.size(); ++i) {
        if (config.x_grid[i] < 1) throw std::invalid_argument("grid entries must be positive");
        if (i > 0 && config.x_grid[i] <= config.x_grid[i - 1]) {
            throw std::invalid_argument("x grid must be strictly ascending");
        }
    }
}

// Per-trial negativity flags at every grid point, written into `hits`.
template <typename TrialEval>
std::vector<std::uint64_t> run_trials(const TrialConfig& config, TrialEval&& evaluate) {
    const std::size_t grid_size = config.x_grid.size();
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_worker_count(config.threads),
                                                      config.trials));
    std::vector<std::uint64_t> counts(grid_size, 0);

    if (workers <= 1) {
        std::vector<bool> hits(grid_size);
        for (std::uint64_t t = 0; t < config.trials; ++t) {
            evaluate(t, hits);
            for (std::size_t g = 0; g < grid_size; ++g) {
                counts[g] += hits[g] ? 1 : 0;
            }
        }
        return counts;
    }

    std::atomic<std::uint64_t> next_trial{0};
    std::vector<std::vector<std::uint64_t>> partials(workers,
                                                     std::vector<std::uint64_t>(grid_size, 0));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            std::vector<bool> hits(grid_size);
            while (true) {
                const std::uint64_t t = next_trial.fetch_add(1, std::memory_order_relaxed);
                if (t >= config.trials) break;
                evaluate(t, hits);
                for (std::size_t g = 0; g < grid_size; ++g) {
                    partials[w][g] += hits[g] ? 1 : 0;
                }
            }
        });
    }
    for (auto& thread : pool) thread.join();
    for (const auto& partial : partials) {
        for (std::size_t g = 0; g < grid_size; ++g) counts[g] += partial[g];
    }
    return counts;
}

}  // namespace

ExperimentResult run_probability_experiment(const TrialConfig& config) {
    validate_grid(config);
    const std::uint64_t x_max = config.x_grid.back();

    ExperimentResult result;
    std::vector<std::uint64_t> counts;

    switch (config.model) {
        case ModelKind::Residue: {
            const ResidueSet set(config.modulus, config.residue_set);
            const PrimeSieve sieve(std::max<std::uint64_t>(x_max, 2));
            std::optional<SteeredSigns> steering;
            if (config.steering) {
                steering = steer_signs(config.steering->target, config.steering->residue,
                                       config.steering->modulus, sieve);
            }
            std::vector<std::uint8_t> member(set.modulus, 0);
            for (std::uint64_t a : set.members) member[a] = 1;

            counts = run_trials(config, [&](std::uint64_t trial, std::vector<bool>& hits) {
                SignAssignment signs(config.seed, trial, sieve);
                if (steering) steering->apply(signs, sieve);
                const auto values = signs.value_table(sieve, x_max);
                KahanAccumulator acc;
                std::size_t g = 0;
                for (std::uint64_t n = 1; n <= x_max; ++n) {
                    if (member[n % set.modulus]) {
                        acc.add(static_cast<double>(values[n]) / static_cast<double>(n));
                    }
                    while (g < config.x_grid.size() && n == config.x_grid[g]) {
                        hits[g++] = acc.value() < 0.0;
                    }
                }
            });
            break;
        }
        case ModelKind::Cyclotomic: {
            if (config.field_index == 0) throw std::invalid_argument("field index must be positive");
            const IdealPrimeBasis basis =
                prime_ideal_slots(config.field_index, std::max<std::uint64_t>(x_max, 2));

            // Advisory regime check n < (ln x)^A: flag clearly out-of-regime runs.
            const double log_small = std::log(static_cast<double>(config.x_grid.front()));
            if (config.field_index > 1 &&
                (log_small <= 1.0 ||
                 static_cast<double>(config.field_index) >= std::pow(log_small, 3.0))) {
                result.warnings.push_back(
                    "field index " + std::to_string(config.field_index) +
                    " is large compared to the grid (outside the n < (ln x)^A regime)");
            }

            counts = run_trials(config, [&](std::uint64_t trial, std::vector<bool>& hits) {
                const IdealSignAssignment signs(config.seed, trial, basis);
                std::vector<double> buckets(x_max + 1, 0.0);
                buckets[1] = 1.0;
                const auto& slot_signs = signs.slot_signs();
                const auto& slots = basis.slots;
                auto dfs = [&](auto&& self, std::size_t start, std::uint64_t norm,
                               int sign) -> void {
                    for (std::size_t i = start; i < slots.size(); ++i) {
                        const std::uint64_t q = slots[i].norm;
                        if (q > x_max / norm) break;
                        std::uint64_t value = norm;
                        int s = sign;
                        while (value <= x_max / q) {
                            value *= q;
                            s *= slot_signs[i];
                            buckets[value] += static_cast<double>(s) / static_cast<double>(value);
                            self(self, i + 1, value, s);
                        }
                    }
                };
                dfs(dfs, 0, 1, 1);

                KahanAccumulator acc;
                std::size_t g = 0;
                for (std::uint64_t k = 1; k <= x_max; ++k) {
                    acc.add(buckets[k]);
                    while (g < config.x_grid.size() && k == config.x_grid[g]) {
                        hits[g++] = acc.value() < 0.0;
                    }
                }
            });
            break;
        }
        case ModelKind::Tau: {
            const PrimeSieve sieve(std::max<std::uint64_t>(x_max, 2));
            const HeckeWeight weight{config.weight};
            counts = run_trials(config, [&](std::uint64_t trial, std::vector<bool>& hits) {
                const AngleAssignment angles(config.seed, trial, sieve);
                // one multiplicative pass with grid checkpoints
                std::vector<double> values(x_max + 1, 0.0);
                values[1] = 1.0;
                std::size_t cursor = 0;
                KahanAccumulator acc;
                std::size_t g = 0;
                for (std::uint64_t n = 1; n <= x_max; ++n) {
                    if (n >= 2) {
                        const std::uint64_t p = sieve.smallest_prime_factor(n);
                        if (n == p) {
                            values[n] = 2.0 * std::cos(angles.angles()[cursor++]);
                        } else {
                            std::uint64_t rest = n;
                            unsigned k = 0;
                            while (rest % p == 0) {
                                rest /= p;
                                ++k;
                            }
                            const double c2 = values[p];
                            double prev = 1.0, curr = c2;
                            for (unsigned i = 1; i < k; ++i) {
                                const double next = c2 * curr - prev;
                                prev = curr;
                                curr = next;
                            }
                            values[n] = curr * values[rest];
                        }
                    }
                    acc.add(values[n] / static_cast<double>(n));
                    while (g < config.x_grid.size() && n == config.x_grid[g]) {
                        hits[g++] = acc.value() < 0.0;
                    }
                }
                (void)weight;  // normalization removes the weight entirely
            });
            break;
        }
    }

    result.estimates.reserve(config.x_grid.size());
    for (std::size_t g = 0; g < config.x_grid.size(); ++g) {
        ProbabilityEstimate estimate;
        estimate.x = config.x_grid[g];
        estimate.negatives = counts[g];
        estimate.trials = config.trials;
        estimate.p_hat = static_cast<double>(counts[g]) / static_cast<double>(config.trials);
        const auto [lo, hi] = wilson_interval(counts[g], config.trials, config.z_score);
        estimate.wilson_lo = lo;
        estimate.wilson_hi = hi;
        result.estimates.push_back(estimate);
    }
    return result;
}

namespace {

struct SignedTerm {
    int128 coefficient = 0;  // lcm / n
    std::uint32_t mask = 0;  // coordinates with odd exponent
};

ExactProbability enumerate_patterns(const std::vector<SignedTerm>& terms, unsigned coordinates) {
    if (coordinates > kExhaustiveMaxCoordinates) {
        throw std::runtime_error("too many random coordinates for exhaustive enumeration");
    }
    ExactProbability exact;
    exact.patterns = 1ull << coordinates;
    for (std::uint64_t pattern = 0; pattern < exact.patterns; ++pattern) {
        int128 sum = 0;
        for (const auto& term : terms) {
            const bool negate = std::popcount(static_cast<std::uint32_t>(pattern) & term.mask) & 1;
            sum += negate ? -term.coefficient : term.coefficient;
        }
        if (sum < 0) ++exact.negatives;
    }
    return exact;
}

int128 lcm_up_to(std::uint64_t x) {
    int128 lcm = 1;
    for (std::uint64_t n = 2; n <= x; ++n) {
        lcm = checked_mul(lcm / gcd128(lcm, static_cast<int128>(n)), static_cast<int128>(n));
    }
    return lcm;
}

}  // namespace

ExactProbability exhaustive_small_probability(const TrialConfig& config, std::uint64_t x) {
    if (x < 1) throw std::invalid_argument("bound must be positive");
    switch (config.model) {
        case ModelKind::Tau:
            throw std::invalid_argument("tau model has continuous randomness; not enumerable");
        case ModelKind::Residue: {
            const ResidueSet set(config.modulus, config.residue_set);
            std::vector<std::uint64_t> coordinate_primes;
            for (std::uint64_t p = 2; p <= x; ++p) {
                bool prime = true;
                for (std::uint64_t d = 2; d * d <= p; ++d) {
                    if (p % d == 0) {
                        prime = false;
                        break;
                    }
                }
                if (prime) coordinate_primes.push_back(p);
            }
            if (coordinate_primes.size() > kExhaustiveMaxCoordinates) {
                throw std::runtime_error("too many random coordinates for exhaustive enumeration");
            }
            const int128 lcm = lcm_up_to(x);
            std::vector<SignedTerm> terms;
            for (std::uint64_t n = 1; n <= x; ++n) {
                if (!set.contains(n)) continue;
                std::uint32_t mask = 0;
                std::uint64_t rest = n;
                for (std::size_t i = 0; i < coordinate_primes.size(); ++i) {
                    unsigned e = 0;
                    while (rest % coordinate_primes[i] == 0) {
                        rest /= coordinate_primes[i];
                        ++e;
                    }
                    if (e & 1) mask |= 1u << i;
                }
                terms.push_back({lcm / static_cast<int128>(n), mask});
            }
            return enumerate_patterns(terms, static_cast<unsigned>(coordinate_primes.size()));
        }
        case ModelKind::Cyclotomic: {
            if (x < 2) {
                // only the unit ideal exists; the sum is identically 1
                return ExactProbability{0, 1};
            }
            const IdealPrimeBasis basis = prime_ideal_slots(config.field_index, x);
            if (basis.slots.size() > kExhaustiveMaxCoordinates) {
                throw std::runtime_error("too many random coordinates for exhaustive enumeration");
            }
            const int128 lcm = lcm_up_to(x);
            std::vector<SignedTerm> terms;
            terms.push_back({lcm, 0});  // unit ideal
            const auto& slots = basis.slots;
            auto dfs = [&](auto&& self, std::size_t start, std::uint64_t norm,
                           std::uint32_t mask) -> void {
                for (std::size_t i = start; i < slots.size(); ++i) {
                    const std::uint64_t q = slots[i].norm;
                    if (q > x / norm) break;
                    std::uint64_t value = norm;
                    std::uint32_t node_mask = mask;
                    while (value <= x / q) {
                        value *= q;
                        node_mask ^= 1u << i;
                        terms.push_back({lcm / static_cast<int128>(value), node_mask});
                        self(self, i + 1, value, node_mask);
                    }
                }
            };
            dfs(dfs, 0, 1, 0);
            return enumerate_patterns(terms, static_cast<unsigned>(basis.slots.size()));
        }
    }
    throw std::logic_error("unreachable");
}

std::pair<double, double> wilson_interval(std::uint64_t count, std::uint64_t trials,
                                          double z_score) {
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    if (count > trials) throw std::invalid_argument("count exceeds trials");
    if (!(z_score > 0.0)) throw std::invalid_argument("z-score must be positive");

    const double n = static_cast<double>(trials);
    const double p_hat = static_cast<double>(count) / n;
    const double z2 = z_score * z_score;
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        z_score * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double hoeffding_bound(double lambda, double sum_sq) {
    if (!(lambda > 0.0)) throw std::invalid_argument("threshold must be positive");
    if (!(sum_sq > 0.0)) throw std::invalid_argument("sum of squares must be positive");
    return std::exp(-lambda * lambda / (2.0 * sum_sq));
}

double decay_reference(double x, double C) {
    static const double e_to_e = std::exp(std::numbers::e);
    if (!(x > e_to_e)) throw std::invalid_argument("x must exceed e^e");
    if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
    return std::exp(-std::exp(std::log(x) / (C * std::log(std::log(x)))));
}

SplitDiagnostics split_diagnostics(const TrialConfig& config, std::uint64_t trial, std::uint64_t x,
                                   std::uint64_t enumeration_cap, std::uint64_t character_index) {
    SplitDiagnostics diag;
    switch (config.model) {
        case ModelKind::Residue: {
            const PrimeSieve sieve(std::max<std::uint64_t>(x, 2));
            const CharacterTable table(config.modulus);
            const SignAssignment signs(config.seed, trial, sieve);
            const auto tail = smooth_tail_sum(signs, sieve, table, character_index, x,
                                              enumeration_cap);
            diag.tail_term = tail.value;
            diag.residual = tail.residual;
            diag.tail_terms = tail.terms;
            if (table.kind(character_index) != CharacterKind::Complex &&
                x <= kExactModeMaxBound) {
                diag.exact_mode = true;
                diag.main_term =
                    truncated_euler_product_exact(signs, sieve, table, character_index, x)
                        .to_double();
                diag.direct_sum =
                    character_twisted_sum_exact(signs, sieve, table, character_index, x)
                        .to_double();
            } else {
                diag.main_term = truncated_euler_product(signs, sieve, table, character_index, x);
                diag.direct_sum =
                    character_twisted_sum(signs, sieve, table, character_index, x).value;
            }
            break;
        }
        case ModelKind::Cyclotomic: {
            const IdealPrimeBasis basis =
                prime_ideal_slots(config.field_index, std::max<std::uint64_t>(x, 2));
            const IdealSignAssignment signs(config.seed, trial, basis);
            const auto tail = ideal_tail_sum(signs, basis, x, enumeration_cap);
            diag.tail_term = tail.value;
            diag.residual = tail.residual;
            diag.tail_terms = tail.terms;
            if (x <= kExactModeMaxBound) {
                diag.exact_mode = true;
                diag.main_term = ideal_euler_product_exact(signs, basis).to_double();
                diag.direct_sum = ideal_partial_sum_exact(signs, basis, x).to_double();
            } else {
                diag.main_term = ideal_euler_product(signs, basis);
                diag.direct_sum = ideal_partial_sum(signs, basis, x).value;
            }
            break;
        }
        case ModelKind::Tau: {
            const PrimeSieve sieve(std::max<std::uint64_t>(x, 2));
            const AngleAssignment angles(config.seed, trial, sieve);
            diag = tau_split_diagnostics(angles, sieve, x, enumeration_cap);
            break;
        }
    }
    return diag;
}

SplitDiagnostics tau_split_diagnostics(const AngleAssignment& angles, const PrimeSieve& sieve,
                                       std::uint64_t x, std::uint64_t enumeration_cap) {
    SplitDiagnostics diag;
    const auto tail = tau_tail_sum(angles, sieve, x, enumeration_cap);
    diag.tail_term = tail.value;
    diag.residual = tail.residual;
    diag.tail_terms = tail.terms;
    diag.main_term = tau_euler_product(angles, sieve, x);
    diag.direct_sum = tau_partial_sum(angles, sieve, HeckeWeight{}, x).value;
    return diag;
}

}  // namespace rmf
