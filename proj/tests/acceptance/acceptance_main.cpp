// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. `acceptance pilot` runs the documented pilot protocol instead and
// prints the threshold fixture JSON consumed by criteria 7 and 8.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmf/experiments.hpp"
#include "rmf/rng.hpp"
#include "rmf/tau.hpp"

using nlohmann::json;
using namespace rmf;

namespace {

constexpr std::uint64_t kAcceptanceSeed = 97;
constexpr double kChiSquare19At1e3 = 43.8202;  // df = 19, upper 1e-3 point

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

std::string fixture_path() {
    const char* dir = std::getenv("RMF_FIXTURE_DIR");
    const std::string base = dir ? dir : "tests/fixtures";
    return base + "/pilot_thresholds.json";
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (std::uint64_t q = p * p; q <= bound; q += p) composite[q] = true;
    }
    return primes;
}

// Floating-point verdict oracle for criterion 2: evaluates every coefficient
// straight from the generator presentation with complex doubles, independent
// of the library's exact root-of-unity arithmetic.
bool float_oracle_decay(const UnitGroupStructure& group,
                        const std::vector<std::uint64_t>& members) {
    const std::uint64_t phi = group.group_order;
    const std::size_t r = group.generators.size();
    for (std::uint64_t j = 0; j < phi; ++j) {
        std::vector<std::uint64_t> digits(r);
        std::uint64_t rem = j;
        for (std::size_t i = 0; i < r; ++i) {
            digits[i] = rem % group.orders[i];
            rem /= group.orders[i];
        }
        bool real = true;
        for (std::size_t i = 0; i < r; ++i) {
            if ((2 * digits[i]) % group.orders[i] != 0) real = false;
        }
        std::complex<double> coeff{0.0, 0.0};
        for (const std::uint64_t b : members) {
            const auto& dlog = group.dlog_table[b % group.modulus];
            double angle = 0.0;
            for (std::size_t i = 0; i < r; ++i) {
                angle += 2.0 * std::numbers::pi * static_cast<double>(digits[i]) *
                         static_cast<double>(dlog[i]) / static_cast<double>(group.orders[i]);
            }
            coeff += std::complex<double>{std::cos(angle), -std::sin(angle)};  // conjugate
        }
        constexpr double kTol = 1e-7;
        if (real ? coeff.real() < -kTol : std::abs(coeff) > kTol) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 1

CriterionResult character_exactness() {
    std::uint64_t pair_checks = 0;
    for (std::uint64_t m = 1; m <= 100; ++m) {
        const CharacterTable table(m);
        const auto& field = table.field();
        const unsigned L = table.zeta_order();
        const std::uint64_t phi = table.size();

        for (std::uint64_t i = 0; i < phi; ++i) {
            for (std::uint64_t j = 0; j < phi; ++j) {
                ZetaSum acc(L);
                for (std::uint64_t a = 0; a < m; ++a) {
                    const auto ei = table.value_exponent(i, a);
                    if (!ei) continue;
                    const auto ej = table.value_exponent(j, a);
                    acc.add_power(static_cast<long long>(*ei) - static_cast<long long>(*ej));
                }
                if (i == j) acc.add_power(0, -static_cast<long long>(phi));
                if (!field.is_zero(acc.coeff)) {
                    return {false, "orthogonality failed at m=" + std::to_string(m)};
                }
                ++pair_checks;
            }
        }

        // indicator reconstruction; decompose_indicator verifies the exact
        // identity internally and throws on any mismatch
        std::vector<std::uint64_t> coprime;
        for (std::uint64_t a = 0; a < m; ++a) {
            if (table.group().coprime(a)) coprime.push_back(a);
        }
        std::vector<std::vector<std::uint64_t>> sets;
        sets.push_back({coprime.front()});
        sets.push_back(coprime);
        std::uint64_t state = 1000 + m;
        for (int k = 0; k < 2; ++k) {
            std::vector<std::uint64_t> members;
            for (std::uint64_t a : coprime) {
                state = rng::mix64(state);
                if (state & 1) members.push_back(a);
            }
            if (members.empty()) members.push_back(coprime.back());
            sets.push_back(members);
        }
        for (const auto& members : sets) {
            try {
                (void)decompose_indicator(table, ResidueSet(m, members));
            } catch (const std::exception& e) {
                return {false,
                        "reconstruction failed at m=" + std::to_string(m) + ": " + e.what()};
            }
        }
    }
    return {true, std::to_string(pair_checks) + " orthogonality pairs, exact"};
}

// ---------------------------------------------------------------- criterion 2

CriterionResult branch_criterion() {
    std::uint64_t checked = 0;
    for (std::uint64_t m = 1; m <= 24; ++m) {
        const CharacterTable table(m);
        std::vector<std::uint64_t> coprime;
        for (std::uint64_t a = 0; a < m; ++a) {
            if (table.group().coprime(a)) coprime.push_back(a);
        }
        const std::uint64_t phi = coprime.size();

        auto matches_oracle = [&](const std::vector<std::uint64_t>& members) {
            const auto branch = classify_branch(table, ResidueSet(m, members));
            ++checked;
            return (branch.verdict == BranchVerdict::Decay) ==
                   float_oracle_decay(table.group(), members);
        };

        if (phi <= 8) {
            for (std::uint64_t mask = 1; mask < (1ull << phi); ++mask) {
                std::vector<std::uint64_t> members;
                for (std::uint64_t i = 0; i < phi; ++i) {
                    if (mask & (1ull << i)) members.push_back(coprime[i]);
                }
                if (!matches_oracle(members)) {
                    return {false, "verdict mismatch at m=" + std::to_string(m)};
                }
            }
        } else {
            std::uint64_t state = 777 + m;
            for (int sample = 0; sample < 1000; ++sample) {
                std::vector<std::uint64_t> members;
                while (members.empty()) {
                    for (std::uint64_t a : coprime) {
                        state = rng::mix64(state);
                        if (state & 1) members.push_back(a);
                    }
                }
                if (!matches_oracle(members)) {
                    return {false, "verdict mismatch at m=" + std::to_string(m)};
                }
            }
        }
    }
    return {true, std::to_string(checked) + " subsets cross-checked"};
}

// ---------------------------------------------------------------- criterion 3

CriterionResult split_identities() {
    double worst_gap_ratio = 0.0;
    double worst_residual = 0.0;
    auto record = [&](const SplitDiagnostics& diag) {
        worst_gap_ratio = std::max(worst_gap_ratio, diag.identity_gap() / diag.residual);
        worst_residual = std::max(worst_residual, diag.residual);
    };

    for (std::uint64_t m : {1ull, 4ull, 5ull, 8ull}) {
        const CharacterTable table(m);
        TrialConfig config;
        config.model = ModelKind::Residue;
        config.modulus = m;
        config.residue_set = {1};
        config.seed = kAcceptanceSeed;
        for (std::uint64_t j = 0; j < table.size(); ++j) {
            if (table.kind(j) == CharacterKind::Complex) continue;
            for (std::uint64_t trial = 0; trial < 2; ++trial) {
                const auto diag = split_diagnostics(config, trial, 20, 100000000, j);
                if (!diag.exact_mode) return {false, "expected exact mode (residue)"};
                if (diag.identity_gap() > diag.residual) {
                    return {false, "residue split identity violated at m=" + std::to_string(m)};
                }
                if (diag.residual >= 1e-3) {
                    return {false,
                            "residue residual too large: " + std::to_string(diag.residual)};
                }
                record(diag);
            }
        }
    }

    for (std::uint64_t n : {1ull, 3ull, 4ull, 5ull}) {
        TrialConfig config;
        config.model = ModelKind::Cyclotomic;
        config.field_index = n;
        config.seed = kAcceptanceSeed;
        for (std::uint64_t trial = 0; trial < 2; ++trial) {
            const auto diag = split_diagnostics(config, trial, 20, 100000000);
            if (!diag.exact_mode) return {false, "expected exact mode (cyclotomic)"};
            if (diag.identity_gap() > diag.residual) {
                return {false, "cyclotomic split identity violated at n=" + std::to_string(n)};
            }
            if (diag.residual >= 1e-3) {
                return {false,
                        "cyclotomic residual too large: " + std::to_string(diag.residual)};
            }
            record(diag);
        }
    }

    {
        const PrimeSieve sieve(16);
        const auto right_angles = AngleAssignment::constant(sieve, std::numbers::pi / 2);
        for (std::uint64_t x : {4ull, 7ull, 10ull}) {
            const auto diag = tau_split_diagnostics(right_angles, sieve, x, 100000000);
            if (diag.identity_gap() > diag.residual) {
                return {false, "tau split identity violated at x=" + std::to_string(x)};
            }
            if (diag.residual >= 1e-3) {
                return {false, "tau residual too large: " + std::to_string(diag.residual)};
            }
            record(diag);
        }
    }

    std::ostringstream detail;
    detail << "max residual " << worst_residual << ", max gap/residual " << worst_gap_ratio;
    return {true, detail.str()};
}

// ---------------------------------------------------------------- criterion 4

CriterionResult cyclotomic_oracles() {
    const auto primes = primes_up_to(10000);
    for (std::uint64_t n = 1; n <= 200; ++n) {
        const std::uint64_t phi = euler_phi(n);
        for (const std::uint64_t p : primes) {
            const auto datum = splitting_type(n, p);
            if (datum.ramification * datum.inertia * datum.ideal_count != phi) {
                return {false, "e*f*r mismatch at n=" + std::to_string(n) +
                                   ", p=" + std::to_string(p)};
            }
        }
    }

    for (const unsigned n : {4u, 3u}) {
        const auto basis = prime_ideal_slots(n, 1000);
        const auto histogram = ideal_norm_histogram(basis, 1000);
        for (std::uint64_t k = 1; k <= 1000; ++k) {
            long long divisor_sum = 0;
            for (std::uint64_t d = 1; d <= k; ++d) {
                if (k % d != 0) continue;
                const std::uint64_t r = d % n;
                if (n == 4) divisor_sum += (r == 1) ? 1 : (r == 3 ? -1 : 0);
                if (n == 3) divisor_sum += (r == 1) ? 1 : (r == 2 ? -1 : 0);
            }
            if (static_cast<long long>(histogram[k]) != divisor_sum) {
                return {false, "ideal count mismatch at n=" + std::to_string(n) +
                                   ", norm=" + std::to_string(k)};
            }
        }
    }
    return {true, "splitting grid and divisor-sum counts exact"};
}

// ---------------------------------------------------------------- criterion 5

CriterionResult tau_fixture_criterion() {
    const auto fixture = tau_series(100);
    const long long expected[] = {1, -24, 252, -1472, 4830, -6048};
    for (int i = 0; i < 6; ++i) {
        if (fixture.tau(i + 1) != int128{expected[i]}) return {false, "leading coefficients"};
    }
    for (std::uint64_t a = 2; a <= 100; ++a) {
        for (std::uint64_t b = a + 1; a * b <= 100; ++b) {
            if (std::gcd(a, b) != 1) continue;
            if (fixture.tau(a * b) != fixture.tau(a) * fixture.tau(b)) {
                return {false, "multiplicativity at " + std::to_string(a * b)};
            }
        }
    }
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        int128 p11 = 1;
        for (int i = 0; i < 11; ++i) p11 *= static_cast<int128>(p);
        for (std::uint64_t pk = p; pk * p <= 100; pk *= p) {
            if (fixture.tau(pk * p) !=
                fixture.tau(p) * fixture.tau(pk) - p11 * fixture.tau(pk / p)) {
                return {false, "Hecke recurrence at " + std::to_string(pk * p)};
            }
        }
    }
    return {true, "100 exact coefficients verified"};
}

// ---------------------------------------------------------------- criterion 6

CriterionResult monte_carlo_vs_exhaustive() {
    TrialConfig residue;
    residue.model = ModelKind::Residue;
    residue.modulus = 1;
    residue.residue_set = {1};
    residue.trials = 10000;
    residue.seed = kAcceptanceSeed;
    residue.z_score = 3.0;
    residue.x_grid = {2, 3, 5, 7};
    const auto estimates = run_probability_experiment(residue).estimates;
    for (const auto& est : estimates) {
        const double exact = exhaustive_small_probability(residue, est.x).value().to_double();
        if (exact < est.wilson_lo || exact > est.wilson_hi) {
            return {false, "residue estimate misses exact at x=" + std::to_string(est.x)};
        }
    }

    TrialConfig gaussian;
    gaussian.model = ModelKind::Cyclotomic;
    gaussian.field_index = 4;
    gaussian.trials = 10000;
    gaussian.seed = kAcceptanceSeed;
    gaussian.z_score = 3.0;
    gaussian.x_grid = {5};
    const auto gauss_est = run_probability_experiment(gaussian).estimates.front();
    const double gauss_exact = exhaustive_small_probability(gaussian, 5).value().to_double();
    if (gauss_exact < gauss_est.wilson_lo || gauss_exact > gauss_est.wilson_hi) {
        return {false, "cyclotomic estimate misses exact"};
    }
    return {true, "5 grid points inside z=3 intervals"};
}

// ------------------------------------------------------------ criteria 7 & 8

struct BranchRun {
    std::string name;
    std::vector<ProbabilityEstimate> estimates;
};

using BranchCases = std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>;

const BranchCases kDecayCases = {{1, {1}}, {5, {1, 4}}};
const BranchCases kBoundedCases = {{5, {1}}, {4, {3}}};

std::vector<BranchRun> run_branch_configs(const BranchCases& cases, std::uint64_t seed) {
    std::vector<BranchRun> runs;
    for (const auto& [m, members] : cases) {
        TrialConfig config;
        config.model = ModelKind::Residue;
        config.modulus = m;
        config.residue_set = members;
        config.x_grid = {100, 1000, 10000, 100000};
        config.trials = 2000;
        config.seed = seed;
        BranchRun run;
        run.name = "m" + std::to_string(m) + ":S=";
        for (std::size_t i = 0; i < members.size(); ++i) {
            run.name += (i ? "|" : "") + std::to_string(members[i]);
        }
        run.estimates = run_probability_experiment(config).estimates;
        runs.push_back(std::move(run));
    }
    return runs;
}

CriterionResult decay_branch_behavior() {
    std::ifstream file(fixture_path());
    if (!file) return {false, "missing fixture " + fixture_path()};
    const json fixture = json::parse(file);

    std::ostringstream detail;
    for (const auto& run : run_branch_configs(kDecayCases, kAcceptanceSeed)) {
        const auto& first = run.estimates.front();
        const auto& last = run.estimates.back();
        const double half_first = 0.5 * (first.wilson_hi - first.wilson_lo);
        const double half_last = 0.5 * (last.wilson_hi - last.wilson_lo);
        if (last.p_hat > first.p_hat + half_first + half_last) {
            return {false, run.name + ": p_hat grows beyond the noise band"};
        }
        const double ceiling = fixture.at("decay_ceiling").at(run.name).get<double>();
        if (last.p_hat > ceiling) {
            return {false, run.name + ": p_hat(1e5)=" + std::to_string(last.p_hat) +
                               " above frozen ceiling " + std::to_string(ceiling)};
        }
        detail << run.name << " p_hat(1e5)=" << last.p_hat << " <= " << ceiling << "  ";
    }
    return {true, detail.str()};
}

CriterionResult bounded_below_branch_behavior() {
    std::ifstream file(fixture_path());
    if (!file) return {false, "missing fixture " + fixture_path()};
    const json fixture = json::parse(file);

    bool pass = true;
    std::ostringstream detail;
    for (const auto& run : run_branch_configs(kBoundedCases, kAcceptanceSeed)) {
        const double floor = fixture.at("bounded_below_floor").at(run.name).get<double>();
        if (!(floor > 0.0)) {
            pass = false;
            detail << run.name << ": no positive floor exists on this grid (the unit term of a "
                   << "set containing residue 1 exceeds the whole class tail mass at small x, "
                   << "making P(sum<0) = 0 identically there and below 1/trials resolution at "
                   << "the larger grid points)  ";
            continue;
        }
        double min_lo = 1.0;
        bool config_ok = true;
        for (const auto& est : run.estimates) {
            min_lo = std::min(min_lo, est.wilson_lo);
            if (!(est.wilson_lo > floor)) config_ok = false;
        }
        if (config_ok) {
            detail << run.name << " min_lo=" << min_lo << " > " << floor << "  ";
        } else {
            pass = false;
            detail << run.name << ": Wilson lower bound " << min_lo << " not above floor "
                   << floor << "  ";
        }
    }
    return {pass, detail.str()};
}

// ---------------------------------------------------------------- criterion 9

CriterionResult sato_tate_sampler() {
    constexpr std::uint64_t kSamples = 100000;
    constexpr int kBins = 20;
    std::vector<std::uint64_t> counts(kBins, 0);
    double sum1 = 0.0, sum2 = 0.0;
    for (std::uint64_t i = 0; i < kSamples; ++i) {
        const double theta = sample_angle(rng::uniform01(kAcceptanceSeed, 1, i));
        const double u = sato_tate_cdf(theta);
        ++counts[std::min(kBins - 1, static_cast<int>(u * kBins))];
        const double a = 2.0 * std::cos(theta);
        sum1 += a;
        sum2 += a * a;
    }
    const double expected = static_cast<double>(kSamples) / kBins;
    double chi_square = 0.0;
    for (const std::uint64_t c : counts) {
        const double diff = static_cast<double>(c) - expected;
        chi_square += diff * diff / expected;
    }
    if (chi_square >= kChiSquare19At1e3) {
        return {false, "chi-square " + std::to_string(chi_square) + " exceeds 43.8202"};
    }
    const double n = static_cast<double>(kSamples);
    const double band = 3.0 / std::sqrt(n);  // Var(2cos) = Var((2cos)^2) = 1
    if (std::fabs(sum1 / n) >= band) return {false, "first moment outside 3 sigma"};
    if (std::fabs(sum2 / n - 1.0) >= band) return {false, "second moment outside 3 sigma"};
    std::ostringstream detail;
    detail << "chi2=" << chi_square << ", E[2cos]=" << sum1 / n << ", E[(2cos)^2]=" << sum2 / n;
    return {true, detail.str()};
}

// --------------------------------------------------------------- criterion 10

CriterionResult hoeffding_domination() {
    const auto primes = primes_up_to(1000);
    double sum_sq = 0.0;
    for (const std::uint64_t p : primes) sum_sq += 1.0 / (static_cast<double>(p) * p);

    constexpr std::uint64_t kTrials = 100000;
    const double lambdas[] = {0.5, 1.0, 2.0};
    std::uint64_t exceed[3] = {0, 0, 0};
    for (std::uint64_t t = 0; t < kTrials; ++t) {
        double sum = 0.0;
        for (const std::uint64_t p : primes) {
            sum += static_cast<double>(rng::sign_draw(kAcceptanceSeed, t, p, 1)) /
                   static_cast<double>(p);
        }
        for (int i = 0; i < 3; ++i) {
            if (sum >= lambdas[i]) ++exceed[i];
        }
    }
    std::ostringstream detail;
    for (int i = 0; i < 3; ++i) {
        const double empirical = static_cast<double>(exceed[i]) / kTrials;
        const double bound = hoeffding_bound(lambdas[i], sum_sq);
        if (empirical > bound) {
            return {false,
                    "tail at lambda=" + std::to_string(lambdas[i]) + " exceeds the bound"};
        }
        detail << "P>=" << lambdas[i] << ": " << empirical << "<=" << bound << "  ";
    }
    return {true, detail.str()};
}

// --------------------------------------------------------------- criterion 11

CriterionResult simulate_determinism() {
    const char* cli = std::getenv("RMF_CLI");
    if (!cli) return {false, "RMF_CLI not set (run under ctest)"};

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "rmf_acceptance";
    fs::create_directories(dir);
    const fs::path first = dir / "first.csv";
    const fs::path second = dir / "second.csv";

    const std::string base = std::string("\"") + cli +
                             "\" simulate --model residue --m 3 --set 1,2 "
                             "--x-grid 1e2,1e3 --trials 200 --seed 7 --out ";
    if (std::system((base + first.string()).c_str()) != 0) return {false, "first run failed"};
    if (std::system((base + second.string()).c_str()) != 0) return {false, "second run failed"};

    const auto slurp = [](const fs::path& path) {
        std::ifstream file(path, std::ios::binary);
        std::stringstream buffer;
        buffer << file.rdbuf();
        return buffer.str();
    };
    const std::string a = slurp(first);
    if (a.empty() || a != slurp(second)) {
        return {false, "CSV outputs differ between identical runs"};
    }

    const fs::path replay = dir / "replay.csv";
    const std::string replay_cmd = std::string("\"") + cli + "\" simulate --from-manifest \"" +
                                   first.string() + ".manifest.json\" --out " + replay.string();
    if (std::system(replay_cmd.c_str()) != 0) return {false, "manifest replay failed"};
    if (slurp(replay) != a) return {false, "manifest replay differs"};
    return {true, "byte-identical CSV across reruns and manifest replay"};
}

// ----------------------------------------------------------------- pilot mode

// Documented pilot protocol: five seeds starting at 20250808, the acceptance
// grid and trial count. Decay ceilings are max over seeds of p_hat(1e5) plus
// four Wilson half-widths; bounded-below floors are half the minimum Wilson
// lower bound across seeds and grid points.
int run_pilot() {
    json fixture;
    fixture["protocol"] = {
        {"command", "acceptance pilot"},
        {"seeds", {20250808, 20250809, 20250810, 20250811, 20250812}},
        {"grid", {100, 1000, 10000, 100000}},
        {"trials", 2000},
        {"z", 1.96},
        {"decay_ceiling_rule", "max over seeds of p_hat(1e5) + 4 * wilson half-width(1e5)"},
        {"bounded_floor_rule", "0.5 * min over seeds and grid of wilson_lo"},
    };

    json ceilings, floors;
    for (const std::uint64_t seed :
         {20250808ull, 20250809ull, 20250810ull, 20250811ull, 20250812ull}) {
        for (const auto& run : run_branch_configs(kDecayCases, seed)) {
            const auto& last = run.estimates.back();
            const double half = 0.5 * (last.wilson_hi - last.wilson_lo);
            const double candidate = last.p_hat + 4.0 * half;
            if (!ceilings.contains(run.name) || ceilings[run.name].get<double>() < candidate) {
                ceilings[run.name] = candidate;
            }
        }
        for (const auto& run : run_branch_configs(kBoundedCases, seed)) {
            for (const auto& est : run.estimates) {
                const double candidate = 0.5 * est.wilson_lo;
                if (!floors.contains(run.name) || floors[run.name].get<double>() > candidate) {
                    floors[run.name] = candidate;
                }
            }
        }
    }
    fixture["decay_ceiling"] = ceilings;
    fixture["bounded_below_floor"] = floors;
    std::cout << fixture.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1 && std::string(argv[1]) == "pilot") return run_pilot();

    const std::vector<std::pair<std::string, std::function<CriterionResult()>>> criteria = {
        {"character exactness (m <= 100, exact arithmetic)", character_exactness},
        {"branch criterion vs brute force (m <= 24)", branch_criterion},
        {"split identities (residue/cyclotomic/tau)", split_identities},
        {"cyclotomic splitting and ideal-count oracles", cyclotomic_oracles},
        {"tau fixture (exact coefficients, recurrence)", tau_fixture_criterion},
        {"Monte Carlo vs exhaustive enumeration", monte_carlo_vs_exhaustive},
        {"decay-branch behavior at the frozen ceiling", decay_branch_behavior},
        {"bounded-below branch above the frozen floor", bounded_below_branch_behavior},
        {"Sato-Tate sampler goodness of fit", sato_tate_sampler},
        {"Hoeffding domination of simulated tails", hoeffding_domination},
        {"simulate determinism (byte-identical CSV)", simulate_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2zu. %s (%.2fs) %s\n", result.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), seconds, result.detail.c_str());
        std::fflush(stdout);
        if (!result.pass) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
