#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "rmf/characters.hpp"
#include "rmf/rational.hpp"
#include "rmf/sieve.hpp"

namespace rmf {

// Random completely multiplicative +-1 signs on the primes of a sieve.
// Each prime's sign is an independent counter-based draw keyed by
// (seed, trial, p), so assignments are reproducible, order-independent, and
// stable under extending the sieve bound.
class SignAssignment {
public:
    SignAssignment(std::uint64_t seed, std::uint64_t trial, const PrimeSieve& sieve);

    static SignAssignment constant(const PrimeSieve& sieve, int value);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t trial() const noexcept { return trial_; }
    std::uint64_t bound() const noexcept { return bound_; }

    int sign(const PrimeSieve& sieve, std::uint64_t p) const;
    void set_sign(const PrimeSieve& sieve, std::uint64_t p, int value);

    // Signs aligned with sieve.primes().
    const std::vector<std::int8_t>& prime_signs() const noexcept { return signs_; }

    // Dense table of f(n) for 0 <= n <= x, extended completely
    // multiplicatively via the smallest-prime-factor table. f(0) := 0.
    std::vector<std::int8_t> value_table(const PrimeSieve& sieve, std::uint64_t x) const;

private:
    SignAssignment() = default;

    std::uint64_t seed_ = 0;
    std::uint64_t trial_ = 0;
    std::uint64_t bound_ = 0;
    std::vector<std::int8_t> signs_;
};

struct PartialSumResult {
    std::uint64_t x = 0;
    std::complex<double> value{0.0, 0.0};
    std::uint64_t terms = 0;
    double error_bound = 0.0;

    double real() const noexcept { return value.real(); }
};

// sum_{n <= x, n mod m in S} f(n)/n, ascending-n compensated accumulation.
PartialSumResult partial_sum(const SignAssignment& signs, const PrimeSieve& sieve,
                             const ResidueSet& set, std::uint64_t x);

// Same sum in exact rational arithmetic; x is capped at 64 to keep the common
// denominator inside 128 bits.
Rational partial_sum_exact(const SignAssignment& signs, const PrimeSieve& sieve,
                           const ResidueSet& set, std::uint64_t x);

constexpr std::uint64_t kExactModeMaxBound = 64;

// sum_{n <= x} chi_j(n) f(n)/n.
PartialSumResult character_twisted_sum(const SignAssignment& signs, const PrimeSieve& sieve,
                                       const CharacterTable& table, std::uint64_t j,
                                       std::uint64_t x);

// Exact variant; requires a principal or real character.
Rational character_twisted_sum_exact(const SignAssignment& signs, const PrimeSieve& sieve,
                                     const CharacterTable& table, std::uint64_t j,
                                     std::uint64_t x);

// gamma_a(x) = sum over primes p <= x, p = a (mod m) of f(p)/p.
double prime_class_sum(const SignAssignment& signs, const PrimeSieve& sieve,
                       std::uint64_t a, std::uint64_t m, std::uint64_t x);

// Deterministic sign steering on the class {p = a (mod m)}: +1 until the
// class sum first exceeds z, then -1 until it first drops below, alternating.
// Primes outside the class are untouched.
struct SteerTurningPoint {
    std::uint64_t prime = 0;
    std::size_t class_index = 0;  // position among the class primes
    double class_sum = 0.0;
    double residual = 0.0;        // |class_sum - z|, bounded by 1/prime
};

struct SteeredSigns {
    std::vector<std::uint64_t> class_primes;
    std::vector<std::int8_t> signs;  // aligned with class_primes
    std::vector<SteerTurningPoint> turning_points;
    double final_sum = 0.0;
    double target = 0.0;

    void apply(SignAssignment& assignment, const PrimeSieve& sieve) const;
};

SteeredSigns steer_signs(double z, std::uint64_t a, std::uint64_t m, const PrimeSieve& sieve);

// prod_{p <= x} (1 - chi_j(p) f(p)/p)^(-1), as exp of a compensated log sum.
std::complex<double> truncated_euler_product(const SignAssignment& signs, const PrimeSieve& sieve,
                                             const CharacterTable& table, std::uint64_t j,
                                             std::uint64_t x);

// Exact variant for principal/real characters.
Rational truncated_euler_product_exact(const SignAssignment& signs, const PrimeSieve& sieve,
                                       const CharacterTable& table, std::uint64_t j,
                                       std::uint64_t x);

// Truncated convergent of C_chi = sum_p [ln(1 - chi(p)f(p)/p)^(-1) - chi(p)f(p)/p],
// restricted to p <= x. Diagnostic only.
std::complex<double> euler_log_constant(const SignAssignment& signs, const PrimeSieve& sieve,
                                        const CharacterTable& table, std::uint64_t j,
                                        std::uint64_t x);

// sum over x-smooth n in (x, N] of chi_j(n) f(n)/n, by depth-first search
// over prime exponent vectors, plus a rigorous bound on the discarded n > N
// part (Rankin majorant at theta = 0.9, restricted to the unenumerated range).
struct SmoothTailSum {
    std::complex<double> value{0.0, 0.0};
    double residual = 0.0;
    std::uint64_t terms = 0;
};

SmoothTailSum smooth_tail_sum(const SignAssignment& signs, const PrimeSieve& sieve,
                              const CharacterTable& table, std::uint64_t j, std::uint64_t x,
                              std::uint64_t enumeration_cap);

constexpr double kTailMajorantTheta = 0.9;

}  // namespace rmf
