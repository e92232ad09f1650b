#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmf/int128.hpp"
#include "rmf/multiplicative.hpp"
#include "rmf/sieve.hpp"

namespace rmf {

// Sato-Tate distribution function F(t) = P(theta < t) = (t - sin t cos t)/pi,
// the normalized measure (2/pi) sin^2 theta dtheta on (0, pi).
double sato_tate_cdf(double theta);

// Inverse of the distribution function: bracketed Newton with bisection
// fallback, absolute tolerance 1e-12. u must lie strictly inside (0,1).
double sample_angle(double u);

// Chebyshev kernel U_k(cos theta) = sin((k+1) theta)/sin theta via the
// three-term recurrence; equals the Hecke eigenvalue rho(p^k) normalized by
// p^(mk/2), for any weight m. |U_k| <= k+1.
double rho_normalized(unsigned k, double theta);

// Independent Sato-Tate angles per prime, keyed (seed, trial, p).
class AngleAssignment {
public:
    AngleAssignment(std::uint64_t seed, std::uint64_t trial, const PrimeSieve& sieve);

    // Same angle at every prime; used by the exact identity checks.
    static AngleAssignment constant(const PrimeSieve& sieve, double theta);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t trial() const noexcept { return trial_; }

    double angle(const PrimeSieve& sieve, std::uint64_t p) const;
    const std::vector<double>& angles() const noexcept { return angles_; }

private:
    AngleAssignment() = default;

    std::uint64_t seed_ = 0;
    std::uint64_t trial_ = 0;
    std::vector<double> angles_;  // aligned with sieve.primes()
};

// Hecke weight parameter; a label only after normalization (m = 11 is the
// Ramanujan tau case).
struct HeckeWeight {
    unsigned m = 11;
};

// sum_{n <= x} rho(n)/n^((m+2)/2) = sum_{n <= x} (prod_{p^k || n} U_k(cos theta_p))/n,
// computed by one multiplicative sieve pass; independent of the weight.
PartialSumResult tau_partial_sum(const AngleAssignment& angles, const PrimeSieve& sieve,
                                 HeckeWeight weight, std::uint64_t x);

// prod_{p <= x} sum_{k >= 0} U_k(cos theta_p)/p^k
//   = prod_{p <= x} (1 - 2 cos(theta_p)/p + 1/p^2)^(-1).
double tau_euler_product(const AngleAssignment& angles, const PrimeSieve& sieve, std::uint64_t x);

// sum over x-smooth n > x (up to the enumeration cap) of
// (prod U_{k_p}(cos theta_p))/n, with a Rankin residual bound using the
// divisor-function majorant |prod U| <= d(n).
SmoothTailSum tau_tail_sum(const AngleAssignment& angles, const PrimeSieve& sieve, std::uint64_t x,
                           std::uint64_t enumeration_cap);

// Exact integer coefficients tau(1..length) of q prod_{k>=1} (1-q^k)^24,
// by 24 multiplications with the pentagonal-number expansion of the Euler
// product. 128-bit arithmetic with overflow checks covers length <= 10^4.
struct TauFixture {
    std::vector<int128> coefficients;  // coefficients[n-1] = tau(n)

    int128 tau(std::uint64_t n) const { return coefficients.at(n - 1); }
    std::uint64_t length() const noexcept { return coefficients.size(); }

    // One decimal coefficient per line, for golden files.
    std::string to_text() const;
};

TauFixture tau_series(std::uint64_t length);

}  // namespace rmf
