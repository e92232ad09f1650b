#include "rmf/tau.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rmf/kahan.hpp"
#include "rmf/rng.hpp"

namespace rmf {

double sato_tate_cdf(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw std::invalid_argument("angle outside [0, pi]");
    }
    return (theta - std::sin(theta) * std::cos(theta)) / std::numbers::pi;
}

double sample_angle(double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("u must lie in (0,1)");

    double lo = 0.0;
    double hi = std::numbers::pi;
    double theta = std::numbers::pi * u;
    for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
        const double f = sato_tate_cdf(theta) - u;
        if (std::fabs(f) < 1e-14) return theta;
        if (f > 0.0) {
            hi = theta;
        } else {
            lo = theta;
        }
        const double density = 2.0 * std::sin(theta) * std::sin(theta) / std::numbers::pi;
        double next = theta - f / density;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisect on a wild step
        theta = next;
    }
    return theta;
}

double rho_normalized(unsigned k, double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw std::invalid_argument("angle outside (0, pi)");
    }
    const double c2 = 2.0 * std::cos(theta);
    double prev = 1.0;  // U_0
    if (k == 0) return prev;
    double curr = c2;   // U_1
    for (unsigned i = 1; i < k; ++i) {
        const double next = c2 * curr - prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

AngleAssignment::AngleAssignment(std::uint64_t seed, std::uint64_t trial, const PrimeSieve& sieve)
    : seed_(seed), trial_(trial) {
    const auto& primes = sieve.primes();
    angles_.resize(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        angles_[i] = sample_angle(rng::uniform01(seed, trial, primes[i]));
    }
}

AngleAssignment AngleAssignment::constant(const PrimeSieve& sieve, double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw std::invalid_argument("angle outside (0, pi)");
    }
    AngleAssignment assignment;
    assignment.angles_.assign(sieve.primes().size(), theta);
    return assignment;
}

double AngleAssignment::angle(const PrimeSieve& sieve, std::uint64_t p) const {
    return angles_[sieve.prime_index(p)];
}

PartialSumResult tau_partial_sum(const AngleAssignment& angles, const PrimeSieve& sieve,
                                 HeckeWeight /*weight: label only after normalization*/,
                                 std::uint64_t x) {
    if (x > sieve.bound()) throw std::invalid_argument("bound exceeds the sieve");
    if (angles.angles().size() < sieve.primes().size()) {
        throw std::invalid_argument("angle table does not cover the sieve");
    }

    // values[n] = prod_{p^k || n} U_k(cos theta_p), built multiplicatively.
    // At a prime the entry is U_1 = 2 cos theta_p, which is exactly the
    // recurrence coefficient needed again at composites.
    std::vector<double> values(x + 1, 0.0);
    if (x >= 1) values[1] = 1.0;
    std::size_t prime_cursor = 0;
    for (std::uint64_t n = 2; n <= x; ++n) {
        const std::uint64_t p = sieve.smallest_prime_factor(n);
        if (n == p) {
            values[n] = 2.0 * std::cos(angles.angles()[prime_cursor++]);
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

    KahanAccumulator acc;
    for (std::uint64_t n = 1; n <= x; ++n) {
        acc.add(values[n] / static_cast<double>(n));
    }
    PartialSumResult result;
    result.x = x;
    result.value = {acc.value(), 0.0};
    result.terms = x;
    result.error_bound = acc.error_bound();
    return result;
}

double tau_euler_product(const AngleAssignment& angles, const PrimeSieve& sieve, std::uint64_t x) {
    if (x > sieve.bound()) throw std::invalid_argument("bound exceeds the sieve");
    KahanAccumulator log_acc;
    const auto& primes = sieve.primes();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (p > x) break;
        const double ip = 1.0 / static_cast<double>(p);
        const double local = 1.0 - 2.0 * std::cos(angles.angles()[i]) * ip + ip * ip;
        log_acc.add(-std::log(local));
    }
    return std::exp(log_acc.value());
}

SmoothTailSum tau_tail_sum(const AngleAssignment& angles, const PrimeSieve& sieve, std::uint64_t x,
                           std::uint64_t enumeration_cap) {
    if (x > sieve.bound()) throw std::invalid_argument("bound exceeds the sieve");
    if (enumeration_cap < x) throw std::invalid_argument("enumeration cap below the smoothness bound");

    struct SmoothPrime {
        std::uint64_t p;
        double two_cos;
        double kernel_cap;  // sup_k |U_k(cos theta)| = 1/sin theta
    };
    std::vector<SmoothPrime> basis;
    const auto& primes = sieve.primes();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] > x) break;
        const double angle = angles.angles()[i];
        basis.push_back({primes[i], 2.0 * std::cos(angle), 1.0 / std::sin(angle)});
    }

    const double theta = kTailMajorantTheta;
    KahanAccumulator acc;
    std::uint64_t terms = 0;
    long double enumerated_theta_mass = 1.0L;

    // Node bounds use |U_k(cos t)| <= min(k+1, 1/sin t), multiplicative over
    // the prime support; far tighter than the plain divisor-function bound.
    auto dfs = [&](auto&& self, std::size_t start, std::uint64_t n, double weight,
                   double bound) -> void {
        for (std::size_t i = start; i < basis.size(); ++i) {
            const auto& bp = basis[i];
            if (bp.p > enumeration_cap / n) break;
            std::uint64_t value = n;
            double prev = 1.0, curr = bp.two_cos;
            unsigned k = 1;
            while (value <= enumeration_cap / bp.p) {
                value *= bp.p;
                const double node_weight = weight * curr;
                const double node_bound =
                    bound * std::min(static_cast<double>(k + 1), bp.kernel_cap);
                enumerated_theta_mass +=
                    static_cast<long double>(node_bound) *
                    std::pow(static_cast<long double>(value), -static_cast<long double>(theta));
                if (value > x) {
                    acc.add(node_weight / static_cast<double>(value));
                    ++terms;
                }
                self(self, i + 1, value, node_weight, node_bound);
                const double next = bp.two_cos * curr - prev;
                prev = curr;
                curr = next;
                ++k;
            }
        }
    };
    dfs(dfs, 0, 1, 1.0, 1.0);

    // sum over all smooth n of (prod_p min(k_p+1, cap_p)) n^-theta factors as
    // prod_p [ sum_k min(k+1, cap) t^k ] with t = p^-theta; the head is the
    // exact arithmetico-geometric sum and the cap takes over afterwards.
    long double full_theta_mass = 1.0L;
    for (const auto& bp : basis) {
        const long double t = std::pow(static_cast<long double>(bp.p),
                                       -static_cast<long double>(theta));
        const long double cap = bp.kernel_cap;
        const long double K = std::floor(cap - 1.0L);  // largest k with k+1 <= cap
        const long double tK1 = std::pow(t, K + 1.0L);
        const long double head =
            (1.0L - (K + 2.0L) * tK1 + (K + 1.0L) * tK1 * t) / ((1.0L - t) * (1.0L - t));
        full_theta_mass *= head + cap * tK1 / (1.0L - t);
    }
    long double remaining = full_theta_mass - enumerated_theta_mass;
    remaining = std::max(remaining, 0.0L) + 1e-12L * (1.0L + full_theta_mass);
    const long double scale =
        std::pow(static_cast<long double>(enumeration_cap), static_cast<long double>(theta) - 1.0L);

    SmoothTailSum result;
    result.value = {acc.value(), 0.0};
    result.residual = static_cast<double>(scale * remaining) + acc.error_bound();
    result.terms = terms;
    return result;
}

TauFixture tau_series(std::uint64_t length) {
    if (length < 1) throw std::invalid_argument("series length must be positive");

    // Euler's pentagonal number theorem gives the sparse expansion
    // prod_k (1 - q^k) = sum_j (-1)^j q^(j(3j-1)/2); raise it to the 24th
    // power by repeated sparse multiplication, truncated at degree length-1.
    const std::uint64_t degree = length - 1;  // power series offset by the leading q
    struct PentagonalTerm {
        std::uint64_t exponent;
        long long sign;
    };
    std::vector<PentagonalTerm> pentagonal{{0, 1}};
    for (std::uint64_t j = 1;; ++j) {
        const std::uint64_t e1 = j * (3 * j - 1) / 2;
        const std::uint64_t e2 = j * (3 * j + 1) / 2;
        if (e1 > degree && e2 > degree) break;
        const long long sign = (j % 2 == 0) ? 1 : -1;
        if (e1 <= degree) pentagonal.push_back({e1, sign});
        if (e2 <= degree) pentagonal.push_back({e2, sign});
    }

    std::vector<int128> series(degree + 1, 0);
    series[0] = 1;
    std::vector<int128> next(degree + 1, 0);
    for (int power = 0; power < 24; ++power) {
        std::fill(next.begin(), next.end(), int128{0});
        for (std::uint64_t d = 0; d <= degree; ++d) {
            if (series[d] == 0) continue;
            for (const auto& term : pentagonal) {
                if (term.exponent > degree - d) break;
                next[d + term.exponent] =
                    checked_add(next[d + term.exponent], checked_mul(series[d], term.sign));
            }
        }
        series.swap(next);
    }

    TauFixture fixture;
    fixture.coefficients.assign(series.begin(), series.end());
    return fixture;
}

std::string TauFixture::to_text() const {
    std::string out;
    for (const int128 c : coefficients) {
        out += rmf::to_string(c);
        out.push_back('\n');
    }
    return out;
}

}  // namespace rmf
