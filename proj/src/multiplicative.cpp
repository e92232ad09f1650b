#include "rmf/multiplicative.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rmf/kahan.hpp"
#include "rmf/rng.hpp"

namespace rmf {

namespace {

void check_bound(const PrimeSieve& sieve, std::uint64_t x) {
    if (x > sieve.bound()) throw std::invalid_argument("bound exceeds the sieve");
}

// zeta_L^e lookup for twisted sums.
std::vector<std::complex<double>> root_table(unsigned order) {
    std::vector<std::complex<double>> roots(order);
    for (unsigned e = 0; e < order; ++e) {
        const double angle = 2.0 * std::numbers::pi * e / order;
        roots[e] = {std::cos(angle), std::sin(angle)};
    }
    return roots;
}

}  // namespace

SignAssignment::SignAssignment(std::uint64_t seed, std::uint64_t trial, const PrimeSieve& sieve)
    : seed_(seed), trial_(trial), bound_(sieve.bound()) {
    const auto& primes = sieve.primes();
    signs_.resize(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        signs_[i] = static_cast<std::int8_t>(rng::sign_draw(seed, trial, primes[i]));
    }
}

SignAssignment SignAssignment::constant(const PrimeSieve& sieve, int value) {
    if (value != 1 && value != -1) throw std::invalid_argument("sign must be +-1");
    SignAssignment assignment;
    assignment.bound_ = sieve.bound();
    assignment.signs_.assign(sieve.primes().size(), static_cast<std::int8_t>(value));
    return assignment;
}

int SignAssignment::sign(const PrimeSieve& sieve, std::uint64_t p) const {
    return signs_[sieve.prime_index(p)];
}

void SignAssignment::set_sign(const PrimeSieve& sieve, std::uint64_t p, int value) {
    if (value != 1 && value != -1) throw std::invalid_argument("sign must be +-1");
    signs_[sieve.prime_index(p)] = static_cast<std::int8_t>(value);
}

std::vector<std::int8_t> SignAssignment::value_table(const PrimeSieve& sieve,
                                                     std::uint64_t x) const {
    check_bound(sieve, x);
    std::vector<std::int8_t> values(x + 1, 0);
    if (x >= 1) values[1] = 1;
    std::size_t prime_cursor = 0;
    for (std::uint64_t n = 2; n <= x; ++n) {
        const std::uint32_t p = sieve.smallest_prime_factor(n);
        if (n == p) {
            values[n] = signs_[prime_cursor++];
        } else {
            values[n] = static_cast<std::int8_t>(values[p] * values[n / p]);
        }
    }
    return values;
}

PartialSumResult partial_sum(const SignAssignment& signs, const PrimeSieve& sieve,
                             const ResidueSet& set, std::uint64_t x) {
    check_bound(sieve, x);
    const auto values = signs.value_table(sieve, x);
    std::vector<std::uint8_t> member(set.modulus, 0);
    for (std::uint64_t a : set.members) member[a] = 1;

    KahanAccumulator acc;
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (!member[n % set.modulus]) continue;
        acc.add(static_cast<double>(values[n]) / static_cast<double>(n));
    }
    PartialSumResult result;
    result.x = x;
    result.value = {acc.value(), 0.0};
    result.terms = acc.terms;
    result.error_bound = acc.error_bound();
    return result;
}

Rational partial_sum_exact(const SignAssignment& signs, const PrimeSieve& sieve,
                           const ResidueSet& set, std::uint64_t x) {
    if (x > kExactModeMaxBound) throw std::invalid_argument("exact mode is capped at x = 64");
    check_bound(sieve, x);
    const auto values = signs.value_table(sieve, x);
    Rational total(0);
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (!set.contains(n)) continue;
        total += Rational(values[n], static_cast<long long>(n));
    }
    return total;
}

PartialSumResult character_twisted_sum(const SignAssignment& signs, const PrimeSieve& sieve,
                                       const CharacterTable& table, std::uint64_t j,
                                       std::uint64_t x) {
    check_bound(sieve, x);
    const auto values = signs.value_table(sieve, x);
    const auto roots = root_table(table.zeta_order());
    const std::uint64_t m = table.modulus();

    // chi_j(n) depends only on n mod m; precompute one row.
    std::vector<std::complex<double>> chi_row(m);
    for (std::uint64_t r = 0; r < m; ++r) {
        const auto e = table.value_exponent(j, r);
        chi_row[r] = e ? roots[*e] : std::complex<double>{0.0, 0.0};
    }

    ComplexKahanAccumulator acc;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const auto chi = chi_row[n % m];
        if (chi.real() == 0.0 && chi.imag() == 0.0) continue;
        acc.add(chi * (static_cast<double>(values[n]) / static_cast<double>(n)));
    }
    PartialSumResult result;
    result.x = x;
    result.value = acc.value();
    result.terms = acc.terms();
    result.error_bound = acc.error_bound();
    return result;
}

Rational character_twisted_sum_exact(const SignAssignment& signs, const PrimeSieve& sieve,
                                     const CharacterTable& table, std::uint64_t j,
                                     std::uint64_t x) {
    if (table.kind(j) == CharacterKind::Complex) {
        throw std::invalid_argument("exact twisted sums need a real character");
    }
    if (x > kExactModeMaxBound) throw std::invalid_argument("exact mode is capped at x = 64");
    check_bound(sieve, x);
    const auto values = signs.value_table(sieve, x);
    Rational total(0);
    for (std::uint64_t n = 1; n <= x; ++n) {
        const int chi = table.real_value(j, n);
        if (chi == 0) continue;
        total += Rational(chi * values[n], static_cast<long long>(n));
    }
    return total;
}

double prime_class_sum(const SignAssignment& signs, const PrimeSieve& sieve, std::uint64_t a,
                       std::uint64_t m, std::uint64_t x) {
    if (m == 0 || std::gcd(a % m, m) != 1) {
        throw std::invalid_argument("class residue must be coprime to the modulus");
    }
    check_bound(sieve, x);
    KahanAccumulator acc;
    const auto& primes = sieve.primes();
    const auto& prime_signs = signs.prime_signs();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (p > x) break;
        if (p % m != a % m) continue;
        acc.add(static_cast<double>(prime_signs[i]) / static_cast<double>(p));
    }
    return acc.value();
}

SteeredSigns steer_signs(double z, std::uint64_t a, std::uint64_t m, const PrimeSieve& sieve) {
    if (m == 0 || std::gcd(a % m, m) != 1) {
        throw std::invalid_argument("class residue must be coprime to the modulus");
    }

    SteeredSigns result;
    result.target = z;
    for (std::uint64_t p : sieve.primes()) {
        if (p % m == a % m) result.class_primes.push_back(p);
    }

    // Feasibility: the harmonic mass of the class must be able to reach z.
    double reach = 0.0;
    for (std::uint64_t p : result.class_primes) reach += 1.0 / static_cast<double>(p);
    if (reach <= std::fabs(z)) {
        throw std::runtime_error("target unreachable with the available prime reservoir");
    }

    KahanAccumulator acc;
    // Chase the target from the starting side: upward for z >= 0, downward
    // otherwise, so the first crossing overshoots by at most 1/p.
    int phase = z >= 0.0 ? 1 : -1;
    result.signs.reserve(result.class_primes.size());
    for (std::size_t i = 0; i < result.class_primes.size(); ++i) {
        const std::uint64_t p = result.class_primes[i];
        result.signs.push_back(static_cast<std::int8_t>(phase));
        acc.add(static_cast<double>(phase) / static_cast<double>(p));
        const double sum = acc.value();
        const bool crossed = phase == 1 ? sum > z : sum < z;
        if (crossed) {
            result.turning_points.push_back(
                {p, i, sum, std::fabs(sum - z)});
            phase = -phase;
        }
    }
    result.final_sum = acc.value();
    return result;
}

void SteeredSigns::apply(SignAssignment& assignment, const PrimeSieve& sieve) const {
    for (std::size_t i = 0; i < class_primes.size(); ++i) {
        assignment.set_sign(sieve, class_primes[i], signs[i]);
    }
}

std::complex<double> truncated_euler_product(const SignAssignment& signs, const PrimeSieve& sieve,
                                             const CharacterTable& table, std::uint64_t j,
                                             std::uint64_t x) {
    check_bound(sieve, x);
    const auto roots = root_table(table.zeta_order());
    const auto& primes = sieve.primes();
    const auto& prime_signs = signs.prime_signs();

    // log of the product; |chi(p) f(p)/p| <= 1/2 keeps every factor regular.
    ComplexKahanAccumulator log_acc;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (p > x) break;
        const auto e = table.value_exponent(j, p);
        if (!e) continue;
        const std::complex<double> factor =
            1.0 - roots[*e] * (static_cast<double>(prime_signs[i]) / static_cast<double>(p));
        log_acc.add(-std::log(factor));
    }
    return std::exp(log_acc.value());
}

Rational truncated_euler_product_exact(const SignAssignment& signs, const PrimeSieve& sieve,
                                       const CharacterTable& table, std::uint64_t j,
                                       std::uint64_t x) {
    if (table.kind(j) == CharacterKind::Complex) {
        throw std::invalid_argument("exact products need a real character");
    }
    if (x > kExactModeMaxBound) throw std::invalid_argument("exact mode is capped at x = 64");
    check_bound(sieve, x);
    const auto& primes = sieve.primes();
    const auto& prime_signs = signs.prime_signs();
    Rational product(1);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (p > x) break;
        const int chi = table.real_value(j, p);
        if (chi == 0) continue;
        // (1 - chi f / p)^(-1) = p / (p - chi f)
        product *= Rational(static_cast<long long>(p),
                            static_cast<long long>(p) - chi * prime_signs[i]);
    }
    return product;
}

std::complex<double> euler_log_constant(const SignAssignment& signs, const PrimeSieve& sieve,
                                        const CharacterTable& table, std::uint64_t j,
                                        std::uint64_t x) {
    check_bound(sieve, x);
    const auto roots = root_table(table.zeta_order());
    const auto& primes = sieve.primes();
    const auto& prime_signs = signs.prime_signs();
    ComplexKahanAccumulator acc;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (p > x) break;
        const auto e = table.value_exponent(j, p);
        if (!e) continue;
        const std::complex<double> t =
            roots[*e] * (static_cast<double>(prime_signs[i]) / static_cast<double>(p));
        acc.add(-std::log(1.0 - t) - t);
    }
    return acc.value();
}

SmoothTailSum smooth_tail_sum(const SignAssignment& signs, const PrimeSieve& sieve,
                              const CharacterTable& table, std::uint64_t j, std::uint64_t x,
                              std::uint64_t enumeration_cap) {
    check_bound(sieve, x);
    if (enumeration_cap < x) throw std::invalid_argument("enumeration cap below the smoothness bound");

    const auto roots = root_table(table.zeta_order());
    const unsigned L = table.zeta_order();

    // Only primes with chi(p) != 0 contribute; p | m kills every multiple.
    struct SmoothPrime {
        std::uint64_t p;
        int sign;
        unsigned chi_exponent;
    };
    std::vector<SmoothPrime> basis;
    const auto& primes = sieve.primes();
    const auto& prime_signs = signs.prime_signs();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (p > x) break;
        const auto e = table.value_exponent(j, p);
        if (!e) continue;
        basis.push_back({p, prime_signs[i], *e});
    }

    ComplexKahanAccumulator acc;
    std::uint64_t terms = 0;
    long double enumerated_theta_mass = 0.0L;  // sum of n^(-theta) over all enumerated n

    // Depth-first over exponent vectors; n tracked exactly in 64 bits.
    const double theta = kTailMajorantTheta;
    auto visit = [&](std::uint64_t n, int sign, unsigned chi_exp) {
        enumerated_theta_mass += std::pow(static_cast<long double>(n), -static_cast<long double>(theta));
        if (n > x) {
            acc.add(roots[chi_exp] * (static_cast<double>(sign) / static_cast<double>(n)));
            ++terms;
        }
    };
    auto dfs = [&](auto&& self, std::size_t start, std::uint64_t n, int sign,
                   unsigned chi_exp) -> void {
        for (std::size_t i = start; i < basis.size(); ++i) {
            const auto& bp = basis[i];
            if (bp.p > enumeration_cap / n) break;  // basis sorted by p
            std::uint64_t value = n;
            int s = sign;
            unsigned e = chi_exp;
            while (value <= enumeration_cap / bp.p) {
                value *= bp.p;
                s *= bp.sign;
                e = (e + bp.chi_exponent) % L;
                visit(value, s, e);
                self(self, i + 1, value, s, e);
            }
        }
    };
    visit(1, 1, 0);
    dfs(dfs, 0, 1, 1, 0);

    // Rankin bound on the unenumerated range: sum_{n > N, smooth} 1/n
    // <= N^(theta-1) * (prod_p (1 - p^-theta)^(-1) - sum_{n <= N} n^-theta).
    long double full_theta_mass = 1.0L;
    for (const auto& bp : basis) {
        full_theta_mass /= 1.0L - std::pow(static_cast<long double>(bp.p),
                                           -static_cast<long double>(theta));
    }
    long double remaining = full_theta_mass - enumerated_theta_mass;
    // guard the subtraction against its own rounding
    remaining = std::max(remaining, 0.0L) + 1e-12L * (1.0L + full_theta_mass);
    const long double scale =
        std::pow(static_cast<long double>(enumeration_cap), static_cast<long double>(theta) - 1.0L);

    SmoothTailSum result;
    result.value = acc.value();
    result.residual = static_cast<double>(scale * remaining) + acc.error_bound();
    result.terms = terms;
    return result;
}

}  // namespace rmf
