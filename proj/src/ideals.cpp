#include "rmf/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rmf/kahan.hpp"
#include "rmf/rng.hpp"

namespace rmf {

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        factors.emplace_back(p, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Multiplicative order of a mod n: start from phi(n) and strip prime factors
// while the power stays 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
    if (n == 1) return 1;
    std::uint64_t order = euler_phi(n);
    for (const auto& [q, _] : factorize(order)) {
        while (order % q == 0 && powmod(a, order / q, n) == 1) {
            order /= q;
        }
    }
    return order;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) return false;
    }
    return true;
}

}  // namespace

SplittingDatum splitting_type(std::uint64_t n, std::uint64_t p) {
    if (n == 0) throw std::invalid_argument("field index must be positive");
    if (!is_prime_u64(p)) throw std::invalid_argument("splitting type needs a prime");

    SplittingDatum datum;
    datum.p = p;
    std::uint64_t unramified = n;
    std::uint64_t p_power = 1;
    while (unramified % p == 0) {
        unramified /= p;
        ++datum.valuation;
        p_power *= p;
    }
    datum.ramification = euler_phi(p_power);
    datum.inertia = multiplicative_order(p % unramified, unramified);
    datum.ideal_count = euler_phi(n) / (datum.ramification * datum.inertia);

    datum.norm = 1;
    for (std::uint64_t i = 0; i < datum.inertia; ++i) {
        if (datum.norm > UINT64_MAX / p) {
            datum.norm = UINT64_MAX;
            datum.norm_overflow = true;
            break;
        }
        datum.norm *= p;
    }
    return datum;
}

IdealPrimeBasis prime_ideal_slots(std::uint64_t n, std::uint64_t x) {
    if (n == 0) throw std::invalid_argument("field index must be positive");
    if (x < 2) throw std::invalid_argument("norm bound must be at least 2");

    IdealPrimeBasis basis;
    basis.field_index = n;
    basis.norm_bound = x;

    // Scan rational primes p <= x; prime ideals with norm p^f > x are dropped.
    std::vector<bool> composite(x + 1, false);
    for (std::uint64_t p = 2; p <= x; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t q = p * p; q <= x; q += p) composite[q] = true;
        const SplittingDatum datum = splitting_type(n, p);
        if (datum.norm_overflow || datum.norm > x) continue;
        for (std::uint32_t ordinal = 1; ordinal <= datum.ideal_count; ++ordinal) {
            basis.slots.push_back({p, ordinal, datum.norm});
        }
    }
    std::sort(basis.slots.begin(), basis.slots.end(), [](const IdealSlot& a, const IdealSlot& b) {
        return std::tie(a.norm, a.prime, a.ordinal) < std::tie(b.norm, b.prime, b.ordinal);
    });
    return basis;
}

IdealSignAssignment::IdealSignAssignment(std::uint64_t seed, std::uint64_t trial,
                                         const IdealPrimeBasis& basis)
    : seed_(seed), trial_(trial) {
    signs_.resize(basis.slots.size());
    for (std::size_t i = 0; i < basis.slots.size(); ++i) {
        const auto& slot = basis.slots[i];
        signs_[i] = static_cast<std::int8_t>(
            rng::sign_draw(seed, trial, slot.prime, slot.ordinal - 1));
    }
}

IdealSignAssignment IdealSignAssignment::constant(const IdealPrimeBasis& basis, int value) {
    if (value != 1 && value != -1) throw std::invalid_argument("sign must be +-1");
    IdealSignAssignment assignment;
    assignment.signs_.assign(basis.slots.size(), static_cast<std::int8_t>(value));
    return assignment;
}

namespace {

// Enumerates every slot-exponent vector with norm product <= cap, exactly
// once, calling visit(norm, sign) at each node (unit ideal excluded).
template <typename Visitor>
void enumerate_ideals(const IdealPrimeBasis& basis, const std::vector<std::int8_t>* signs,
                      std::uint64_t cap, Visitor&& visit) {
    const auto& slots = basis.slots;
    auto dfs = [&](auto&& self, std::size_t start, std::uint64_t norm, int sign) -> void {
        for (std::size_t i = start; i < slots.size(); ++i) {
            const std::uint64_t q = slots[i].norm;
            if (q > cap / norm) break;  // slots sorted by norm
            std::uint64_t value = norm;
            int s = sign;
            while (value <= cap / q) {
                value *= q;
                if (signs) s *= (*signs)[i];
                visit(value, s);
                self(self, i + 1, value, s);
            }
        }
    };
    dfs(dfs, 0, 1, 1);
}

}  // namespace

PartialSumResult ideal_partial_sum(const IdealSignAssignment& signs, const IdealPrimeBasis& basis,
                                   std::uint64_t x) {
    if (x > basis.norm_bound) throw std::invalid_argument("bound exceeds the slot basis");

    // Bucket contributions by norm, then accumulate in ascending norm order;
    // this matches the rational-integer path bit for bit when n = 1.
    std::vector<double> buckets(x + 1, 0.0);
    buckets[1] = 1.0;  // unit ideal
    std::uint64_t terms = 1;
    enumerate_ideals(basis, &signs.slot_signs(), x, [&](std::uint64_t norm, int sign) {
        buckets[norm] += static_cast<double>(sign) / static_cast<double>(norm);
        ++terms;
    });

    KahanAccumulator acc;
    for (std::uint64_t k = 1; k <= x; ++k) acc.add(buckets[k]);

    PartialSumResult result;
    result.x = x;
    result.value = {acc.value(), 0.0};
    result.terms = terms;
    result.error_bound = acc.error_bound();
    return result;
}

Rational ideal_partial_sum_exact(const IdealSignAssignment& signs, const IdealPrimeBasis& basis,
                                 std::uint64_t x) {
    if (x > kExactModeMaxBound) throw std::invalid_argument("exact mode is capped at x = 64");
    if (x > basis.norm_bound) throw std::invalid_argument("bound exceeds the slot basis");
    Rational total(1);
    enumerate_ideals(basis, &signs.slot_signs(), x, [&](std::uint64_t norm, int sign) {
        total += Rational(sign, static_cast<long long>(norm));
    });
    return total;
}

std::uint64_t count_ideals(std::uint64_t n, std::uint64_t x) {
    if (n == 0) throw std::invalid_argument("field index must be positive");
    if (x == 0) throw std::invalid_argument("norm bound must be positive");
    if (x == 1) return 1;
    const IdealPrimeBasis basis = prime_ideal_slots(n, x);
    std::uint64_t count = 1;  // unit ideal
    enumerate_ideals(basis, nullptr, x, [&](std::uint64_t, int) { ++count; });
    return count;
}

std::vector<std::uint64_t> ideal_norm_histogram(const IdealPrimeBasis& basis, std::uint64_t x) {
    if (x > basis.norm_bound) throw std::invalid_argument("bound exceeds the slot basis");
    std::vector<std::uint64_t> counts(x + 1, 0);
    if (x >= 1) counts[1] = 1;
    enumerate_ideals(basis, nullptr, x, [&](std::uint64_t norm, int) { ++counts[norm]; });
    return counts;
}

double ideal_euler_product(const IdealSignAssignment& signs, const IdealPrimeBasis& basis) {
    KahanAccumulator log_acc;
    const auto& slot_signs = signs.slot_signs();
    for (std::size_t i = 0; i < basis.slots.size(); ++i) {
        const double t = static_cast<double>(slot_signs[i]) /
                         static_cast<double>(basis.slots[i].norm);
        log_acc.add(-std::log1p(-t));
    }
    return std::exp(log_acc.value());
}

Rational ideal_euler_product_exact(const IdealSignAssignment& signs,
                                   const IdealPrimeBasis& basis) {
    Rational product(1);
    const auto& slot_signs = signs.slot_signs();
    for (std::size_t i = 0; i < basis.slots.size(); ++i) {
        const auto norm = static_cast<long long>(basis.slots[i].norm);
        product *= Rational(norm, norm - slot_signs[i]);
    }
    return product;
}

SmoothTailSum ideal_tail_sum(const IdealSignAssignment& signs, const IdealPrimeBasis& basis,
                             std::uint64_t x, std::uint64_t enumeration_cap) {
    if (x > basis.norm_bound) throw std::invalid_argument("bound exceeds the slot basis");
    if (enumeration_cap < x) throw std::invalid_argument("enumeration cap below the norm bound");

    const double theta = kTailMajorantTheta;
    KahanAccumulator acc;
    std::uint64_t terms = 0;
    long double enumerated_theta_mass = 1.0L;  // unit ideal
    enumerate_ideals(basis, &signs.slot_signs(), enumeration_cap,
                     [&](std::uint64_t norm, int sign) {
                         enumerated_theta_mass +=
                             std::pow(static_cast<long double>(norm),
                                      -static_cast<long double>(theta));
                         if (norm > x) {
                             acc.add(static_cast<double>(sign) / static_cast<double>(norm));
                             ++terms;
                         }
                     });

    long double full_theta_mass = 1.0L;
    for (const auto& slot : basis.slots) {
        full_theta_mass /= 1.0L - std::pow(static_cast<long double>(slot.norm),
                                           -static_cast<long double>(theta));
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

}  // namespace rmf
