#include "rmf/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace rmf {

namespace {

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

// Smallest primitive root mod an odd prime power p^e.
std::uint64_t primitive_root(std::uint64_t p, unsigned e) {
    const auto phi_p = p - 1;
    const auto prime_factors = factorize(phi_p);
    std::uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (const auto& [q, _] : prime_factors) {
            if (powmod(g, phi_p / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) break;
    }
    if (e == 1) return g;
    // g generates mod p^e iff g^(p-1) != 1 mod p^2; otherwise g + p does.
    const std::uint64_t p2 = p * p;
    if (powmod(g, phi_p, p2) == 1) g += p;
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p;
    return g % pe;
}

std::uint64_t crt_lift(std::uint64_t local, std::uint64_t component, std::uint64_t m) {
    // Residue congruent to `local` mod `component` and to 1 mod m/component.
    const std::uint64_t rest = m / component;
    if (rest == 1) return local % m;
    std::uint64_t lifted = 0;
    for (std::uint64_t candidate = local % component; candidate < m; candidate += component) {
        if (candidate % rest == 1) {
            lifted = candidate;
            break;
        }
    }
    return lifted;
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("phi(0) is undefined");
    std::uint64_t phi = 1;
    for (const auto& [p, e] : factorize(n)) {
        std::uint64_t pe = 1;
        for (unsigned i = 0; i + 1 < e; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

bool UnitGroupStructure::coprime(std::uint64_t a) const {
    return std::gcd(a % modulus, modulus) == 1;
}

const std::vector<std::uint32_t>& UnitGroupStructure::discrete_log(std::uint64_t a) const {
    const std::uint64_t r = a % modulus;
    if (!coprime(r)) throw std::invalid_argument("residue not coprime to the modulus");
    return dlog_table[r];
}

UnitGroupStructure build_unit_group(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("modulus must be positive");
    UnitGroupStructure group;
    group.modulus = m;
    group.group_order = euler_phi(m);

    for (const auto& [p, e] : factorize(m)) {
        std::uint64_t pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;  // trivial component
            if (e == 2) {
                group.generators.push_back(crt_lift(3, pe, m));
                group.orders.push_back(2);
            } else {
                // (Z/2^e)^x = <-1> x <5>
                group.generators.push_back(crt_lift(pe - 1, pe, m));
                group.orders.push_back(2);
                group.generators.push_back(crt_lift(5, pe, m));
                group.orders.push_back(pe / 4);
            }
        } else {
            group.generators.push_back(crt_lift(primitive_root(p, e), pe, m));
            group.orders.push_back(euler_phi(pe));
        }
    }

    group.exponent = 1;
    for (std::uint64_t d : group.orders) group.exponent = std::lcm(group.exponent, d);

    // Enumerate every product of generator powers once; this both fills the
    // discrete-log table and certifies the presentation (phi(m) distinct
    // products, no collisions).
    group.dlog_table.assign(m, {});
    const std::size_t r = group.generators.size();
    std::vector<std::uint32_t> exponents(r, 0);
    std::uint64_t value = 1 % m;
    std::uint64_t count = 0;
    std::vector<bool> seen(m, false);
    while (true) {
        if (seen[value]) throw std::logic_error("unit group presentation collision");
        seen[value] = true;
        group.dlog_table[value] = exponents;
        ++count;
        // odometer increment, multiplying the running value as we go
        std::size_t i = 0;
        for (; i < r; ++i) {
            value = mulmod(value, group.generators[i], m);
            if (++exponents[i] < group.orders[i]) break;
            exponents[i] = 0;  // g^order = 1, so the running value already wrapped
        }
        if (i == r) break;
    }
    if (count != group.group_order) throw std::logic_error("unit group enumeration incomplete");
    return group;
}

const char* to_string(CharacterKind kind) {
    switch (kind) {
        case CharacterKind::Principal: return "principal";
        case CharacterKind::Real: return "real";
        case CharacterKind::Complex: return "complex";
    }
    return "?";
}

const char* to_string(BranchVerdict verdict) {
    return verdict == BranchVerdict::Decay ? "Decay" : "BoundedBelow";
}

CharacterTable::CharacterTable(std::uint64_t m)
    : group_(build_unit_group(m)),
      field_(static_cast<unsigned>(group_.exponent)) {
    const std::uint64_t phi = group_.group_order;
    const std::size_t r = group_.generators.size();
    const std::uint64_t L = group_.exponent;

    char_exponents_.resize(phi);
    kinds_.resize(phi);
    conjugates_.resize(phi);

    for (std::uint64_t j = 0; j < phi; ++j) {
        std::vector<std::uint32_t> digits(r, 0);
        std::uint64_t rem = j;
        for (std::size_t i = 0; i < r; ++i) {
            digits[i] = static_cast<std::uint32_t>(rem % group_.orders[i]);
            rem /= group_.orders[i];
        }
        char_exponents_[j] = digits;

        bool principal = true;
        bool real = true;
        std::uint64_t conj_index = 0;
        std::uint64_t place = 1;
        for (std::size_t i = 0; i < r; ++i) {
            const std::uint64_t d = group_.orders[i];
            const std::uint64_t root_exp = (L / d) * digits[i] % L;
            if (digits[i] != 0) principal = false;
            if ((2 * root_exp) % L != 0) real = false;
            const std::uint64_t conj_digit = digits[i] == 0 ? 0 : d - digits[i];
            conj_index += conj_digit * place;
            place *= d;
        }
        kinds_[j] = principal ? CharacterKind::Principal
                              : (real ? CharacterKind::Real : CharacterKind::Complex);
        conjugates_[j] = conj_index;
    }
}

CharacterKind CharacterTable::kind(std::uint64_t j) const {
    if (j >= size()) throw std::invalid_argument("character index out of range");
    return kinds_[j];
}

std::uint64_t CharacterTable::conjugate_index(std::uint64_t j) const {
    if (j >= size()) throw std::invalid_argument("character index out of range");
    return conjugates_[j];
}

const std::vector<std::uint32_t>& CharacterTable::character_exponents(std::uint64_t j) const {
    if (j >= size()) throw std::invalid_argument("character index out of range");
    return char_exponents_[j];
}

std::optional<unsigned> CharacterTable::value_exponent(std::uint64_t j, std::uint64_t a) const {
    if (j >= size()) throw std::invalid_argument("character index out of range");
    const std::uint64_t residue = a % group_.modulus;
    if (!group_.coprime(residue)) return std::nullopt;
    const auto& dlog = group_.dlog_table[residue];
    const std::uint64_t L = group_.exponent;
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < dlog.size(); ++i) {
        e = (e + (L / group_.orders[i]) % L * char_exponents_[j][i] % L * dlog[i]) % L;
    }
    return static_cast<unsigned>(e);
}

std::complex<double> CharacterTable::value(std::uint64_t j, std::uint64_t a) const {
    const auto e = value_exponent(j, a);
    if (!e) return {0.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(*e) /
                         static_cast<double>(group_.exponent);
    return {std::cos(angle), std::sin(angle)};
}

int CharacterTable::real_value(std::uint64_t j, std::uint64_t a) const {
    if (kind(j) == CharacterKind::Complex) {
        throw std::invalid_argument("real_value on a complex character");
    }
    const auto e = value_exponent(j, a);
    if (!e) return 0;
    if (*e == 0) return 1;
    if (2ull * *e == group_.exponent) return -1;
    throw std::logic_error("real character with a non-real value");
}

ResidueSet::ResidueSet(std::uint64_t m, std::vector<std::uint64_t> input) : modulus(m) {
    if (m == 0) throw std::invalid_argument("modulus must be positive");
    if (input.empty()) throw std::invalid_argument("residue set must be nonempty");
    for (std::uint64_t a : input) {
        const std::uint64_t reduced = a % m;
        if (std::gcd(reduced, m) != 1) {
            throw std::invalid_argument("residue " + std::to_string(a) +
                                        " is not coprime to the modulus");
        }
        members.push_back(reduced);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool ResidueSet::contains(std::uint64_t n) const {
    return std::binary_search(members.begin(), members.end(), n % modulus);
}

DecompositionReport decompose_indicator(const CharacterTable& table, const ResidueSet& set) {
    if (set.modulus != table.modulus()) throw std::invalid_argument("modulus mismatch");
    const std::uint64_t phi = table.size();
    const unsigned L = table.zeta_order();
    const auto& field = table.field();

    DecompositionReport report;
    report.modulus = set.modulus;
    report.members = set.members;
    report.coefficients.reserve(phi);

    for (std::uint64_t j = 0; j < phi; ++j) {
        ZetaSum numerator(L);
        long long real_sum = 0;
        const CharacterKind k = table.kind(j);
        for (std::uint64_t a : set.members) {
            const auto e = table.value_exponent(j, a);
            numerator.add_power(-static_cast<long long>(*e));
            if (k != CharacterKind::Complex) {
                real_sum += (*e == 0) ? 1 : -1;  // conj of a +-1 value is itself
            }
        }
        IndicatorCoefficient coeff;
        coeff.character = j;
        coeff.kind = k;
        coeff.zeta_numerator = numerator.coeff;
        coeff.is_zero = field.is_zero(numerator.coeff);
        if (k != CharacterKind::Complex) {
            coeff.rational_value = Rational(real_sum, static_cast<long long>(phi));
        }
        coeff.approx = field.to_complex(numerator.coeff) / static_cast<double>(phi);
        report.coefficients.push_back(std::move(coeff));
    }

    // Branch rule: decay iff every real-character coefficient is >= 0 and
    // every complex-character coefficient vanishes.
    report.verdict = BranchVerdict::Decay;
    for (const auto& coeff : report.coefficients) {
        const bool offends = coeff.kind == CharacterKind::Complex
                                 ? !coeff.is_zero
                                 : coeff.rational_value.sign() < 0;
        if (offends) {
            report.verdict = BranchVerdict::BoundedBelow;
            report.witness = coeff.character;
            break;
        }
    }

    // Exact reconstruction: sum_chi (sum_{b in S} conj(chi(b))) chi(a) must be
    // phi(m) on S and 0 on the rest of the group.
    for (std::uint64_t a = 0; a < set.modulus; ++a) {
        if (!table.group().coprime(a)) continue;
        ZetaSum acc(L);
        for (std::uint64_t j = 0; j < phi; ++j) {
            const auto ea = table.value_exponent(j, a);
            for (std::uint64_t b : set.members) {
                const auto eb = table.value_exponent(j, b);
                acc.add_power(static_cast<long long>(*ea) - static_cast<long long>(*eb));
            }
        }
        if (set.contains(a)) acc.add_power(0, -static_cast<long long>(phi));
        if (!field.is_zero(acc.coeff)) {
            throw std::logic_error("indicator reconstruction failed");
        }
    }

    return report;
}

BranchReport classify_branch(const CharacterTable& table, const ResidueSet& set) {
    const DecompositionReport report = decompose_indicator(table, set);
    BranchReport branch;
    branch.verdict = report.verdict;
    branch.witness = report.witness;
    if (report.witness) branch.witness_kind = table.kind(*report.witness);
    return branch;
}

BranchReport classify_branch(const ResidueSet& set) {
    const CharacterTable table(set.modulus);
    return classify_branch(table, set);
}

}  // namespace rmf
