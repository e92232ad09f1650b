#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmf/cyclotomic_integer.hpp"
#include "rmf/rational.hpp"

namespace rmf {

// Structure of (Z/mZ)^x as a product of cyclic groups: primitive roots for
// odd prime powers, the <-1, 5> presentation for powers of two >= 8, glued by
// CRT. Discrete logarithms of every coprime residue are tabulated at
// construction.
struct UnitGroupStructure {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> generators;  // residues mod m
    std::vector<std::uint64_t> orders;      // order of each generator; product = phi(m)
    std::uint64_t group_order = 1;          // phi(m)
    std::uint64_t exponent = 1;             // lcm of the orders

    bool coprime(std::uint64_t a) const;
    // Exponent vector of a on the generators; a must be coprime to m.
    const std::vector<std::uint32_t>& discrete_log(std::uint64_t a) const;

    std::vector<std::vector<std::uint32_t>> dlog_table;  // indexed by residue, empty rows off the group
};

UnitGroupStructure build_unit_group(std::uint64_t m);

std::uint64_t euler_phi(std::uint64_t n);

enum class CharacterKind { Principal, Real, Complex };

const char* to_string(CharacterKind kind);

// All phi(m) Dirichlet characters mod m, with values stored exactly as powers
// of a fixed primitive L-th root of unity, L the exponent of the unit group.
class CharacterTable {
public:
    explicit CharacterTable(std::uint64_t m);

    std::uint64_t modulus() const noexcept { return group_.modulus; }
    std::uint64_t size() const noexcept { return group_.group_order; }
    unsigned zeta_order() const noexcept { return field_.order(); }

    const UnitGroupStructure& group() const noexcept { return group_; }
    const CyclotomicField& field() const noexcept { return field_; }

    CharacterKind kind(std::uint64_t j) const;
    std::uint64_t conjugate_index(std::uint64_t j) const;

    // e with chi_j(a) = zeta_L^e, or nullopt when gcd(a, m) > 1.
    std::optional<unsigned> value_exponent(std::uint64_t j, std::uint64_t a) const;

    std::complex<double> value(std::uint64_t j, std::uint64_t a) const;

    // Exact value of a real character: +1, -1, or 0.
    int real_value(std::uint64_t j, std::uint64_t a) const;

    // Exponent vector of chi_j on the generators (j_i in [0, order_i)).
    const std::vector<std::uint32_t>& character_exponents(std::uint64_t j) const;

private:
    UnitGroupStructure group_;
    CyclotomicField field_;
    std::vector<std::vector<std::uint32_t>> char_exponents_;
    std::vector<CharacterKind> kinds_;
    std::vector<std::uint64_t> conjugates_;
};

// Nonempty set of residues coprime to the modulus, reduced mod m.
struct ResidueSet {
    ResidueSet(std::uint64_t modulus, std::vector<std::uint64_t> members);

    std::uint64_t modulus;
    std::vector<std::uint64_t> members;  // sorted, deduplicated, reduced

    bool contains(std::uint64_t n) const;
};

enum class BranchVerdict { Decay, BoundedBelow };

const char* to_string(BranchVerdict verdict);

// One coefficient of the indicator expansion 1_S = sum_chi c_chi * chi,
// c_chi = (1/phi(m)) sum_{a in S} conj(chi(a)). The numerator is kept exactly
// as an element of Z[zeta_L]; real characters additionally carry the exact
// rational value including the 1/phi(m) scale.
struct IndicatorCoefficient {
    std::uint64_t character = 0;
    CharacterKind kind = CharacterKind::Principal;
    std::vector<long long> zeta_numerator;    // power histogram, length L
    Rational rational_value;                  // valid iff kind != Complex
    std::complex<double> approx;              // includes the 1/phi(m) scale
    bool is_zero = false;
};

struct DecompositionReport {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> members;
    std::vector<IndicatorCoefficient> coefficients;
    BranchVerdict verdict = BranchVerdict::Decay;
    std::optional<std::uint64_t> witness;  // offending character when BoundedBelow
};

// Expands the indicator of S over the characters mod m, verifying the
// reconstruction identity exactly before returning.
DecompositionReport decompose_indicator(const CharacterTable& table, const ResidueSet& set);

struct BranchReport {
    BranchVerdict verdict = BranchVerdict::Decay;
    std::optional<std::uint64_t> witness;
    CharacterKind witness_kind = CharacterKind::Principal;
};

BranchReport classify_branch(const CharacterTable& table, const ResidueSet& set);
BranchReport classify_branch(const ResidueSet& set);

}  // namespace rmf
