#pragma once

#include <cstdint>
#include <vector>

#include "rmf/multiplicative.hpp"
#include "rmf/rational.hpp"

namespace rmf {

// How a rational prime p factors in the n-th cyclotomic field: p splits into
// ideal_count distinct prime ideals of inertia degree f, each repeated with
// ramification index e = phi(p^v), where v is the p-adic valuation of n and
// f is the multiplicative order of p mod n/p^v. Always e*f*ideal_count = phi(n).
struct SplittingDatum {
    std::uint64_t p = 0;
    unsigned valuation = 0;          // v_p(n)
    std::uint64_t ramification = 1;  // e_p
    std::uint64_t inertia = 1;       // f_p
    std::uint64_t ideal_count = 1;   // r_p
    std::uint64_t norm = 0;          // p^f_p, saturated at uint64 max on overflow
    bool norm_overflow = false;
};

SplittingDatum splitting_type(std::uint64_t n, std::uint64_t p);

// One prime ideal above p, labelled by an ordinal in 1..r_p. Ordinals are
// labels only: ideals above the same prime are statistically exchangeable.
struct IdealSlot {
    std::uint64_t prime = 0;
    std::uint32_t ordinal = 1;
    std::uint64_t norm = 0;
};

struct IdealPrimeBasis {
    std::uint64_t field_index = 1;  // n of Q(zeta_n)
    std::uint64_t norm_bound = 0;
    std::vector<IdealSlot> slots;   // sorted by (norm, prime, ordinal)
};

// All prime ideals of Q(zeta_n) with norm <= x.
IdealPrimeBasis prime_ideal_slots(std::uint64_t n, std::uint64_t x);

// Independent +-1 per slot, keyed (seed, trial, p, ordinal-1); for n = 1 the
// single slot above p draws exactly the sign SignAssignment gives p.
class IdealSignAssignment {
public:
    IdealSignAssignment(std::uint64_t seed, std::uint64_t trial, const IdealPrimeBasis& basis);

    static IdealSignAssignment constant(const IdealPrimeBasis& basis, int value);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t trial() const noexcept { return trial_; }

    int sign(std::size_t slot_index) const { return signs_.at(slot_index); }
    const std::vector<std::int8_t>& slot_signs() const noexcept { return signs_; }

private:
    IdealSignAssignment() = default;

    std::uint64_t seed_ = 0;
    std::uint64_t trial_ = 0;
    std::vector<std::int8_t> signs_;
};

// sum over integral ideals of norm <= x of f(ideal)/norm, including the unit
// ideal term 1. Ideals are enumerated as slot exponent vectors, bucketed by
// norm, and accumulated in ascending norm order.
PartialSumResult ideal_partial_sum(const IdealSignAssignment& signs, const IdealPrimeBasis& basis,
                                   std::uint64_t x);

// Exact variant for x <= 64.
Rational ideal_partial_sum_exact(const IdealSignAssignment& signs, const IdealPrimeBasis& basis,
                                 std::uint64_t x);

// Number of integral ideals with norm <= x, by the same enumeration.
std::uint64_t count_ideals(std::uint64_t n, std::uint64_t x);

// counts[k] = number of integral ideals of norm exactly k, for k <= x.
std::vector<std::uint64_t> ideal_norm_histogram(const IdealPrimeBasis& basis, std::uint64_t x);

// prod over slots of (1 - f(slot)/norm)^(-1).
double ideal_euler_product(const IdealSignAssignment& signs, const IdealPrimeBasis& basis);

Rational ideal_euler_product_exact(const IdealSignAssignment& signs, const IdealPrimeBasis& basis);

// sum over ideals with norm in (x, N] (all slot norms <= x by construction)
// of f(ideal)/norm, plus the Rankin residual for the range beyond N.
SmoothTailSum ideal_tail_sum(const IdealSignAssignment& signs, const IdealPrimeBasis& basis,
                             std::uint64_t x, std::uint64_t enumeration_cap);

}  // namespace rmf
