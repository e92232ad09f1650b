#pragma once

#include <cstdint>
#include <vector>

namespace rmf {

// Smallest-prime-factor table for 2..bound plus the ordered prime list.
// Built with a linear sieve; immutable afterwards, safe to share across
// threads. Memory is 4 bytes per integer, so the hard cap below corresponds
// to a 2 GB table.
class PrimeSieve {
public:
    static constexpr std::uint64_t kMaxBound = 500'000'000;

    explicit PrimeSieve(std::uint64_t bound);

    std::uint64_t bound() const noexcept { return bound_; }

    std::uint32_t smallest_prime_factor(std::uint64_t n) const;

    bool is_prime(std::uint64_t n) const {
        return n >= 2 && smallest_prime_factor(n) == n;
    }

    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

    // Index into primes() for a prime p, by binary search.
    std::size_t prime_index(std::uint64_t p) const;

private:
    std::uint64_t bound_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

}  // namespace rmf
