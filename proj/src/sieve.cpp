#include "rmf/sieve.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmf {

PrimeSieve::PrimeSieve(std::uint64_t bound) : bound_(bound) {
    if (bound < 2) throw std::invalid_argument("sieve bound must be at least 2");
    if (bound > kMaxBound) {
        throw std::runtime_error("sieve bound exceeds the 5e8 memory cap");
    }
    spf_.assign(bound + 1, 0);
    for (std::uint64_t n = 2; n <= bound; ++n) {
        if (spf_[n] == 0) {
            spf_[n] = static_cast<std::uint32_t>(n);
            primes_.push_back(static_cast<std::uint32_t>(n));
        }
        for (std::uint32_t p : primes_) {
            if (p > spf_[n] || n * p > bound) break;
            spf_[n * p] = p;
        }
    }
}

std::uint32_t PrimeSieve::smallest_prime_factor(std::uint64_t n) const {
    if (n < 2 || n > bound_) throw std::invalid_argument("value outside sieve range");
    return spf_[n];
}

std::size_t PrimeSieve::prime_index(std::uint64_t p) const {
    const auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) throw std::invalid_argument("not a prime in the sieve");
    return static_cast<std::size_t>(it - primes_.begin());
}

}  // namespace rmf
