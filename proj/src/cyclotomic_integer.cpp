#include "rmf/cyclotomic_integer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace rmf {

namespace {

// Exact division of polynomials with integer coefficients by a monic divisor.
// Used only where the quotient is known to be integral (x^n - 1 divided by a
// product of cyclotomic polynomials), so a nonzero remainder is a logic error.
std::vector<long long> divide_exact(const std::vector<long long>& dividend,
                                    const std::vector<long long>& divisor) {
    std::vector<long long> rem = dividend;
    const std::size_t dn = divisor.size();
    if (dn == 0 || divisor.back() != 1) {
        throw std::logic_error("divisor must be monic");
    }
    if (rem.size() < dn) throw std::logic_error("degree underflow in polynomial division");
    std::vector<long long> quot(rem.size() - dn + 1, 0);
    for (std::size_t i = rem.size(); i-- >= dn;) {
        const long long factor = rem[i];
        if (factor == 0) {
            if (i + 1 == dn) break;
            continue;
        }
        quot[i - dn + 1] = factor;
        for (std::size_t j = 0; j < dn; ++j) {
            rem[i - dn + 1 + j] -= factor * divisor[j];
        }
        if (i + 1 == dn) break;
    }
    for (long long c : rem) {
        if (c != 0) throw std::logic_error("polynomial division left a remainder");
    }
    return quot;
}

}  // namespace

std::vector<long long> CyclotomicField::cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
    static std::map<unsigned, std::vector<long long>> cache;
    static std::mutex cache_mutex;
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed recursively.
    std::function<const std::vector<long long>&(unsigned)> compute =
        [&](unsigned k) -> const std::vector<long long>& {
        if (auto it = cache.find(k); it != cache.end()) return it->second;
        std::vector<long long> poly(k + 1, 0);
        poly[0] = -1;
        poly[k] = 1;
        for (unsigned d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            poly = divide_exact(poly, compute(d));
        }
        return cache.emplace(k, std::move(poly)).first->second;
    };
    return compute(n);
}

CyclotomicField::CyclotomicField(unsigned order) : order_(order == 0 ? 1 : order) {
    minimal_poly_ = cyclotomic_polynomial(order_);
    unit_circle_.resize(order_);
    for (unsigned k = 0; k < order_; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(order_);
        unit_circle_[k] = {std::cos(angle), std::sin(angle)};
    }
}

std::vector<long long> CyclotomicField::reduce(const std::vector<long long>& coeffs) const {
    // Any polynomial length works: zeta is a root of Phi, so remainders agree
    // with evaluation regardless of degree.
    std::vector<long long> rem = coeffs;
    const std::size_t dn = minimal_poly_.size();
    while (rem.size() >= dn) {
        const long long factor = rem.back();
        if (factor != 0) {
            const std::size_t offset = rem.size() - dn;
            for (std::size_t j = 0; j + 1 < dn; ++j) {
                rem[offset + j] -= factor * minimal_poly_[j];
            }
        }
        rem.pop_back();
    }
    rem.resize(degree(), 0);
    return rem;
}

bool CyclotomicField::is_zero(const std::vector<long long>& coeffs) const {
    for (long long c : reduce(coeffs)) {
        if (c != 0) return false;
    }
    return true;
}

bool CyclotomicField::equal(const std::vector<long long>& lhs,
                            const std::vector<long long>& rhs) const {
    std::vector<long long> diff = lhs;
    diff.resize(std::max(lhs.size(), rhs.size()), 0);
    for (std::size_t k = 0; k < rhs.size(); ++k) diff[k] -= rhs[k];
    return is_zero(diff);
}

std::vector<long long> CyclotomicField::conjugate(const std::vector<long long>& coeffs) const {
    if (coeffs.size() != order_) {
        throw std::invalid_argument("conjugation needs a full-length power histogram");
    }
    std::vector<long long> out(coeffs.size(), 0);
    out[0] = coeffs[0];
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        out[coeffs.size() - k] = coeffs[k];
    }
    return out;
}

std::complex<double> CyclotomicField::to_complex(const std::vector<long long>& coeffs) const {
    std::complex<double> total{0.0, 0.0};
    for (std::size_t k = 0; k < coeffs.size() && k < order_; ++k) {
        if (coeffs[k] == 0) continue;
        total += static_cast<double>(coeffs[k]) * unit_circle_[k];
    }
    return total;
}

}  // namespace rmf
