#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace rmf {

// Exact arithmetic in Z[zeta_L], zeta_L a primitive L-th root of unity.
// Elements are held as coefficient vectors over the redundant spanning set
// {zeta^0, ..., zeta^(L-1)}; equality and zero tests reduce modulo the L-th
// cyclotomic polynomial, which is exact because Phi_L is monic over Z.
class CyclotomicField {
public:
    explicit CyclotomicField(unsigned order);

    unsigned order() const noexcept { return order_; }
    unsigned degree() const noexcept { return static_cast<unsigned>(minimal_poly_.size()) - 1; }

    // Coefficients of Phi_order, lowest degree first.
    const std::vector<long long>& minimal_polynomial() const noexcept { return minimal_poly_; }

    // Canonical form: remainder of sum_k c[k] x^k modulo Phi_order, length = degree().
    std::vector<long long> reduce(const std::vector<long long>& coeffs) const;

    bool is_zero(const std::vector<long long>& coeffs) const;
    bool equal(const std::vector<long long>& lhs, const std::vector<long long>& rhs) const;

    // zeta^k -> zeta^(-k); complex conjugation on Z[zeta].
    std::vector<long long> conjugate(const std::vector<long long>& coeffs) const;

    std::complex<double> to_complex(const std::vector<long long>& coeffs) const;

    // Coefficients of Phi_n, lowest degree first; exact integer computation.
    static std::vector<long long> cyclotomic_polynomial(unsigned n);

private:
    unsigned order_;
    std::vector<long long> minimal_poly_;
    std::vector<std::complex<double>> unit_circle_;  // zeta^k for rendering
};

// Histogram element of Z[zeta_L]: coeff[k] is the multiplicity of zeta^k.
struct ZetaSum {
    explicit ZetaSum(unsigned order) : coeff(order == 0 ? 1 : order, 0) {}

    void add_power(long long exponent, long long count = 1) {
        const auto order = static_cast<long long>(coeff.size());
        long long e = exponent % order;
        if (e < 0) e += order;
        coeff[static_cast<std::size_t>(e)] += count;
    }

    std::vector<long long> coeff;
};

}  // namespace rmf
