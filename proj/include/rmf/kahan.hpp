#pragma once

#include <cfloat>
#include <cmath>
#include <complex>
#include <cstdint>

namespace rmf {

// Kahan compensated accumulator. Besides the running sum it tracks the sum of
// absolute terms, from which a rigorous bound on the accumulated rounding
// error is available (2u * sum|x_i| covers compensated summation to first
// order; the constant below leaves headroom for the second-order term and for
// the rounding of the absolute tracker itself).
struct KahanAccumulator {
    double sum = 0.0;
    double compensation = 0.0;
    double abs_sum = 0.0;
    std::uint64_t terms = 0;

    void add(double value) noexcept {
        const double y = value - compensation;
        const double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
        abs_sum += std::fabs(value);
        ++terms;
    }

    double value() const noexcept { return sum; }

    double error_bound() const noexcept {
        return 8.0 * DBL_EPSILON * abs_sum + DBL_MIN;
    }
};

struct ComplexKahanAccumulator {
    KahanAccumulator re;
    KahanAccumulator im;

    void add(std::complex<double> value) noexcept {
        re.add(value.real());
        im.add(value.imag());
    }

    std::complex<double> value() const noexcept { return {re.value(), im.value()}; }

    double error_bound() const noexcept { return re.error_bound() + im.error_bound(); }

    std::uint64_t terms() const noexcept { return re.terms; }
};

}  // namespace rmf
