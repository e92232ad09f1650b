#pragma once

#include <compare>
#include <string>

#include "rmf/int128.hpp"

namespace rmf {

// Exact rational arithmetic on 128-bit integers, normalized to lowest terms
// with a positive denominator. Overflow throws instead of wrapping; the
// callers that rely on exactness (identity checks at small bounds) treat that
// as a hard error rather than falling back to floating point silently.
class Rational {
public:
    Rational() = default;
    Rational(int128 numerator, int128 denominator) : num_(numerator), den_(denominator) {
        if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
        normalize();
    }
    Rational(long long value) : num_(value), den_(1) {}  // NOLINT: integers promote implicitly

    int128 numerator() const noexcept { return num_; }
    int128 denominator() const noexcept { return den_; }

    Rational operator+(const Rational& rhs) const {
        const int128 g = gcd128(den_, rhs.den_);
        const int128 lhs_scale = rhs.den_ / g;
        const int128 rhs_scale = den_ / g;
        return Rational(checked_add(checked_mul(num_, lhs_scale), checked_mul(rhs.num_, rhs_scale)),
                        checked_mul(den_, lhs_scale));
    }
    Rational operator-(const Rational& rhs) const { return *this + (-rhs); }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational operator*(const Rational& rhs) const {
        const int128 g1 = gcd128(num_, rhs.den_);
        const int128 g2 = gcd128(rhs.num_, den_);
        Rational r;
        r.num_ = checked_mul(num_ / g1, rhs.num_ / g2);
        r.den_ = checked_mul(den_ / g2, rhs.den_ / g1);
        return r;
    }
    Rational operator/(const Rational& rhs) const {
        if (rhs.num_ == 0) throw std::invalid_argument("rational division by zero");
        Rational inv;
        inv.num_ = rhs.den_;
        inv.den_ = rhs.num_;
        if (inv.den_ < 0) {
            inv.num_ = -inv.num_;
            inv.den_ = -inv.den_;
        }
        return *this * inv;
    }

    Rational& operator+=(const Rational& rhs) { return *this = *this + rhs; }
    Rational& operator-=(const Rational& rhs) { return *this = *this - rhs; }
    Rational& operator*=(const Rational& rhs) { return *this = *this * rhs; }
    Rational& operator/=(const Rational& rhs) { return *this = *this / rhs; }

    bool operator==(const Rational& rhs) const noexcept {
        return num_ == rhs.num_ && den_ == rhs.den_;
    }
    std::strong_ordering operator<=>(const Rational& rhs) const {
        return checked_mul(num_, rhs.den_) <=> checked_mul(rhs.num_, den_);
    }

    int sign() const noexcept { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string to_string() const {
        if (den_ == 1) return rmf::to_string(num_);
        return rmf::to_string(num_) + "/" + rmf::to_string(den_);
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        const int128 g = gcd128(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    int128 num_ = 0;
    int128 den_ = 1;
};

}  // namespace rmf
