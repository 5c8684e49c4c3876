#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <ostream>

#include "errors.hpp"

namespace teich {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Nonnegative-or-signed scalar that is either an exact rational (when built
// from combinatorial data) or a double. Mixing exact and inexact operands
// demotes the result to a double.
class Scalar {
public:
    Scalar() : exact_(true), r_(0), d_(0.0) {}
    Scalar(int v) : exact_(true), r_(v), d_(double(v)) {}
    Scalar(long v) : exact_(true), r_(v), d_(double(v)) {}
    Scalar(long long v) : exact_(true), r_((std::int64_t)v), d_(double(v)) {}
    Scalar(double v) : exact_(false), r_(0), d_(v) {}
    Scalar(const Rational& r) : exact_(true), r_(r), d_(r.convert_to<double>()) {}

    // Nearest rational with denominator 2^53; the documented quantization of
    // float-seeded exact data.
    static Scalar quantized(double v) {
        if (!std::isfinite(v)) throw InputError("quantized: non-finite input");
        const double scaled = std::ldexp(v, 53);
        if (std::abs(scaled) > 9.2e18) throw InputError("quantized: input too large");
        BigInt num((long long)std::llround(scaled));
        BigInt den = BigInt(1) << 53;
        return Scalar(Rational(num, den));
    }

    bool exact() const { return exact_; }
    double value() const { return exact_ ? r_.convert_to<double>() : d_; }
    const Rational& rat() const {
        if (!exact_) throw RepresentationError("rat(): scalar is not exact");
        return r_;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return Scalar(Rational(a.r_ + b.r_));
        return Scalar(a.value() + b.value());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return Scalar(Rational(a.r_ - b.r_));
        return Scalar(a.value() - b.value());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return Scalar(Rational(a.r_ * b.r_));
        return Scalar(a.value() * b.value());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) {
            if (b.r_ == 0) throw InputError("scalar division by zero");
            return Scalar(Rational(a.r_ / b.r_));
        }
        return Scalar(a.value() / b.value());
    }
    Scalar operator-() const { return exact_ ? Scalar(Rational(-r_)) : Scalar(-d_); }
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return a.r_ == b.r_;
        return a.value() == b.value();
    }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return a.r_ < b.r_;
        return a.value() < b.value();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

    Scalar abs() const { return *this < Scalar(0) ? -*this : *this; }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        if (s.exact_) return os << s.r_;
        return os << s.d_;
    }

private:
    bool exact_;
    Rational r_;
    double d_;
};

} // namespace teich
