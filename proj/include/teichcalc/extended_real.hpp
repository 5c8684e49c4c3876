#pragma once

#include <limits>
#include <ostream>

#include "errors.hpp"

namespace teich {

// Extended nonnegative real: a finite double or +infinity, carried as an
// explicit variant rather than a sentinel float.
class ExtReal {
public:
    ExtReal() : inf_(false), v_(0.0) {}

    static ExtReal finite(double v) {
        ExtReal e;
        e.v_ = v;
        return e;
    }
    static ExtReal infinity() {
        ExtReal e;
        e.inf_ = true;
        return e;
    }

    bool is_inf() const { return inf_; }
    double finite_value() const {
        if (inf_) throw RepresentationError("finite_value() on +inf");
        return v_;
    }
    // For contexts that tolerate IEEE infinity (e.g. comparisons in tests).
    double as_double() const {
        return inf_ ? std::numeric_limits<double>::infinity() : v_;
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }

    friend std::ostream& operator<<(std::ostream& os, const ExtReal& e) {
        if (e.inf_) return os << "inf";
        return os << e.v_;
    }

private:
    bool inf_;
    double v_;
};

} // namespace teich
