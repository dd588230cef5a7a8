#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace nambu {

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Canonical form is maintained by every operation: gcd(|num|, den) = 1,
/// den > 0, and zero is stored as 0/1. Equality is therefore structural.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}       // NOLINT: implicit by design
    Rational(int n) : v_(long(n)) {}  // NOLINT

    Rational(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    /// Parses "n" or "n/d" with optional leading sign.
    static Rational from_string(const std::string& s) {
        Rational r;
        if (r.v_.set_str(s, 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        if (r.v_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
        r.v_.canonicalize();
        return r;
    }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    Rational pow(unsigned e) const {
        Rational acc(1), base(*this);
        for (; e; e >>= 1) {
            if (e & 1) acc *= base;
            base *= base;
        }
        return acc;
    }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    /// Canonical text form: "n" when integral, "n/d" otherwise.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace nambu
