#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace dwv {

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "a" or "a/b".
    static Rational parse(const std::string& s);

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }

    std::string numerator() const { return q_.get_num().get_str(); }
    std::string denominator() const { return q_.get_den().get_str(); }
    std::string str() const { return q_.get_str(); }
    double to_double() const { return q_.get_d(); }
    const mpq_class& raw() const { return q_; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

private:
    mpq_class q_{0};
};

}  // namespace dwv
