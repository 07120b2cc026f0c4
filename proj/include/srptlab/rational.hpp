#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace srptlab {

// Exact rational number in lowest terms, backed by GMP's mpq.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT: implicit from integers is intended
    Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }
    explicit Rational(mpq_class&& q) : value_(std::move(q)) { value_.canonicalize(); }

    // Accepts "<int>" or "<int>/<posint>"; throws std::invalid_argument otherwise.
    static Rational parse(std::string_view text);

    // Canonical "a/b" form (always with a denominator), as used in JSON artifacts.
    std::string str() const;
    // "a" for integers, "a/b" otherwise.
    std::string short_str() const;
    // Decimal rendering with the given number of significant digits.
    std::string decimal(int significant_digits = 12) const;

    double to_double() const { return value_.get_d(); }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }
    std::string numerator_str() const { return value_.get_num().get_str(); }
    std::string denominator_str() const { return value_.get_den().get_str(); }
    // Only valid when is_integer() and the value fits.
    std::int64_t to_int64() const;

    const mpq_class& raw() const { return value_; }

    Rational pow(unsigned exponent) const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class value_;
};

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

// Decimal rendering of the k-th root of a non-negative rational.
std::string kth_root_decimal(const Rational& value, unsigned k, int significant_digits = 12);

}  // namespace srptlab
