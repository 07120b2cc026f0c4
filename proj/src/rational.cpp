#include "srptlab/rational.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

namespace srptlab {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign)
{
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

std::string format_mpf(const mpf_class& v, int digits)
{
    // gmp_snprintf rounds the mpf value correctly; precision is far beyond the digits requested.
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    for (;;) {
        const int n = gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, v.get_mpf_t());
        if (n >= 0 && static_cast<std::size_t>(n) < buf.size()) return std::string(buf.data(), static_cast<std::size_t>(n));
        buf.resize(buf.size() * 2);
    }
}

constexpr mp_bitcnt_t kDecimalPrecisionBits = 512;

}  // namespace

Rational::Rational(long num, long den)
{
    if (den == 0) throw std::invalid_argument("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num, true))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::string num_str(num.front() == '+' ? num.substr(1) : num);
    mpq_class q;
    if (slash == std::string_view::npos) {
        q = mpq_class(mpz_class(num_str));
    } else {
        const std::string_view den = text.substr(slash + 1);
        if (!is_integer_literal(den, false))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        mpz_class d(std::string{den});
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        q = mpq_class(mpz_class(num_str), d);
    }
    return Rational(std::move(q));
}

std::string Rational::str() const
{
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::short_str() const { return value_.get_str(); }

std::string Rational::decimal(int significant_digits) const
{
    return format_mpf(mpf_class(value_, kDecimalPrecisionBits), significant_digits);
}

std::int64_t Rational::to_int64() const
{
    if (!is_integer() || !value_.get_num().fits_slong_p())
        throw std::domain_error("rational " + str() + " is not a machine integer");
    return value_.get_num().get_si();
}

Rational Rational::pow(unsigned exponent) const
{
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    return Rational(mpq_class(num, den));
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.value_ == 0) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
}

std::string kth_root_decimal(const Rational& value, unsigned k, int significant_digits)
{
    if (value.sign() < 0) throw std::domain_error("root of negative value");
    if (k == 0) throw std::domain_error("zeroth root");
    if (value.sign() == 0) return "0";
    const mpf_class a(value.raw(), kDecimalPrecisionBits);
    if (k == 1) return format_mpf(a, significant_digits);
    // Newton iteration x <- ((k-1) x + a / x^(k-1)) / k from a double seed.
    double seed = std::pow(value.to_double(), 1.0 / k);
    if (!std::isfinite(seed) || seed <= 0) seed = 1.0;
    mpf_class x(seed, kDecimalPrecisionBits);
    for (int iter = 0; iter < 200; ++iter) {
        mpf_class xk(1, kDecimalPrecisionBits);
        for (unsigned e = 1; e < k; ++e) xk *= x;
        mpf_class next = ((k - 1) * x + a / xk) / k;
        mpf_class diff = abs(next - x);
        x = next;
        if (diff == 0 || diff < x * mpf_class(1e-120, kDecimalPrecisionBits)) break;
    }
    return format_mpf(x, significant_digits);
}

}  // namespace srptlab
