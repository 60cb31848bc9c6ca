#include <opsolve/scalar.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace opsolve {

namespace {

constexpr double integer_tolerance = 1e-12;

std::string normalize_minus(std::string_view text)
{
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2
            && static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(text[i]);
        }
    }
    // Trim surrounding whitespace.
    const auto first = out.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = out.find_last_not_of(" \t\r\n");
    return out.substr(first, last - first + 1);
}

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

mpq_class parse_decimal(const std::string &s)
{
    // [sign] digits [. digits] [(e|E) [sign] digits]
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string mantissa;
    long scale = 0;
    bool seen_digit = false;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        mantissa.push_back(s[pos++]);
        seen_digit = true;
    }
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            mantissa.push_back(s[pos++]);
            --scale;
            seen_digit = true;
        }
    }
    if (!seen_digit) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        const std::string exponent = s.substr(pos);
        std::string digits = exponent;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
            digits = digits.substr(1);
        }
        if (!all_digits(digits) || digits.size() > 6) {
            throw std::invalid_argument("bad exponent in '" + s + "'");
        }
        scale += std::stol(exponent);
        pos = s.size();
    }
    if (pos != s.size()) {
        throw std::invalid_argument("trailing characters in '" + s + "'");
    }
    mpz_class num(mantissa, 10);
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale >= 0 ? mpq_class(num * ten_pow) : mpq_class(num, ten_pow);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

} // namespace

Scalar Scalar::rational(long num, long den)
{
    if (den == 0) {
        throw std::domain_error("zero denominator");
    }
    return Scalar(mpq_class(num, den));
}

Scalar Scalar::parse(std::string_view text)
{
    const std::string s = normalize_minus(text);
    if (s.empty()) {
        throw std::invalid_argument("empty number");
    }
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        return Scalar(parse_decimal(s));
    }
    std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
        negative = num[0] == '-';
        num = num.substr(1);
    }
    if (!all_digits(num) || !all_digits(den)) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
    mpz_class d(den, 10);
    if (d == 0) {
        throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    mpq_class q(mpz_class(num, 10), d);
    q.canonicalize();
    return Scalar(negative ? mpq_class(-q) : q);
}

const mpq_class &Scalar::exact() const
{
    if (const auto *q = std::get_if<mpq_class>(&value_)) {
        return *q;
    }
    throw std::logic_error("Scalar::exact() on a float value");
}

double Scalar::to_double() const
{
    if (const auto *q = std::get_if<mpq_class>(&value_)) {
        return q->get_d();
    }
    return std::get<double>(value_);
}

bool Scalar::is_zero() const
{
    if (const auto *q = std::get_if<mpq_class>(&value_)) {
        return sgn(*q) == 0;
    }
    return std::get<double>(value_) == 0.0;
}

bool Scalar::is_integer() const
{
    if (const auto *q = std::get_if<mpq_class>(&value_)) {
        return q->get_den() == 1;
    }
    const double v = std::get<double>(value_);
    return std::isfinite(v) && std::abs(v - std::nearbyint(v)) <= integer_tolerance * std::max(1.0, std::abs(v));
}

long Scalar::to_long() const
{
    if (const auto *q = std::get_if<mpq_class>(&value_)) {
        if (q->get_den() != 1 || !q->get_num().fits_slong_p()) {
            throw std::domain_error("Scalar is not a machine integer: " + to_string());
        }
        return q->get_num().get_si();
    }
    return std::lround(std::get<double>(value_));
}

bool Scalar::near(long n) const
{
    if (const auto *q = std::get_if<mpq_class>(&value_)) {
        return *q == n;
    }
    const double v = std::get<double>(value_);
    return std::abs(v - static_cast<double>(n)) <= integer_tolerance * std::max(1.0, std::abs(v));
}

std::string Scalar::to_string() const
{
    if (const auto *q = std::get_if<mpq_class>(&value_)) {
        return q->get_str();
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
    return buf;
}

Scalar &Scalar::operator+=(const Scalar &rhs)
{
    if (is_exact() && rhs.is_exact()) {
        std::get<mpq_class>(value_) += rhs.exact();
    } else {
        value_ = to_double() + rhs.to_double();
    }
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &rhs)
{
    if (is_exact() && rhs.is_exact()) {
        std::get<mpq_class>(value_) -= rhs.exact();
    } else {
        value_ = to_double() - rhs.to_double();
    }
    return *this;
}

Scalar &Scalar::operator*=(const Scalar &rhs)
{
    if (is_exact() && rhs.is_exact()) {
        std::get<mpq_class>(value_) *= rhs.exact();
    } else {
        value_ = to_double() * rhs.to_double();
    }
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &rhs)
{
    if (is_exact() && rhs.is_exact()) {
        if (rhs.is_zero()) {
            throw std::domain_error("exact division by zero");
        }
        std::get<mpq_class>(value_) /= rhs.exact();
    } else {
        value_ = to_double() / rhs.to_double();
    }
    return *this;
}

Scalar Scalar::operator-() const
{
    if (const auto *q = std::get_if<mpq_class>(&value_)) {
        return Scalar(mpq_class(-*q));
    }
    return from_double(-std::get<double>(value_));
}

bool operator==(const Scalar &a, const Scalar &b)
{
    if (a.is_exact() && b.is_exact()) {
        return a.exact() == b.exact();
    }
    return a.to_double() == b.to_double();
}

std::partial_ordering operator<=>(const Scalar &a, const Scalar &b)
{
    if (a.is_exact() && b.is_exact()) {
        const int c = cmp(a.exact(), b.exact());
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }
    return a.to_double() <=> b.to_double();
}

bool Scalar::identical(const Scalar &other) const
{
    if (is_exact() != other.is_exact()) {
        return false;
    }
    if (is_exact()) {
        return exact() == other.exact();
    }
    return std::get<double>(value_) == std::get<double>(other.value_);
}

Scalar abs(const Scalar &x)
{
    return x < Scalar(0) ? -x : x;
}

Scalar pow(const Scalar &x, long n)
{
    if (n < 0) {
        return Scalar(1) / pow(x, -n);
    }
    Scalar result(1);
    Scalar base = x;
    while (n > 0) {
        if (n & 1) {
            result *= base;
        }
        base *= base;
        n >>= 1;
    }
    return result;
}

std::ostream &operator<<(std::ostream &os, const Scalar &s)
{
    return os << s.to_string();
}

} // namespace opsolve
