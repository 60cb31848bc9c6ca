#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace opsolve {

// A coefficient value that is either an exact rational (GMP) or a double.
//
// Arithmetic between two exact values stays exact. As soon as one operand is a
// double the result is a double; the downgrade is visible through is_exact()
// on the result and on every series built from it.
class Scalar {
public:
    Scalar() : value_(mpq_class(0)) {}
    Scalar(int v) : value_(mpq_class(v)) {}
    Scalar(long v) : value_(mpq_class(v)) {}
    Scalar(const mpq_class &q) : value_(canonical(q)) {}
    Scalar(mpq_class &&q) : value_(canonical(std::move(q))) {}

    // Explicit so that `Scalar s = 0.5` cannot silently produce float mode.
    static Scalar from_double(double v) { return Scalar(FloatTag{}, v); }
    static Scalar rational(long num, long den);

    // Parses "3", "-1/9", "0.125", "2.5e-3" (exact). U+2212 is accepted as a minus sign.
    static Scalar parse(std::string_view text);

    [[nodiscard]] bool is_exact() const noexcept { return std::holds_alternative<mpq_class>(value_); }
    [[nodiscard]] const mpq_class &exact() const;
    [[nodiscard]] double to_double() const;
    [[nodiscard]] Scalar to_float() const { return from_double(to_double()); }

    [[nodiscard]] bool is_zero() const;
    // Float values within 1e-12 (relative) of an integer count as integers.
    [[nodiscard]] bool is_integer() const;
    // Nearest integer; exact values must already be integers.
    [[nodiscard]] long to_long() const;
    [[nodiscard]] bool near(long n) const;

    [[nodiscard]] std::string to_string() const;

    Scalar &operator+=(const Scalar &rhs);
    Scalar &operator-=(const Scalar &rhs);
    Scalar &operator*=(const Scalar &rhs);
    Scalar &operator/=(const Scalar &rhs);

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    Scalar operator-() const;

    // Numeric comparison. Exact-vs-exact is exact; anything involving a float compares doubles.
    friend bool operator==(const Scalar &a, const Scalar &b);
    friend std::partial_ordering operator<=>(const Scalar &a, const Scalar &b);

    // Bit-level identity: same mode and same value.
    [[nodiscard]] bool identical(const Scalar &other) const;

private:
    struct FloatTag {};
    Scalar(FloatTag, double v) : value_(v) {}

    static mpq_class canonical(mpq_class q)
    {
        q.canonicalize();
        return q;
    }

    std::variant<mpq_class, double> value_;
};

Scalar abs(const Scalar &x);
// Integer power, n may be negative.
Scalar pow(const Scalar &x, long n);

std::ostream &operator<<(std::ostream &os, const Scalar &s);

} // namespace opsolve
