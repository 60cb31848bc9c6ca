#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include <opsolve/scalar.hpp>

namespace opsolve {

// Truncated generalized series
//
//     f(z) = sum_{k=0..K} sum_{m=0..N} c[m][k] * z^(sigma + m) * (log z)^k
//
// sigma is the base exponent, N the truncation order and K the highest log
// power. Terms with exponent above sigma + N are unknown, not zero: every
// operation keeps that absolute truncation point honest.
class LogSeries {
public:
    LogSeries() : LogSeries(Scalar(0), 0) {}
    LogSeries(Scalar sigma, int order, int max_log_power = 0);

    // coeff * z^exponent * (log z)^log_power, known through relative order `order`.
    static LogSeries monomial(const Scalar &coeff, const Scalar &exponent, int order, int log_power = 0);
    // Ordinary Taylor series: sigma = 0, K = 0, order = coeffs.size() - 1.
    static LogSeries taylor(const std::vector<Scalar> &coeffs);

    [[nodiscard]] const Scalar &sigma() const noexcept { return sigma_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int max_log_power() const noexcept { return max_log_; }

    // Zero outside the stored rectangle.
    [[nodiscard]] Scalar coeff(int m, int k = 0) const;
    // Grows the log dimension when needed; m must lie in [0, order].
    void set_coeff(int m, int k, Scalar value);
    void add_to_coeff(int m, int k, const Scalar &value);

    [[nodiscard]] bool is_zero() const;
    // True when every coefficient and sigma are exact rationals.
    [[nodiscard]] bool is_exact() const;

    // Multiply by z^power: only sigma moves.
    [[nodiscard]] LogSeries shifted(const Scalar &power) const;
    // Same function on the grid starting at new_sigma (new_sigma <= sigma, integer gap).
    [[nodiscard]] LogSeries realigned(const Scalar &new_sigma) const;
    [[nodiscard]] LogSeries truncated(int order) const;
    // Zero-pads; only meaningful for series known to be exact beyond their order.
    [[nodiscard]] LogSeries padded(int order) const;
    [[nodiscard]] LogSeries with_sigma(Scalar sigma) const;
    [[nodiscard]] LogSeries to_float() const;
    // Drops trailing log powers whose coefficients are all zero.
    [[nodiscard]] LogSeries trimmed() const;

    // Lowest relative index carrying a nonzero coefficient, or -1 for the zero series.
    [[nodiscard]] int leading_index() const;

    // Same sigma, order and coefficients (ignoring all-zero log rows). Mixed
    // exact/float compares numerically.
    friend bool operator==(const LogSeries &a, const LogSeries &b);

private:
    [[nodiscard]] std::size_t slot(int m, int k) const
    {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(order_ + 1) + static_cast<std::size_t>(m);
    }

    Scalar sigma_;
    int order_;
    int max_log_;
    std::vector<Scalar> coeffs_;
};

// a*f + b*g on the grid of the lower base exponent. Throws NonIntegerExponentGap
// when sigma_f - sigma_g is not an integer.
LogSeries linear_combine(const Scalar &a, const LogSeries &f, const Scalar &b, const LogSeries &g);

// f times sum_j coeff_j z^power_j with non-negative powers; sigma and order are kept.
LogSeries mul_poly(const LogSeries &f, const std::vector<std::pair<int, Scalar>> &poly);

// f times a Laurent polynomial (powers may be negative); sigma moves by the lowest power.
LogSeries mul_laurent(const LogSeries &f, const std::vector<std::pair<int, Scalar>> &poly);

LogSeries scale(const Scalar &a, const LogSeries &f);

LogSeries differentiate(const LogSeries &f);

// Antiderivative with zero integration constant. z^-1 (log z)^k integrates to
// (log z)^(k+1) / (k+1), which is how log terms enter.
LogSeries integrate(const LogSeries &f);

// Evaluates the truncated sum at real z > 0 (DomainError otherwise).
double eval(const LogSeries &f, double z);

// sup over 0 < z <= z0 of z^alpha |f(z)|, sampled on a 1000-point geometric grid.
double weighted_norm_estimate(const LogSeries &f, double alpha, double z0);

inline LogSeries operator+(const LogSeries &f, const LogSeries &g) { return linear_combine(Scalar(1), f, Scalar(1), g); }
inline LogSeries operator-(const LogSeries &f, const LogSeries &g) { return linear_combine(Scalar(1), f, Scalar(-1), g); }

std::ostream &operator<<(std::ostream &os, const LogSeries &f);

} // namespace opsolve
