#include <opsolve/catalog.hpp>

#include <cmath>

#include <opsolve/errors.hpp>

namespace opsolve {

namespace {

void require_c(const Scalar &c)
{
    if (c.is_integer() && c.to_long() <= 0) {
        throw ParameterError("lower parameter " + c.to_string() + " is a non-positive integer");
    }
}

Scalar factorial(int n)
{
    return pochhammer(Scalar(1), n);
}

} // namespace

Scalar pochhammer(const Scalar &x, int n)
{
    Scalar out(1);
    for (int k = 0; k < n; ++k) {
        out *= x + Scalar(k);
    }
    return out;
}

Scalar harmonic_number(int m)
{
    Scalar out(0);
    for (int k = 1; k <= m; ++k) {
        out += Scalar::rational(1, k);
    }
    return out;
}

LogSeries bessel_j_series(const Scalar &nu, int order)
{
    LogSeries out(Scalar(0), order);
    for (int k = 0; 2 * k <= order; ++k) {
        const Scalar sign(k % 2 == 0 ? 1 : -1);
        out.set_coeff(2 * k, 0, sign / (factorial(k) * pochhammer(Scalar(1) + nu, k) * pow(Scalar(4), k)));
    }
    return out;
}

LogSeries bessel_j_irregular_series(const Scalar &nu, int order)
{
    if (nu.is_integer()) {
        throw ParameterError("irregular Bessel series needs non-integer order, got " + nu.to_string());
    }
    const Scalar lead = Scalar(1) / (Scalar(-2) * nu);
    LogSeries out(Scalar(-2) * nu, order);
    for (int k = 0; 2 * k <= order; ++k) {
        const Scalar sign(k % 2 == 0 ? 1 : -1);
        out.set_coeff(2 * k, 0,
                      lead * sign / (factorial(k) * pochhammer(Scalar(1) - nu, k) * pow(Scalar(4), k)));
    }
    return out;
}

LogSeries struve_series(double nu, int order)
{
    LogSeries out(Scalar::from_double(nu + 1.0), order);
    for (int v = 0; 2 * v <= order; ++v) {
        const double sign = v % 2 == 0 ? 1.0 : -1.0;
        const double log_mag = -std::lgamma(1.5 + v) - std::lgamma(1.5 + nu + v) - (2.0 * v + 1.0 + nu) * std::log(2.0);
        out.set_coeff(2 * v, 0, Scalar::from_double(sign * std::exp(log_mag)));
    }
    return out;
}

PiScaledSeries struve_series_exact(const Scalar &nu, int order)
{
    if (!nu.is_exact() || !nu.is_integer() || nu < Scalar(0)) {
        throw ParameterError("exact Struve series needs a non-negative integer order");
    }
    // Gamma(3/2 + k) = (3/2)_k sqrt(pi)/2, so each coefficient is rational / pi.
    const long n = nu.to_long();
    const Scalar gamma_three_halves_over_sqrt_pi = Scalar::rational(1, 2);
    const Scalar g_nu = gamma_three_halves_over_sqrt_pi * pochhammer(Scalar::rational(3, 2), static_cast<int>(n));
    PiScaledSeries out{LogSeries(nu + Scalar(1), order), -1};
    for (int v = 0; 2 * v <= order; ++v) {
        const Scalar sign(v % 2 == 0 ? 1 : -1);
        const Scalar g1 = gamma_three_halves_over_sqrt_pi * pochhammer(Scalar::rational(3, 2), v);
        const Scalar g2 = g_nu * pochhammer(Scalar::rational(3, 2) + nu, v);
        out.series.set_coeff(2 * v, 0, sign / (g1 * g2 * pow(Scalar(2), 2 * v + 1 + n)));
    }
    return out;
}

LogSeries hyp1f1_series(const Scalar &a, const Scalar &c, int order)
{
    require_c(c);
    LogSeries out(Scalar(0), order);
    for (int n = 0; n <= order; ++n) {
        out.set_coeff(n, 0, pochhammer(a, n) / (pochhammer(c, n) * factorial(n)));
    }
    return out;
}

LogSeries hyp2f1_series(const Scalar &a, const Scalar &b, const Scalar &c, int order)
{
    require_c(c);
    LogSeries out(Scalar(0), order);
    for (int n = 0; n <= order; ++n) {
        out.set_coeff(n, 0, pochhammer(a, n) * pochhammer(b, n) / (pochhammer(c, n) * factorial(n)));
    }
    return out;
}

LogSeries bessel_log_second_series(int n, int order)
{
    if (n < 1) {
        throw ParameterError("log second solution needs n >= 1");
    }
    const Scalar lead = Scalar(1) / Scalar(-2 * n);
    LogSeries out(Scalar(-2 * n), order, 1);
    for (int j = 0; j < n && 2 * j <= order; ++j) {
        const Scalar sign(j % 2 == 0 ? 1 : -1);
        out.set_coeff(2 * j, 0,
                      lead * sign / (pow(Scalar(4), j) * factorial(j) * pochhammer(Scalar(1 - n), j)));
    }
    const Scalar base = Scalar(1) / (pow(Scalar(4), n) * factorial(n));
    const Scalar h_n = harmonic_number(n);
    for (int m = 0; 2 * n + 2 * m <= order; ++m) {
        const Scalar c1 = base / (factorial(m) * factorial(m + n));
        const Scalar c2 = -c1 / Scalar(2) * (harmonic_number(m) + harmonic_number(m + n) - h_n);
        const Scalar weight = Scalar(m % 2 == 0 ? 1 : -1) / pow(Scalar(4), m);
        out.set_coeff(2 * n + 2 * m, 1, weight * c1);
        out.set_coeff(2 * n + 2 * m, 0, weight * c2);
    }
    return out;
}

LogSeries exp_series(int order)
{
    LogSeries out(Scalar(0), order);
    for (int k = 0; k <= order; ++k) {
        out.set_coeff(k, 0, Scalar(1) / factorial(k));
    }
    return out;
}

LogSeries trig_series(const Scalar &omega, bool hyperbolic, bool odd, int order)
{
    LogSeries out(Scalar(0), order);
    const int shift = odd ? 1 : 0;
    for (int k = 0; 2 * k + shift <= order; ++k) {
        const Scalar sign(hyperbolic || k % 2 == 0 ? 1 : -1);
        out.set_coeff(2 * k + shift, 0, sign * pow(omega, 2 * k) / factorial(2 * k + shift));
    }
    return out;
}

} // namespace opsolve
