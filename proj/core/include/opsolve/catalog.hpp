#pragma once

#include <opsolve/log_series.hpp>
#include <opsolve/scalar.hpp>

namespace opsolve {

// x (x+1) ... (x+n-1), with (x)_0 = 1.
Scalar pochhammer(const Scalar &x, int n);

// Reference series built from classical coefficient formulas only.

// Gamma(1+nu) (z/2)^-nu J_nu(z): sum_k (-1)^k / (k! (1+nu)_k 4^k) z^(2k).
LogSeries bessel_j_series(const Scalar &nu, int order);
// z^-2nu/(-2nu) * Gamma(1-nu) (z/2)^nu J_-nu(z). ParameterError for integer nu.
LogSeries bessel_j_irregular_series(const Scalar &nu, int order);

// H_nu(z) = sum_v (-1)^v (z/2)^(2v+1+nu) / (Gamma(3/2+v) Gamma(3/2+nu+v)), in floats.
LogSeries struve_series(double nu, int order);

// H_nu(z) = pi^pi_power * series with rational coefficients; integer nu >= 0 only.
struct PiScaledSeries {
    LogSeries series;
    int pi_power = 0;
};
PiScaledSeries struve_series_exact(const Scalar &nu, int order);

// sum (a)_n / ((c)_n n!) z^n. ParameterError if c is a non-positive integer.
LogSeries hyp1f1_series(const Scalar &a, const Scalar &c, int order);
// sum (a)_n (b)_n / ((c)_n n!) z^n. ParameterError if c is a non-positive integer.
LogSeries hyp2f1_series(const Scalar &a, const Scalar &b, const Scalar &c, int order);

// Second Bessel solution of integer order n in the normalization produced by
// seeding z^-2n/(-2n) at index n:
//   j < n:      (-1)^j / (-2n) / (4^j j! (1-n)_j) z^(2j-2n)
//   j = n + m:  (-1)^m 4^-m (c1(m) log z + c2(m)) z^(2m)
// with c1(m) = 1/(4^n n! m! (m+n)!) and c2(m) = -c1(m)/2 (H_m + H_(m+n) - H_n).
// Base exponent -2n.
LogSeries bessel_log_second_series(int n, int order);

// Harmonic number 1 + 1/2 + ... + 1/m.
Scalar harmonic_number(int m);

// e^z
LogSeries exp_series(int order);
// cos(w z) or sin(w z)/w (odd = true); cosh / sinh when hyperbolic.
LogSeries trig_series(const Scalar &omega, bool hyperbolic, bool odd, int order);

} // namespace opsolve
