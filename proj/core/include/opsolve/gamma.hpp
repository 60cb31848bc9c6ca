#pragma once

#include <complex>

namespace opsolve {

using cplx = std::complex<double>;

// log Gamma(s) up to a multiple of 2 pi i; only exp() of it is meaningful.
// Throws PoleError at non-positive integers.
cplx complex_lgamma(cplx s);
cplx complex_gamma(cplx s);
// 1/Gamma(s): entire, zero at the poles of Gamma.
cplx rgamma(cplx s);

double digamma(double x);
cplx digamma(cplx s);
// psi(s)/Gamma(s), continued through the poles: (-1)^(k+1) k! at s = -k.
cplx digamma_over_gamma(cplx s);

// True when s is 0, -1, -2, ... to within 1e-13.
bool at_gamma_pole(cplx s);

} // namespace opsolve
