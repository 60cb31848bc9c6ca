#pragma once

#include <opsolve/log_series.hpp>
#include <opsolve/problem.hpp>

namespace opsolve {

// L g = int z^-alpha int z^alpha g, both antiderivatives with zero constant.
// Base exponent moves from sigma to sigma + 2; relative order is kept.
LogSeries apply_L(const OperatorSpec &spec, const LogSeries &f);

// Kernel of L^-1 = z^-alpha d/dz z^alpha d/dz: c0 + c1 int z^-alpha.
// Throws NonIntegerExponentGap when both constants are nonzero and alpha is not
// an integer (the two pieces then live on different grids).
LogSeries make_f0(const OperatorSpec &spec, const Scalar &c0, const Scalar &c1, int order);

// A f = L( sum C_i z^i f' + sum D_i z^(i-1) f [- z f''] ), returned on f's grid
// and clipped to f's order. Every output power exceeds the input's by at least 1.
LogSeries apply_A(const OperatorSpec &spec, const LogSeries &f);

} // namespace opsolve
