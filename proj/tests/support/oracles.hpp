#pragma once

// Test-side references. These use only the problem data and rational
// arithmetic, never the operators or the solver, so agreement is not circular.

#include <random>
#include <vector>

#include <gmpxx.h>

#include <opsolve/problem.hpp>

namespace oracle {

inline mpq_class poch(const mpq_class &x, int n)
{
    mpq_class out = 1;
    for (int i = 0; i < n; ++i) {
        out *= x + i;
    }
    return out;
}

inline mpq_class fact(int n) { return poch(1, n); }

inline mpq_class q(const opsolve::Scalar &s) { return s.exact(); }

// Frobenius recurrence after clearing denominators. With P_j = p_(j-1),
// Q_j = q_(j-2) and psi = sum a_n z^(mu+n):
//
//   TwoPoint   z^2 psi'' + z P psi' + Q psi = z^2 F
//   ThreePoint z^2 psi'' - z^3 psi'' + z P psi' + Q psi = z F
//
// gives a_n I(mu+n) = rhs_n - sum_{j>=1} a_(n-j) (P_j (mu+n-j) + Q_j) [+ a_(n-1)(mu+n-1)(mu+n-2)]
// with I(x) = x(x-1) + P_0 x + Q_0. `forcing` holds the coefficients of the
// cleared right-hand side on the same grid, or is empty.
inline std::vector<mpq_class> frobenius(const opsolve::OdeProblem &problem, const mpq_class &mu, int order,
                                        const mpq_class &a0, const std::vector<mpq_class> &forcing = {})
{
    auto P = [&](int j) { return q(problem.p_at(j - 1)); };
    auto Q = [&](int j) { return q(problem.q_at(j - 2)); };
    const bool three = problem.kind == opsolve::SingularityKind::ThreePoint;
    std::vector<mpq_class> a(static_cast<std::size_t>(order) + 1, 0);
    for (int n = 0; n <= order; ++n) {
        const mpq_class x = mu + n;
        const mpq_class indicial = x * (x - 1) + P(0) * x + Q(0);
        mpq_class rhs = n < static_cast<int>(forcing.size()) ? forcing[n] : mpq_class(0);
        for (int j = 1; j <= n; ++j) {
            rhs -= a[n - j] * (P(j) * (x - j) + Q(j));
        }
        if (three && n >= 1) {
            rhs += a[n - 1] * (x - 1) * (x - 2);
        }
        if (n == 0 && forcing.empty()) {
            a[0] = a0;
        } else if (indicial == 0) {
            if (rhs != 0) {
                throw std::runtime_error("oracle: resonance");
            }
            a[n] = 0;
        } else {
            a[n] = rhs / indicial;
        }
    }
    return a;
}

// Random rational in [lo, hi) with denominator at most `den`, avoiding the
// excluded integers.
inline mpq_class random_rational(std::mt19937 &rng, int lo, int hi, int den)
{
    std::uniform_int_distribution<int> d(2, den);
    const int denominator = d(rng);
    std::uniform_int_distribution<int> n(lo * denominator, hi * denominator - 1);
    mpq_class out(n(rng), denominator);
    out.canonicalize();
    return out;
}

inline mpq_class random_non_integer(std::mt19937 &rng, int lo, int hi, int den)
{
    for (;;) {
        const mpq_class out = random_rational(rng, lo, hi, den);
        if (out.get_den() != 1) {
            return out;
        }
    }
}

} // namespace oracle
