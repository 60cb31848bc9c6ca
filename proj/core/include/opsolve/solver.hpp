#pragma once

#include <optional>
#include <string>
#include <vector>

#include <opsolve/log_series.hpp>
#include <opsolve/problem.hpp>

namespace opsolve {

struct Solution {
    Scalar lambda;
    LogSeries f;
    int iterations_used = 0;
    std::optional<int> residual_leading_order;
    bool exact = true;

    // psi = z^lambda f
    [[nodiscard]] LogSeries psi() const { return f.shifted(lambda); }
    [[nodiscard]] std::string describe() const;
};

// sum_{j=0..order} (-A)^j g. Each application of A raises the lowest power by at
// least one, so the partial sum is final on every coefficient up to `order`.
LogSeries neumann_apply_resolvent(const OperatorSpec &spec, const LogSeries &g, int order,
                                  int *iterations = nullptr);

// f = (1 + A)^-1 (L z^-lambda F + f0(c0, c1)); a log term appears on its own when
// the c1 part resonates with the other index.
Solution solve(const OdeProblem &problem, RootChoice root, const Scalar &c0, const Scalar &c1, int order);

struct LogSecondSolution {
    Solution solution;
    // Bessel normal form only: at index 2n + 2m the solution carries
    // (-1)^m 4^-m (log_part[m] log z + plain_part[m]).
    std::vector<Scalar> log_part;
    std::vector<Scalar> plain_part;
};

// Second solution for an integer index gap, seeded with c1 = 1 at the larger
// root. When the gap equals 2n and the problem is Bessel of order n, the
// closed-form recurrence values are attached for cross-checking.
LogSecondSolution solve_log_second(const OdeProblem &problem, int n, int order);

// Substitutes psi = z^lambda f into the original equation. The result is known on
// relative indices 0..order above exponent lambda + sigma - 2 (TwoPoint) or
// lambda + sigma - 1 (ThreePoint); returns the first index whose coefficient does
// not vanish, or nullopt when all of them do.
std::optional<int> residual(const OdeProblem &problem, const Solution &sol);

// Largest ratio |A f|_v / |f|_v over the probes 1, z, z^2 (and log z when alpha
// is a positive integer), with v = z^alpha sampled on (0, z0].
double contraction_report(const OperatorSpec &spec, double z0);

} // namespace opsolve
