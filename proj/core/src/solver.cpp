#include <opsolve/solver.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <opsolve/errors.hpp>
#include <opsolve/operators.hpp>

namespace opsolve {

namespace {

Scalar forcing_base(const OdeProblem &problem)
{
    Scalar base = problem.rhs.front().sigma + Scalar(problem.rhs.front().power);
    for (const auto &term : problem.rhs) {
        base = std::min(base, term.sigma + Scalar(term.power));
    }
    return base;
}

// Laurent polynomial of p or q as it multiplies psi' or psi in the original
// equation. The zero entry at `lowest` pins the base exponent of the product.
std::vector<std::pair<int, Scalar>> laurent(const std::map<int, Scalar> &coeffs, int cutoff, int lowest, int lift)
{
    std::vector<std::pair<int, Scalar>> poly{{lowest + lift, Scalar(0)}};
    for (const auto &[i, c] : coeffs) {
        if (!c.is_zero() && (cutoff < 0 || i <= cutoff)) {
            poly.emplace_back(i + lift, c);
        }
    }
    return poly;
}

bool is_bessel_of_order(const OdeProblem &problem, int n)
{
    if (problem.kind != SingularityKind::TwoPoint || !problem.rhs.empty()) {
        return false;
    }
    const OdeProblem reference = problems::bessel(Scalar(n));
    auto same = [](const std::map<int, Scalar> &a, const std::map<int, Scalar> &b) {
        for (int i = -2; i <= 16; ++i) {
            const auto ia = a.find(i);
            const auto ib = b.find(i);
            const Scalar va = ia == a.end() ? Scalar(0) : ia->second;
            const Scalar vb = ib == b.end() ? Scalar(0) : ib->second;
            if (!(va == vb)) {
                return false;
            }
        }
        return std::all_of(a.begin(), a.end(), [](const auto &e) { return e.first <= 16 || e.second.is_zero(); });
    };
    return same(problem.p, reference.p) && same(problem.q, reference.q);
}

} // namespace

std::string Solution::describe() const
{
    std::ostringstream os;
    os << "psi = z^(" << lambda << ") * f, f with base exponent " << f.sigma() << ", order " << f.order()
       << ", log power " << f.max_log_power() << ", " << iterations_used << " iterations, "
       << (exact ? "exact" : "float");
    return os.str();
}

LogSeries neumann_apply_resolvent(const OperatorSpec &spec, const LogSeries &g, int order, int *iterations)
{
    if (g.order() < order) {
        throw std::invalid_argument("neumann_apply_resolvent: input known only to order " + std::to_string(g.order()));
    }
    LogSeries term = g.truncated(order);
    LogSeries sum = term;
    int used = 0;
    for (int j = 1; j <= order; ++j) {
        term = scale(Scalar(-1), apply_A(spec, term));
        if (term.is_zero()) {
            break;
        }
        sum = sum + term;
        used = j;
    }
    if (iterations != nullptr) {
        *iterations = used;
    }
    return sum.trimmed();
}

Solution solve(const OdeProblem &problem, RootChoice root, const Scalar &c0, const Scalar &c1, int order)
{
    if (order < 0) {
        throw std::invalid_argument("solve: negative order");
    }
    const IndexData idx = indicial(problem);
    const OperatorSpec spec = transform_at(problem, idx.root(root));

    std::optional<LogSeries> g;
    if (!c0.is_zero() || !c1.is_zero()) {
        g = make_f0(spec, c0, c1, order);
    }
    if (!problem.rhs.empty()) {
        const Scalar shift = problem.kind == SingularityKind::TwoPoint ? -spec.lambda : -spec.lambda - Scalar(1);
        const Scalar base = forcing_base(problem);
        const LogSeries forcing = problem.rhs_series(base + Scalar(order)).shifted(shift);
        const LogSeries particular = apply_L(spec, forcing);
        g = g ? (*g + particular) : particular;
    }
    if (!g) {
        g = LogSeries(Scalar(0), order);
    }

    Solution sol;
    sol.lambda = spec.lambda;
    sol.f = neumann_apply_resolvent(spec, *g, order, &sol.iterations_used);
    sol.exact = sol.f.is_exact() && spec.lambda.is_exact();
    sol.residual_leading_order = residual(problem, sol);
    return sol;
}

LogSecondSolution solve_log_second(const OdeProblem &problem, int n, int order)
{
    const IndexData idx = indicial(problem);
    if (!idx.integer_gap || idx.double_root) {
        throw ParameterError("log second solution needs a positive integer index gap, got " + idx.delta.to_string());
    }
    LogSecondSolution out;
    out.solution = solve(problem, RootChoice::First, Scalar(0), Scalar(1), order);
    if (n < 1 || !(idx.delta == Scalar(2 * n)) || !is_bessel_of_order(problem, n)) {
        return out;
    }

    Scalar factorial(1);
    for (int k = 2; k <= n; ++k) {
        factorial *= Scalar(k);
    }
    Scalar c1 = Scalar(1) / (pow(Scalar(4), n) * factorial * factorial);
    Scalar c2(0);
    for (int m = 0; 2 * m <= order - 2 * n; ++m) {
        out.log_part.push_back(c1);
        out.plain_part.push_back(c2);
        const Scalar a(1 + m);
        const Scalar b(1 + m + n);
        const Scalar next_c2 = (Scalar(2) * a * b * c2 - c1 * Scalar(2 + 2 * m + n)) / (Scalar(2) * a * a * b * b);
        c1 = c1 / (a * b);
        c2 = next_c2;
    }
    return out;
}

std::optional<int> residual(const OdeProblem &problem, const Solution &sol)
{
    const bool three = problem.kind == SingularityKind::ThreePoint;
    const int lift = three ? 1 : 0;
    const int order = sol.f.order();
    const LogSeries psi = sol.psi();
    const LogSeries d1 = differentiate(psi);
    const LogSeries d2 = differentiate(d1);
    const Scalar base = psi.sigma() - Scalar(2 - lift);

    std::vector<LogSeries> parts;
    parts.push_back(three ? mul_laurent(d2, {{1, Scalar(1)}, {2, Scalar(-1)}}) : d2);
    parts.push_back(mul_laurent(d1, laurent(problem.p, problem.series_cutoff, -1, lift)));
    parts.push_back(mul_laurent(psi, laurent(problem.q, problem.series_cutoff, -2, lift)));
    if (!problem.rhs.empty()) {
        parts.push_back(scale(Scalar(-1), problem.rhs_series(base + Scalar(order))));
    }

    Scalar low = base;
    int max_log = 0;
    for (const auto &part : parts) {
        low = std::min(low, part.sigma());
        max_log = std::max(max_log, part.max_log_power());
    }
    const int offset = static_cast<int>((base - low).to_long());
    for (auto &part : parts) {
        part = part.realigned(low);
    }

    for (int m = 0; m <= order + offset; ++m) {
        for (int k = 0; k <= max_log; ++k) {
            Scalar total(0);
            double magnitude = 0.0;
            bool known = true;
            for (const auto &part : parts) {
                if (m > part.order()) {
                    known = false;
                    break;
                }
                const Scalar c = part.coeff(m, k);
                total += c;
                magnitude += std::abs(c.to_double());
            }
            if (!known) {
                return std::nullopt;
            }
            const bool vanishes = total.is_exact() ? total.is_zero()
                                                   : std::abs(total.to_double()) <= 1e-10 * magnitude;
            if (!vanishes) {
                return m - offset;
            }
        }
    }
    return std::nullopt;
}

double contraction_report(const OperatorSpec &spec, double z0)
{
    constexpr int probe_order = 16;
    std::vector<LogSeries> probes{
        LogSeries::monomial(Scalar(1), Scalar(0), probe_order),
        LogSeries::monomial(Scalar(1), Scalar(1), probe_order),
        LogSeries::monomial(Scalar(1), Scalar(2), probe_order),
    };
    if (spec.alpha.is_integer() && spec.alpha.to_long() >= 1) {
        probes.push_back(LogSeries::monomial(Scalar(1), Scalar(0), probe_order, 1));
    }
    const double alpha = spec.alpha.to_double();
    double worst = 0.0;
    for (const auto &probe : probes) {
        const double denominator = weighted_norm_estimate(probe, alpha, z0);
        const double numerator = weighted_norm_estimate(apply_A(spec, probe), alpha, z0);
        worst = std::max(worst, numerator / denominator);
    }
    return worst;
}

} // namespace opsolve
