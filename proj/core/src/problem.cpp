#include <opsolve/problem.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <opsolve/errors.hpp>

namespace opsolve {

namespace {

Scalar lookup(const std::map<int, Scalar> &coeffs, int i, int cutoff)
{
    if (cutoff >= 0 && i > cutoff) {
        return Scalar(0);
    }
    const auto it = coeffs.find(i);
    return it == coeffs.end() ? Scalar(0) : it->second;
}

int highest_index(const std::map<int, Scalar> &coeffs)
{
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (!it->second.is_zero()) {
            return it->first;
        }
    }
    return -3;
}

// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Scalar> exact_sqrt(const mpq_class &x)
{
    const mpz_class &num = x.get_num();
    const mpz_class &den = x.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
        return std::nullopt;
    }
    mpz_class rn;
    mpz_class rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Scalar(mpq_class(rn, rd));
}

void write_laurent(std::ostream &os, const std::map<int, Scalar> &coeffs, int lift)
{
    bool any = false;
    for (const auto &[i, c] : coeffs) {
        if (c.is_zero()) {
            continue;
        }
        os << (any ? " + " : "") << "(" << c << ")";
        const int power = i + lift;
        if (power != 0) {
            os << " z^" << power;
        }
        any = true;
    }
    if (!any) {
        os << "0";
    }
}

} // namespace

Scalar OdeProblem::p_at(int i) const { return lookup(p, i, series_cutoff); }

Scalar OdeProblem::q_at(int i) const { return lookup(q, i, series_cutoff); }

bool OdeProblem::is_exact() const
{
    auto exact_value = [](const auto &entry) { return entry.second.is_exact(); };
    return std::all_of(p.begin(), p.end(), exact_value) && std::all_of(q.begin(), q.end(), exact_value)
        && std::all_of(rhs.begin(), rhs.end(),
                       [](const RhsTerm &t) { return t.sigma.is_exact() && t.coeff.is_exact(); });
}

LogSeries OdeProblem::rhs_series(const Scalar &top) const
{
    if (rhs.empty()) {
        throw std::logic_error("rhs_series on a homogeneous problem");
    }
    Scalar base = rhs.front().sigma + Scalar(rhs.front().power);
    int max_log = 0;
    for (const auto &term : rhs) {
        const Scalar e = term.sigma + Scalar(term.power);
        if (!(e - base).is_integer()) {
            throw NonIntegerExponentGap("forcing terms z^" + e.to_string() + " and z^" + base.to_string()
                                        + " do not share a grid");
        }
        base = std::min(base, e);
        max_log = std::max(max_log, term.log_power);
    }
    const Scalar span = top - base;
    if (!span.is_integer()) {
        throw NonIntegerExponentGap("forcing grid does not reach exponent " + top.to_string());
    }
    const int order = static_cast<int>(std::max(0L, span.to_long()));
    LogSeries out(base, order, max_log);
    for (const auto &term : rhs) {
        const long m = (term.sigma + Scalar(term.power) - base).to_long();
        if (m <= order) {
            out.add_to_coeff(static_cast<int>(m), term.log_power, term.coeff);
        }
    }
    return out;
}

void OdeProblem::validate() const
{
    for (const auto &[i, c] : p) {
        if (i < -1) {
            throw ParameterError("p index " + std::to_string(i) + " below -1: the singularity would not be regular");
        }
    }
    for (const auto &[i, c] : q) {
        if (i < -2) {
            throw ParameterError("q index " + std::to_string(i) + " below -2: the singularity would not be regular");
        }
    }
    for (const auto &term : rhs) {
        if (term.log_power < 0) {
            throw ParameterError("negative log power in forcing term");
        }
    }
}

bool OperatorSpec::is_exact() const
{
    auto exact_value = [](const Scalar &s) { return s.is_exact(); };
    return alpha.is_exact() && lambda.is_exact() && std::all_of(C.begin(), C.end(), exact_value)
        && std::all_of(D.begin(), D.end(), exact_value);
}

IndexData indicial(const OdeProblem &problem)
{
    problem.validate();
    // lambda^2 + (p_-1 - 1) lambda + q_-2 = 0
    const Scalar b = problem.p_at(-1) - Scalar(1);
    const Scalar c = problem.q_at(-2);
    const Scalar disc = b * b - Scalar(4) * c;
    if (disc < Scalar(0)) {
        throw ComplexRootsUnsupported("indicial discriminant " + disc.to_string() + " is negative");
    }

    std::optional<Scalar> root;
    if (disc.is_exact()) {
        root = exact_sqrt(disc.exact());
    }
    if (!root) {
        root = Scalar::from_double(std::sqrt(disc.to_double()));
    }

    IndexData out;
    out.lambda1 = (-b + *root) / Scalar(2);
    out.lambda2 = (-b - *root) / Scalar(2);
    out.delta = out.lambda1 - out.lambda2;
    out.double_root = out.delta.near(0);
    out.integer_gap = out.delta.is_integer();
    out.alpha1 = Scalar(2) * out.lambda1 + problem.p_at(-1);
    out.alpha2 = Scalar(2) * out.lambda2 + problem.p_at(-1);
    return out;
}

OperatorSpec transform_at(const OdeProblem &problem, const Scalar &lambda)
{
    problem.validate();
    OperatorSpec spec;
    spec.kind = problem.kind;
    spec.lambda = lambda;
    spec.alpha = Scalar(2) * lambda + problem.p_at(-1);
    spec.has_z_d2_term = problem.kind == SingularityKind::ThreePoint;

    int top = std::max({highest_index(problem.p), highest_index(problem.q) + 1, 0});
    if (problem.series_cutoff >= 0) {
        top = problem.series_cutoff + 1;
    }
    spec.C.resize(static_cast<std::size_t>(top) + 1);
    spec.D.resize(static_cast<std::size_t>(top) + 1);
    for (int i = 0; i <= top; ++i) {
        spec.C[i] = problem.p_at(i);
        spec.D[i] = lambda * problem.p_at(i) + problem.q_at(i - 1);
    }
    if (spec.has_z_d2_term) {
        const Scalar lambda_term = lambda * (Scalar(1) - lambda);
        spec.C[0] -= Scalar(2) * lambda;
        spec.D[0] += lambda_term;
    }
    return spec;
}

OperatorSpec transform(const OdeProblem &problem, RootChoice root)
{
    const IndexData idx = indicial(problem);
    return transform_at(problem, idx.root(root));
}

OdeProblem map_gegenbauer(const Scalar &beta, const Scalar &degree)
{
    OdeProblem out;
    out.kind = SingularityKind::ThreePoint;
    out.p[-1] = beta + Scalar(1);
    out.p[0] = Scalar(-2) * (beta + Scalar(1));
    out.q[-1] = degree * (degree + Scalar(2) * beta + Scalar(1));
    return out;
}

std::string describe(const OdeProblem &problem)
{
    std::ostringstream os;
    const bool three = problem.kind == SingularityKind::ThreePoint;
    const int lift = three ? 1 : 0;
    os << (three ? "z(1-z) psi''" : "psi''") << " + [";
    write_laurent(os, problem.p, lift);
    os << "] psi' + [";
    write_laurent(os, problem.q, lift);
    os << "] psi = ";
    if (problem.rhs.empty()) {
        os << "0";
    }
    for (std::size_t i = 0; i < problem.rhs.size(); ++i) {
        const auto &t = problem.rhs[i];
        os << (i ? " + " : "") << "(" << t.coeff << ") z^" << (t.sigma + Scalar(t.power));
        if (t.log_power > 0) {
            os << " log(z)^" << t.log_power;
        }
    }
    return os.str();
}

namespace problems {

OdeProblem bessel(const Scalar &nu)
{
    OdeProblem out;
    out.p[-1] = Scalar(1);
    out.q[-2] = -(nu * nu);
    out.q[0] = Scalar(1);
    return out;
}

OdeProblem confluent(const Scalar &a, const Scalar &c)
{
    OdeProblem out;
    out.p[-1] = c;
    out.p[0] = Scalar(-1);
    out.q[-1] = -a;
    return out;
}

OdeProblem gauss(const Scalar &a, const Scalar &b, const Scalar &c)
{
    OdeProblem out;
    out.kind = SingularityKind::ThreePoint;
    out.p[-1] = c;
    out.p[0] = -(a + b + Scalar(1));
    out.q[-1] = -(a * b);
    return out;
}

double struve_forcing_scale(double nu)
{
    return std::pow(2.0, 1.0 - nu) / (std::sqrt(std::numbers::pi) * std::tgamma(nu + 0.5));
}

OdeProblem struve(const Scalar &nu, const Scalar &scale)
{
    OdeProblem out = bessel(nu);
    out.rhs.push_back(RhsTerm{nu - Scalar(1), 0, 0, scale});
    return out;
}

OdeProblem struve(const Scalar &nu)
{
    return struve(nu, Scalar::from_double(struve_forcing_scale(nu.to_double())));
}

OdeProblem harmonic(const Scalar &omega, bool hyperbolic)
{
    OdeProblem out;
    const Scalar w2 = omega * omega;
    out.q[0] = hyperbolic ? -w2 : w2;
    return out;
}

} // namespace problems

} // namespace opsolve
