#pragma once

#include <map>
#include <string>
#include <vector>

#include <opsolve/log_series.hpp>
#include <opsolve/scalar.hpp>

namespace opsolve {

// TwoPoint:   psi'' + p(z) psi' + q(z) psi = F,            p = sum_{i>=-1} p_i z^i,   q = sum_{i>=-2} q_i z^i
// ThreePoint: z(1-z) psi'' + p(z) psi' + q(z) psi = F,     p = z sum_{i>=-1} p_i z^i, q = z sum_{i>=-2} q_i z^i
enum class SingularityKind { TwoPoint, ThreePoint };

enum class RootChoice { First = 1, Second = 2 };

// coeff * z^(sigma + power) * (log z)^log_power
struct RhsTerm {
    Scalar sigma;
    int power = 0;
    int log_power = 0;
    Scalar coeff = Scalar(1);

    friend bool operator==(const RhsTerm &, const RhsTerm &) = default;
};

struct OdeProblem {
    SingularityKind kind = SingularityKind::TwoPoint;
    std::map<int, Scalar> p;
    std::map<int, Scalar> q;
    std::vector<RhsTerm> rhs;
    // Highest Laurent index of p and q that takes part; -1 keeps every entry.
    int series_cutoff = -1;

    [[nodiscard]] Scalar p_at(int i) const;
    [[nodiscard]] Scalar q_at(int i) const;
    [[nodiscard]] bool homogeneous() const { return rhs.empty(); }
    // False as soon as any coefficient or forcing term is a float.
    [[nodiscard]] bool is_exact() const;
    // The forcing term on the grid of its lowest exponent, known through absolute
    // exponent `top`. Throws NonIntegerExponentGap for incommensurable terms.
    [[nodiscard]] LogSeries rhs_series(const Scalar &top) const;

    // Checks the index ranges of p, q and rhs; throws ParameterError.
    void validate() const;

    friend bool operator==(const OdeProblem &, const OdeProblem &) = default;
};

struct IndexData {
    Scalar lambda1;
    Scalar lambda2;
    Scalar delta;
    bool integer_gap = false;
    bool double_root = false;
    Scalar alpha1;
    Scalar alpha2;

    [[nodiscard]] const Scalar &root(RootChoice choice) const
    {
        return choice == RootChoice::First ? lambda1 : lambda2;
    }
};

// Data of the equation for f after psi = z^lambda f:
//
//   f'' + (alpha/z + sum C_i z^i) f' + sum D_i z^(i-1) f  [- z f'']  = z^-lambda F  [z^(-lambda-1) F]
//
// The bracketed parts apply to the ThreePoint kind.
struct OperatorSpec {
    Scalar alpha;
    std::vector<Scalar> C;
    std::vector<Scalar> D;
    bool has_z_d2_term = false;
    Scalar lambda;
    SingularityKind kind = SingularityKind::TwoPoint;

    [[nodiscard]] bool is_exact() const;
};

IndexData indicial(const OdeProblem &problem);

OperatorSpec transform(const OdeProblem &problem, RootChoice root);
OperatorSpec transform_at(const OdeProblem &problem, const Scalar &lambda);

// (x^2-1) f'' + 2(beta+1) x f' - g(g+2beta+1) f = 0 under x = 2z - 1:
// z(1-z) f'' + (beta+1)(1-2z) f' + g(g+2beta+1) f = 0.
OdeProblem map_gegenbauer(const Scalar &beta, const Scalar &degree);

std::string describe(const OdeProblem &problem);

namespace problems {

// psi'' + psi'/z + (1 - nu^2/z^2) psi = 0
OdeProblem bessel(const Scalar &nu);
// z psi'' + (c - z) psi' - a psi = 0
OdeProblem confluent(const Scalar &a, const Scalar &c);
// z(1-z) psi'' + (c - (a+b+1) z) psi' - ab psi = 0
OdeProblem gauss(const Scalar &a, const Scalar &b, const Scalar &c);
// Bessel operator with forcing scale * z^(nu-1). The Struve function H_nu needs
// scale = 2^(1-nu) / (sqrt(pi) Gamma(nu + 1/2)); see struve_forcing_scale.
OdeProblem struve(const Scalar &nu, const Scalar &scale);
OdeProblem struve(const Scalar &nu);
double struve_forcing_scale(double nu);
// psi'' + omega^2 psi = 0, or psi'' - omega^2 psi = 0 when hyperbolic.
OdeProblem harmonic(const Scalar &omega, bool hyperbolic = false);

} // namespace problems

} // namespace opsolve
