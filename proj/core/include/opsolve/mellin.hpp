#pragma once

#include <optional>
#include <string>

#include <opsolve/gamma.hpp>
#include <opsolve/log_series.hpp>
#include <opsolve/problem.hpp>

namespace opsolve {

enum class FamilyTag {
    Exp,
    TrigHyp,
    BesselRegular,
    BesselIrregular,
    BesselLogSecond,
    Hyp1F1Regular,
    Hyp1F1Irregular,
    Hyp2F1Regular,
    Hyp2F1Irregular,
    Struve,
};

// A solved equation together with the seed the resolvent acts on. Every family
// reproduces the f of the corresponding solve (psi = z^lambda f):
//
//   Exp              e^z                                    seed 1, A = -integration
//   TrigHyp          cos(wz), sin(wz)/w, cosh, sinh          seed 1 or z
//   BesselRegular    Gamma(1+nu)(z/2)^-nu J_nu                seed 1 at lambda = nu
//   BesselIrregular  seed z^-2nu/(-2nu) at lambda = nu
//   BesselLogSecond  seed z^-2n/(-2n) at lambda = n
//   Hyp1F1Regular    1F1(a;c;z)                              seed 1 at lambda = 0
//   Hyp1F1Irregular  z^(1-c)/(1-c) 1F1(1+a-c;2-c;z)          seed z^(1-c)/(1-c) at lambda = 0
//   Hyp2F1Regular    2F1(a,b;c;z)
//   Hyp2F1Irregular  z^(1-c)/(1-c) 2F1(1+a-c,1+b-c;2-c;z)
//   Struve           z^-nu H_nu                              seed L z^-nu F at lambda = nu
struct CatalogFamily {
    FamilyTag tag = FamilyTag::Exp;
    Scalar nu;
    Scalar a;
    Scalar b;
    Scalar c;
    Scalar omega = Scalar(1);
    int n = 0;
    bool hyperbolic = false;
    bool odd = false;

    static CatalogFamily exp();
    static CatalogFamily trig(const Scalar &omega, bool hyperbolic, bool odd);
    static CatalogFamily bessel(const Scalar &nu);
    static CatalogFamily bessel_irregular(const Scalar &nu);
    static CatalogFamily bessel_log_second(int n);
    static CatalogFamily hyp1f1(const Scalar &a, const Scalar &c, bool irregular = false);
    static CatalogFamily hyp2f1(const Scalar &a, const Scalar &b, const Scalar &c, bool irregular = false);
    static CatalogFamily struve(const Scalar &nu);

    // ParameterError outside the family's validity domain.
    void validate() const;
    [[nodiscard]] std::string name() const;
};

enum class Branch { Principal };

// How the line beyond +-half_height is handled. Extrapolate sums half-period
// blocks and accelerates them; it refuses integrands that grow along the line.
// Deform rotates both tails into the left half-plane, away from the poles on the
// real axis, which assigns the analytically continued value to a divergent
// line integral. Auto extrapolates and deforms only growing integrands.
enum class TailMode { Auto, Extrapolate, Deform };

struct ContourSpec {
    double abscissa = 0.5;
    double half_height = 40.0;
    double step = 0.05;
    double tolerance = 1e-8;
    // log(-z) = ln z + i pi; (-1)^v = e^{i pi v}.
    Branch branch = Branch::Principal;
    // Blocks of about half an oscillation period summed beyond +-half_height
    // before epsilon extrapolation.
    int tail_panels = 28;
    TailMode tail_mode = TailMode::Auto;
};

struct ContourResult {
    double value = 0.0;
    double imag = 0.0;
    double tail_estimate = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    // Height at which the tails left the line; 0 when they were extrapolated.
    double deformed_at = 0.0;
    bool warning = false;
    std::string message;
};

struct Strip {
    double lo = 0.0;
    double hi = 1.0;
};

// Open interval of abscissas separating the left poles (of Gamma(s)) from the
// right ones, intersected with (0, 1).
Strip fundamental_strip(const CatalogFamily &family);
// Midpoint of the strip; the step keeps the trapezoid error near e^-40.
ContourSpec recommended_contour(const CatalogFamily &family);

// Gamma(s) Gamma(1-s) Y(-s), where A^v seed = Y(v). The residue at s = -j is
// (-1)^j A^j seed, so (1/2 pi i) times the integral over Re s = a is the family's f.
cplx mellin_integrand(const CatalogFamily &family, cplx s, double z);

// Extrapolated tails: trapezoid sum over the nodes a + i k h, |k h| <= T, plus
// the two tails beyond T, accelerated by the epsilon algorithm.
// Deformed tails: Gauss-Legendre panels of width 20h on the segment up to the
// height where the integrand starts to grow (at most T), then along rays
// leaving at 135 degrees.
// AccuracyError when a growing integrand meets TailMode::Extrapolate or the
// tails do not settle.
ContourResult contour_eval(const CatalogFamily &family, double z, const ContourSpec &spec);

// A^v (s0 z^q) = s0 (coeff + log_coeff log z) z^(q + shift), for the family's
// unit seed s0 z^q.
struct PowerCoeff {
    cplx coeff;
    cplx log_coeff;
    cplx shift;
};
PowerCoeff fractional_power_coeff(const CatalogFamily &family, cplx v);

struct FamilySeed {
    LogSeries unit;
    // Struve only: the irrational constant 2^-nu / (sqrt(pi) Gamma(3/2+nu)).
    double prefactor = 1.0;
};
FamilySeed family_seed(const CatalogFamily &family, int order);

// A^n applied to the unit seed from closed-form Pochhammer ratios, on the
// seed's grid up to `order`. Exact for rational parameters.
LogSeries integer_power_coeff(const CatalogFamily &family, int n, int order);

// The transformed-equation data whose A the family iterates; nullopt for Exp.
std::optional<OperatorSpec> family_operator(const CatalogFamily &family);
// One application of the family's A.
LogSeries apply_family_A(const CatalogFamily &family, const LogSeries &f);

// prefactor * sum_j (-A)^j seed through `order`: the series whose residues the
// contour integral sums. Float as soon as the prefactor is irrational (Struve).
LogSeries family_series(const CatalogFamily &family, int order);

} // namespace opsolve
