#include <opsolve/mellin.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include <opsolve/catalog.hpp>
#include <opsolve/errors.hpp>
#include <opsolve/operators.hpp>
#include <opsolve/solver.hpp>

namespace opsolve {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double euler_gamma = std::numbers::egamma;
const cplx I(0.0, 1.0);

// Product of gamma factors and exponentials kept as a log sum, so that
// e^{-pi |t|} and e^{+pi |t|} pieces cancel before exponentiation.
class GammaProduct {
public:
    void mul_gamma(cplx x) { log_ += complex_lgamma(x); }
    void div_gamma(cplx x)
    {
        if (at_gamma_pole(x)) {
            zero_ = true;
        } else {
            log_ -= complex_lgamma(x);
        }
    }
    void mul_exp(cplx e) { log_ += e; }
    [[nodiscard]] cplx value() const { return zero_ ? cplx(0.0) : std::exp(log_); }

private:
    cplx log_ = 0.0;
    bool zero_ = false;
};

double d(const Scalar &x) { return x.to_double(); }

bool is_nonpositive_integer(const Scalar &x) { return x.is_integer() && x.to_long() <= 0; }

// (x)_v = Gamma(x+v)/Gamma(x), by the finite product when v is a non-negative integer.
cplx cpoch(cplx x, cplx v)
{
    const double vr = v.real();
    if (std::abs(v.imag()) < 1e-14 && vr >= 0.0 && std::abs(vr - std::nearbyint(vr)) < 1e-14) {
        cplx out = 1.0;
        for (long k = 0; k < std::lround(vr); ++k) {
            out *= x + static_cast<double>(k);
        }
        return out;
    }
    if (at_gamma_pole(x)) {
        if (at_gamma_pole(x + v)) {
            throw PoleError("Pochhammer ratio of two gamma poles");
        }
        return 0.0;
    }
    return complex_gamma(x + v) * rgamma(x);
}

// (-1)^v under the e^{i pi v} convention.
cplx sign_power(cplx v) { return std::exp(I * pi * v); }

struct HypParams {
    double a;
    double b;
    double c;
    double prefactor_power; // exponent q of z^q / q in front, 0 when regular
};

HypParams hyp_params(const CatalogFamily &f)
{
    const bool two = f.tag == FamilyTag::Hyp2F1Regular || f.tag == FamilyTag::Hyp2F1Irregular;
    const bool irregular = f.tag == FamilyTag::Hyp1F1Irregular || f.tag == FamilyTag::Hyp2F1Irregular;
    const double a = d(f.a);
    const double b = two ? d(f.b) : 0.0;
    const double c = d(f.c);
    if (!irregular) {
        return {a, b, c, 0.0};
    }
    return {1.0 + a - c, 1.0 + b - c, 2.0 - c, 1.0 - c};
}

// Exact upper/lower parameters of the hypergeometric series the seed expands into.
struct ExactHyp {
    Scalar a;
    Scalar b;
    Scalar c;
};

ExactHyp exact_hyp(const CatalogFamily &f)
{
    const bool irregular = f.tag == FamilyTag::Hyp1F1Irregular || f.tag == FamilyTag::Hyp2F1Irregular;
    if (!irregular) {
        return {f.a, f.b, f.c};
    }
    const Scalar one(1);
    return {one + f.a - f.c, one + f.b - f.c, Scalar(2) - f.c};
}

bool is_hyp(FamilyTag tag)
{
    return tag == FamilyTag::Hyp1F1Regular || tag == FamilyTag::Hyp1F1Irregular || tag == FamilyTag::Hyp2F1Regular
        || tag == FamilyTag::Hyp2F1Irregular;
}

bool is_two_upper(FamilyTag tag) { return tag == FamilyTag::Hyp2F1Regular || tag == FamilyTag::Hyp2F1Irregular; }

// Coefficients of the integer-order log solution at m = v - n, continued to complex m.
void log_second_coeffs(int n, cplx m, cplx &c1, cplx &c2)
{
    double nfact = 1.0;
    for (int k = 2; k <= n; ++k) {
        nfact *= k;
    }
    const double base = 1.0 / (std::pow(4.0, n) * nfact);
    const cplx r1 = rgamma(m + 1.0);
    const cplx r2 = rgamma(m + static_cast<double>(n) + 1.0);
    c1 = base * r1 * r2;
    c2 = -0.5 * base
       * ((euler_gamma - digamma(static_cast<double>(n) + 1.0)) * r1 * r2 + digamma_over_gamma(m + 1.0) * r2
          + r1 * digamma_over_gamma(m + static_cast<double>(n) + 1.0));
}

// Epsilon algorithm on partial sums: the last even-column entry.
cplx wynn_limit(const std::vector<cplx> &sums)
{
    std::vector<cplx> previous(sums.size() + 1, 0.0);
    std::vector<cplx> current = sums;
    cplx best = sums.back();
    int column = 0;
    while (current.size() > 1) {
        std::vector<cplx> next(current.size() - 1);
        for (std::size_t i = 0; i + 1 < current.size(); ++i) {
            const cplx diff = current[i + 1] - current[i];
            if (std::abs(diff) <= 1e-300 + 1e-16 * std::abs(current[i + 1])) {
                // Entries agree to roundoff: an even column has converged, an
                // odd one cannot be continued.
                return column % 2 == 0 ? current[i + 1] : best;
            }
            next[i] = previous[i + 1] + 1.0 / diff;
        }
        previous = std::move(current);
        current = std::move(next);
        ++column;
        if (column % 2 == 0) {
            best = current.back();
        }
    }
    return best;
}

// Limit of the partial sums and its change when the last two are dropped.
std::pair<cplx, double> extrapolate(const std::vector<cplx> &sums)
{
    if (sums.empty()) {
        return {0.0, 0.0};
    }
    if (sums.size() < 5) {
        const double err = sums.size() > 1 ? std::abs(sums.back() - sums[sums.size() - 2]) : std::abs(sums.back());
        return {sums.back(), err};
    }
    const cplx full = wynn_limit(sums);
    const cplx shorter = wynn_limit(std::vector<cplx>(sums.begin(), sums.end() - 2));
    return {full, std::abs(full - shorter)};
}

LogSeries single_term(const Scalar &sigma, int order, int index, const Scalar &coeff, const Scalar &log_coeff = Scalar(0))
{
    LogSeries out(sigma, order, log_coeff.is_zero() ? 0 : 1);
    if (index <= order) {
        out.set_coeff(index, 0, coeff);
        if (!log_coeff.is_zero()) {
            out.set_coeff(index, 1, log_coeff);
        }
    }
    return out;
}

Scalar factorial(int n) { return pochhammer(Scalar(1), n); }

} // namespace

CatalogFamily CatalogFamily::exp() { return {}; }

CatalogFamily CatalogFamily::trig(const Scalar &omega, bool hyperbolic, bool odd)
{
    CatalogFamily f;
    f.tag = FamilyTag::TrigHyp;
    f.omega = omega;
    f.hyperbolic = hyperbolic;
    f.odd = odd;
    return f;
}

CatalogFamily CatalogFamily::bessel(const Scalar &nu)
{
    CatalogFamily f;
    f.tag = FamilyTag::BesselRegular;
    f.nu = nu;
    return f;
}

CatalogFamily CatalogFamily::bessel_irregular(const Scalar &nu)
{
    CatalogFamily f;
    f.tag = FamilyTag::BesselIrregular;
    f.nu = nu;
    return f;
}

CatalogFamily CatalogFamily::bessel_log_second(int n)
{
    CatalogFamily f;
    f.tag = FamilyTag::BesselLogSecond;
    f.n = n;
    f.nu = Scalar(n);
    return f;
}

CatalogFamily CatalogFamily::hyp1f1(const Scalar &a, const Scalar &c, bool irregular)
{
    CatalogFamily f;
    f.tag = irregular ? FamilyTag::Hyp1F1Irregular : FamilyTag::Hyp1F1Regular;
    f.a = a;
    f.c = c;
    return f;
}

CatalogFamily CatalogFamily::hyp2f1(const Scalar &a, const Scalar &b, const Scalar &c, bool irregular)
{
    CatalogFamily f;
    f.tag = irregular ? FamilyTag::Hyp2F1Irregular : FamilyTag::Hyp2F1Regular;
    f.a = a;
    f.b = b;
    f.c = c;
    return f;
}

CatalogFamily CatalogFamily::struve(const Scalar &nu)
{
    CatalogFamily f;
    f.tag = FamilyTag::Struve;
    f.nu = nu;
    return f;
}

void CatalogFamily::validate() const
{
    switch (tag) {
    case FamilyTag::Exp:
        return;
    case FamilyTag::TrigHyp:
        if (omega.is_zero()) {
            throw ParameterError("trig family needs a nonzero frequency");
        }
        return;
    case FamilyTag::BesselRegular:
        if (nu < Scalar(0)) {
            throw ParameterError("regular Bessel family needs nu >= 0");
        }
        return;
    case FamilyTag::BesselIrregular:
        if (nu.is_integer() || nu < Scalar(0)) {
            throw ParameterError("irregular Bessel family needs positive non-integer nu, got " + nu.to_string());
        }
        return;
    case FamilyTag::BesselLogSecond:
        if (n < 1) {
            throw ParameterError("log second solution needs n >= 1");
        }
        return;
    case FamilyTag::Hyp1F1Regular:
    case FamilyTag::Hyp2F1Regular:
        if (is_nonpositive_integer(c)) {
            throw ParameterError("c = " + c.to_string() + " is a non-positive integer");
        }
        return;
    case FamilyTag::Hyp1F1Irregular:
    case FamilyTag::Hyp2F1Irregular:
        if (c.is_integer()) {
            throw ParameterError("irregular hypergeometric family needs non-integer c, got " + c.to_string());
        }
        return;
    case FamilyTag::Struve:
        if (nu <= Scalar::rational(-3, 2)) {
            throw ParameterError("Struve family needs nu > -3/2");
        }
        return;
    }
}

std::string CatalogFamily::name() const
{
    switch (tag) {
    case FamilyTag::Exp:
        return "exp";
    case FamilyTag::TrigHyp:
        return std::string(hyperbolic ? (odd ? "sinh" : "cosh") : (odd ? "sin" : "cos")) + "(omega=" + omega.to_string()
             + ")";
    case FamilyTag::BesselRegular:
        return "bessel(nu=" + nu.to_string() + ")";
    case FamilyTag::BesselIrregular:
        return "bessel_irregular(nu=" + nu.to_string() + ")";
    case FamilyTag::BesselLogSecond:
        return "bessel_log(n=" + std::to_string(n) + ")";
    case FamilyTag::Hyp1F1Regular:
    case FamilyTag::Hyp1F1Irregular:
        return std::string(tag == FamilyTag::Hyp1F1Irregular ? "hyp1f1_irregular" : "hyp1f1") + "(a=" + a.to_string()
             + ", c=" + c.to_string() + ")";
    case FamilyTag::Hyp2F1Regular:
    case FamilyTag::Hyp2F1Irregular:
        return std::string(tag == FamilyTag::Hyp2F1Irregular ? "hyp2f1_irregular" : "hyp2f1") + "(a=" + a.to_string()
             + ", b=" + b.to_string() + ", c=" + c.to_string() + ")";
    case FamilyTag::Struve:
        return "struve(nu=" + nu.to_string() + ")";
    }
    return "?";
}

Strip fundamental_strip(const CatalogFamily &family)
{
    family.validate();
    Strip strip{0.0, 1.0};
    if (is_hyp(family.tag)) {
        const HypParams hp = hyp_params(family);
        strip.hi = std::min(strip.hi, hp.a);
        if (is_two_upper(family.tag)) {
            strip.hi = std::min(strip.hi, hp.b);
        }
    }
    if (strip.hi <= strip.lo) {
        throw ParameterError("no vertical line separates the poles of " + family.name());
    }
    return strip;
}

ContourSpec recommended_contour(const CatalogFamily &family)
{
    const Strip strip = fundamental_strip(family);
    ContourSpec spec;
    spec.abscissa = 0.5 * (strip.lo + strip.hi);
    if (family.tag == FamilyTag::BesselLogSecond) {
        // The integrand grows like |t|^(2a+n-1); hug the left edge.
        spec.abscissa = 0.1;
    }
    const double distance = std::min(spec.abscissa - strip.lo, strip.hi - spec.abscissa);
    spec.step = std::min(0.05, 2.0 * pi * distance / 40.0);
    return spec;
}

cplx mellin_integrand(const CatalogFamily &family, cplx s, double z)
{
    if (!(z > 0.0)) {
        throw DomainError("mellin_integrand: z must be positive");
    }
    const double lz = std::log(z);
    const double lz2 = std::log(z / 2.0);
    GammaProduct g;
    switch (family.tag) {
    case FamilyTag::Exp:
        g.mul_gamma(s);
        g.mul_exp(-s * (lz + I * pi));
        return g.value();
    case FamilyTag::TrigHyp: {
        const double q = family.odd ? 1.0 : 0.0;
        g.mul_gamma(s);
        g.mul_gamma(1.0 - s);
        if (family.hyperbolic) {
            g.mul_exp(-I * pi * s);
        }
        g.mul_exp(-2.0 * s * std::log(std::abs(d(family.omega))));
        g.mul_gamma(1.0 + q);
        g.div_gamma(1.0 + q - 2.0 * s);
        g.mul_exp((q - 2.0 * s) * lz);
        return g.value();
    }
    case FamilyTag::BesselRegular: {
        const double nu = d(family.nu);
        g.mul_gamma(s);
        g.mul_gamma(nu + 1.0);
        g.div_gamma(1.0 + nu - s);
        g.mul_exp(-2.0 * s * lz2);
        return g.value();
    }
    case FamilyTag::BesselIrregular: {
        const double nu = d(family.nu);
        g.mul_gamma(s);
        g.mul_gamma(1.0 - nu);
        g.div_gamma(1.0 - nu - s);
        g.mul_exp(-2.0 * s * lz2 - 2.0 * nu * lz);
        return g.value() / (-2.0 * nu);
    }
    case FamilyTag::BesselLogSecond: {
        const int n = family.n;
        double nfact = 1.0;
        for (int k = 2; k <= n; ++k) {
            nfact *= k;
        }
        const cplx w = 1.0 - s - static_cast<double>(n);
        const cplx bracket = (2.0 * lz - euler_gamma + digamma(n + 1.0) - digamma(1.0 - s)) * rgamma(w)
                           - digamma_over_gamma(w);
        g.mul_gamma(s);
        g.mul_exp((-2.0 * s - 2.0 * n) * lz2);
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        return sign * g.value() * bracket / (2.0 * std::pow(4.0, n) * nfact);
    }
    case FamilyTag::Hyp1F1Regular:
    case FamilyTag::Hyp1F1Irregular:
    case FamilyTag::Hyp2F1Regular:
    case FamilyTag::Hyp2F1Irregular: {
        const HypParams hp = hyp_params(family);
        g.mul_gamma(hp.c);
        g.div_gamma(hp.a);
        g.mul_gamma(s);
        g.mul_gamma(hp.a - s);
        if (is_two_upper(family.tag)) {
            g.div_gamma(hp.b);
            g.mul_gamma(hp.b - s);
        }
        g.div_gamma(hp.c - s);
        g.mul_exp(-s * (lz + I * pi));
        cplx value = g.value();
        if (hp.prefactor_power != 0.0) {
            value *= std::exp(hp.prefactor_power * lz) / hp.prefactor_power;
        }
        return value;
    }
    case FamilyTag::Struve: {
        const double nu = d(family.nu);
        g.mul_gamma(s);
        g.mul_gamma(1.0 - s);
        g.div_gamma(1.5 - s);
        g.div_gamma(1.5 + nu - s);
        g.mul_exp(-nu * std::log(2.0) + (1.0 - 2.0 * s) * lz2);
        return g.value();
    }
    }
    return 0.0;
}

namespace {

using LineFn = std::function<cplx(cplx)>;

struct LinePieces {
    cplx total;
    double tail = 0.0;
    double error = 0.0;
};

LinePieces extrapolated_line(const LineFn &G, const ContourSpec &spec, const std::string &name)
{
    const double a = spec.abscissa;
    const double h = spec.step;
    const long n = std::lround(spec.half_height / h);
    auto on_line = [&](double t) { return G(cplx(a, t)); };

    cplx core = 0.0;
    for (long k = -n; k <= n; ++k) {
        core += on_line(static_cast<double>(k) * h);
    }
    core *= h;

    // Beyond T, sum blocks of about half a local oscillation period and
    // extrapolate the partial sums.
    auto phase_rate = [&](double t) {
        constexpr double delta = 1e-4;
        const cplx up = on_line(t + delta);
        const cplx down = on_line(t - delta);
        if (std::abs(up) == 0.0 || std::abs(down) == 0.0) {
            return 0.0;
        }
        return std::abs(std::arg(up / down)) / (2.0 * delta);
    };
    std::vector<cplx> sums;
    cplx running = 0.0;
    long k = n + 1;
    for (int panel = 0; panel < spec.tail_panels; ++panel) {
        const double t = static_cast<double>(k) * h;
        const double rate = std::abs(on_line(t)) >= std::abs(on_line(-t)) ? phase_rate(t) : phase_rate(-t);
        const double half_period = rate > 1e-6 ? pi / rate : 50.0;
        const long m = std::clamp(std::lround(half_period / h), 1L, 20000L);
        cplx block = 0.0;
        for (long j = k; j < k + m; ++j) {
            const double tj = static_cast<double>(j) * h;
            block += on_line(tj) + on_line(-tj);
        }
        block *= h;
        if (!std::isfinite(block.real()) || !std::isfinite(block.imag())) {
            throw AccuracyError("non-finite integrand in the tail of " + name);
        }
        running += block;
        sums.push_back(running);
        k += m;
        if (std::abs(block) < 1e-20 * std::max(1.0, std::abs(core))) {
            break;
        }
    }
    const auto [tail, tail_err] = extrapolate(sums);
    return {(core + tail) / (2.0 * pi), std::abs(tail) / (2.0 * pi), tail_err / (2.0 * pi)};
}

// Integral of f over [lo, hi] in equal 20-point Gauss-Legendre panels, each
// also split in two; the split sum is kept and the change is added to `error`.
template <class F>
cplx gauss_panels(F &&f, double lo, double hi, int panels, double &error)
{
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const double width = (hi - lo) / panels;
    cplx sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = lo + i * width;
        const double xm = x0 + 0.5 * width;
        const cplx whole = Rule::integrate(f, x0, x0 + width);
        const cplx halves = Rule::integrate(f, x0, xm) + Rule::integrate(f, xm, x0 + width);
        sum += halves;
        error += std::abs(whole - halves);
    }
    return sum;
}

LinePieces deformed_line(const LineFn &G, const ContourSpec &spec, double height, const std::string &name)
{
    const double a = spec.abscissa;
    const double width = 20.0 * spec.step;
    double error = 0.0;

    const int segment_panels = std::max(1, static_cast<int>(std::ceil(2.0 * height / width)));
    const cplx segment
        = gauss_panels([&](double t) { return G(cplx(a, t)); }, -height, height, segment_panels, error);

    const cplx dir = std::polar(1.0, 0.75 * pi);
    auto ray = [&](cplx start, cplx direction) {
        cplx sum = 0.0;
        int quiet = 0;
        for (int panel = 0; panel < 4000; ++panel) {
            const double r0 = panel * width;
            const cplx piece = gauss_panels([&](double r) { return G(start + r * direction); }, r0, r0 + width, 1,
                                            error);
            if (!std::isfinite(piece.real()) || !std::isfinite(piece.imag())) {
                throw AccuracyError("non-finite integrand on the deformed tail of " + name);
            }
            sum += piece;
            quiet = std::abs(piece) <= 1e-17 * (std::abs(segment) + std::abs(sum)) ? quiet + 1 : 0;
            if (quiet == 3) {
                return sum;
            }
        }
        throw AccuracyError("deformed tail of " + name + " does not decay");
    };
    const cplx up = dir * ray(cplx(a, height), dir);
    const cplx down = std::conj(dir) * ray(cplx(a, -height), std::conj(dir));

    // (1/2 pi i) [ i * segment + up - down ]
    const cplx tails = (up - down) / (2.0 * pi * I);
    return {segment / (2.0 * pi) + tails, std::abs(tails), error / (2.0 * pi)};
}

} // namespace

ContourResult contour_eval(const CatalogFamily &family, double z, const ContourSpec &spec)
{
    const double a = spec.abscissa;
    const double h = spec.step;
    if (!(a > 0.0 && a < 1.0)) {
        throw ParameterError("contour abscissa must lie in (0, 1), got " + std::to_string(a));
    }
    if (!(h > 0.0) || !(spec.half_height > 0.0)) {
        throw ParameterError("contour step and half height must be positive");
    }
    if (!(z > 0.0 && z < 1.0)) {
        throw DomainError("contour evaluation needs z in (0, 1), got " + std::to_string(z));
    }
    const Strip strip = fundamental_strip(family);
    if (!(a > strip.lo && a < strip.hi)) {
        throw ParameterError("abscissa " + std::to_string(a) + " is outside the pole-free strip ("
                             + std::to_string(strip.lo) + ", " + std::to_string(strip.hi) + ") of " + family.name());
    }

    ContourResult result;
    const LineFn G = [&](cplx s) {
        ++result.evaluations;
        return mellin_integrand(family, s, z);
    };
    auto magnitude = [&](double t) { return std::max(std::abs(G(cplx(a, t))), std::abs(G(cplx(a, -t)))); };

    const long n = std::lround(spec.half_height / h);
    const double top = static_cast<double>(n) * h;
    const double mid_mag = magnitude(0.5 * top);
    const double end_mag = magnitude(top);
    const bool grows = !std::isfinite(end_mag) || (end_mag > 1e3 * mid_mag && end_mag > spec.tolerance);

    if (grows && spec.tail_mode == TailMode::Extrapolate) {
        throw AccuracyError("integrand of " + family.name() + " grows along Re s = " + std::to_string(a)
                            + " (|G| " + std::to_string(mid_mag) + " at t = " + std::to_string(0.5 * top) + ", "
                            + std::to_string(end_mag) + " at t = " + std::to_string(top)
                            + "): the vertical integral does not converge");
    }

    LinePieces pieces;
    if (spec.tail_mode == TailMode::Deform || grows) {
        // Leave the line before the growth costs digits to cancellation.
        const double reference = std::max(magnitude(0.0), std::numeric_limits<double>::min());
        double height = top;
        for (double t = 0.5; t < top; t += 0.5) {
            if (magnitude(t) > 1e4 * reference) {
                height = t;
                break;
            }
        }
        pieces = deformed_line(G, spec, height, family.name());
        result.deformed_at = height;
    } else {
        pieces = extrapolated_line(G, spec, family.name());
    }

    result.value = pieces.total.real();
    result.imag = std::abs(pieces.total.imag());
    result.tail_estimate = pieces.tail;
    result.error_estimate = pieces.error;
    if (result.error_estimate > spec.tolerance) {
        throw AccuracyError("tails of the contour integral for " + family.name()
                            + " did not settle: error estimate " + std::to_string(result.error_estimate));
    }
    if (result.imag > spec.tolerance) {
        result.warning = true;
        result.message = "discarded imaginary part " + std::to_string(result.imag);
    }
    if (result.deformed_at > 0.0 && grows) {
        result.warning = true;
        result.message += std::string(result.message.empty() ? "" : "; ")
            + "integrand grows along the line; tails deformed at |t| = " + std::to_string(result.deformed_at);
    }
    return result;
}

PowerCoeff fractional_power_coeff(const CatalogFamily &family, cplx v)
{
    family.validate();
    PowerCoeff out{0.0, 0.0, 2.0 * v};
    switch (family.tag) {
    case FamilyTag::Exp:
        out.coeff = sign_power(v) * rgamma(1.0 + v);
        out.shift = v;
        break;
    case FamilyTag::TrigHyp: {
        const double q = family.odd ? 1.0 : 0.0;
        const double w = std::abs(d(family.omega));
        out.coeff = std::exp(2.0 * v * std::log(w)) * complex_gamma(1.0 + q) * rgamma(1.0 + q + 2.0 * v);
        if (family.hyperbolic) {
            out.coeff *= sign_power(v);
        }
        break;
    }
    case FamilyTag::BesselRegular: {
        const double nu = d(family.nu);
        out.coeff = complex_gamma(nu + 1.0) * rgamma(1.0 + nu + v) * rgamma(1.0 + v) * std::exp(-v * std::log(4.0));
        break;
    }
    case FamilyTag::BesselIrregular: {
        const double nu = d(family.nu);
        out.coeff = complex_gamma(1.0 - nu) * rgamma(1.0 - nu + v) * rgamma(1.0 + v) * std::exp(-v * std::log(4.0));
        break;
    }
    case FamilyTag::BesselLogSecond: {
        const int n = family.n;
        const cplx m = v - static_cast<double>(n);
        cplx c1;
        cplx c2;
        log_second_coeffs(n, m, c1, c2);
        const cplx weight = (-2.0 * n) * (n % 2 == 0 ? 1.0 : -1.0) * std::exp(-m * std::log(4.0));
        out.coeff = weight * c2;
        out.log_coeff = weight * c1;
        break;
    }
    case FamilyTag::Hyp1F1Regular:
    case FamilyTag::Hyp1F1Irregular:
    case FamilyTag::Hyp2F1Regular:
    case FamilyTag::Hyp2F1Irregular: {
        const HypParams hp = hyp_params(family);
        cplx ratio = cpoch(hp.a, v) * complex_gamma(hp.c) * rgamma(hp.c + v) * rgamma(1.0 + v);
        if (is_two_upper(family.tag)) {
            ratio *= cpoch(hp.b, v);
        }
        out.coeff = sign_power(v) * ratio;
        out.shift = v;
        break;
    }
    case FamilyTag::Struve: {
        const double nu = d(family.nu);
        out.coeff = complex_gamma(1.5) * complex_gamma(1.5 + nu) * rgamma(1.5 + v) * rgamma(1.5 + nu + v)
                  * std::exp(-v * std::log(4.0));
        break;
    }
    }
    return out;
}

FamilySeed family_seed(const CatalogFamily &family, int order)
{
    family.validate();
    FamilySeed seed;
    switch (family.tag) {
    case FamilyTag::Exp:
    case FamilyTag::BesselRegular:
    case FamilyTag::Hyp1F1Regular:
    case FamilyTag::Hyp2F1Regular:
        seed.unit = LogSeries::monomial(Scalar(1), Scalar(0), order);
        break;
    case FamilyTag::TrigHyp:
        seed.unit = LogSeries::monomial(Scalar(1), Scalar(family.odd ? 1 : 0), order);
        break;
    case FamilyTag::BesselIrregular:
    case FamilyTag::BesselLogSecond: {
        const Scalar gap = Scalar(-2) * family.nu;
        seed.unit = LogSeries::monomial(Scalar(1) / gap, gap, order);
        break;
    }
    case FamilyTag::Hyp1F1Irregular:
    case FamilyTag::Hyp2F1Irregular: {
        const Scalar gap = Scalar(1) - family.c;
        seed.unit = LogSeries::monomial(Scalar(1) / gap, gap, order);
        break;
    }
    case FamilyTag::Struve: {
        const double nu = d(family.nu);
        seed.unit = LogSeries::monomial(Scalar(1), Scalar(1), order);
        seed.prefactor = std::pow(2.0, -nu) / (std::sqrt(pi) * std::tgamma(1.5 + nu));
        break;
    }
    }
    return seed;
}

LogSeries integer_power_coeff(const CatalogFamily &family, int n, int order)
{
    if (n < 0) {
        throw std::invalid_argument("integer_power_coeff: negative power");
    }
    const FamilySeed seed = family_seed(family, order);
    const Scalar &sigma = seed.unit.sigma();
    const Scalar s0 = seed.unit.coeff(0, 0);
    const Scalar sign(n % 2 == 0 ? 1 : -1);
    const Scalar four_n = pow(Scalar(4), n);

    switch (family.tag) {
    case FamilyTag::Exp:
        return single_term(sigma, order, n, sign / factorial(n));
    case FamilyTag::TrigHyp: {
        const int q = family.odd ? 1 : 0;
        const Scalar value = pow(family.omega, 2 * n) * factorial(q) / factorial(q + 2 * n);
        return single_term(sigma, order, 2 * n, family.hyperbolic ? sign * value : value);
    }
    case FamilyTag::BesselRegular:
        return single_term(sigma, order, 2 * n,
                           Scalar(1) / (factorial(n) * pochhammer(Scalar(1) + family.nu, n) * four_n));
    case FamilyTag::BesselIrregular:
        return single_term(sigma, order, 2 * n,
                           s0 / (factorial(n) * pochhammer(Scalar(1) - family.nu, n) * four_n));
    case FamilyTag::BesselLogSecond: {
        const int k = family.n;
        if (n < k) {
            return single_term(sigma, order, 2 * n,
                               s0 / (factorial(n) * pochhammer(Scalar(1 - k), n) * four_n));
        }
        const int m = n - k;
        const Scalar c1 = Scalar(1) / (pow(Scalar(4), k) * factorial(k) * factorial(m) * factorial(m + k));
        const Scalar c2 = -c1 / Scalar(2) * (harmonic_number(m) + harmonic_number(m + k) - harmonic_number(k));
        const Scalar weight = Scalar(k % 2 == 0 ? 1 : -1) / pow(Scalar(4), m);
        return single_term(sigma, order, 2 * n, weight * c2, weight * c1);
    }
    case FamilyTag::Hyp1F1Regular:
    case FamilyTag::Hyp1F1Irregular:
    case FamilyTag::Hyp2F1Regular:
    case FamilyTag::Hyp2F1Irregular: {
        const ExactHyp p = exact_hyp(family);
        Scalar ratio = pochhammer(p.a, n) / (pochhammer(p.c, n) * factorial(n));
        if (is_two_upper(family.tag)) {
            ratio *= pochhammer(p.b, n);
        }
        return single_term(sigma, order, n, s0 * sign * ratio);
    }
    case FamilyTag::Struve: {
        const Scalar three_halves = Scalar::rational(3, 2);
        return single_term(sigma, order, 2 * n,
                           Scalar(1) / (pochhammer(three_halves, n) * pochhammer(three_halves + family.nu, n) * four_n));
    }
    }
    return LogSeries(sigma, order);
}

std::optional<OperatorSpec> family_operator(const CatalogFamily &family)
{
    family.validate();
    switch (family.tag) {
    case FamilyTag::Exp:
        return std::nullopt;
    case FamilyTag::TrigHyp:
        return transform_at(problems::harmonic(family.omega, family.hyperbolic), Scalar(0));
    case FamilyTag::BesselRegular:
    case FamilyTag::BesselIrregular:
    case FamilyTag::BesselLogSecond:
    case FamilyTag::Struve:
        return transform_at(problems::bessel(family.nu), family.nu);
    case FamilyTag::Hyp1F1Regular:
    case FamilyTag::Hyp1F1Irregular:
        return transform_at(problems::confluent(family.a, family.c), Scalar(0));
    case FamilyTag::Hyp2F1Regular:
    case FamilyTag::Hyp2F1Irregular:
        return transform_at(problems::gauss(family.a, family.b, family.c), Scalar(0));
    }
    return std::nullopt;
}

LogSeries apply_family_A(const CatalogFamily &family, const LogSeries &f)
{
    if (const auto spec = family_operator(family)) {
        return apply_A(*spec, f);
    }
    // e^z: (1 - integration) y = c, so A is minus the integral from 0.
    return scale(Scalar(-1), integrate(f)).realigned(f.sigma()).truncated(f.order());
}

LogSeries family_series(const CatalogFamily &family, int order)
{
    const FamilySeed seed = family_seed(family, order);
    LogSeries out;
    if (const auto spec = family_operator(family)) {
        out = neumann_apply_resolvent(*spec, seed.unit, order);
    } else {
        LogSeries term = seed.unit;
        out = term;
        for (int j = 1; j <= order; ++j) {
            term = scale(Scalar(-1), apply_family_A(family, term));
            out = out + term;
        }
    }
    if (seed.prefactor != 1.0) {
        out = scale(Scalar::from_double(seed.prefactor), out);
    }
    return out;
}

} // namespace opsolve
