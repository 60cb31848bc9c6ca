#include <opsolve/operators.hpp>

#include <opsolve/errors.hpp>

namespace opsolve {

namespace {

std::vector<std::pair<int, Scalar>> as_poly(const std::vector<Scalar> &coeffs)
{
    std::vector<std::pair<int, Scalar>> poly;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_zero()) {
            poly.emplace_back(static_cast<int>(i), coeffs[i]);
        }
    }
    if (poly.empty()) {
        poly.emplace_back(0, Scalar(0));
    }
    return poly;
}

} // namespace

LogSeries apply_L(const OperatorSpec &spec, const LogSeries &f)
{
    const LogSeries inner = integrate(f.shifted(spec.alpha));
    // Shifting back by -alpha in float mode would leave roundoff in sigma.
    const LogSeries middle = inner.shifted(-spec.alpha).with_sigma(f.sigma() + Scalar(1));
    return integrate(middle);
}

LogSeries make_f0(const OperatorSpec &spec, const Scalar &c0, const Scalar &c1, int order)
{
    const Scalar one(1);
    if (spec.alpha.near(1)) {
        LogSeries out(Scalar(0), order, c1.is_zero() ? 0 : 1);
        out.set_coeff(0, 0, c0);
        if (!c1.is_zero()) {
            out.set_coeff(0, 1, c1);
        }
        return out;
    }
    const Scalar gap = one - spec.alpha;
    if (c1.is_zero()) {
        return LogSeries::monomial(c0, Scalar(0), order);
    }
    const LogSeries irregular = LogSeries::monomial(c1 / gap, gap, order);
    if (c0.is_zero()) {
        return irregular;
    }
    if (!gap.is_integer()) {
        throw NonIntegerExponentGap("f0 pieces z^0 and z^" + gap.to_string() + " cannot share one series");
    }
    const LogSeries regular = LogSeries::monomial(c0, Scalar(0), order);
    return (regular + irregular).truncated(order);
}

LogSeries apply_A(const OperatorSpec &spec, const LogSeries &f)
{
    const LogSeries df = differentiate(f);
    LogSeries integrand = mul_poly(df, as_poly(spec.C)) + mul_poly(f, as_poly(spec.D)).shifted(Scalar(-1));
    if (spec.has_z_d2_term) {
        integrand = integrand - differentiate(df).shifted(Scalar(1));
    }
    const LogSeries lifted = apply_L(spec, integrand.with_sigma(f.sigma() - Scalar(1)));
    return lifted.realigned(f.sigma()).truncated(f.order());
}

} // namespace opsolve
