#include <doctest.h>

#include <random>

#include <opsolve/errors.hpp>
#include <opsolve/operators.hpp>

#include "oracles.hpp"

using namespace opsolve;

namespace {

Scalar R(long n, long d = 1) { return Scalar::rational(n, d); }

OperatorSpec two_point(const Scalar &alpha)
{
    OperatorSpec spec;
    spec.alpha = alpha;
    spec.C = {R(0)};
    spec.D = {R(0)};
    return spec;
}

Scalar at(const LogSeries &f, const Scalar &exponent, int k = 0)
{
    const Scalar m = exponent - f.sigma();
    if (!m.is_integer() || m < Scalar(0) || m > Scalar(f.order())) {
        return Scalar(0);
    }
    return f.coeff(static_cast<int>(m.to_long()), k);
}

// z^-alpha d/dz z^alpha d/dz
LogSeries differential_form(const Scalar &alpha, const LogSeries &g)
{
    const LogSeries inner = differentiate(g).shifted(alpha);
    return differentiate(inner).shifted(-alpha);
}

// Coefficient of z^(p+i+1) in A z^p:
//   (p C_i + D_i - [i = 0, three-point] p (p-1)) / ((p+i+1)(alpha+p+i))
mpq_class closed_form(const OperatorSpec &spec, const mpq_class &p, int i)
{
    const auto coef = [](const std::vector<Scalar> &v, int j) {
        return j < static_cast<int>(v.size()) ? v[j].exact() : mpq_class(0);
    };
    mpq_class num = p * coef(spec.C, i) + coef(spec.D, i);
    if (spec.has_z_d2_term && i == 0) {
        num -= p * (p - 1);
    }
    return num / ((p + i + 1) * (spec.alpha.exact() + p + i));
}

} // namespace

TEST_CASE("L on a constant")
{
    const LogSeries out = apply_L(two_point(R(3)), LogSeries::monomial(R(1), R(0), 4));
    CHECK(out.sigma().identical(R(2)));
    CHECK(out.order() == 4);
    CHECK(at(out, R(2)).identical(R(1, 8)));
    CHECK(out.trimmed().leading_index() == 0);
}

TEST_CASE("L on log z at alpha = 1")
{
    const LogSeries out = apply_L(two_point(R(1)), LogSeries::monomial(R(1), R(0), 3, 1));
    CHECK(at(out, R(2), 1).identical(R(1, 4)));
    CHECK(at(out, R(2), 0).identical(R(-1, 4)));
}

TEST_CASE("L produces a log when the inner antiderivative hits z^-1")
{
    // alpha = 4, z^-2: int z^2 = z^3/3, then int z^-1/3 = log(z)/3.
    const LogSeries out = apply_L(two_point(R(4)), LogSeries::monomial(R(1), R(-2), 3));
    CHECK(at(out, R(0), 1).identical(R(1, 3)));
    CHECK(at(out, R(0), 0).is_zero());

    // alpha = 4, z^-3 stays a power: -z^-1/2.
    const LogSeries plain = apply_L(two_point(R(4)), LogSeries::monomial(R(1), R(-3), 3));
    CHECK(at(plain, R(-1)).identical(R(-1, 2)));
    CHECK(plain.max_log_power() == 0);
}

TEST_CASE("L at alpha = 1 squares the denominator")
{
    for (int p = 0; p < 5; ++p) {
        const LogSeries out = apply_L(two_point(R(1)), LogSeries::monomial(R(1), R(p), 2));
        CHECK(at(out, R(p + 2)).identical(R(1, (p + 2) * (p + 2))));
    }
}

TEST_CASE("f0 kernel")
{
    const OperatorSpec bessel = transform(problems::bessel(R(1, 3)), RootChoice::First);
    const LogSeries irregular = make_f0(bessel, R(0), R(1), 4);
    CHECK(irregular.sigma().identical(R(-2, 3)));
    CHECK(irregular.coeff(0).identical(R(-3, 2)));

    const LogSeries log_kernel = make_f0(two_point(R(1)), R(0), R(1), 4);
    CHECK(log_kernel.coeff(0, 1).identical(R(1)));
    CHECK(log_kernel.coeff(0, 0).is_zero());

    const LogSeries constant = make_f0(bessel, R(5), R(0), 4);
    CHECK(constant.sigma().is_zero());
    CHECK(constant.max_log_power() == 0);
    CHECK(constant.coeff(0).identical(R(5)));

    // alpha = 3: c0 + c1 z^-2/(-2) on one grid.
    const LogSeries both = make_f0(two_point(R(3)), R(2), R(1), 4);
    CHECK(both.sigma().identical(R(-2)));
    CHECK(both.coeff(0).identical(R(-1, 2)));
    CHECK(both.coeff(2).identical(R(2)));

    CHECK_THROWS_AS(make_f0(bessel, R(1), R(1), 4), NonIntegerExponentGap);
}

TEST_CASE("f0 is annihilated by the differential form")
{
    for (const Scalar &alpha : {R(3), R(1), R(-2), R(5, 3)}) {
        const LogSeries f0 = make_f0(two_point(alpha), alpha.is_integer() ? R(2) : R(0), R(-3, 4), 5);
        CHECK(differential_form(alpha, f0).trimmed().is_zero());
    }
}

TEST_CASE("A on the catalog equations")
{
    const Scalar nu = R(2, 5);
    const OperatorSpec bessel = transform(problems::bessel(nu), RootChoice::First);
    const LogSeries a1 = apply_A(bessel, LogSeries::monomial(R(1), R(0), 4));
    CHECK(a1.coeff(2).identical(R(1, 4) / (R(1) + nu)));
    CHECK(a1.coeff(1).is_zero());
    CHECK(a1.coeff(3).is_zero());

    const Scalar a = R(2, 3);
    const Scalar c = R(7, 4);
    const OperatorSpec conf = transform(problems::confluent(a, c), RootChoice::First);
    for (int q = 0; q < 4; ++q) {
        const LogSeries out = apply_A(conf, LogSeries::monomial(R(1), R(q), 3));
        const Scalar expected = -(R(q) + a) / ((R(q) + c) * R(1 + q));
        CHECK(at(out, R(q + 1)).identical(expected));
    }

    const Scalar b = R(-1, 3);
    const OperatorSpec gauss = transform(problems::gauss(a, b, c), RootChoice::First);
    for (int q = 0; q < 4; ++q) {
        const LogSeries out = apply_A(gauss, LogSeries::monomial(R(1), R(q), 3));
        const Scalar expected = -((R(q) + a) * (R(q) + b)) / ((R(q) + c) * R(1 + q));
        CHECK(at(out, R(q + 1)).identical(expected));
        for (int m = 0; m <= out.order(); ++m) {
            if (m != 1) {
                CHECK(out.coeff(m).is_zero());
            }
        }
    }
}

TEST_CASE("L is a right inverse of the differential form")
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const Scalar alpha(oracle::random_non_integer(rng, -3, 4, 5));
        const Scalar sigma(oracle::random_rational(rng, -1, 2, 3));
        LogSeries f(sigma, 6, trial % 2);
        for (int m = 0; m <= 6; ++m) {
            for (int k = 0; k <= trial % 2; ++k) {
                f.set_coeff(m, k, Scalar(oracle::random_rational(rng, -2, 2, 6)));
            }
        }
        const LogSeries back = differential_form(alpha, apply_L(two_point(alpha), f));
        REQUIRE(back.sigma().identical(f.sigma()));
        for (int m = 0; m <= f.order() - 2; ++m) {
            for (int k = 0; k <= f.max_log_power(); ++k) {
                CHECK(back.coeff(m, k).identical(f.coeff(m, k)));
            }
        }
    }
}

TEST_CASE("A on a monomial matches the closed form")
{
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        OperatorSpec spec;
        spec.alpha = Scalar(oracle::random_non_integer(rng, -2, 4, 5));
        spec.has_z_d2_term = trial % 3 == 0;
        spec.kind = spec.has_z_d2_term ? SingularityKind::ThreePoint : SingularityKind::TwoPoint;
        for (int i = 0; i < 3; ++i) {
            spec.C.emplace_back(oracle::random_rational(rng, -3, 3, 4));
            spec.D.emplace_back(oracle::random_rational(rng, -3, 3, 4));
        }
        mpq_class p = oracle::random_non_integer(rng, -2, 4, 3);
        while (mpq_class(p + spec.alpha.exact()).get_den() == 1) {
            p = oracle::random_non_integer(rng, -2, 4, 3);
        }
        const int order = 5;
        const LogSeries out = apply_A(spec, LogSeries::monomial(R(1), Scalar(p), order));
        CHECK(out.sigma().identical(Scalar(p)));
        CHECK(out.max_log_power() == 0);
        CHECK(out.coeff(0).is_zero());
        for (int i = 0; i < 3; ++i) {
            CHECK(out.coeff(i + 1).exact() == closed_form(spec, p, i));
        }
        for (int m = 4; m <= order; ++m) {
            CHECK(out.coeff(m).is_zero());
        }
    }
}

TEST_CASE("A raises every power by at least one")
{
    std::mt19937 rng(29);
    const OperatorSpec spec = transform(problems::gauss(R(1, 2), R(1, 3), R(5, 4)), RootChoice::Second);
    for (int trial = 0; trial < 10; ++trial) {
        LogSeries f(spec.lambda, 8, 1);
        const int lowest = trial % 4;
        for (int m = lowest; m <= 8; ++m) {
            f.set_coeff(m, 0, Scalar(oracle::random_rational(rng, -2, 2, 5)));
            f.set_coeff(m, 1, Scalar(oracle::random_rational(rng, -2, 2, 5)));
        }
        const LogSeries out = apply_A(spec, f).trimmed();
        CHECK(out.sigma().identical(f.sigma()));
        if (!out.is_zero()) {
            CHECK(out.leading_index() >= lowest + 1);
        }
    }
}

TEST_CASE("A is a contraction in the weighted norm for Bessel of order one")
{
    const OperatorSpec spec = transform(problems::bessel(R(1)), RootChoice::First);
    const double alpha = spec.alpha.to_double();
    for (const auto &f : {LogSeries::taylor({R(1), R(0), R(0), R(0)}), LogSeries::taylor({R(0), R(1), R(0), R(0)}),
                          LogSeries::taylor({R(1), R(1), R(0), R(0)})}) {
        const double ratio =
            weighted_norm_estimate(apply_A(spec, f), alpha, 0.5) / weighted_norm_estimate(f, alpha, 0.5);
        CHECK(ratio < 1.0);
    }
}

TEST_CASE("float specs give the same operator to rounding")
{
    const OperatorSpec exact = transform(problems::confluent(R(1, 3), R(3, 2)), RootChoice::First);
    OperatorSpec floating = exact;
    floating.alpha = Scalar::from_double(exact.alpha.to_double());
    for (auto &c : floating.C) {
        c = Scalar::from_double(c.to_double());
    }
    for (auto &d : floating.D) {
        d = Scalar::from_double(d.to_double());
    }
    const LogSeries f = LogSeries::taylor({R(1), R(-2), R(1, 3), R(0), R(0), R(0)});
    const LogSeries a = apply_A(exact, f);
    const LogSeries b = apply_A(floating, f.to_float());
    CHECK_FALSE(b.is_exact());
    for (int m = 0; m <= a.order(); ++m) {
        CHECK(b.coeff(m).to_double() == doctest::Approx(a.coeff(m).to_double()).epsilon(1e-14));
    }
}
