#include <doctest.h>

#include <cmath>
#include <random>

#include <opsolve/errors.hpp>
#include <opsolve/log_series.hpp>

#include "oracles.hpp"

using namespace opsolve;

namespace {

Scalar R(long n, long d = 1) { return Scalar::rational(n, d); }

// Coefficient of z^exponent (log z)^k, zero when the exponent is off the grid.
Scalar at(const LogSeries &f, const Scalar &exponent, int k = 0)
{
    const Scalar m = exponent - f.sigma();
    if (!m.is_integer() || m < Scalar(0)) {
        return Scalar(0);
    }
    return f.coeff(static_cast<int>(m.to_long()), k);
}

LogSeries random_series(std::mt19937 &rng, const Scalar &sigma, int order, int logs)
{
    LogSeries f(sigma, order, logs);
    for (int m = 0; m <= order; ++m) {
        for (int k = 0; k <= logs; ++k) {
            f.set_coeff(m, k, Scalar(oracle::random_rational(rng, -3, 3, 7)));
        }
    }
    return f;
}

} // namespace

TEST_CASE("scalar normalizes rationals and downgrades explicitly")
{
    const Scalar x = Scalar::parse("-6/4");
    CHECK(x.exact() == mpq_class(-3, 2));
    CHECK(x.exact().get_den() > 0);
    CHECK(Scalar::parse("\xE2\x88\x92" "1/9").exact() == mpq_class(-1, 9));
    CHECK(Scalar::parse("0.125").exact() == mpq_class(1, 8));
    CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("abc"), std::invalid_argument);

    const Scalar mixed = R(1, 3) + Scalar::from_double(0.5);
    CHECK_FALSE(mixed.is_exact());
    CHECK(mixed.to_double() == doctest::Approx(5.0 / 6.0));
    CHECK((R(1, 3) + R(1, 6)).is_exact());
    CHECK((R(1, 3) + R(1, 6)).identical(R(1, 2)));
    CHECK_FALSE(R(1, 2).identical(Scalar::from_double(0.5)));
}

TEST_CASE("linear_combine aligns integer gaps and refuses others")
{
    const LogSeries one = LogSeries::monomial(R(1), R(0), 3);
    const LogSeries z = LogSeries::monomial(R(1), R(1), 2);
    const LogSeries sum = linear_combine(R(1), one, R(1), z);
    CHECK(sum.sigma() == R(0));
    CHECK(sum.coeff(0).identical(R(1)));
    CHECK(sum.coeff(1).identical(R(1)));

    const LogSeries half = LogSeries::monomial(R(1), R(1, 2), 4);
    const LogSeries three_halves = LogSeries::monomial(R(1), R(3, 2), 4);
    const LogSeries mixed = linear_combine(R(2), half, R(3), three_halves);
    CHECK(mixed.sigma().identical(R(1, 2)));
    CHECK(mixed.coeff(0).identical(R(2)));
    CHECK(mixed.coeff(1).identical(R(3)));

    const LogSeries third = LogSeries::monomial(R(1), R(1, 3), 4);
    CHECK_THROWS_AS(linear_combine(R(1), half, R(1), third), NonIntegerExponentGap);
}

TEST_CASE("linear_combine keeps the lower truncation point")
{
    // 1 known through z^3 plus z^5 known through z^9: the sum is known through z^3.
    const LogSeries a = LogSeries::monomial(R(1), R(0), 3);
    const LogSeries b = LogSeries::monomial(R(1), R(5), 4);
    const LogSeries sum = a + b;
    CHECK(sum.sigma() == R(0));
    CHECK(sum.order() == 3);
    CHECK(sum.coeff(0).identical(R(1)));
}

TEST_CASE("mul_poly shifts and truncates")
{
    const LogSeries one_plus_z = LogSeries::taylor({R(1), R(1), R(0), R(0)});
    const LogSeries prod = mul_poly(one_plus_z, {{1, R(1)}});
    CHECK(prod.order() == 3);
    CHECK(prod.coeff(0).is_zero());
    CHECK(prod.coeff(1).identical(R(1)));
    CHECK(prod.coeff(2).identical(R(1)));

    const LogSeries log_over_z = LogSeries::monomial(R(1), R(-1), 4, 1);
    const LogSeries z_log = mul_poly(log_over_z, {{2, R(1)}});
    CHECK(at(z_log, R(1), 1).identical(R(1)));
    CHECK(at(z_log, R(-1), 1).is_zero());

    const LogSeries cubic = LogSeries::taylor({R(1), R(1), R(1), R(1)});
    const LogSeries clipped = mul_poly(cubic, {{0, R(1)}, {2, R(1)}});
    CHECK(clipped.order() == 3);
    CHECK(clipped.coeff(2).identical(R(2)));
    CHECK(clipped.coeff(3).identical(R(2)));
}

TEST_CASE("differentiate on powers and logs")
{
    const LogSeries d1 = differentiate(LogSeries::monomial(R(1), R(2), 4));
    CHECK(at(d1, R(1)).identical(R(2)));

    const LogSeries d2 = differentiate(LogSeries::monomial(R(1), R(0), 4, 1));
    CHECK(at(d2, R(-1)).identical(R(1)));
    CHECK(at(d2, R(-1), 1).is_zero());

    const LogSeries d3 = differentiate(LogSeries::monomial(R(1), R(1), 4, 1));
    CHECK(at(d3, R(0), 1).identical(R(1)));
    CHECK(at(d3, R(0), 0).identical(R(1)));
}

TEST_CASE("integrate with zero constants and the log-raising branch")
{
    const LogSeries i1 = integrate(LogSeries::monomial(R(1), R(0), 4));
    CHECK(at(i1, R(1)).identical(R(1)));
    CHECK(at(i1, R(0)).is_zero());

    const LogSeries i2 = integrate(LogSeries::monomial(R(1), R(-1), 4));
    CHECK(at(i2, R(0), 1).identical(R(1)));
    CHECK(at(i2, R(0), 0).is_zero());

    const LogSeries i3 = integrate(LogSeries::monomial(R(1), R(1), 4, 1));
    CHECK(at(i3, R(2), 1).identical(R(1, 2)));
    CHECK(at(i3, R(2), 0).identical(R(-1, 4)));
}

TEST_CASE("eval examples")
{
    const LogSeries exp3 = LogSeries::taylor({R(1), R(1), R(1, 2), R(1, 6)});
    CHECK(eval(exp3, 0.5) == doctest::Approx(1.6458333333333333).epsilon(1e-15));
    CHECK(eval(LogSeries::monomial(R(1), R(0), 2, 1), 0.5) == doctest::Approx(-0.6931471805599453).epsilon(1e-15));

    std::vector<Scalar> coeffs;
    for (int n = 0; n <= 20; ++n) {
        coeffs.emplace_back(mpq_class(1) / oracle::fact(n));
    }
    CHECK(std::abs(eval(LogSeries::taylor(coeffs), 0.5) - std::exp(0.5)) < 1e-15);
    CHECK_THROWS_AS(eval(exp3, 0.0), DomainError);
}

TEST_CASE("weighted_norm_estimate examples")
{
    CHECK(weighted_norm_estimate(LogSeries::monomial(R(1), R(0), 2), 2.0, 0.5) == doctest::Approx(0.25));
    CHECK(weighted_norm_estimate(LogSeries::monomial(R(1), R(-1), 2), 2.0, 0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(weighted_norm_estimate(LogSeries::monomial(R(1), R(0), 2), 2.0, 1.5), DomainError);
}

TEST_CASE("differentiate undoes integrate on random series")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const LogSeries f = random_series(rng, R(trial % 3), 6, trial % 3);
        const LogSeries back = differentiate(integrate(f));
        CHECK(back == f);
    }
    // Through the log branch: d/dz of the antiderivative of z^-1 (log z)^k.
    for (int k = 0; k < 4; ++k) {
        const LogSeries f = LogSeries::monomial(R(3), R(-1), 3, k);
        CHECK(differentiate(integrate(f)).trimmed() == f);
    }
}

TEST_CASE("linear_combine is commutative and associative, mul_poly distributes")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const LogSeries f = random_series(rng, R(1, 2), 5, 1);
        // Same top exponent 11/2, so no sum loses known terms.
        const LogSeries g = random_series(rng, R(3, 2), 4, 2);
        const LogSeries h = random_series(rng, R(-1, 2), 6, 0);
        CHECK(f + g == g + f);
        CHECK((f + g) + h == f + (g + h));

        const std::vector<std::pair<int, Scalar>> poly{{0, R(2)}, {1, R(-1, 3)}, {3, R(5)}};
        CHECK(mul_poly(f + g, poly) == mul_poly(f, poly) + mul_poly(g, poly));

        const double z = 0.37;
        CHECK(eval(f + g, z) == doctest::Approx(eval(f, z) + eval(g, z)).epsilon(1e-12));
    }
}

TEST_CASE("float series are flagged")
{
    LogSeries f = LogSeries::taylor({R(1), R(2)});
    CHECK(f.is_exact());
    f.set_coeff(1, 0, Scalar::from_double(0.25));
    CHECK_FALSE(f.is_exact());
    CHECK_FALSE(scale(R(2), f).is_exact());
}
