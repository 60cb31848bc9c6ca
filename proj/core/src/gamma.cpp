#include <opsolve/gamma.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <opsolve/errors.hpp>

namespace opsolve {

namespace {

constexpr double pi = std::numbers::pi;

// Lanczos, g = 7, n = 9
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

cplx lanczos_lgamma(cplx s)
{
    const cplx z = s - 1.0;
    cplx x = lanczos_c[0];
    for (std::size_t i = 1; i < lanczos_c.size(); ++i) {
        x += lanczos_c[i] / (z + static_cast<double>(i));
    }
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi s) without overflow for large |Im s|.
cplx log_sin_pi(cplx s)
{
    if (std::abs(s.imag()) < 20.0) {
        return std::log(std::sin(pi * s));
    }
    const cplx i(0.0, 1.0);
    if (s.imag() > 0.0) {
        // sin(pi s) = e^{-i pi s} (e^{2 i pi s} - 1) / (2i)
        return -i * pi * s + std::log((std::exp(2.0 * i * pi * s) - 1.0) / (2.0 * i));
    }
    return std::conj(log_sin_pi(std::conj(s)));
}

std::string show(cplx s)
{
    return "(" + std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")";
}

} // namespace

bool at_gamma_pole(cplx s)
{
    if (std::abs(s.imag()) > 1e-13 || s.real() > 0.5) {
        return false;
    }
    return std::abs(s.real() - std::nearbyint(s.real())) < 1e-13;
}

cplx complex_lgamma(cplx s)
{
    if (at_gamma_pole(s)) {
        throw PoleError("Gamma has a pole at " + show(s));
    }
    if (s.real() < 0.5) {
        return std::log(pi) - log_sin_pi(s) - lanczos_lgamma(1.0 - s);
    }
    return lanczos_lgamma(s);
}

cplx complex_gamma(cplx s)
{
    return std::exp(complex_lgamma(s));
}

cplx rgamma(cplx s)
{
    if (at_gamma_pole(s)) {
        return 0.0;
    }
    return std::exp(-complex_lgamma(s));
}

double digamma(double x)
{
    if (x <= 0.0 && x == std::nearbyint(x)) {
        throw PoleError("digamma has a pole at " + std::to_string(x));
    }
    if (x < 0.5) {
        return digamma(1.0 - x) - pi / std::tan(pi * x);
    }
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    const double tail =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))));
    return acc + std::log(x) - 0.5 / x - tail;
}

cplx digamma(cplx s)
{
    if (at_gamma_pole(s)) {
        throw PoleError("digamma has a pole at " + show(s));
    }
    if (s.real() < 0.5) {
        // cot(pi s) = i (e^{2 i pi s} + 1)/(e^{2 i pi s} - 1), bounded for large |Im s|
        const cplx i(0.0, 1.0);
        cplx cot;
        if (std::abs(s.imag()) < 20.0) {
            cot = std::cos(pi * s) / std::sin(pi * s);
        } else if (s.imag() > 0.0) {
            const cplx e = std::exp(2.0 * i * pi * s);
            cot = i * (e + 1.0) / (e - 1.0);
        } else {
            const cplx e = std::exp(-2.0 * i * pi * s);
            cot = -i * (e + 1.0) / (e - 1.0);
        }
        return digamma(1.0 - s) - pi * cot;
    }
    cplx acc = 0.0;
    while (std::abs(s) < 10.0) {
        acc -= 1.0 / s;
        s += 1.0;
    }
    const cplx inv2 = 1.0 / (s * s);
    const cplx tail =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))));
    return acc + std::log(s) - 0.5 / s - tail;
}

cplx digamma_over_gamma(cplx s)
{
    if (s.real() >= 0.5) {
        return digamma(s) * rgamma(s);
    }
    // 1/Gamma(s) = Gamma(1-s) sin(pi s)/pi and psi(s) = psi(1-s) - pi cot(pi s)
    const cplx g = complex_gamma(1.0 - s);
    return g * std::sin(pi * s) * digamma(1.0 - s) / pi - g * std::cos(pi * s);
}

} // namespace opsolve
