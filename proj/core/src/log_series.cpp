#include <opsolve/log_series.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include <opsolve/errors.hpp>

namespace opsolve {

LogSeries::LogSeries(Scalar sigma, int order, int max_log_power)
    : sigma_(std::move(sigma)), order_(order), max_log_(max_log_power)
{
    if (order < 0 || max_log_power < 0) {
        throw std::invalid_argument("LogSeries: negative order or log power");
    }
    coeffs_.assign(static_cast<std::size_t>(order + 1) * static_cast<std::size_t>(max_log_power + 1), Scalar(0));
}

LogSeries LogSeries::monomial(const Scalar &coeff, const Scalar &exponent, int order, int log_power)
{
    LogSeries f(exponent, order, log_power);
    f.set_coeff(0, log_power, coeff);
    return f;
}

LogSeries LogSeries::taylor(const std::vector<Scalar> &coeffs)
{
    if (coeffs.empty()) {
        throw std::invalid_argument("LogSeries::taylor: empty coefficient list");
    }
    LogSeries f(Scalar(0), static_cast<int>(coeffs.size()) - 1);
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        f.coeffs_[m] = coeffs[m];
    }
    return f;
}

Scalar LogSeries::coeff(int m, int k) const
{
    if (m < 0 || m > order_ || k < 0 || k > max_log_) {
        return Scalar(0);
    }
    return coeffs_[slot(m, k)];
}

void LogSeries::set_coeff(int m, int k, Scalar value)
{
    if (m < 0 || m > order_ || k < 0) {
        throw std::out_of_range("LogSeries::set_coeff: index (" + std::to_string(m) + ", " + std::to_string(k)
                                + ") outside order " + std::to_string(order_));
    }
    if (k > max_log_) {
        // Rows are stored contiguously per log power, so growing K appends.
        coeffs_.resize(static_cast<std::size_t>(order_ + 1) * static_cast<std::size_t>(k + 1), Scalar(0));
        max_log_ = k;
    }
    coeffs_[slot(m, k)] = std::move(value);
}

void LogSeries::add_to_coeff(int m, int k, const Scalar &value)
{
    if (k > max_log_) {
        set_coeff(m, k, value);
        return;
    }
    if (m < 0 || m > order_ || k < 0) {
        throw std::out_of_range("LogSeries::add_to_coeff: index outside series");
    }
    coeffs_[slot(m, k)] += value;
}

bool LogSeries::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar &c) { return c.is_zero(); });
}

bool LogSeries::is_exact() const
{
    return sigma_.is_exact()
        && std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar &c) { return c.is_exact(); });
}

LogSeries LogSeries::shifted(const Scalar &power) const
{
    LogSeries out = *this;
    out.sigma_ += power;
    return out;
}

LogSeries LogSeries::realigned(const Scalar &new_sigma) const
{
    const Scalar gap = sigma_ - new_sigma;
    if (!gap.is_integer()) {
        throw NonIntegerExponentGap("cannot realign base exponent " + sigma_.to_string() + " onto "
                                    + new_sigma.to_string());
    }
    const long d = gap.to_long();
    if (d < 0) {
        throw std::invalid_argument("LogSeries::realigned: target base exponent lies above the current one");
    }
    LogSeries out(new_sigma, order_ + static_cast<int>(d), max_log_);
    for (int k = 0; k <= max_log_; ++k) {
        for (int m = 0; m <= order_; ++m) {
            out.coeffs_[out.slot(m + static_cast<int>(d), k)] = coeffs_[slot(m, k)];
        }
    }
    return out;
}

LogSeries LogSeries::truncated(int order) const
{
    if (order >= order_) {
        return *this;
    }
    if (order < 0) {
        throw std::invalid_argument("LogSeries::truncated: negative order");
    }
    LogSeries out(sigma_, order, max_log_);
    for (int k = 0; k <= max_log_; ++k) {
        for (int m = 0; m <= order; ++m) {
            out.coeffs_[out.slot(m, k)] = coeffs_[slot(m, k)];
        }
    }
    return out;
}

LogSeries LogSeries::padded(int order) const
{
    if (order <= order_) {
        return truncated(order);
    }
    LogSeries out(sigma_, order, max_log_);
    for (int k = 0; k <= max_log_; ++k) {
        for (int m = 0; m <= order_; ++m) {
            out.coeffs_[out.slot(m, k)] = coeffs_[slot(m, k)];
        }
    }
    return out;
}

LogSeries LogSeries::with_sigma(Scalar sigma) const
{
    LogSeries out = *this;
    out.sigma_ = std::move(sigma);
    return out;
}

LogSeries LogSeries::to_float() const
{
    LogSeries out = *this;
    out.sigma_ = sigma_.to_float();
    for (auto &c : out.coeffs_) {
        c = c.to_float();
    }
    return out;
}

LogSeries LogSeries::trimmed() const
{
    int top = max_log_;
    while (top > 0) {
        bool empty = true;
        for (int m = 0; m <= order_ && empty; ++m) {
            empty = coeffs_[slot(m, top)].is_zero();
        }
        if (!empty) {
            break;
        }
        --top;
    }
    if (top == max_log_) {
        return *this;
    }
    LogSeries out(sigma_, order_, top);
    std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
    return out;
}

int LogSeries::leading_index() const
{
    for (int m = 0; m <= order_; ++m) {
        for (int k = 0; k <= max_log_; ++k) {
            if (!coeffs_[slot(m, k)].is_zero()) {
                return m;
            }
        }
    }
    return -1;
}

bool operator==(const LogSeries &a, const LogSeries &b)
{
    if (a.order_ != b.order_ || !(a.sigma_ == b.sigma_)) {
        return false;
    }
    const int kmax = std::max(a.max_log_, b.max_log_);
    for (int k = 0; k <= kmax; ++k) {
        for (int m = 0; m <= a.order_; ++m) {
            if (!(a.coeff(m, k) == b.coeff(m, k))) {
                return false;
            }
        }
    }
    return true;
}

LogSeries linear_combine(const Scalar &a, const LogSeries &f, const Scalar &b, const LogSeries &g)
{
    const Scalar gap = f.sigma() - g.sigma();
    if (!gap.is_integer()) {
        throw NonIntegerExponentGap("base exponents " + f.sigma().to_string() + " and " + g.sigma().to_string()
                                    + " differ by a non-integer");
    }
    const Scalar &base = gap < Scalar(0) ? f.sigma() : g.sigma();
    const LogSeries fa = f.realigned(base);
    const LogSeries ga = g.realigned(base);
    const int order = std::min(fa.order(), ga.order());
    const int kmax = std::max(fa.max_log_power(), ga.max_log_power());
    LogSeries out(base, order, kmax);
    for (int k = 0; k <= kmax; ++k) {
        for (int m = 0; m <= order; ++m) {
            out.set_coeff(m, k, a * fa.coeff(m, k) + b * ga.coeff(m, k));
        }
    }
    return out;
}

LogSeries mul_poly(const LogSeries &f, const std::vector<std::pair<int, Scalar>> &poly)
{
    if (poly.empty()) {
        throw std::invalid_argument("mul_poly: empty polynomial");
    }
    LogSeries out(f.sigma(), f.order(), f.max_log_power());
    for (const auto &[power, c] : poly) {
        if (power < 0) {
            throw std::invalid_argument("mul_poly: negative power " + std::to_string(power));
        }
        if (c.is_zero()) {
            continue;
        }
        for (int k = 0; k <= f.max_log_power(); ++k) {
            for (int m = 0; m + power <= f.order(); ++m) {
                const Scalar &fc = f.coeff(m, k);
                if (!fc.is_zero()) {
                    out.add_to_coeff(m + power, k, c * fc);
                }
            }
        }
    }
    return out.trimmed();
}

LogSeries mul_laurent(const LogSeries &f, const std::vector<std::pair<int, Scalar>> &poly)
{
    if (poly.empty()) {
        throw std::invalid_argument("mul_laurent: empty polynomial");
    }
    int lowest = poly.front().first;
    for (const auto &term : poly) {
        lowest = std::min(lowest, term.first);
    }
    std::vector<std::pair<int, Scalar>> lifted;
    lifted.reserve(poly.size());
    for (const auto &[power, c] : poly) {
        lifted.emplace_back(power - lowest, c);
    }
    return mul_poly(f, lifted).shifted(Scalar(lowest));
}

LogSeries scale(const Scalar &a, const LogSeries &f)
{
    LogSeries out(f.sigma(), f.order(), f.max_log_power());
    for (int k = 0; k <= f.max_log_power(); ++k) {
        for (int m = 0; m <= f.order(); ++m) {
            out.set_coeff(m, k, a * f.coeff(m, k));
        }
    }
    return out;
}

LogSeries differentiate(const LogSeries &f)
{
    // d/dz [z^p L^k] = p z^(p-1) L^k + k z^(p-1) L^(k-1)
    LogSeries out(f.sigma() - Scalar(1), f.order(), f.max_log_power());
    for (int k = 0; k <= f.max_log_power(); ++k) {
        for (int m = 0; m <= f.order(); ++m) {
            const Scalar &c = f.coeff(m, k);
            if (c.is_zero()) {
                continue;
            }
            const Scalar p = f.sigma() + Scalar(m);
            if (!p.near(0)) {
                out.add_to_coeff(m, k, p * c);
            }
            if (k > 0) {
                out.add_to_coeff(m, k - 1, Scalar(k) * c);
            }
        }
    }
    return out.trimmed();
}

LogSeries integrate(const LogSeries &f)
{
    LogSeries out(f.sigma() + Scalar(1), f.order(), f.max_log_power());
    for (int k = 0; k <= f.max_log_power(); ++k) {
        for (int m = 0; m <= f.order(); ++m) {
            const Scalar &c = f.coeff(m, k);
            if (c.is_zero()) {
                continue;
            }
            const Scalar p = f.sigma() + Scalar(m);
            if (p.near(-1)) {
                out.add_to_coeff(m, k + 1, c / Scalar(k + 1));
                continue;
            }
            // int z^p L^k = z^(p+1) sum_j (-1)^j k!/(k-j)! L^(k-j) / (p+1)^(j+1)
            const Scalar p1 = p + Scalar(1);
            Scalar factor = c / p1;
            for (int j = 0; j <= k; ++j) {
                out.add_to_coeff(m, k - j, factor);
                factor = -factor * Scalar(k - j) / p1;
            }
        }
    }
    return out.trimmed();
}

double eval(const LogSeries &f, double z)
{
    if (!(z > 0.0)) {
        throw DomainError("eval: z must be positive, got " + std::to_string(z));
    }
    const double log_z = std::log(z);
    double total = 0.0;
    double log_pow = 1.0;
    for (int k = 0; k <= f.max_log_power(); ++k) {
        double horner = 0.0;
        for (int m = f.order(); m >= 0; --m) {
            horner = horner * z + f.coeff(m, k).to_double();
        }
        total += horner * log_pow;
        log_pow *= log_z;
    }
    return total * std::pow(z, f.sigma().to_double());
}

double weighted_norm_estimate(const LogSeries &f, double alpha, double z0)
{
    if (!(z0 > 0.0 && z0 < 1.0)) {
        throw DomainError("weighted_norm_estimate: z0 must lie in (0, 1)");
    }
    constexpr int samples = 1000;
    constexpr double depth = 1e-6;
    const double ratio = std::pow(depth, 1.0 / (samples - 1));
    double z = z0;
    double best = 0.0;
    for (int i = 0; i < samples; ++i, z *= ratio) {
        best = std::max(best, std::pow(z, alpha) * std::abs(eval(f, z)));
    }
    return best;
}

std::ostream &operator<<(std::ostream &os, const LogSeries &f)
{
    os << "LogSeries(sigma=" << f.sigma() << ", N=" << f.order() << ", K=" << f.max_log_power() << ") {";
    bool first = true;
    for (int k = 0; k <= f.max_log_power(); ++k) {
        for (int m = 0; m <= f.order(); ++m) {
            const Scalar c = f.coeff(m, k);
            if (c.is_zero()) {
                continue;
            }
            os << (first ? " " : ", ") << "[" << m << "," << k << "]=" << c;
            first = false;
        }
    }
    return os << " }";
}

} // namespace opsolve
