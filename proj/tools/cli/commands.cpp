#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <opsolve/catalog.hpp>
#include <opsolve/errors.hpp>
#include <opsolve/solver.hpp>

#include "problem_io.hpp"

namespace opsolve::cli {

namespace {

// Runs body and turns every library error into its exit code.
int guarded(const std::function<int()> &body, std::ostream &err)
{
    try {
        return body();
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return ParseFailure;
    } catch (const SchemaError &e) {
        err << "schema error: " << e.what() << "\n";
        return ParseFailure;
    } catch (const AccuracyError &e) {
        err << "accuracy error: " << e.what() << "\n";
        return AccuracyFailure;
    } catch (const Error &e) {
        err << "solve error: " << e.what() << "\n";
        return SolveFailure;
    } catch (const std::invalid_argument &e) {
        err << "solve error: " << e.what() << "\n";
        return SolveFailure;
    }
}

bool float_mode(const CommonOptions &options)
{
    if (options.mode == "exact") {
        return false;
    }
    if (options.mode == "float") {
        return true;
    }
    throw ParseError("--mode must be exact or float, got " + options.mode);
}

void check_format(const CommonOptions &options)
{
    if (options.format != "table" && options.format != "csv") {
        throw ParseError("--format must be table or csv, got " + options.format);
    }
}

Scalar parse_value(const std::string &text, const std::string &flag, bool as_float)
{
    Scalar value;
    try {
        value = Scalar::parse(text);
    } catch (const std::invalid_argument &e) {
        throw ParseError(flag + ": " + e.what());
    }
    return as_float ? value.to_float() : value;
}

Scalar required(const std::string &text, const std::string &flag, const std::string &family, bool as_float)
{
    if (text.empty()) {
        throw ParseError(family + " needs " + flag);
    }
    return parse_value(text, flag, as_float);
}

std::string number(double v, int digits = 15)
{
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

void write_coefficients(const LogSeries &f, bool csv, std::ostream &out)
{
    const bool exact = f.is_exact();
    if (csv) {
        out << (exact ? "m,log_power,coefficient_numerator,coefficient_denominator\n"
                      : "m,log_power,coefficient_float\n");
    } else {
        out << std::setw(4) << "m" << std::setw(4) << "k" << "  coefficient\n";
    }
    for (int m = 0; m <= f.order(); ++m) {
        for (int k = 0; k <= f.max_log_power(); ++k) {
            const Scalar c = f.coeff(m, k);
            if (c.is_zero()) {
                continue;
            }
            if (!csv) {
                out << std::setw(4) << m << std::setw(4) << k << "  " << (exact ? c.to_string() : number(c.to_double(), 17))
                    << "\n";
            } else if (exact) {
                out << m << "," << k << "," << c.exact().get_num().get_str() << "," << c.exact().get_den().get_str()
                    << "\n";
            } else {
                out << m << "," << k << "," << number(c.to_double(), 17) << "\n";
            }
        }
    }
}

struct Solved {
    OdeProblem problem;
    Solution solution;
};

Solved run_solve(const SolveOptions &options, std::ostream &out)
{
    const bool as_float = float_mode(options);
    check_format(options);
    if (options.root != 1 && options.root != 2) {
        throw ParseError("--root must be 1 or 2");
    }
    if (options.problem.empty()) {
        throw ParseError("--problem is required");
    }
    OdeProblem problem = parse_problem(options.problem);
    if (!options.dump_problem.empty()) {
        if (options.dump_problem == "-") {
            out << dump_problem(problem);
        } else {
            std::ofstream file(options.dump_problem);
            if (!file) {
                throw ParseError("cannot write " + options.dump_problem);
            }
            file << dump_problem(problem);
        }
    }
    if (as_float) {
        problem = to_float(problem);
    }
    const Scalar c0 = parse_value(options.c0, "--c0", as_float);
    const Scalar c1 = parse_value(options.c1, "--c1", as_float);
    const RootChoice root = options.root == 1 ? RootChoice::First : RootChoice::Second;
    Solution solution = solve(problem, root, c0, c1, options.order);
    return {std::move(problem), std::move(solution)};
}

// The family's series at z, in floats, with the order doubled from `order`
// until two successive values agree to a hundredth of tol.
std::pair<double, int> converged_value(const CatalogFamily &family, int order, double z, double tol)
{
    CatalogFamily floating = family;
    for (Scalar *s : {&floating.nu, &floating.a, &floating.b, &floating.c, &floating.omega}) {
        *s = s->to_float();
    }
    int n = std::max(order, 4);
    double previous = eval(family_series(floating, n), z);
    for (; n <= 512; n *= 2) {
        const double next = eval(family_series(floating, 2 * n), z);
        if (std::abs(next - previous) <= 0.01 * tol) {
            return {next, 2 * n};
        }
        previous = next;
    }
    throw AccuracyError("series of " + family.name() + " has not settled at z = " + number(z) + " by order 1024");
}

} // namespace

CatalogFamily make_family(const FamilyOptions &options, bool as_float)
{
    const std::string &name = options.family;
    auto value = [&](const std::string &text, const std::string &flag) { return required(text, flag, name, as_float); };
    CatalogFamily family;
    if (name == "exp") {
        family = CatalogFamily::exp();
    } else if (name == "cos" || name == "sin" || name == "cosh" || name == "sinh") {
        const bool hyperbolic = name.size() == 4;
        const bool odd = name[0] == 's';
        family = CatalogFamily::trig(value(options.omega, "--omega"), hyperbolic, odd);
    } else if (name == "bessel") {
        family = CatalogFamily::bessel(value(options.nu, "--nu"));
    } else if (name == "bessel_irregular") {
        family = CatalogFamily::bessel_irregular(value(options.nu, "--nu"));
    } else if (name == "bessel_log") {
        family = CatalogFamily::bessel_log_second(options.n);
    } else if (name == "hyp1f1" || name == "hyp1f1_irregular") {
        family = CatalogFamily::hyp1f1(value(options.a, "--a"), value(options.c, "--c"), name != "hyp1f1");
    } else if (name == "hyp2f1" || name == "hyp2f1_irregular") {
        family = CatalogFamily::hyp2f1(value(options.a, "--a"), value(options.b, "--b"), value(options.c, "--c"),
                                       name != "hyp2f1");
    } else if (name == "struve") {
        family = CatalogFamily::struve(value(options.nu, "--nu"));
    } else {
        throw ParseError("unknown family '" + name + "'");
    }
    family.validate();
    return family;
}

LogSeries catalog_reference(const CatalogFamily &family, int order)
{
    switch (family.tag) {
    case FamilyTag::Exp:
        return exp_series(order);
    case FamilyTag::TrigHyp:
        return trig_series(family.omega, family.hyperbolic, family.odd, order);
    case FamilyTag::BesselRegular:
        return bessel_j_series(family.nu, order);
    case FamilyTag::BesselIrregular:
        return bessel_j_irregular_series(family.nu, order);
    case FamilyTag::BesselLogSecond:
        return bessel_log_second_series(family.n, order);
    case FamilyTag::Hyp1F1Regular:
        return hyp1f1_series(family.a, family.c, order);
    case FamilyTag::Hyp1F1Irregular: {
        const Scalar gap = Scalar(1) - family.c;
        const LogSeries base = hyp1f1_series(Scalar(1) + family.a - family.c, Scalar(2) - family.c, order);
        return scale(Scalar(1) / gap, base.shifted(gap));
    }
    case FamilyTag::Hyp2F1Regular:
        return hyp2f1_series(family.a, family.b, family.c, order);
    case FamilyTag::Hyp2F1Irregular: {
        const Scalar gap = Scalar(1) - family.c;
        const LogSeries base = hyp2f1_series(Scalar(1) + family.a - family.c, Scalar(1) + family.b - family.c,
                                             Scalar(2) - family.c, order);
        return scale(Scalar(1) / gap, base.shifted(gap));
    }
    case FamilyTag::Struve:
        // z^-nu H_nu
        return struve_series(family.nu.to_double(), order).shifted(-family.nu);
    }
    throw std::logic_error("unhandled family");
}

Discrepancy max_discrepancy(const LogSeries &a, const LogSeries &b)
{
    const Scalar low = std::min(a.sigma(), b.sigma());
    const LogSeries x = a.realigned(low);
    const LogSeries y = b.realigned(low);
    const int top = std::min(x.order(), y.order());
    const int logs = std::max(x.max_log_power(), y.max_log_power());
    Discrepancy out{Scalar(0), 0};
    for (int m = 0; m <= top; ++m) {
        for (int k = 0; k <= logs; ++k) {
            out.max = std::max(out.max, abs(x.coeff(m, k) - y.coeff(m, k)));
            ++out.compared;
        }
    }
    return out;
}

int cmd_solve(const SolveOptions &options, std::ostream &out, std::ostream &err)
{
    return guarded(
        [&] {
            const auto [problem, solution] = run_solve(options, out);
            const bool csv = options.format == "csv";
            if (!csv) {
                out << "equation    " << describe(problem) << "\n";
                out << "exponent    " << solution.lambda << "  (psi = z^exponent f)\n";
                out << "f base      z^" << solution.f.sigma() << "\n";
                out << "mode        " << (solution.exact ? "exact" : "float") << "\n";
                out << "iterations  " << solution.iterations_used << "\n";
            }
            write_coefficients(solution.f, csv, out);
            if (!csv) {
                out << "residual    ";
                if (solution.residual_leading_order) {
                    out << "first nonzero at relative order " << *solution.residual_leading_order << "\n";
                } else {
                    out << "zero through relative order " << solution.f.order() << "\n";
                }
            }
            return Ok;
        },
        err);
}

int cmd_eval(const EvalOptions &options, std::ostream &out, std::ostream &err)
{
    return guarded(
        [&] {
            std::ostringstream ignored;
            const auto [problem, solution] = run_solve(options, options.dump_problem == "-" ? out : ignored);
            const LogSeries psi = solution.psi();
            const bool csv = options.format == "csv";
            out << (csv ? "z,psi\n" : "z                  psi(z)\n");
            for (double z : options.z) {
                const double value = eval(psi, z);
                if (csv) {
                    out << number(z, 17) << "," << number(value, 17) << "\n";
                } else {
                    out << std::left << std::setw(19) << number(z) << number(value) << std::right << "\n";
                }
            }
            return Ok;
        },
        err);
}

int cmd_contour(const ContourOptions &options, std::ostream &out, std::ostream &err)
{
    return guarded(
        [&] {
            check_format(options);
            const CatalogFamily family = make_family(options, float_mode(options));
            ContourSpec spec = recommended_contour(family);
            spec.tolerance = options.tol;
            if (options.abscissa) {
                spec.abscissa = *options.abscissa;
            }
            if (options.height) {
                spec.half_height = *options.height;
            }
            if (options.step) {
                spec.step = *options.step;
            }
            if (options.tail == "auto") {
                spec.tail_mode = TailMode::Auto;
            } else if (options.tail == "extrapolate") {
                spec.tail_mode = TailMode::Extrapolate;
            } else if (options.tail == "deform") {
                spec.tail_mode = TailMode::Deform;
            } else {
                throw ParseError("--tail must be auto, extrapolate or deform");
            }

            const bool csv = options.format == "csv";
            if (csv) {
                out << "z,value,tail_estimate,imag,error_estimate\n";
            } else {
                out << "family      " << family.name() << "\n";
                out << "line        Re s = " << spec.abscissa << ", step " << spec.step << ", height "
                    << spec.half_height << "\n";
            }
            for (double z : options.z) {
                const ContourResult r = contour_eval(family, z, spec);
                if (csv) {
                    out << number(z, 17) << "," << number(r.value, 17) << "," << number(r.tail_estimate, 17) << ","
                        << number(r.imag, 17) << "," << number(r.error_estimate, 17) << "\n";
                    continue;
                }
                out << "z           " << number(z) << "\n";
                out << "value       " << number(r.value) << "\n";
                out << "tail        " << number(r.tail_estimate, 6) << "\n";
                out << "imag        " << number(r.imag, 6) << "\n";
                out << "error est   " << number(r.error_estimate, 6) << "\n";
                out << "evaluations " << r.evaluations << "\n";
                if (r.warning) {
                    out << "note        " << r.message << "\n";
                }
            }
            return Ok;
        },
        err);
}

int cmd_compare(const CompareOptions &options, std::ostream &out, std::ostream &err)
{
    return guarded(
        [&] {
            check_format(options);
            const CatalogFamily family = make_family(options, float_mode(options));
            const LogSeries series = family_series(family, options.order);
            const LogSeries oracle = catalog_reference(family, options.order);
            const Discrepancy coeffs = max_discrepancy(series, oracle);
            const double coeff_gap = coeffs.max.to_double();
            bool within = coeff_gap <= options.tol;

            const bool csv = options.format == "csv";
            if (csv) {
                out << "check,z,series,reference,discrepancy\n";
                out << "coefficients,,,," << coeffs.max << "\n";
            } else {
                out << "family        " << family.name() << "\n";
                out << "order         " << options.order << "\n";
                out << "coefficients  " << coeffs.compared << " compared, max discrepancy " << coeffs.max << "\n";
            }

            ContourSpec spec = recommended_contour(family);
            spec.tolerance = options.tol;
            for (double z : options.z) {
                const auto [value, used] = converged_value(family, options.order, z, options.tol);
                const ContourResult r = contour_eval(family, z, spec);
                const double gap = std::abs(value - r.value);
                within = within && gap <= options.tol;
                if (csv) {
                    out << "contour," << number(z, 17) << "," << number(value, 17) << "," << number(r.value, 17)
                        << "," << number(gap, 17) << "\n";
                } else {
                    out << "contour z=" << std::left << std::setw(6) << number(z) << std::right << "series(N=" << used
                        << ") " << number(value) << "  contour " << number(r.value) << "  |diff| " << number(gap, 3)
                        << "\n";
                }
            }
            if (!csv) {
                out << "result        " << (within ? "within" : "outside") << " tolerance " << options.tol << "\n";
            }
            return within ? Ok : AccuracyFailure;
        },
        err);
}

} // namespace opsolve::cli
