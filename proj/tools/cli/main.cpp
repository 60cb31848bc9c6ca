#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace opsolve::cli;

void add_common(CLI::App &cmd, CommonOptions &o)
{
    cmd.add_option("--order", o.order, "truncation order")->capture_default_str()->check(CLI::NonNegativeNumber);
    cmd.add_option("--mode", o.mode, "exact or float arithmetic")
        ->capture_default_str()
        ->check(CLI::IsMember({"exact", "float"}));
    cmd.add_option("--tol", o.tol, "tolerance for contour and comparisons")->capture_default_str();
    cmd.add_option("--format", o.format, "table or csv")->capture_default_str()->check(CLI::IsMember({"table", "csv"}));
}

void add_solve(CLI::App &cmd, SolveOptions &o)
{
    add_common(cmd, o);
    cmd.add_option("--problem", o.problem, "problem file (JSON)")->required();
    cmd.add_option("--root", o.root, "1 for the larger indicial root, 2 for the smaller")
        ->capture_default_str()
        ->check(CLI::IsMember({1, 2}));
    cmd.add_option("--c0", o.c0, "coefficient of the constant seed")->capture_default_str();
    cmd.add_option("--c1", o.c1, "coefficient of the z^(1-alpha) seed")->capture_default_str();
    cmd.add_option("--dump-problem", o.dump_problem, "write the parsed problem as JSON (- for stdout)");
}

void add_family(CLI::App &cmd, FamilyOptions &o)
{
    cmd.add_option("--family", o.family,
                   "exp, cos, sin, cosh, sinh, bessel, bessel_irregular, bessel_log, hyp1f1, hyp1f1_irregular, "
                   "hyp2f1, hyp2f1_irregular, struve")
        ->required();
    cmd.add_option("--a", o.a, "hypergeometric a");
    cmd.add_option("--b", o.b, "hypergeometric b");
    cmd.add_option("--c", o.c, "hypergeometric c");
    cmd.add_option("--nu", o.nu, "Bessel or Struve order")->capture_default_str();
    cmd.add_option("--omega", o.omega, "trig frequency")->capture_default_str();
    cmd.add_option("--n", o.n, "integer order of the log second solution")->capture_default_str();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Series solutions of linear ODEs at a regular singular point"};
    app.require_subcommand(1);

    SolveOptions solve;
    auto *solve_cmd = app.add_subcommand("solve", "coefficient table of a solution");
    add_solve(*solve_cmd, solve);

    EvalOptions eval;
    auto *eval_cmd = app.add_subcommand("eval", "value of a solution psi at z");
    add_solve(*eval_cmd, eval);
    eval_cmd->add_option("--z", eval.z, "evaluation points")->capture_default_str();

    ContourOptions contour;
    auto *contour_cmd = app.add_subcommand("contour", "contour integral of a catalog family");
    add_common(*contour_cmd, contour);
    add_family(*contour_cmd, contour);
    contour_cmd->add_option("--z", contour.z, "evaluation points in (0, 1)")->capture_default_str();
    contour_cmd->add_option("--abscissa", contour.abscissa, "Re s of the line");
    contour_cmd->add_option("--height", contour.height, "half height before the tails");
    contour_cmd->add_option("--step", contour.step, "node spacing");
    contour_cmd->add_option("--tail", contour.tail, "auto, extrapolate or deform")->capture_default_str();

    CompareOptions compare;
    auto *compare_cmd = app.add_subcommand("compare", "solver series against the catalog and the contour integral");
    add_common(*compare_cmd, compare);
    add_family(*compare_cmd, compare);
    compare_cmd->add_option("--z", compare.z, "contour check points")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return ParseFailure;
    }

    if (solve_cmd->parsed()) {
        return cmd_solve(solve, std::cout, std::cerr);
    }
    if (eval_cmd->parsed()) {
        return cmd_eval(eval, std::cout, std::cerr);
    }
    if (contour_cmd->parsed()) {
        return cmd_contour(contour, std::cout, std::cerr);
    }
    return cmd_compare(compare, std::cout, std::cerr);
}
