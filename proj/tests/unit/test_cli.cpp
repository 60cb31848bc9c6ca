#include <doctest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <opsolve/catalog.hpp>

#include "commands.hpp"
#include "problem_io.hpp"

using namespace opsolve;
using namespace opsolve::cli;

namespace {

Scalar R(long n, long d = 1) { return Scalar::rational(n, d); }

std::string problem_file(const std::string &name) { return std::string(OPSOLVE_PROBLEM_DIR) + "/" + name; }

struct Run {
    int status = -1;
    std::string out;
};

// Runs the installed-style binary; stderr goes to /dev/null.
Run run_tool(const std::string &args)
{
    const std::string command = std::string(OPSOLVE_TOOL) + " " + args + " 2>/dev/null";
    Run run;
    FILE *pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        run.out.append(buffer.data(), n);
    }
    const int raw = pclose(pipe);
    run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return run;
}

int count_lines(const std::string &text)
{
    int lines = 0;
    for (char ch : text) {
        lines += ch == '\n' ? 1 : 0;
    }
    return lines;
}

} // namespace

TEST_CASE("parse the Bessel problem file")
{
    const OdeProblem p = parse_problem(problem_file("bessel.json"));
    CHECK(p == problems::bessel(R(1, 3)));
}

TEST_CASE("schema violations")
{
    CHECK_THROWS_AS(parse_problem_text(R"({"kind":"two_point","p":{},"q":{},"r":{}})"), SchemaError);
    CHECK_THROWS_AS(parse_problem_text(R"({"kind":"two_point","p":{"-1":0.5},"q":{}})"), SchemaError);
    CHECK_THROWS_AS(parse_problem_text(R"({"kind":"four_point","p":{},"q":{}})"), SchemaError);
    CHECK_THROWS_AS(parse_problem_text(R"({"kind":"two_point","q":{}})"), SchemaError);
    CHECK_THROWS_AS(parse_problem_text(R"({"kind":"two_point","p":{"-2":"1"},"q":{}})"), SchemaError);
    CHECK_THROWS_AS(parse_problem_text(R"({"kind":"two_point","p":{},"q":{},"rhs":[{"sigma":"0"}]})"), SchemaError);
}

TEST_CASE("missing q_-2 means a regular point")
{
    const OdeProblem p = parse_problem_text(R"({"kind":"two_point","p":{"-1":"1"},"q":{"0":"1"}})");
    CHECK(p.q_at(-2).is_zero());
    const IndexData idx = indicial(p);
    CHECK(idx.double_root);
    CHECK(idx.lambda1.is_zero());
}

TEST_CASE("parse errors carry a line")
{
    try {
        static_cast<void>(parse_problem_text("{\n  \"kind\": \"two_point\",\n  \"p\": {\"-1\": \"1\"\n  \"q\": {}\n}"));
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() == 4);
    }
    try {
        static_cast<void>(parse_problem_text(R"({"kind":"two_point","p":{"-1":"1/x"},"q":{}})"));
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(std::string(e.what()).find("p") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_problem("/nonexistent/problem.json"), ParseError);
}

TEST_CASE("dump re-parses to the same problem")
{
    for (const char *name : {"bessel.json", "bessel_n1.json", "confluent.json", "gauss.json", "gegenbauer.json",
                             "struve.json"}) {
        INFO(name);
        const OdeProblem p = parse_problem(problem_file(name));
        const std::string text = dump_problem(p);
        CHECK(parse_problem_text(text) == p);
        CHECK(dump_problem(parse_problem_text(text)) == text);
    }
    OdeProblem forced = problems::struve(R(1, 2), R(3, 7));
    forced.rhs.push_back(RhsTerm{R(1, 2), 2, 1, R(-5)});
    CHECK(parse_problem_text(dump_problem(forced)) == forced);
}

TEST_CASE("solve prints the Bessel table")
{
    SolveOptions options;
    options.problem = problem_file("bessel.json");
    options.order = 10;
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_solve(options, out, err) == Ok);
    const std::string text = out.str();
    CHECK(text.find("-3/16") != std::string::npos);
    CHECK(text.find("9/896") != std::string::npos);

    options.format = "csv";
    std::ostringstream csv;
    CHECK(cmd_solve(options, csv, err) == Ok);
    // header plus the six nonzero coefficients of the even powers up to 10
    CHECK(count_lines(csv.str()) == 7);
    CHECK(csv.str().rfind("m,log_power,coefficient_numerator,coefficient_denominator\n", 0) == 0);
    CHECK(csv.str().find("\n2,0,-3,16\n") != std::string::npos);
}

TEST_CASE("csv output is byte-stable")
{
    SolveOptions options;
    options.problem = problem_file("gauss.json");
    options.format = "csv";
    std::ostringstream first;
    std::ostringstream second;
    std::ostringstream err;
    REQUIRE(cmd_solve(options, first, err) == Ok);
    REQUIRE(cmd_solve(options, second, err) == Ok);
    CHECK(first.str() == second.str());
}

TEST_CASE("solve failures map to exit codes")
{
    std::ostringstream out;
    std::ostringstream err;
    SolveOptions missing;
    missing.problem = problem_file("missing.json");
    CHECK(cmd_solve(missing, out, err) == ParseFailure);

    // c0 and c1 together on non-integer grids cannot share a series.
    SolveOptions both;
    both.problem = problem_file("bessel.json");
    both.c1 = "1";
    CHECK(cmd_solve(both, out, err) == SolveFailure);

    SolveOptions bad_constant;
    bad_constant.problem = problem_file("bessel.json");
    bad_constant.c0 = "one";
    CHECK(cmd_solve(bad_constant, out, err) == ParseFailure);
}

TEST_CASE("eval")
{
    EvalOptions options;
    options.problem = problem_file("confluent.json");
    options.order = 30;
    options.z = {0.5};
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_eval(options, out, err) == Ok);
    CHECK(out.str().find("1.41068613464") != std::string::npos);

    options.z = {-1.0};
    CHECK(cmd_eval(options, out, err) == SolveFailure);
}

TEST_CASE("families")
{
    FamilyOptions bessel;
    bessel.family = "bessel";
    bessel.nu = "1/3";
    const CatalogFamily family = make_family(bessel, false);
    CHECK(family.tag == FamilyTag::BesselRegular);
    CHECK(family.nu.identical(R(1, 3)));

    FamilyOptions missing;
    missing.family = "hyp2f1";
    missing.a = "1";
    CHECK_THROWS_AS(make_family(missing, false), ParseError);
    FamilyOptions unknown;
    unknown.family = "airy";
    CHECK_THROWS_AS(make_family(unknown, false), ParseError);

    const Discrepancy d = max_discrepancy(catalog_reference(family, 10), bessel_j_series(R(1, 3), 12));
    CHECK(d.max.is_zero());
    CHECK(d.compared == 11);
}

TEST_CASE("compare and contour exit codes")
{
    CompareOptions compare;
    compare.family = "hyp2f1";
    compare.a = "1/2";
    compare.b = "1/3";
    compare.c = "5/4";
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_compare(compare, out, err) == Ok);
    CHECK(out.str().find("compared, max discrepancy 0\n") != std::string::npos);

    ContourOptions contour;
    contour.family = "exp";
    std::ostringstream value;
    CHECK(cmd_contour(contour, value, err) == Ok);
    CHECK(value.str().find("1.64872127") != std::string::npos);

    contour.tail = "extrapolate";
    CHECK(cmd_contour(contour, value, err) == AccuracyFailure);

    contour.tail = "sideways";
    CHECK(cmd_contour(contour, value, err) == ParseFailure);
}

TEST_CASE("the binary")
{
    const Run solve = run_tool("solve --problem " + problem_file("bessel.json") + " --order 10 --format csv");
    CHECK(solve.status == 0);
    CHECK(count_lines(solve.out) == 7);

    const Run dump = run_tool("solve --problem " + problem_file("gauss.json") + " --dump-problem - --order 2");
    CHECK(dump.status == 0);
    CHECK(dump.out.rfind(dump_problem(parse_problem(problem_file("gauss.json"))), 0) == 0);

    CHECK(run_tool("contour --family exp --z 0.5").status == 0);
    CHECK(run_tool("contour --family exp --z 0.5 --tail extrapolate").status == 3);
    CHECK(run_tool("solve --problem " + problem_file("bessel.json") + " --root 3").status == 1);
    CHECK(run_tool("solve").status == 1);
    CHECK(run_tool("--help").status == 0);
}
