#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <opsolve/log_series.hpp>
#include <opsolve/mellin.hpp>

namespace opsolve::cli {

enum ExitCode { Ok = 0, ParseFailure = 1, SolveFailure = 2, AccuracyFailure = 3 };

struct CommonOptions {
    int order = 12;
    std::string mode = "exact";
    double tol = 1e-8;
    std::string format = "table";
};

struct SolveOptions : CommonOptions {
    std::string problem;
    int root = 1;
    std::string c0 = "1";
    std::string c1 = "0";
    // Written before solving; "-" means stdout.
    std::string dump_problem;
};

struct EvalOptions : SolveOptions {
    std::vector<double> z{0.5};
};

// exp, cos, sin, cosh, sinh, bessel, bessel_irregular, bessel_log, hyp1f1,
// hyp1f1_irregular, hyp2f1, hyp2f1_irregular, struve
struct FamilyOptions {
    std::string family;
    std::string a;
    std::string b;
    std::string c;
    std::string nu = "0";
    std::string omega = "1";
    int n = 1;
};

struct ContourOptions : CommonOptions, FamilyOptions {
    std::vector<double> z{0.5};
    std::optional<double> abscissa;
    std::optional<double> height;
    std::optional<double> step;
    std::string tail = "auto";
};

struct CompareOptions : CommonOptions, FamilyOptions {
    std::vector<double> z{0.25, 0.5};
};

int cmd_solve(const SolveOptions &options, std::ostream &out, std::ostream &err);
int cmd_eval(const EvalOptions &options, std::ostream &out, std::ostream &err);
int cmd_contour(const ContourOptions &options, std::ostream &out, std::ostream &err);
int cmd_compare(const CompareOptions &options, std::ostream &out, std::ostream &err);

// ParseError for unknown names or missing parameters.
CatalogFamily make_family(const FamilyOptions &options, bool float_mode);

// The family's f from the catalog's classical series, on its own grid.
LogSeries catalog_reference(const CatalogFamily &family, int order);

struct Discrepancy {
    Scalar max;
    int compared = 0;
};
// Largest coefficient difference on the exponents both series know.
Discrepancy max_discrepancy(const LogSeries &a, const LogSeries &b);

} // namespace opsolve::cli
