#include "problem_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace opsolve::cli {

namespace {

using nlohmann::json;

int line_of(std::string_view text, std::size_t byte)
{
    const std::size_t end = std::min(byte, text.size());
    int line = 1;
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
        }
    }
    return line;
}

void check_keys(const json &object, const std::set<std::string> &allowed, const std::set<std::string> &required,
                const std::string &where)
{
    if (!object.is_object()) {
        throw SchemaError(where + ": expected an object");
    }
    for (const auto &[key, value] : object.items()) {
        if (allowed.count(key) == 0) {
            throw SchemaError(where + ": unknown key \"" + key + "\"");
        }
    }
    for (const auto &key : required) {
        if (!object.contains(key)) {
            throw SchemaError(where + ": missing required key \"" + key + "\"");
        }
    }
}

Scalar rational(const json &value, const std::string &field)
{
    if (value.is_number_integer()) {
        return Scalar(value.get<long>());
    }
    if (value.is_number()) {
        throw SchemaError(field + ": write rationals as strings, not JSON floats");
    }
    if (!value.is_string()) {
        throw SchemaError(field + ": expected a rational string");
    }
    try {
        return Scalar::parse(value.get<std::string>());
    } catch (const std::invalid_argument &e) {
        throw ParseError(field + ": " + e.what());
    }
}

int integer(const json &value, const std::string &field)
{
    if (!value.is_number_integer()) {
        throw SchemaError(field + ": expected an integer");
    }
    return value.get<int>();
}

std::map<int, Scalar> laurent(const json &object, const std::string &name)
{
    if (!object.is_object()) {
        throw SchemaError(name + ": expected an object mapping indices to rationals");
    }
    std::map<int, Scalar> out;
    for (const auto &[key, value] : object.items()) {
        const std::string field = name + "[\"" + key + "\"]";
        int index = 0;
        const char *first = key.data();
        const char *last = key.data() + key.size();
        const auto [ptr, ec] = std::from_chars(first, last, index);
        if (ec != std::errc() || ptr != last) {
            throw SchemaError(field + ": index must be an integer");
        }
        out[index] = rational(value, field);
    }
    return out;
}

} // namespace

OdeProblem parse_problem_text(std::string_view text, const std::string &origin)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const int line = line_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(origin + ":" + std::to_string(line) + ": " + e.what(), line);
    }

    check_keys(doc, {"kind", "p", "q", "rhs"}, {"kind", "p", "q"}, origin);

    OdeProblem problem;
    const json &kind = doc.at("kind");
    if (kind == "two_point") {
        problem.kind = SingularityKind::TwoPoint;
    } else if (kind == "three_point") {
        problem.kind = SingularityKind::ThreePoint;
    } else {
        throw SchemaError(origin + ": kind must be \"two_point\" or \"three_point\"");
    }
    problem.p = laurent(doc.at("p"), "p");
    problem.q = laurent(doc.at("q"), "q");

    if (doc.contains("rhs")) {
        const json &rhs = doc.at("rhs");
        if (!rhs.is_array()) {
            throw SchemaError("rhs: expected a list of terms");
        }
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            const std::string where = "rhs[" + std::to_string(i) + "]";
            const json &term = rhs[i];
            check_keys(term, {"sigma", "power", "log_power", "coeff"}, {"sigma", "coeff"}, where);
            RhsTerm out;
            out.sigma = rational(term.at("sigma"), where + ".sigma");
            out.coeff = rational(term.at("coeff"), where + ".coeff");
            if (term.contains("power")) {
                out.power = integer(term.at("power"), where + ".power");
            }
            if (term.contains("log_power")) {
                out.log_power = integer(term.at("log_power"), where + ".log_power");
            }
            problem.rhs.push_back(out);
        }
    }

    try {
        problem.validate();
    } catch (const ParameterError &e) {
        throw SchemaError(origin + ": " + e.what());
    }
    return problem;
}

OdeProblem parse_problem(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open problem file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_text(buffer.str(), path.string());
}

std::string dump_problem(const OdeProblem &problem)
{
    nlohmann::ordered_json doc;
    doc["kind"] = problem.kind == SingularityKind::TwoPoint ? "two_point" : "three_point";
    auto coefficients = [](const std::map<int, Scalar> &coeffs) {
        nlohmann::ordered_json out = nlohmann::ordered_json::object();
        for (const auto &[i, c] : coeffs) {
            out[std::to_string(i)] = c.to_string();
        }
        return out;
    };
    doc["p"] = coefficients(problem.p);
    doc["q"] = coefficients(problem.q);
    if (!problem.rhs.empty()) {
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto &term : problem.rhs) {
            terms.push_back({{"sigma", term.sigma.to_string()},
                             {"power", term.power},
                             {"log_power", term.log_power},
                             {"coeff", term.coeff.to_string()}});
        }
        doc["rhs"] = terms;
    }
    return doc.dump(2) + "\n";
}

OdeProblem to_float(const OdeProblem &problem)
{
    OdeProblem out = problem;
    for (auto &[i, c] : out.p) {
        c = c.to_float();
    }
    for (auto &[i, c] : out.q) {
        c = c.to_float();
    }
    for (auto &term : out.rhs) {
        term.sigma = term.sigma.to_float();
        term.coeff = term.coeff.to_float();
    }
    return out;
}

} // namespace opsolve::cli
