#include "covercert/bounds.hpp"
#include "covercert/covering.hpp"
#include "covercert/distortion.hpp"
#include "covercert/errors.hpp"
#include "covercert/json_io.hpp"
#include "covercert/search.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

namespace py = pybind11;
using namespace covercert;

namespace {

py::object json_loads(const std::string& text) {
    return py::module_::import("json").attr("loads")(text);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CoveringSystem load_system(const std::string& text_or_path, std::uint64_t cap) {
    const bool looks_like_json = text_or_path.find('{') != std::string::npos;
    return system_from_json(looks_like_json ? text_or_path : slurp(text_or_path), cap);
}

py::dict verify_py(const std::string& text_or_path, std::uint64_t cap, int threads) {
    const CoveringSystem sys = load_system(text_or_path, cap);
    const VerifyReport rep = covers(sys, VerifyOptions{cap, threads});
    return py::dict(json_loads(verify_report_to_json(sys, rep)));
}

py::dict certify_py(const std::string& text_or_path, const std::string& mode,
                    const std::vector<std::string>& deltas, std::uint64_t cap) {
    const CoveringSystem sys = load_system(text_or_path, cap);
    CertifyOptions opts;
    opts.cap = cap;
    if (mode == "second")
        opts.mode = CriterionMode::SecondMoment;
    else if (mode == "mixed")
        opts.mode = CriterionMode::Mixed;
    else
        throw InvalidInputError("mode must be 'second' or 'mixed'");
    for (const auto& d : deltas) opts.deltas.push_back(rat_from_user_string(d));
    const Certificate cert = certify(sys, opts);
    return py::dict(json_loads(certificate_to_json(sys, cert)));
}

py::dict uncovered_py(const std::string& text_or_path, std::uint64_t cap) {
    const CoveringSystem sys = load_system(text_or_path, cap);
    const auto residues = uncovered(sys, VerifyOptions{cap, 1});
    py::list out;
    for (const auto& r : residues) out.append(poly_to_string(sys.ctx(), r));
    py::dict d;
    d["uncovered"] = out;
    d["Q"] = poly_to_string(sys.ctx(), sys.modulus_lcm());
    return d;
}

long long threshold_py(int g, int s, const std::string& variant, const std::string& precision) {
    const ThresholdVariant v = variant == "refined724" ? ThresholdVariant::Refined724
                               : variant == "paper"
                                   ? ThresholdVariant::Paper
                                   : throw InvalidInputError("variant must be 'paper' or 'refined724'");
    return theorem_threshold(g, s, v, rat_from_user_string(precision)).threshold;
}

py::dict series_py(const std::string& name, const std::string& q0, const std::string& precision) {
    Series id;
    if (name == "log_mertens_tail")
        id = Series::LogMertensTail;
    else if (name == "inverse_square_norm")
        id = Series::InverseSquareNorm;
    else if (name == "inverse_square_norm_genus")
        id = Series::InverseSquareNormGenus;
    else if (name == "degree_fifth_moment")
        id = Series::DegreeFifthMoment;
    else if (name == "degree_fifth_moment_genus")
        id = Series::DegreeFifthMomentGenus;
    else
        throw InvalidInputError("unknown series '" + name + "'");
    const Enclosure e = series_enclosure(id, rat_from_user_string(q0), rat_from_user_string(precision));
    py::dict d;
    d["lo"] = rat_to_fraction_string(e.lo);
    d["hi"] = rat_to_fraction_string(e.hi);
    d["lo_decimal"] = rat_to_decimal_string(e.lo, 10);
    d["hi_decimal"] = rat_to_decimal_string(e.hi, 10);
    return d;
}

unsigned long long count_irreducibles_py(std::uint64_t q, unsigned n) {
    const BigInt c = count_irreducibles(q, n);
    if (c > BigInt(std::numeric_limits<unsigned long long>::max()))
        throw OverflowError("count does not fit 64 bits; use the CLI for big counts");
    return static_cast<unsigned long long>(c);
}

std::vector<std::string> primes_py(std::uint32_t p, std::uint32_t k, int degree, std::uint64_t cap) {
    const FieldCtx ctx(p, k);
    std::vector<std::string> out;
    for (const auto& f : irreducibles_of_degree(ctx, degree, cap)) out.push_back(poly_to_string(ctx, f));
    return out;
}

py::dict search_py(std::uint32_t p, std::uint32_t k, int max_degree, int multiplicity_cap,
                   const std::string& mode, std::uint64_t budget, bool symmetry, std::uint64_t cap) {
    SearchSpec spec{FieldCtx(p, k)};
    spec.max_degree = max_degree;
    spec.multiplicity_cap = multiplicity_cap;
    spec.node_budget = budget;
    spec.symmetry = symmetry;
    spec.cap = cap;
    if (mode == "first")
        spec.mode = SearchMode::First;
    else if (mode == "exhaustive")
        spec.mode = SearchMode::Exhaustive;
    else
        throw InvalidInputError("mode must be 'first' or 'exhaustive'");
    const SearchResult res = search(spec);
    py::dict d;
    d["outcome"] = outcome_name(res.outcome);
    d["nodes"] = res.nodes;
    if (res.system) d["system"] = json_loads(system_to_json(*res.system));
    if (!res.space_statement.empty()) d["statement"] = res.space_statement;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact covering-system toolkit for F_q[x]: verification, distortion certificates, "
              "explicit bounds, search.";

    py::register_exception<Error>(m, "CovercertError");

    m.def("verify", &verify_py, py::arg("system"), py::arg("cap") = kDefaultEnumerationCap,
          py::arg("threads") = 1,
          "Exhaustive covering check; 'system' is a JSON string or a file path.");
    m.def("certify", &certify_py, py::arg("system"), py::arg("mode") = "second",
          py::arg("deltas") = std::vector<std::string>{}, py::arg("cap") = kDefaultEnumerationCap,
          "Distortion-method certificate report.");
    m.def("uncovered", &uncovered_py, py::arg("system"), py::arg("cap") = kDefaultEnumerationCap,
          "Uncovered residues mod Q in enumeration order.");
    m.def("threshold", &threshold_py, py::arg("g") = 0, py::arg("s") = 1, py::arg("variant") = "paper",
          py::arg("precision") = "1/10000", "Least q from the explicit-bound theorem.");
    m.def("series", &series_py, py::arg("name"), py::arg("q0") = "700", py::arg("precision") = "1/10000",
          "Certified enclosure of one of the five explicit series.");
    m.def("count_irreducibles", &count_irreducibles_py, py::arg("q"), py::arg("n"),
          "Exact count of monic irreducibles of degree n over GF(q).");
    m.def("primes", &primes_py, py::arg("p"), py::arg("k") = 1, py::arg("degree") = 1,
          py::arg("cap") = kDefaultEnumerationCap, "Monic irreducibles of one degree, text form.");
    m.def("search", &search_py, py::arg("p"), py::arg("k") = 1, py::arg("max_degree") = 1,
          py::arg("multiplicity_cap") = 1, py::arg("mode") = "first", py::arg("budget") = 0,
          py::arg("symmetry") = false, py::arg("cap") = kDefaultEnumerationCap,
          "Backtracking covering-system search.");
}
