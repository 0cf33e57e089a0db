#include "covercert/cli.hpp"

#include "covercert/bounds.hpp"
#include "covercert/covering.hpp"
#include "covercert/distortion.hpp"
#include "covercert/errors.hpp"
#include "covercert/json_io.hpp"
#include "covercert/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace covercert::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t cap_from_env() {
    if (const char* env = std::getenv("COVERCERT_CAP")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidInputError("COVERCERT_CAP is not a valid integer");
        }
    }
    return kDefaultEnumerationCap;
}

std::vector<Rational> parse_delta_list(const std::string& text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.push_back(rat_from_user_string(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int run_verify(const std::string& path, bool json, int threads, std::uint64_t cap, std::ostream& out) {
    const CoveringSystem sys = system_from_json(read_file(path), cap);
    const VerifyReport rep = covers(sys, VerifyOptions{cap, threads});
    if (json) {
        out << verify_report_to_json(sys, rep) << "\n";
    } else {
        const FieldCtx& ctx = sys.ctx();
        out << (rep.covers ? "COVERS" : "DOES NOT COVER") << "\n";
        out << "  q = " << ctx.q() << ", Q = " << poly_to_string(ctx, sys.modulus_lcm())
            << ", congruences = " << sys.congruences().size()
            << ", multiplicity = " << sys.multiplicity() << "\n";
        if (!rep.covers) {
            out << "  witness (first uncovered residue): " << poly_to_string(ctx, *rep.witness) << "\n";
            out << "  uncovered " << rep.uncovered_count << " of " << rep.residue_count
                << " residues, density = " << rat_to_fraction_string(rep.uncovered_density) << " = "
                << rat_to_decimal_string(rep.uncovered_density, 6) << "\n";
        }
    }
    return rep.covers ? 0 : 1;
}

int run_certify(const std::string& path, const std::string& deltas_text, const std::string& mode_text,
                bool json, std::uint64_t cap, std::ostream& out) {
    const CoveringSystem sys = system_from_json(read_file(path), cap);
    CertifyOptions opts;
    opts.cap = cap;
    if (mode_text == "second")
        opts.mode = CriterionMode::SecondMoment;
    else if (mode_text == "mixed")
        opts.mode = CriterionMode::Mixed;
    else
        throw InvalidInputError("certify: mode must be 'second' or 'mixed'");
    if (!deltas_text.empty()) opts.deltas = parse_delta_list(deltas_text);
    const Certificate cert = certify(sys, opts);
    if (json) {
        out << certificate_to_json(sys, cert) << "\n";
    } else {
        const FieldCtx& ctx = sys.ctx();
        out << verdict_name(cert.verdict) << "\n";
        out << "  mode = " << mode_name(cert.mode) << ", Q = " << poly_to_string(ctx, sys.modulus_lcm())
            << ", stages = " << cert.stages.size() << "\n";
        for (const auto& st : cert.stages) {
            out << "  j=" << st.index << "  P=" << poly_to_string(ctx, st.prime) << "  nu=" << st.nu
                << "  M1=" << rat_to_fraction_string(st.m1) << "  M2=" << rat_to_fraction_string(st.m2)
                << "  term=" << rat_to_fraction_string(st.criterion_term) << "\n";
        }
        out << "  criterion sum = " << rat_to_fraction_string(cert.criterion_sum) << " = "
            << rat_to_decimal_string(cert.criterion_sum, 6) << (cert.criterion_sum < 1 ? " < 1" : " >= 1")
            << "\n";
    }
    return cert.verdict == Verdict::CertifiedNotCovering ? 0 : 1;
}

struct BoundsArgs {
    int g = 0;
    int s = 1;
    std::string q0 = "700";
    std::string precision = "1/10000";
    std::string round = "1/100";
    std::string variant = "paper";
    bool json = false;
};

int run_bounds(const BoundsArgs& a, std::ostream& out) {
    const Rational q0 = rat_from_user_string(a.q0);
    const Rational precision = rat_from_user_string(a.precision);
    const Rational grid = rat_from_user_string(a.round);
    if (precision <= 0) throw InvalidInputError("bounds: precision must be positive");

    const ThresholdVariant variant = a.variant == "refined724" ? ThresholdVariant::Refined724
                                     : a.variant == "paper"
                                         ? ThresholdVariant::Paper
                                         : throw InvalidInputError("bounds: variant must be 'paper' or 'refined724'");

    struct SeriesRow {
        const char* name;
        Series id;
    };
    const SeriesRow rows[] = {
        {"log_mertens_tail", Series::LogMertensTail},
        {"inverse_square_norm", Series::InverseSquareNorm},
        {"inverse_square_norm_genus", Series::InverseSquareNormGenus},
        {"degree_fifth_moment", Series::DegreeFifthMoment},
        {"degree_fifth_moment_genus", Series::DegreeFifthMomentGenus},
    };

    const DerivedConstants dc = derive_constants(q0, grid, precision);
    const ThresholdResult thr = theorem_threshold(a.g, a.s, variant, precision);
    const ThresholdResult re_thr = threshold_from_constants(dc, a.g, a.s, precision);
    const long long remark_725 = 725;

    if (a.json) {
        ordered_json j;
        j["q0"] = rat_to_fraction_string(q0);
        j["precision"] = rat_to_fraction_string(precision);
        j["round_grid"] = rat_to_fraction_string(grid);
        j["series"] = ordered_json::array();
        for (const auto& row : rows) {
            const Enclosure e = series_enclosure(row.id, q0, precision);
            ordered_json sj;
            sj["name"] = row.name;
            sj["lo"] = rat_to_fraction_string(e.lo);
            sj["hi"] = rat_to_fraction_string(e.hi);
            sj["lo_decimal"] = rat_to_decimal_string(e.lo, 8);
            sj["hi_decimal"] = rat_to_decimal_string(e.hi, 8);
            j["series"].push_back(std::move(sj));
        }
        const auto enc = [](const Enclosure& e) {
            ordered_json ej;
            ej["lo"] = rat_to_fraction_string(e.lo);
            ej["hi"] = rat_to_fraction_string(e.hi);
            ej["hi_decimal"] = rat_to_decimal_string(e.hi, 8);
            return ej;
        };
        j["derived_constants"] = ordered_json::object();
        j["derived_constants"]["mertens"] = enc(dc.mertens_const);
        j["derived_constants"]["mertens_genus"] = enc(dc.mertens_g);
        j["derived_constants"]["mertens_square"] = enc(dc.mertens_sq_const);
        j["derived_constants"]["mertens_square_genus"] = enc(dc.mertens_sq_g);
        j["derived_constants"]["slack"] = enc(dc.slack);
        j["derived_constants"]["exponent"] = enc(dc.exp_const);
        j["derived_constants"]["exponent_genus"] = enc(dc.exp_g);
        j["derived_constants"]["final"] = enc(dc.final_const);
        j["derived_constants"]["final_genus"] = enc(dc.final_g);
        j["g"] = a.g;
        j["s"] = a.s;
        j["variant"] = a.variant;
        j["threshold"] = thr.threshold;
        j["threshold_rhs"] = enc(thr.rhs);
        j["threshold_rhs"]["lo_decimal"] = rat_to_decimal_string(thr.rhs.lo, 8);
        j["rederived_threshold_at_grid"] = re_thr.threshold;
        if (variant == ThresholdVariant::Refined724)
            j["remark_comparison"] = (thr.threshold == remark_725)
                                         ? "matches the remark value 725"
                                         : "DIFFERS from the remark value 725";
        out << j.dump(2) << "\n";
        return 0;
    }

    out << "series enclosures at q0 = " << rat_to_fraction_string(q0) << " (precision "
        << rat_to_fraction_string(precision) << "):\n";
    for (const auto& row : rows) {
        const Enclosure e = series_enclosure(row.id, q0, precision);
        out << "  " << row.name << ": [" << rat_to_decimal_string(e.lo, 8) << ", "
            << rat_to_decimal_string(e.hi, 8) << "]  width=" << rat_to_decimal_string(e.width(), 8)
            << "\n";
    }
    out << "derived constants (rounded up to grid " << rat_to_fraction_string(grid) << "):\n";
    const auto pc = [&](const char* name, const Enclosure& e) {
        out << "  " << name << " = " << rat_to_fraction_string(e.hi) << " = "
            << rat_to_decimal_string(e.hi, 6) << "\n";
    };
    pc("mertens", dc.mertens_const);
    pc("mertens_genus", dc.mertens_g);
    pc("mertens_square", dc.mertens_sq_const);
    pc("mertens_square_genus", dc.mertens_sq_g);
    pc("slack", dc.slack);
    pc("exponent", dc.exp_const);
    pc("exponent_genus", dc.exp_g);
    pc("final", dc.final_const);
    pc("final_genus", dc.final_g);
    out << "lemma right-hand sides at g = " << a.g << ":\n";
    out << "  sum_{deg P<=N} 1/|P| <= log N + " << rat_to_decimal_string(
               kPaperMertensConst + kPaperMertensGenus * a.g, 4)
        << "   (N=10: <= " << rat_to_decimal_string(mertens_log_bound(10, a.g), 6) << ")\n";
    out << "  sum_P 1/|P|^2 <= " << rat_to_decimal_string(kPaperMertensConst + kPaperMertensGenus * a.g, 4)
        << "/q\n";
    {
        const Enclosure smb = second_moment_bound(1, Rational(700), a.g, a.s);
        out << "  M_j^(2) <= " << rat_to_decimal_string(smb.hi, 8) << " at deg P_j = 1, q = 700, s = "
            << a.s << "\n";
    }
    out << "threshold (variant " << a.variant << ", g = " << a.g << ", s = " << a.s
        << "): " << thr.threshold << "\n";
    out << "  rhs enclosure: [" << rat_to_decimal_string(thr.rhs.lo, 6) << ", "
        << rat_to_decimal_string(thr.rhs.hi, 6) << "]\n";
    if (variant == ThresholdVariant::Refined724)
        out << "  remark comparison: "
            << (thr.threshold == remark_725 ? "matches the remark value 725"
                                            : "DIFFERS from the remark value 725")
            << "\n";
    out << "rederived threshold from grid-" << rat_to_fraction_string(grid) << " constants at q0 = "
        << rat_to_fraction_string(q0) << ": " << re_thr.threshold << "\n";
    return 0;
}

int run_primes(std::uint32_t p, std::uint32_t k, int degree, bool json, std::uint64_t cap,
               std::ostream& out) {
    const FieldCtx ctx(p, k);
    const auto irr = irreducibles_of_degree(ctx, degree, cap);
    const BigInt expected = count_irreducibles(ctx.q(), static_cast<unsigned>(degree));
    if (BigInt(irr.size()) != expected)
        throw std::logic_error("primes: enumeration disagrees with the divisor-formula count");
    if (json) {
        ordered_json j;
        j["p"] = p;
        j["k"] = k;
        j["q"] = ctx.q();
        j["degree"] = degree;
        j["count"] = irr.size();
        j["mobius_count"] = expected.str();
        j["irreducibles"] = ordered_json::array();
        for (const auto& f : irr) j["irreducibles"].push_back(poly_to_string(ctx, f));
        out << j.dump(2) << "\n";
    } else {
        out << "monic irreducibles of degree " << degree << " over GF(" << ctx.q() << "): " << irr.size()
            << " (formula: " << expected.str() << ")\n";
        for (const auto& f : irr) out << "  " << poly_to_string(ctx, f) << "\n";
    }
    return 0;
}

struct SearchArgs {
    std::uint32_t p = 2;
    std::uint32_t k = 1;
    int max_degree = 1;
    bool distinct = false;
    int multiplicity_cap = 1;
    std::string mode = "first";
    std::uint64_t budget = 0;
    std::string symmetry = "off";
    bool json = false;
};

int run_search(const SearchArgs& a, std::uint64_t cap, std::ostream& out) {
    SearchSpec spec{FieldCtx(a.p, a.k)};
    spec.max_degree = a.max_degree;
    spec.multiplicity_cap = a.distinct ? 1 : a.multiplicity_cap;
    spec.node_budget = a.budget;
    spec.cap = cap;
    if (a.mode == "first")
        spec.mode = SearchMode::First;
    else if (a.mode == "exhaustive")
        spec.mode = SearchMode::Exhaustive;
    else
        throw InvalidInputError("search: mode must be 'first' or 'exhaustive'");
    if (a.symmetry == "on")
        spec.symmetry = true;
    else if (a.symmetry == "off")
        spec.symmetry = false;
    else
        throw InvalidInputError("search: --symmetry takes 'on' or 'off'");

    const SearchResult res = search(spec);
    if (a.json) {
        ordered_json j;
        j["outcome"] = outcome_name(res.outcome);
        j["nodes"] = res.nodes;
        if (res.system) j["system"] = ordered_json::parse(system_to_json(*res.system));
        if (!res.space_statement.empty()) j["statement"] = res.space_statement;
        out << j.dump(2) << "\n";
    } else {
        out << outcome_name(res.outcome) << " (nodes = " << res.nodes << ")\n";
        if (res.system) out << system_to_json(*res.system) << "\n";
        if (!res.space_statement.empty()) out << res.space_statement << "\n";
    }
    return res.outcome == SearchOutcome::Budget ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"covercert: exact covering-system verification, distortion certificates, explicit "
                 "bounds and search over F_q[x]"};
    app.require_subcommand(1);

    std::uint64_t cap = cap_from_env();
    app.add_option("--cap", cap, "enumeration cap (residue count); env COVERCERT_CAP");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "exhaustive covering check of a system file");
    std::string verify_path;
    bool verify_json = false;
    int verify_threads = 1;
    verify_cmd->add_option("path", verify_path, "covering system JSON file")->required();
    verify_cmd->add_flag("--json", verify_json, "machine-readable output");
    verify_cmd->add_option("--threads", verify_threads, "worker threads for the residue scan");

    // certify
    auto* certify_cmd =
        app.add_subcommand("certify", "distortion-method non-covering certificate for a system file");
    std::string certify_path, certify_deltas, certify_mode = "second";
    bool certify_json = false;
    certify_cmd->add_option("path", certify_path, "covering system JSON file")->required();
    certify_cmd->add_option("--deltas", certify_deltas,
                            "comma list of rationals in [0,1/2]; single value broadcasts");
    certify_cmd->add_option("--mode", certify_mode, "criterion: 'second' (default) or 'mixed'");
    certify_cmd->add_flag("--json", certify_json, "machine-readable output");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "explicit-constant engine and thresholds");
    BoundsArgs bargs;
    bounds_cmd->add_option("--g", bargs.g, "genus (default 0)");
    bounds_cmd->add_option("--s", bargs.s, "multiplicity (default 1)");
    bounds_cmd->add_option("--q0", bargs.q0, "series cutoff (default 700)");
    bounds_cmd->add_option("--precision", bargs.precision, "enclosure width target (default 1/10000)");
    bounds_cmd->add_option("--round", bargs.round, "decimal grid for derived constants (default 1/100)");
    bounds_cmd->add_option("--variant", bargs.variant, "'paper' (default) or 'refined724'");
    bounds_cmd->add_flag("--json", bargs.json, "machine-readable output");

    // primes
    auto* primes_cmd = app.add_subcommand("primes", "enumerate monic irreducibles of one degree");
    std::uint32_t primes_p = 2, primes_k = 1;
    int primes_degree = 1;
    bool primes_json = false;
    primes_cmd->add_option("--p", primes_p, "characteristic (prime)")->required();
    primes_cmd->add_option("--k", primes_k, "extension degree (default 1)");
    primes_cmd->add_option("--degree", primes_degree, "degree to enumerate")->required();
    primes_cmd->add_flag("--json", primes_json, "machine-readable output");

    // search
    auto* search_cmd =
        app.add_subcommand("search", "backtracking search for covering systems with bounded multiplicity");
    SearchArgs sargs;
    search_cmd->add_option("--p", sargs.p, "characteristic (prime)")->required();
    search_cmd->add_option("--k", sargs.k, "extension degree (default 1)");
    search_cmd->add_option("--max-degree", sargs.max_degree, "max modulus degree")->required();
    search_cmd->add_flag("--distinct", sargs.distinct, "require distinct moduli (multiplicity 1)");
    search_cmd->add_option("--multiplicity-cap", sargs.multiplicity_cap,
                           "max congruences per modulus (default 1)");
    search_cmd->add_option("--mode", sargs.mode, "'first' (default) or 'exhaustive'");
    search_cmd->add_option("--budget", sargs.budget, "node limit, 0 = unlimited");
    search_cmd->add_option("--symmetry", sargs.symmetry, "'on' or 'off' (default): translation quotient");
    search_cmd->add_flag("--json", sargs.json, "machine-readable output");

    try {
        std::vector<std::string> argv_rev(args.rbegin(), args.rend());
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help() << "\n";
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify_cmd->parsed()) return run_verify(verify_path, verify_json, verify_threads, cap, out);
        if (certify_cmd->parsed())
            return run_certify(certify_path, certify_deltas, certify_mode, certify_json, cap, out);
        if (bounds_cmd->parsed()) return run_bounds(bargs, out);
        if (primes_cmd->parsed()) return run_primes(primes_p, primes_k, primes_degree, primes_json, cap, out);
        if (search_cmd->parsed()) return run_search(sargs, cap, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace covercert::cli
