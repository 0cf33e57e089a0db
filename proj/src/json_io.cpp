#include "covercert/json_io.hpp"

#include "covercert/errors.hpp"

#include <json.hpp>

namespace covercert {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse_json(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("json: ") + e.what(), e.byte);
    }
}

FieldCtx ctx_from_json(const ordered_json& j) {
    if (!j.contains("p") || !j.contains("k"))
        throw ParseError("json: missing field parameters 'p'/'k'", 0);
    return FieldCtx(j.at("p").get<std::uint32_t>(), j.at("k").get<std::uint32_t>());
}

}  // namespace

CoveringSystem system_from_json(const std::string& text, std::uint64_t cap) {
    const ordered_json j = parse_json(text);
    const FieldCtx ctx = ctx_from_json(j);
    if (!j.contains("congruences") || !j.at("congruences").is_array())
        throw ParseError("json: missing 'congruences' array", 0);
    std::vector<Congruence> congs;
    for (const auto& cj : j.at("congruences")) {
        if (!cj.contains("residue") || !cj.contains("modulus"))
            throw ParseError("json: congruence needs 'residue' and 'modulus'", 0);
        Congruence cg;
        cg.residue = parse_poly(ctx, cj.at("residue").get<std::string>());
        cg.modulus = parse_poly(ctx, cj.at("modulus").get<std::string>());
        congs.push_back(std::move(cg));
    }
    return CoveringSystem(ctx, std::move(congs), cap);
}

std::string system_to_json(const CoveringSystem& sys, int indent) {
    const FieldCtx& ctx = sys.ctx();
    ordered_json j;
    j["p"] = ctx.p();
    j["k"] = ctx.k();
    j["congruences"] = ordered_json::array();
    for (const auto& cg : sys.congruences()) {
        ordered_json cj;
        cj["residue"] = poly_to_string(ctx, cg.residue);
        cj["modulus"] = poly_to_string(ctx, cg.modulus);
        j["congruences"].push_back(std::move(cj));
    }
    return j.dump(indent);
}

std::string verify_report_to_json(const CoveringSystem& sys, const VerifyReport& rep, int indent) {
    const FieldCtx& ctx = sys.ctx();
    ordered_json j;
    j["p"] = ctx.p();
    j["k"] = ctx.k();
    j["Q"] = poly_to_string(ctx, sys.modulus_lcm());
    j["congruences"] = sys.congruences().size();
    j["multiplicity"] = sys.multiplicity();
    j["covers"] = rep.covers;
    if (rep.witness) j["witness"] = poly_to_string(ctx, *rep.witness);
    j["residue_count"] = rep.residue_count;
    j["uncovered_count"] = rep.uncovered_count;
    j["uncovered_density"] = rat_to_fraction_string(rep.uncovered_density);
    j["uncovered_density_decimal"] = rat_to_decimal_string(rep.uncovered_density, 6);
    return j.dump(indent);
}

VerifyReport verify_report_from_json(const FieldCtx& ctx, const std::string& text) {
    const ordered_json j = parse_json(text);
    VerifyReport rep;
    rep.covers = j.at("covers").get<bool>();
    if (j.contains("witness")) rep.witness = parse_poly(ctx, j.at("witness").get<std::string>());
    rep.residue_count = j.at("residue_count").get<std::uint64_t>();
    rep.uncovered_count = j.at("uncovered_count").get<std::uint64_t>();
    rep.uncovered_density = rat_from_fraction_string(j.at("uncovered_density").get<std::string>());
    return rep;
}

std::string certificate_to_json(const CoveringSystem& sys, const Certificate& cert, int indent) {
    const FieldCtx& ctx = sys.ctx();
    ordered_json j;
    j["p"] = ctx.p();
    j["k"] = ctx.k();
    j["Q"] = poly_to_string(ctx, sys.modulus_lcm());
    j["mode"] = mode_name(cert.mode);
    j["deltas"] = ordered_json::array();
    for (const auto& d : cert.deltas) j["deltas"].push_back(rat_to_fraction_string(d));
    j["stages"] = ordered_json::array();
    for (const auto& st : cert.stages) {
        ordered_json sj;
        sj["j"] = st.index;
        sj["prime"] = poly_to_string(ctx, st.prime);
        sj["nu"] = st.nu;
        sj["M1"] = rat_to_fraction_string(st.m1);
        sj["M2"] = rat_to_fraction_string(st.m2);
        sj["criterion_term"] = rat_to_fraction_string(st.criterion_term);
        sj["M1_decimal"] = rat_to_decimal_string(st.m1, 6);
        sj["M2_decimal"] = rat_to_decimal_string(st.m2, 6);
        j["stages"].push_back(std::move(sj));
    }
    j["criterion_sum"] = rat_to_fraction_string(cert.criterion_sum);
    j["criterion_sum_decimal"] = rat_to_decimal_string(cert.criterion_sum, 6);
    j["verdict"] = verdict_name(cert.verdict);
    return j.dump(indent);
}

Certificate certificate_from_json(const FieldCtx& ctx, const std::string& text) {
    const ordered_json j = parse_json(text);
    Certificate cert;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "second")
        cert.mode = CriterionMode::SecondMoment;
    else if (mode == "mixed")
        cert.mode = CriterionMode::Mixed;
    else
        throw ParseError("json: unknown mode '" + mode + "'", 0);
    for (const auto& d : j.at("deltas")) cert.deltas.push_back(rat_from_fraction_string(d.get<std::string>()));
    for (const auto& sj : j.at("stages")) {
        StageReport st;
        st.index = sj.at("j").get<int>();
        st.prime = parse_poly(ctx, sj.at("prime").get<std::string>());
        st.nu = sj.at("nu").get<int>();
        st.m1 = rat_from_fraction_string(sj.at("M1").get<std::string>());
        st.m2 = rat_from_fraction_string(sj.at("M2").get<std::string>());
        st.criterion_term = rat_from_fraction_string(sj.at("criterion_term").get<std::string>());
        cert.stages.push_back(std::move(st));
    }
    cert.criterion_sum = rat_from_fraction_string(j.at("criterion_sum").get<std::string>());
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == "CERTIFIED_NOT_COVERING")
        cert.verdict = Verdict::CertifiedNotCovering;
    else if (verdict == "INCONCLUSIVE")
        cert.verdict = Verdict::Inconclusive;
    else
        throw ParseError("json: unknown verdict '" + verdict + "'", 0);
    return cert;
}

}  // namespace covercert
