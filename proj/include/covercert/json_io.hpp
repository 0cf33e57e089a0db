#ifndef COVERCERT_JSON_IO_HPP
#define COVERCERT_JSON_IO_HPP

#include "covercert/covering.hpp"
#include "covercert/distortion.hpp"

#include <string>

namespace covercert {

/// {"p": 2, "k": 1, "congruences": [{"residue": "...", "modulus": "..."}]}
CoveringSystem system_from_json(const std::string& text, std::uint64_t cap = kDefaultEnumerationCap);
std::string system_to_json(const CoveringSystem& sys, int indent = 2);

std::string verify_report_to_json(const CoveringSystem& sys, const VerifyReport& rep, int indent = 2);
VerifyReport verify_report_from_json(const FieldCtx& ctx, const std::string& text);

std::string certificate_to_json(const CoveringSystem& sys, const Certificate& cert, int indent = 2);
Certificate certificate_from_json(const FieldCtx& ctx, const std::string& text);

}  // namespace covercert

#endif
