#ifndef COVERCERT_SEARCH_HPP
#define COVERCERT_SEARCH_HPP

#include "covercert/covering.hpp"
#include "covercert/field.hpp"
#include "covercert/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace covercert {

enum class SearchMode { First, Exhaustive };

struct SearchSpec {
    FieldCtx ctx;
    int max_degree = 1;
    int multiplicity_cap = 1;       // 1 = distinct moduli
    std::uint64_t node_budget = 0;  // 0 = unlimited
    SearchMode mode = SearchMode::First;
    bool symmetry = false;  // quotient by global translation (first residue fixed to 0)
    std::uint64_t cap = kDefaultEnumerationCap;
};

enum class SearchOutcome { Found, Exhausted, Budget };

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::Exhausted;
    std::optional<CoveringSystem> system;  // for Found, independently re-verified
    std::uint64_t nodes = 0;
    std::string space_statement;  // the searched space, incl. any symmetry quotient
};

/// all monic polynomials of degree 1..max_degree, (degree, value) order
std::vector<Poly> enumerate_moduli(const FieldCtx& ctx, int max_degree,
                                   std::uint64_t cap = kDefaultEnumerationCap);

/// Backtracking over residue assignments to moduli in (degree, value) order.
/// First mode deepens iteratively on the congruence count, so a FOUND system
/// is size-minimal and unique for a given spec; exhaustive mode proves the
/// negative over the stated space.
SearchResult search(const SearchSpec& spec);

/// canonical orbit representative under global translations composed with
/// the affine/Frobenius substitutions x -> u x + v
CoveringSystem canonical_reduce(const CoveringSystem& sys, std::uint64_t cap = kDefaultEnumerationCap);

const char* outcome_name(SearchOutcome o);

}  // namespace covercert

#endif
