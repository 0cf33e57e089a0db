#ifndef COVERCERT_COVERING_HPP
#define COVERCERT_COVERING_HPP

#include "covercert/bitvec.hpp"
#include "covercert/field.hpp"
#include "covercert/poly.hpp"
#include "covercert/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace covercert {

/// residue class a + (m): modulus monic of degree >= 1, residue reduced
struct Congruence {
    Poly residue;
    Poly modulus;
};

/// A finite list of congruences with the derived data the distortion method
/// needs: Q = lcm of the moduli, its prime factorization, multiplicity s.
/// Moduli are normalized monic and residues reduced on construction.
class CoveringSystem {
  public:
    CoveringSystem(FieldCtx ctx, std::vector<Congruence> congruences,
                   std::uint64_t cap = kDefaultEnumerationCap);

    const FieldCtx& ctx() const { return ctx_; }
    const std::vector<Congruence>& congruences() const { return congruences_; }
    /// Q = lcm of all moduli, monic
    const Poly& modulus_lcm() const { return q_; }
    const Factorization& factorization() const { return fact_; }
    /// s = max number of congruences sharing one modulus
    int multiplicity() const { return multiplicity_; }

  private:
    FieldCtx ctx_;
    std::vector<Congruence> congruences_;
    Poly q_;
    Factorization fact_;
    int multiplicity_ = 0;
};

int multiplicity(const CoveringSystem& sys);

struct VerifyOptions {
    std::uint64_t cap = kDefaultEnumerationCap;
    int threads = 1;
};

struct VerifyReport {
    bool covers = false;
    std::optional<Poly> witness;  // first uncovered residue in enumeration order
    std::uint64_t uncovered_count = 0;
    std::uint64_t residue_count = 0;
    Rational uncovered_density;
};

/// exhaustive residue check mod Q
VerifyReport covers(const CoveringSystem& sys, const VerifyOptions& opts = {});
/// all uncovered residues mod Q, enumeration order
std::vector<Poly> uncovered(const CoveringSystem& sys, const VerifyOptions& opts = {});
Rational uncovered_density(const CoveringSystem& sys, const VerifyOptions& opts = {});

/// set the bits of the class (a + (m)) lifted to residues mod space.modulus();
/// m must divide the space modulus
void mark_congruence_class(const ResidueSpace& space, const Congruence& cong, BitVec& bits);

/// covered-set bitmask over residues mod Q
BitVec covered_bits(const CoveringSystem& sys, const ResidueSpace& space, int threads = 1);

}  // namespace covercert

#endif
