#ifndef COVERCERT_DISTORTION_HPP
#define COVERCERT_DISTORTION_HPP

#include "covercert/bitvec.hpp"
#include "covercert/covering.hpp"
#include "covercert/poly.hpp"
#include "covercert/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace covercert {

/// One step of the prime filtration: the j-th prime power of Q, the partial
/// product Q_j, and the covered set B_j that enters at this stage, stored as
/// a bitmask over residues mod Q.
struct Stage {
    int index = 0;  // j, 1-based
    Poly prime;
    int nu = 0;
    Poly q_partial;  // Q_j
    BitVec in_b;     // B_j as residue-index bits mod Q
    std::vector<std::uint32_t> member_congruences;  // indices into sys.congruences()
};

/// Stages in nondecreasing-norm order (value order within equal degree).
/// Every congruence of the system lands in exactly one B_j.
std::vector<Stage> build_stages(const CoveringSystem& sys, std::uint64_t cap = kDefaultEnumerationCap);

/// exact probability distribution on residues mod Q, indexed in enumeration order
struct Measure {
    std::vector<Rational> values;
    Rational total() const;
};
Measure uniform_measure(std::uint64_t n);

/// per-stage fiber decomposition: residues grouped by reduction mod Q_{j-1}
struct StageFibers {
    std::vector<std::uint32_t> fiber_of;  // residue index -> fiber index
    std::uint64_t fiber_count = 0;
    std::uint64_t fiber_size = 0;
    std::vector<Rational> alpha;  // exact |F cap B_j| / |F| per fiber
};
StageFibers stage_fibers(const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                         std::uint64_t cap = kDefaultEnumerationCap);

/// exact fiber fraction alpha_j at one residue (measure independent)
Rational alpha(const CoveringSystem& sys, const std::vector<Stage>& stages, int j, const Poly& residue,
               std::uint64_t cap = kDefaultEnumerationCap);

/// the two-branch measure update with distortion parameter delta in [0, 1/2]
Measure step_measure(const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                     const Measure& prev, const Rational& delta,
                     std::uint64_t cap = kDefaultEnumerationCap);

/// k-th moment (k = 1 or 2) of alpha_j against the pre-update measure
Rational moment(int k, const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                const Measure& prev, std::uint64_t cap = kDefaultEnumerationCap);

enum class Verdict { CertifiedNotCovering, Inconclusive };
enum class CriterionMode { SecondMoment, Mixed };

struct StageReport {
    int index = 0;
    Poly prime;
    int nu = 0;
    Rational m1, m2;
    Rational criterion_term;
};

struct Certificate {
    CriterionMode mode = CriterionMode::SecondMoment;
    std::vector<Rational> deltas;
    std::vector<StageReport> stages;
    Rational criterion_sum;
    Verdict verdict = Verdict::Inconclusive;
};

struct CertifyOptions {
    std::vector<Rational> deltas;  // empty -> all 1/2; single value broadcasts
    CriterionMode mode = CriterionMode::SecondMoment;
    std::uint64_t cap = kDefaultEnumerationCap;
    // re-verify CERTIFIED verdicts against the exhaustive uncovered set; a
    // failure here is a soundness bug and throws
    bool cross_check = true;
};

/// Runs the full pipeline P_0 .. P_J, records exact moments and the
/// criterion sum; verdict is CERTIFIED_NOT_COVERING iff the sum is < 1.
Certificate certify(const CoveringSystem& sys, const CertifyOptions& opts = {});

const char* verdict_name(Verdict v);
const char* mode_name(CriterionMode m);

// --- exact right-hand sides of the paper-facing inequalities (test oracles) ---

/// per-residue bound on alpha_j from the stage-j congruences
Rational alpha_upper_rhs(const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                         const Poly& residue);

/// mass bound for a class a + (I), I | Q: (1/|I|) prod_{P_i | I, i <= j} 1/(1 - delta_i)
Rational class_mass_rhs(const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                        const Poly& ideal, const std::vector<Rational>& deltas);

/// exact mass the measure puts on the class a + (I)
Rational class_mass(const CoveringSystem& sys, const Measure& m, const Poly& residue, const Poly& ideal,
                    std::uint64_t cap = kDefaultEnumerationCap);

/// truncation-free closed form of the second-moment bound:
/// s^2/(|P_j|-1)^2 prod_{i<j} (1 + 6/|P_i| + (10|P_i|-6)/(|P_i|(|P_i|-1)^2))
Rational second_moment_closed_rhs(const CoveringSystem& sys, const std::vector<Stage>& stages, int j);

}  // namespace covercert

#endif
