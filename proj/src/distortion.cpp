#include "covercert/distortion.hpp"

#include "covercert/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace covercert {

namespace {

int ord_of_prime(const FieldCtx& ctx, const Poly& m, const Poly& prime) {
    int e = 0;
    Poly cur = m;
    while (true) {
        auto [q, r] = poly_divrem(ctx, cur, prime);
        if (!r.is_zero()) break;
        cur = std::move(q);
        ++e;
    }
    return e;
}

}  // namespace

std::vector<Stage> build_stages(const CoveringSystem& sys, std::uint64_t cap) {
    const FieldCtx& ctx = sys.ctx();
    const ResidueSpace space(ctx, sys.modulus_lcm(), cap);
    const auto& factors = sys.factorization().factors;  // already (degree, value) sorted

    std::vector<Stage> stages(factors.size());
    Poly acc = Poly::one();
    for (std::size_t l = 0; l < factors.size(); ++l) {
        acc = poly_mul(ctx, acc, poly_pow(ctx, factors[l].first, static_cast<unsigned>(factors[l].second)));
        stages[l].index = static_cast<int>(l) + 1;
        stages[l].prime = factors[l].first;
        stages[l].nu = factors[l].second;
        stages[l].q_partial = acc;
        stages[l].in_b = BitVec(space.size());
    }

    // a congruence enters at the largest-index prime dividing its modulus
    for (std::uint32_t i = 0; i < sys.congruences().size(); ++i) {
        const auto& cg = sys.congruences()[i];
        std::size_t stage_idx = 0;
        bool assigned = false;
        for (std::size_t l = factors.size(); l-- > 0;) {
            if (ord_of_prime(ctx, cg.modulus, factors[l].first) > 0) {
                stage_idx = l;
                assigned = true;
                break;
            }
        }
        if (!assigned) throw Error("stages: modulus with no prime factor (internal bug)");
        stages[stage_idx].member_congruences.push_back(i);
        mark_congruence_class(space, cg, stages[stage_idx].in_b);
    }
    return stages;
}

Rational Measure::total() const {
    Rational t = 0;
    for (const auto& v : values) t += v;
    return t;
}

Measure uniform_measure(std::uint64_t n) {
    if (n == 0) throw InvalidInputError("measure: empty space");
    Measure m;
    m.values.assign(static_cast<std::size_t>(n), Rational(BigInt(1), BigInt(n)));
    return m;
}

StageFibers stage_fibers(const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                         std::uint64_t cap) {
    if (j < 1 || j > static_cast<int>(stages.size())) throw InvalidInputError("stage index out of range");
    const FieldCtx& ctx = sys.ctx();
    const ResidueSpace space(ctx, sys.modulus_lcm(), cap);
    const Stage& st = stages[static_cast<std::size_t>(j - 1)];

    StageFibers out;
    out.fiber_of.resize(static_cast<std::size_t>(space.size()));
    if (j == 1) {
        out.fiber_count = 1;
        std::fill(out.fiber_of.begin(), out.fiber_of.end(), 0u);
    } else {
        const Poly& q_prev = stages[static_cast<std::size_t>(j - 2)].q_partial;
        const ResidueSpace sub(ctx, q_prev, cap);
        out.fiber_count = sub.size();
        for (std::uint64_t i = 0; i < space.size(); ++i)
            out.fiber_of[static_cast<std::size_t>(i)] =
                static_cast<std::uint32_t>(sub.index_of(space.at(i)));
    }
    out.fiber_size = space.size() / out.fiber_count;

    std::vector<std::uint64_t> b_count(static_cast<std::size_t>(out.fiber_count), 0);
    for (std::uint64_t i = 0; i < space.size(); ++i)
        if (st.in_b.get(i)) ++b_count[out.fiber_of[static_cast<std::size_t>(i)]];
    out.alpha.reserve(b_count.size());
    for (const std::uint64_t c : b_count) out.alpha.emplace_back(BigInt(c), BigInt(out.fiber_size));
    return out;
}

Rational alpha(const CoveringSystem& sys, const std::vector<Stage>& stages, int j, const Poly& residue,
               std::uint64_t cap) {
    const StageFibers fibers = stage_fibers(sys, stages, j, cap);
    const ResidueSpace space(sys.ctx(), sys.modulus_lcm(), cap);
    const std::uint64_t idx = space.index_of(residue);
    return fibers.alpha[fibers.fiber_of[static_cast<std::size_t>(idx)]];
}

namespace {

void check_delta(const Rational& d, CriterionMode mode) {
    if (d < 0 || d > Rational(1, 2))
        throw InvalidDeltaError("delta must lie in [0, 1/2], got " + rat_to_fraction_string(d));
    if (mode == CriterionMode::Mixed && d == 0)
        throw InvalidDeltaError("mixed mode requires delta in (0, 1/2]");
}

Measure apply_step(const Stage& st, const StageFibers& fibers, const Measure& prev, const Rational& delta) {
    Measure next;
    next.values.resize(prev.values.size());
    const Rational one(1);
    for (std::size_t i = 0; i < prev.values.size(); ++i) {
        const Rational& a = fibers.alpha[fibers.fiber_of[i]];
        const bool in_b = st.in_b.get(i);
        if (a == 0) {
            // a residue of B_j always has alpha >= 1/|fiber| > 0
            if (in_b) throw std::logic_error("distortion: residue in B_j with alpha = 0");
            next.values[i] = prev.values[i];
            continue;
        }
        if (a < delta) {
            next.values[i] = in_b ? Rational(0) : prev.values[i] / (one - a);
        } else {
            const Rational num = in_b ? Rational(a - delta) : a;
            next.values[i] = prev.values[i] * num / (a * (one - delta));
        }
    }
    return next;
}

}  // namespace

Measure step_measure(const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                     const Measure& prev, const Rational& delta, std::uint64_t cap) {
    check_delta(delta, CriterionMode::SecondMoment);
    const Stage& st = stages.at(static_cast<std::size_t>(j - 1));
    const StageFibers fibers = stage_fibers(sys, stages, j, cap);
    if (prev.values.size() != fibers.fiber_of.size())
        throw InvalidInputError("step_measure: measure size mismatch");
    Measure next = apply_step(st, fibers, prev, delta);
    if (next.total() != 1) throw std::logic_error("distortion: mass not conserved (internal bug)");
    return next;
}

Rational moment(int k, const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                const Measure& prev, std::uint64_t cap) {
    if (k != 1 && k != 2) throw InvalidInputError("moment: k must be 1 or 2");
    const StageFibers fibers = stage_fibers(sys, stages, j, cap);
    if (prev.values.size() != fibers.fiber_of.size())
        throw InvalidInputError("moment: measure size mismatch");
    std::vector<Rational> fiber_mass(static_cast<std::size_t>(fibers.fiber_count), Rational(0));
    for (std::size_t i = 0; i < prev.values.size(); ++i) fiber_mass[fibers.fiber_of[i]] += prev.values[i];
    Rational sum = 0;
    for (std::size_t f = 0; f < fiber_mass.size(); ++f) {
        if (fiber_mass[f] == 0 || fibers.alpha[f] == 0) continue;
        const Rational& a = fibers.alpha[f];
        sum += (k == 1 ? a : Rational(a * a)) * fiber_mass[f];
    }
    return sum;
}

Certificate certify(const CoveringSystem& sys, const CertifyOptions& opts) {
    const FieldCtx& ctx = sys.ctx();
    const std::vector<Stage> stages = build_stages(sys, opts.cap);
    const ResidueSpace space(ctx, sys.modulus_lcm(), opts.cap);
    const std::size_t big_j = stages.size();

    std::vector<Rational> deltas = opts.deltas;
    if (deltas.empty()) deltas.assign(big_j, Rational(1, 2));
    if (deltas.size() == 1 && big_j > 1) deltas.assign(big_j, deltas.front());
    if (deltas.size() != big_j)
        throw InvalidDeltaError("delta schedule has " + std::to_string(deltas.size()) +
                                " entries for " + std::to_string(big_j) + " stages");
    for (const auto& d : deltas) check_delta(d, opts.mode);

    Certificate cert;
    cert.mode = opts.mode;
    cert.deltas = deltas;
    cert.criterion_sum = 0;

    BitVec union_b(space.size());
    Measure p = uniform_measure(space.size());

    for (std::size_t l = 0; l < big_j; ++l) {
        const Stage& st = stages[l];
        const StageFibers fibers = stage_fibers(sys, stages, st.index, opts.cap);
        union_b.or_with(st.in_b);

        std::vector<Rational> fiber_mass(static_cast<std::size_t>(fibers.fiber_count), Rational(0));
        for (std::size_t i = 0; i < p.values.size(); ++i) fiber_mass[fibers.fiber_of[i]] += p.values[i];

        StageReport rep;
        rep.index = st.index;
        rep.prime = st.prime;
        rep.nu = st.nu;
        rep.m1 = 0;
        rep.m2 = 0;
        for (std::size_t f = 0; f < fiber_mass.size(); ++f) {
            if (fiber_mass[f] == 0 || fibers.alpha[f] == 0) continue;
            const Rational& a = fibers.alpha[f];
            rep.m1 += a * fiber_mass[f];
            rep.m2 += a * a * fiber_mass[f];
        }
        const Rational& d = deltas[l];
        if (opts.mode == CriterionMode::SecondMoment) {
            rep.criterion_term = rep.m2;
        } else {
            const Rational scaled = rep.m2 / (Rational(4) * d * (Rational(1) - d));
            rep.criterion_term = std::min(rep.m1, scaled);
        }
        cert.criterion_sum += rep.criterion_term;
        cert.stages.push_back(std::move(rep));

        p = apply_step(st, fibers, p, d);
        if (p.total() != 1) throw std::logic_error("distortion: mass not conserved (internal bug)");
    }

    cert.verdict = cert.criterion_sum < 1 ? Verdict::CertifiedNotCovering : Verdict::Inconclusive;

    if (cert.verdict == Verdict::CertifiedNotCovering && opts.cross_check) {
        Rational covered_mass = 0;
        for (std::uint64_t i = 0; i < space.size(); ++i)
            if (union_b.get(i)) covered_mass += p.values[static_cast<std::size_t>(i)];
        if (!(covered_mass < 1))
            throw std::logic_error("distortion: certificate issued but P_J(union B_j) = 1 (soundness bug)");
        const VerifyReport rep = covers(sys, VerifyOptions{opts.cap, 1});
        if (rep.covers)
            throw std::logic_error("distortion: certificate issued for a covering system (soundness bug)");
    }
    return cert;
}

const char* verdict_name(Verdict v) {
    return v == Verdict::CertifiedNotCovering ? "CERTIFIED_NOT_COVERING" : "INCONCLUSIVE";
}

const char* mode_name(CriterionMode m) { return m == CriterionMode::SecondMoment ? "second" : "mixed"; }

// ---------------------------------------------------------------------------
// inequality right-hand sides
// ---------------------------------------------------------------------------

Rational alpha_upper_rhs(const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                         const Poly& residue) {
    const FieldCtx& ctx = sys.ctx();
    const Stage& st = stages.at(static_cast<std::size_t>(j - 1));
    const BigInt prime_norm = poly_norm(ctx, st.prime);
    Rational rhs = 0;
    for (const std::uint32_t idx : st.member_congruences) {
        const Congruence& cg = sys.congruences()[idx];
        const int r = ord_of_prime(ctx, cg.modulus, st.prime);
        // H = modulus / prime^r
        Poly h = cg.modulus;
        for (int e = 0; e < r; ++e) h = poly_divrem(ctx, h, st.prime).first;
        const bool contained = h.degree() == 0
                                   ? true
                                   : poly_mod(ctx, poly_sub(ctx, residue, cg.residue), h).is_zero();
        if (contained) rhs += Rational(BigInt(1), ipow(prime_norm, static_cast<unsigned>(r)));
    }
    return rhs;
}

Rational class_mass_rhs(const CoveringSystem& sys, const std::vector<Stage>& stages, int j,
                        const Poly& ideal, const std::vector<Rational>& deltas) {
    const FieldCtx& ctx = sys.ctx();
    Rational rhs(BigInt(1), poly_norm(ctx, ideal));
    for (int l = 1; l <= j; ++l) {
        const Stage& st = stages.at(static_cast<std::size_t>(l - 1));
        if (poly_mod(ctx, ideal, st.prime).is_zero())
            rhs /= (Rational(1) - deltas.at(static_cast<std::size_t>(l - 1)));
    }
    return rhs;
}

Rational class_mass(const CoveringSystem& sys, const Measure& m, const Poly& residue, const Poly& ideal,
                    std::uint64_t cap) {
    const FieldCtx& ctx = sys.ctx();
    const ResidueSpace space(ctx, sys.modulus_lcm(), cap);
    if (m.values.size() != space.size()) throw InvalidInputError("class_mass: measure size mismatch");
    const Poly target = poly_mod(ctx, residue, ideal);
    Rational sum = 0;
    for (std::uint64_t i = 0; i < space.size(); ++i)
        if (poly_mod(ctx, space.at(i), ideal) == target) sum += m.values[static_cast<std::size_t>(i)];
    return sum;
}

Rational second_moment_closed_rhs(const CoveringSystem& sys, const std::vector<Stage>& stages, int j) {
    const FieldCtx& ctx = sys.ctx();
    const Stage& st = stages.at(static_cast<std::size_t>(j - 1));
    const BigInt s(sys.multiplicity());
    const BigInt pj = poly_norm(ctx, st.prime);
    Rational rhs(s * s, (pj - 1) * (pj - 1));
    for (int l = 1; l < j; ++l) {
        const BigInt pi = poly_norm(ctx, stages[static_cast<std::size_t>(l - 1)].prime);
        const Rational term = Rational(1) + Rational(BigInt(6), pi) +
                              Rational(BigInt(10) * pi - 6, pi * (pi - 1) * (pi - 1));
        rhs *= term;
    }
    return rhs;
}

}  // namespace covercert
