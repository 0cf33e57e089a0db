#include "covercert/covering.hpp"

#include "covercert/errors.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace covercert {

CoveringSystem::CoveringSystem(FieldCtx ctx, std::vector<Congruence> congruences, std::uint64_t cap)
    : ctx_(std::move(ctx)) {
    if (congruences.empty()) throw InvalidInputError("covering system: no congruences");
    congruences_.reserve(congruences.size());
    for (auto& cg : congruences) {
        if (cg.modulus.is_zero() || cg.modulus.degree() < 1)
            throw InvalidModulusError("covering system: modulus must have degree >= 1 (unit ideal rejected)");
        Poly m = monic(ctx_, cg.modulus);
        Poly r = poly_mod(ctx_, cg.residue, m);
        congruences_.push_back(Congruence{std::move(r), std::move(m)});
    }
    q_ = congruences_.front().modulus;
    for (std::size_t i = 1; i < congruences_.size(); ++i)
        q_ = poly_lcm(ctx_, q_, congruences_[i].modulus);
    fact_ = factor(ctx_, q_, cap);

    std::map<std::vector<std::uint32_t>, int> counts;
    for (const auto& cg : congruences_) {
        std::vector<std::uint32_t> key;
        key.reserve(cg.modulus.c.size());
        for (const FieldElem e : cg.modulus.c) key.push_back(e.encoded());
        ++counts[key];
    }
    for (const auto& [mod, n] : counts) multiplicity_ = std::max(multiplicity_, n);
}

int multiplicity(const CoveringSystem& sys) { return sys.multiplicity(); }

void mark_congruence_class(const ResidueSpace& space, const Congruence& cong, BitVec& bits) {
    const FieldCtx& ctx = space.ctx();
    const int dq = space.modulus().degree();
    const int dm = cong.modulus.degree();
    const std::uint64_t q = ctx.q();
    std::uint64_t multiples = 1;
    for (int i = 0; i < dq - dm; ++i) multiples *= q;
    for (std::uint64_t t = 0; t < multiples; ++t) {
        // t-th polynomial of degree < dq - dm
        std::vector<FieldElem> tc;
        std::uint64_t v = t;
        for (int i = 0; i < dq - dm; ++i) {
            tc.push_back(FieldElem(static_cast<std::uint32_t>(v % q)));
            v /= q;
        }
        const Poly tp = make_poly(std::move(tc));
        const Poly r = poly_add(ctx, cong.residue, poly_mul(ctx, tp, cong.modulus));
        bits.set(space.index_of_reduced(r));
    }
}

namespace {

// one worker's share of residue indices, membership tested by reduction
void covered_scan_range(const CoveringSystem& sys, const ResidueSpace& space, std::uint64_t lo,
                        std::uint64_t hi, BitVec& bits) {
    const FieldCtx& ctx = sys.ctx();
    for (std::uint64_t i = lo; i < hi; ++i) {
        const Poly r = space.at(i);
        for (const auto& cg : sys.congruences()) {
            if (poly_mod(ctx, r, cg.modulus) == cg.residue) {
                bits.set(i);
                break;
            }
        }
    }
}

}  // namespace

BitVec covered_bits(const CoveringSystem& sys, const ResidueSpace& space, int threads) {
    BitVec bits(space.size());
    if (threads <= 1) {
        for (const auto& cg : sys.congruences()) mark_congruence_class(space, cg, bits);
        return bits;
    }
    const std::uint64_t n = space.size();
    const int workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n));
    std::vector<BitVec> parts(static_cast<std::size_t>(workers), BitVec(n));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = n * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
        const std::uint64_t hi = n * (static_cast<std::uint64_t>(w) + 1) / static_cast<std::uint64_t>(workers);
        pool.emplace_back(covered_scan_range, std::cref(sys), std::cref(space), lo, hi,
                          std::ref(parts[static_cast<std::size_t>(w)]));
    }
    for (auto& t : pool) t.join();
    for (const auto& part : parts) bits.or_with(part);
    return bits;
}

VerifyReport covers(const CoveringSystem& sys, const VerifyOptions& opts) {
    const ResidueSpace space(sys.ctx(), sys.modulus_lcm(), opts.cap);
    const BitVec bits = covered_bits(sys, space, opts.threads);
    VerifyReport rep;
    rep.residue_count = space.size();
    for (std::uint64_t i = 0; i < space.size(); ++i) {
        if (!bits.get(i)) {
            if (!rep.witness) rep.witness = space.at(i);
            ++rep.uncovered_count;
        }
    }
    rep.covers = rep.uncovered_count == 0;
    rep.uncovered_density = Rational(BigInt(rep.uncovered_count), BigInt(space.size()));
    return rep;
}

std::vector<Poly> uncovered(const CoveringSystem& sys, const VerifyOptions& opts) {
    const ResidueSpace space(sys.ctx(), sys.modulus_lcm(), opts.cap);
    const BitVec bits = covered_bits(sys, space, opts.threads);
    std::vector<Poly> out;
    for (std::uint64_t i = 0; i < space.size(); ++i)
        if (!bits.get(i)) out.push_back(space.at(i));
    return out;
}

Rational uncovered_density(const CoveringSystem& sys, const VerifyOptions& opts) {
    return covers(sys, opts).uncovered_density;
}

}  // namespace covercert
