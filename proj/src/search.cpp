#include "covercert/search.hpp"

#include "covercert/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace covercert {

std::vector<Poly> enumerate_moduli(const FieldCtx& ctx, int max_degree, std::uint64_t cap) {
    if (max_degree < 1) throw InvalidInputError("search: max_degree must be >= 1");
    std::vector<Poly> out;
    for (int d = 1; d <= max_degree; ++d) {
        auto batch = monic_polys_of_degree(ctx, d, cap);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

const char* outcome_name(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::Found: return "FOUND";
        case SearchOutcome::Exhausted: return "EXHAUSTED";
        case SearchOutcome::Budget: return "BUDGET";
    }
    return "?";
}

namespace {

enum class DfsStatus { Continue, Found, Budget };

struct CoverState {
    Poly lcm;
    BitVec uncovered;
    std::uint64_t unc_count = 0;
};

struct Engine {
    const SearchSpec& spec;
    const FieldCtx& ctx;
    std::vector<Poly> moduli;
    std::vector<Rational> suffix_density;  // sum over positions >= i of cap_mult * q^-deg
    std::uint64_t nodes = 0;
    std::size_t limit = 0;  // max congruences this pass
    std::vector<Congruence> chosen;
    std::optional<CoveringSystem> found;

    explicit Engine(const SearchSpec& s) : spec(s), ctx(s.ctx) {
        moduli = enumerate_moduli(ctx, spec.max_degree, spec.cap);
        suffix_density.assign(moduli.size() + 1, Rational(0));
        for (std::size_t i = moduli.size(); i-- > 0;) {
            suffix_density[i] =
                suffix_density[i + 1] +
                Rational(spec.multiplicity_cap) / Rational(poly_norm(ctx, moduli[i]));
        }
    }

    // applies (residue_index r of modulus m) to the state; returns the number
    // of residues newly covered
    std::uint64_t apply(std::optional<CoverState>& state, const Poly& m, const Poly& residue) {
        if (!state) {
            CoverState st;
            st.lcm = m;
            const ResidueSpace space(ctx, m, spec.cap);
            st.uncovered = BitVec(space.size());
            for (std::uint64_t i = 0; i < space.size(); ++i) st.uncovered.set(i);
            st.unc_count = space.size();
            state = std::move(st);
        } else if (!poly_mod(ctx, state->lcm, m).is_zero()) {
            // lift the uncovered set to the finer quotient
            CoverState st;
            st.lcm = poly_lcm(ctx, state->lcm, m);
            const ResidueSpace fine(ctx, st.lcm, spec.cap);
            const ResidueSpace coarse(ctx, state->lcm, spec.cap);
            st.uncovered = BitVec(fine.size());
            st.unc_count = 0;
            for (std::uint64_t i = 0; i < fine.size(); ++i) {
                if (state->uncovered.get(coarse.index_of(fine.at(i)))) {
                    st.uncovered.set(i);
                    ++st.unc_count;
                }
            }
            state = std::move(st);
        }
        // clear the class residues
        const ResidueSpace space(ctx, state->lcm, spec.cap);
        const int dq = state->lcm.degree();
        const int dm = m.degree();
        std::uint64_t multiples = 1;
        for (int i = 0; i < dq - dm; ++i) multiples *= ctx.q();
        std::uint64_t newly = 0;
        for (std::uint64_t t = 0; t < multiples; ++t) {
            std::vector<FieldElem> tc;
            std::uint64_t v = t;
            for (int i = 0; i < dq - dm; ++i) {
                tc.push_back(FieldElem(static_cast<std::uint32_t>(v % ctx.q())));
                v /= ctx.q();
            }
            const Poly r = poly_add(ctx, residue, poly_mul(ctx, make_poly(std::move(tc)), m));
            const std::uint64_t idx = space.index_of_reduced(r);
            if (state->uncovered.get(idx)) {
                state->uncovered.clear(idx);
                ++newly;
            }
        }
        state->unc_count -= newly;
        return newly;
    }

    Rational uncovered_density_of(const std::optional<CoverState>& state) const {
        if (!state) return Rational(1);
        return Rational(BigInt(state->unc_count), poly_norm(ctx, state->lcm));
    }

    DfsStatus dfs(std::size_t pos, int uses, std::uint64_t residue_floor,
                  const std::optional<CoverState>& state) {
        if (pos == moduli.size()) return DfsStatus::Continue;
        if (chosen.size() == limit) return DfsStatus::Continue;

        // density prune: what the unused moduli could still cover
        const Rational remaining = suffix_density[pos + 1] +
                                   Rational(spec.multiplicity_cap - uses) /
                                       Rational(poly_norm(ctx, moduli[pos]));
        if (remaining < uncovered_density_of(state)) return DfsStatus::Continue;

        const Poly& m = moduli[pos];
        if (uses < spec.multiplicity_cap) {
            const ResidueSpace mod_space(ctx, m, spec.cap);
            std::uint64_t r_end = mod_space.size();
            std::uint64_t r_begin = residue_floor;
            if (spec.symmetry && chosen.empty()) r_end = std::min<std::uint64_t>(r_end, 1);
            for (std::uint64_t r = r_begin; r < r_end; ++r) {
                ++nodes;
                if (spec.node_budget > 0 && nodes > spec.node_budget) return DfsStatus::Budget;
                std::optional<CoverState> next = state;  // snapshot
                const Poly residue = mod_space.at(r);
                const std::uint64_t newly = apply(next, m, residue);
                if (newly == 0) continue;  // useless congruence, any covering extension works without it
                chosen.push_back(Congruence{residue, m});
                if (next->unc_count == 0) {
                    CoveringSystem sys(ctx, chosen, spec.cap);
                    const VerifyReport rep = covers(sys, VerifyOptions{spec.cap, 1});
                    if (!rep.covers || sys.multiplicity() > spec.multiplicity_cap)
                        throw std::logic_error("search: found system failed independent re-verification");
                    found = std::move(sys);
                    return DfsStatus::Found;
                }
                const DfsStatus st = dfs(pos, uses + 1, r + 1, next);
                chosen.pop_back();
                if (st != DfsStatus::Continue) return st;
            }
        }
        return dfs(pos + 1, 0, 0, state);
    }
};

}  // namespace

SearchResult search(const SearchSpec& spec) {
    if (spec.multiplicity_cap < 1) throw InvalidInputError("search: multiplicity_cap must be >= 1");
    Engine eng(spec);
    SearchResult res;

    std::string statement = "moduli: all " + std::to_string(eng.moduli.size()) +
                            " monic polynomials of degree 1.." + std::to_string(spec.max_degree) +
                            " over GF(" + std::to_string(spec.ctx.q()) + "), each used at most " +
                            std::to_string(spec.multiplicity_cap) + " time(s)";
    if (spec.symmetry)
        statement += "; quotient: global translation (first assigned congruence residue fixed to 0)";

    const std::size_t max_size = eng.moduli.size() * static_cast<std::size_t>(spec.multiplicity_cap);
    DfsStatus st = DfsStatus::Continue;
    if (spec.mode == SearchMode::First) {
        for (std::size_t lim = 1; lim <= max_size; ++lim) {
            eng.limit = lim;
            st = eng.dfs(0, 0, 0, std::nullopt);
            if (st != DfsStatus::Continue) break;
        }
    } else {
        eng.limit = max_size;
        st = eng.dfs(0, 0, 0, std::nullopt);
    }

    res.nodes = eng.nodes;
    if (st == DfsStatus::Found) {
        res.outcome = SearchOutcome::Found;
        res.system = std::move(eng.found);
    } else if (st == DfsStatus::Budget) {
        res.outcome = SearchOutcome::Budget;
    } else {
        res.outcome = SearchOutcome::Exhausted;
        res.space_statement = "no covering system exists over the searched space (" + statement +
                              "); nodes=" + std::to_string(eng.nodes);
    }
    return res;
}

namespace {

// coefficientwise p^e-th power followed by x -> u x + v
Poly apply_automorphism(const FieldCtx& ctx, const Poly& f, int frob, FieldElem u, FieldElem v) {
    long long pe = 1;
    for (int i = 0; i < frob; ++i) pe *= ctx.p();
    const Poly sub = make_poly({v, u});
    Poly acc = Poly::zero();
    for (std::size_t i = f.c.size(); i-- > 0;) {
        const FieldElem c = frob == 0 ? f.c[i] : ctx.pow(f.c[i], pe);
        acc = poly_add(ctx, poly_mul(ctx, acc, sub), Poly{{c}});
    }
    return acc;
}

using CongKey = std::tuple<int, std::uint64_t, std::uint64_t>;  // (deg m, value m, value r)

std::uint64_t poly_value(const FieldCtx& ctx, const Poly& f) {
    std::uint64_t v = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) v = v * ctx.q() + f.c[i].encoded();
    return v;
}

}  // namespace

CoveringSystem canonical_reduce(const CoveringSystem& sys, std::uint64_t cap) {
    const FieldCtx& ctx = sys.ctx();
    std::optional<std::vector<CongKey>> best_key;
    std::optional<std::vector<Congruence>> best;

    for (std::uint32_t frob = 0; frob < ctx.k(); ++frob) {
        for (std::uint64_t uv = 1; uv < ctx.q(); ++uv) {
            for (std::uint64_t vv = 0; vv < ctx.q(); ++vv) {
                const FieldElem u(static_cast<std::uint32_t>(uv));
                const FieldElem v(static_cast<std::uint32_t>(vv));
                std::vector<Congruence> mapped;
                mapped.reserve(sys.congruences().size());
                Poly big_q;
                for (const auto& cg : sys.congruences()) {
                    Congruence out;
                    out.modulus = monic(ctx, apply_automorphism(ctx, cg.modulus, static_cast<int>(frob), u, v));
                    out.residue =
                        poly_mod(ctx, apply_automorphism(ctx, cg.residue, static_cast<int>(frob), u, v),
                                 out.modulus);
                    big_q = big_q.is_zero() ? out.modulus : poly_lcm(ctx, big_q, out.modulus);
                    mapped.push_back(std::move(out));
                }
                const ResidueSpace space(ctx, big_q, cap);
                for (std::uint64_t ci = 0; ci < space.size(); ++ci) {
                    const Poly shift = space.at(ci);
                    std::vector<CongKey> key;
                    std::vector<Congruence> cand;
                    key.reserve(mapped.size());
                    cand.reserve(mapped.size());
                    for (const auto& cg : mapped) {
                        Congruence out;
                        out.modulus = cg.modulus;
                        out.residue = poly_mod(ctx, poly_add(ctx, cg.residue, shift), cg.modulus);
                        key.emplace_back(out.modulus.degree(), poly_value(ctx, out.modulus),
                                         poly_value(ctx, out.residue));
                        cand.push_back(std::move(out));
                    }
                    std::vector<std::size_t> order(key.size());
                    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
                    std::sort(order.begin(), order.end(),
                              [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
                    std::vector<CongKey> sorted_key;
                    std::vector<Congruence> sorted_cand;
                    for (const std::size_t i : order) {
                        sorted_key.push_back(key[i]);
                        sorted_cand.push_back(cand[i]);
                    }
                    if (!best_key || sorted_key < *best_key) {
                        best_key = std::move(sorted_key);
                        best = std::move(sorted_cand);
                    }
                }
            }
        }
    }
    return CoveringSystem(ctx, std::move(*best), cap);
}

}  // namespace covercert
