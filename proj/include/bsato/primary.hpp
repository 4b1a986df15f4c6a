// Primary decomposition in Q[x,s], GTZ style: localize at a maximal
// independent variable set, split the resulting zero-dimensional ideal along
// the factorization of a generic linear form's minimal polynomial, contract
// back through saturation by the Groebner lead coefficients, and recurse on
// the saturation remainder. Components whose quotient is certified local
// (minimal polynomial degree equals the vector-space dimension) are certified
// primary; everything else is reported with certified = false and left to the
// randomized probes in verify_decomposition.
#ifndef BSATO_PRIMARY_HPP
#define BSATO_PRIMARY_HPP

#include "factor.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

namespace bsato {

struct PrimaryComponent {
    IdealHandle component;
    IdealHandle x_part;  // component cap Q[x-class variables]
    IdealHandle s_part;  // component cap Q[s-class variables]
    bool certified = true;
};

namespace pdetail {

inline bool pd_trace()
{
    static const bool on = std::getenv("BSATO_PD_TRACE") != nullptr;
    return on;
}

struct PdTimer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

inline std::vector<int> complement(const UniversePtr& u, const std::vector<int>& s)
{
    std::vector<char> in(u->size(), 0);
    for (int i : s) in[i] = 1;
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(u->size()); ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

inline Monomial restrict_to(const Monomial& m, const std::vector<int>& vars)
{
    Monomial r(m.nvars());
    for (int i : vars) r.set(i, m[i]);
    return r;
}

// Maximum-cardinality variable set U with no leading monomial supported on U.
inline std::vector<int> max_independent_set(const IdealHandle& I)
{
    const auto& B = I.canonical_basis();
    const int n = static_cast<int>(I.universe()->size());
    if (n > 16) throw std::invalid_argument("primary_decompose: too many variables");
    std::vector<Monomial> leads;
    for (const Polynomial& g : B) leads.push_back(g.lead_monomial());

    for (int k = n; k >= 1; --k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            bool ok = true;
            for (const Monomial& m : leads)
                if (m.supported_on(idx)) { ok = false; break; }
            if (ok) return idx;
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return {};
}

inline int dimension(const IdealHandle& I)
{
    return static_cast<int>(max_independent_set(I).size());
}

// dim over k(U) of Q[dep]/I as a k(U)-vector space, from the staircase of
// the [dep >> U] basis.
inline int vdim_over(const IdealHandle& I, const std::vector<int>& U)
{
    const UniversePtr& u = I.universe();
    std::vector<int> dep = complement(u, U);
    TermOrder ord = TermOrder::elimination(u, dep);
    const auto& B = I.basis(ord);
    std::vector<Monomial> stairs;
    for (const Polynomial& g : B)
        stairs.push_back(restrict_to(lead_term(g, ord).mon, dep));

    std::vector<int> bound(dep.size(), -1);
    for (std::size_t k = 0; k < dep.size(); ++k)
        for (const Monomial& m : stairs)
            if (m.degree() == m[dep[k]] && m.degree() > 0)
                if (bound[k] < 0 || static_cast<int>(m[dep[k]]) < bound[k])
                    bound[k] = m[dep[k]];
    for (int b : bound)
        if (b < 0) throw std::logic_error("vdim_over: ideal is not zero-dimensional over k(U)");

    long total = 1;
    for (int b : bound) {
        total *= b;
        if (total > 500000) throw std::logic_error("vdim_over: staircase too large");
    }
    int count = 0;
    std::vector<int> e(dep.size(), 0);
    for (;;) {
        Monomial m(static_cast<int>(u->size()));
        for (std::size_t k = 0; k < dep.size(); ++k)
            m.set(dep[k], static_cast<Monomial::Exp>(e[k]));
        bool standard = true;
        for (const Monomial& s : stairs)
            if (s.divides(m)) { standard = false; break; }
        if (standard) ++count;
        std::size_t pos = 0;
        while (pos < dep.size() && e[pos] == bound[pos] - 1) e[pos++] = 0;
        if (pos == dep.size()) break;
        ++e[pos];
    }
    return count;
}

struct Contraction {
    IdealHandle sat;                      // I k(U)[dep] cap Q[X]
    std::vector<IdealHandle> remainders;  // I + c^m pieces, one per used factor
};

// Contract by saturating with each distinct k(U) lead coefficient of the
// [dep >> U] basis in turn (equivalent to saturating by their product, but
// every Groebner computation stays small). Each saturation step that moves
// the ideal leaves behind an exact remainder J + c^m, so
// I = sat cap (cap of remainders) holds on the nose.
inline Contraction contract_over(const IdealHandle& I, const std::vector<int>& U)
{
    Contraction out{I, {}};
    if (U.empty()) return out;
    const UniversePtr& u = I.universe();
    std::vector<int> dep = complement(u, U);
    TermOrder ord = TermOrder::elimination(u, dep);
    const auto& B = I.basis(ord);

    std::vector<Polynomial> coefs;
    for (const Polynomial& g : B) {
        Monomial lead_dep = restrict_to(lead_term(g, ord).mon, dep);
        std::vector<Term> ts;
        for (const Term& t : g.terms())
            if (restrict_to(t.mon, dep) == lead_dep)
                ts.push_back({restrict_to(t.mon, U), t.coef});
        Polynomial c = Polynomial::from_terms(u, std::move(ts)).integer_cleared();
        if (c.is_constant()) continue;
        c = squarefree_part(c);
        bool seen = false;
        for (const Polynomial& prev : coefs)
            if (prev == c) { seen = true; break; }
        if (!seen) coefs.push_back(std::move(c));
    }
    for (const Polynomial& c : coefs) {
        PdTimer tm;
        if (pd_trace()) {
            std::fprintf(stderr, "[pd] saturating by %s (ideal: %zu gens, max deg %u)...\n",
                         c.str().c_str(), out.sat.generators().size(), [&] {
                             unsigned d = 0;
                             for (const auto& g : out.sat.generators())
                                 d = std::max(d, g.total_degree());
                             return d;
                         }());
            for (const auto& g : out.sat.generators())
                std::fprintf(stderr, "[pd]    gen: %s\n", g.str().c_str());
        }
        auto [sat, m] = saturate(out.sat, c);
        if (pd_trace())
            std::fprintf(stderr, "[pd] saturate by deg-%u coef: exp %d in %.2fs\n",
                         c.total_degree(), m, tm.secs());
        if (m > 0) {
            out.remainders.push_back(out.sat.plus({c.pow(static_cast<unsigned>(m))}));
            out.sat = std::move(sat);
        }
    }
    return out;
}

struct MinPoly {
    Polynomial q;        // generator of the k(U)[w] elimination ideal, over ext
    int wdeg = 0;
    UniversePtr ext;
    int widx = -1;
    Polynomial ell_ext;  // the linear form, transported to ext
};

inline MinPoly minpoly_over(const IdealHandle& I, const std::vector<int>& U, const Polynomial& ell)
{
    const UniversePtr& u = I.universe();
    UniversePtr ext = u->extended("@m", VarClass::X);
    const int widx = static_cast<int>(ext->size()) - 1;
    std::vector<int> up(u->size());
    for (std::size_t i = 0; i < u->size(); ++i) up[i] = static_cast<int>(i);

    std::vector<Polynomial> gens;
    for (const Polynomial& g : I.generators()) gens.push_back(g.mapped(ext, up));
    Polynomial ell_ext = ell.mapped(ext, up);
    gens.push_back(Polynomial::variable(ext, widx) - ell_ext);

    std::vector<int> dep = complement(u, U);
    std::vector<TermOrder::Group> groups;
    groups.push_back({dep, TermOrder::Kind::DegRevLex});
    groups.push_back({{widx}, TermOrder::Kind::DegRevLex});
    if (!U.empty()) groups.push_back({U, TermOrder::Kind::DegRevLex});
    TermOrder ord = TermOrder::block(ext, groups);

    auto B = groebner_basis(gens, ord, RingKind::Commutative);
    MinPoly out;
    out.ext = ext;
    out.widx = widx;
    out.ell_ext = ell_ext;
    for (const Polynomial& g : B) {
        if (!g.free_of(dep)) continue;
        int wd = static_cast<int>(g.degree_in(widx));
        if (wd == 0) throw std::logic_error("minpoly_over: unexpected element of Q[U]");
        if (out.q.is_zero() || wd < out.wdeg) {
            out.q = g;
            out.wdeg = wd;
        }
    }
    if (out.q.is_zero()) throw std::logic_error("minpoly_over: no eliminant found");
    return out;
}

struct RawComponent {
    IdealHandle ideal;
    bool certified;
};

// Shared state of one decomposition run. The running intersection of the
// components found so far lets every pending branch stop as soon as the
// target ideal is reproduced exactly; remainder branches mostly re-derive
// embedded junk once that point is reached.
struct DecompCtx {
    IdealHandle target;
    std::vector<RawComponent> comps;
    IdealHandle running;
    bool done = false;

    explicit DecompCtx(IdealHandle t) : target(std::move(t)) {}

    void add(IdealHandle ideal, bool certified)
    {
        if (done) return;
        running = comps.empty() ? ideal : intersect(running, ideal);
        comps.push_back({std::move(ideal), certified});
        if (equal(running, target)) done = true;
        if (pd_trace())
            std::fprintf(stderr, "[pd] component %zu recorded (done=%d)\n", comps.size(),
                         (int)done);
    }
};

inline std::vector<Polynomial> candidate_forms(const UniversePtr& u, const std::vector<int>& dep)
{
    std::vector<Polynomial> out;
    for (int d : dep) out.push_back(Polynomial::variable(u, d));
    if (dep.size() > 1)
        for (int a = 1; a <= 8; ++a) {
            Polynomial f = Polynomial::zero(u);
            for (std::size_t i = 0; i < dep.size(); ++i) {
                long c = 1 + (a * static_cast<long>(i + 1)) % (a + 2);
                f = f + Rational(c) * Polynomial::variable(u, dep[i]);
            }
            out.push_back(std::move(f));
        }
    return out;
}

void decompose_rec(const IdealHandle& I, DecompCtx& ctx);

// I contracted w.r.t. U and zero-dimensional over k(U). Splits along the
// factorization of the minimal polynomial of a deterministic sequence of
// linear forms; a single irreducible factor whose degree matches the k(U)
// dimension certifies the component primary.
inline void zerodim_core(const IdealHandle& I, const std::vector<int>& U, DecompCtx& ctx)
{
    if (ctx.done) return;
    const UniversePtr& u = I.universe();
    std::vector<int> dep = complement(u, U);
    const int vd = vdim_over(I, U);

    auto enter_piece = [&](const IdealHandle& piece) {
        if (ctx.done) return;
        // contraction of an intersection is the intersection of contractions,
        // so the remainders of a CRT piece are redundant here
        Contraction c = contract_over(piece, U);
        if (!c.sat.is_unit()) zerodim_core(c.sat, U, ctx);
    };

    for (const Polynomial& ell : candidate_forms(u, dep)) {
        if (ctx.done) return;
        PdTimer tm1;
        MinPoly mp = minpoly_over(I, U, ell);
        if (pd_trace())
            std::fprintf(stderr, "[pd] minpoly(%s): wdeg %d (vdim %d) terms %zu in %.2fs\n",
                         ell.str().c_str(), mp.wdeg, vd, mp.q.term_count(), tm1.secs());
        PdTimer tm2;
        MultivariateFactors fac = factor_multivariate(mp.q);
        if (pd_trace())
            std::fprintf(stderr, "[pd]   %zu factors (certified %d) in %.2fs\n",
                         fac.factors.size(), (int)fac.certified, tm2.secs());
        std::vector<std::pair<Polynomial, int>> wfacs;
        for (const auto& [f, m] : fac.factors)
            if (f.degree_in(mp.widx) > 0) wfacs.emplace_back(f, m);

        std::vector<int> down(mp.ext->size(), -1);
        for (std::size_t i = 0; i < u->size(); ++i) down[i] = static_cast<int>(i);

        if (wfacs.size() >= 2) {
            bool coprime = fac.certified;
            if (!coprime) {
                coprime = true;
                for (std::size_t i = 0; i < wfacs.size() && coprime; ++i)
                    for (std::size_t j = i + 1; j < wfacs.size() && coprime; ++j)
                        if (!mv_gcd(wfacs[i].first, wfacs[j].first).is_constant())
                            coprime = false;
            }
            if (coprime) {
                // chinese-remainder split: I = cap_i (I + q_i(ell)^{e_i})
                for (const auto& [qi, ei] : wfacs) {
                    Polynomial sub = qi.substituted(mp.widx, mp.ell_ext)
                                         .pow(static_cast<unsigned>(ei))
                                         .mapped(u, down);
                    enter_piece(I.plus({sub}));
                }
                return;
            }
            // factorization not certified coprime: exact saturation split by
            // the first factor instead
            Polynomial f = wfacs[0].first.substituted(mp.widx, mp.ell_ext).mapped(u, down);
            auto [sat, m] = saturate(I, f);
            if (m > 0 && !sat.is_unit() && !equal(sat, I)) {
                enter_piece(sat);
                decompose_rec(I.plus({f.pow(static_cast<unsigned>(m))}), ctx);
                return;
            }
            continue;
        }

        if (wfacs.size() == 1 && mp.wdeg == vd) {
            // k(U)[dep]/I is F[w]/(q1^e1), a local ring: certified primary
            ctx.add(I, fac.certified);
            return;
        }
    }
    ctx.add(I, false);
}

inline void decompose_rec(const IdealHandle& I, DecompCtx& ctx)
{
    if (ctx.done || I.is_unit()) return;
    std::vector<int> U = max_independent_set(I);
    if (pd_trace()) {
        std::fprintf(stderr, "[pd] decompose: %zu gens, dim %zu, U = {", I.generators().size(),
                     U.size());
        for (int i : U) std::fprintf(stderr, "%s ", I.universe()->name(i).c_str());
        std::fprintf(stderr, "}\n");
        if (std::getenv("BSATO_PD_DUMP"))
            for (const auto& g : I.generators())
                std::fprintf(stderr, "[pdgen] %s\n", g.str().c_str());
    }
    Contraction c = contract_over(I, U);
    if (c.sat.is_unit())
        throw std::logic_error("primary_decompose: saturation became trivial on an independent set");
    zerodim_core(c.sat, U, ctx);
    for (const IdealHandle& rem : c.remainders) {
        if (ctx.done) return;
        decompose_rec(rem, ctx);
    }
}

inline std::string basis_key(const IdealHandle& I)
{
    std::string k;
    for (const Polynomial& g : I.canonical_basis()) k += g.str() + ";";
    return k;
}

}  // namespace pdetail

inline IdealHandle intersect_all(const std::vector<IdealHandle>& ideals, const UniversePtr& u)
{
    if (ideals.empty()) return IdealHandle::unit(u);
    IdealHandle acc = ideals[0];
    for (std::size_t i = 1; i < ideals.size(); ++i) acc = intersect(acc, ideals[i]);
    return acc;
}

// Finitely many primary components whose intersection is exactly I. The
// component list is deterministic: sorted by dimension descending, then by
// the canonical basis.
inline std::vector<PrimaryComponent> primary_decompose(const IdealHandle& I)
{
    using namespace pdetail;
    if (I.is_zero() || I.is_unit())
        throw std::invalid_argument("primary_decompose: ideal must be proper and nonzero");

    DecompCtx ctx(I);
    decompose_rec(I, ctx);
    if (!ctx.done)
        throw std::logic_error("primary_decompose: decomposition did not close to the input ideal");
    std::vector<RawComponent> raw = std::move(ctx.comps);

    // drop duplicates
    std::vector<RawComponent> comps;
    for (auto& rc : raw) {
        bool dup = false;
        for (auto& kept : comps)
            if (equal(kept.ideal, rc.ideal)) {
                kept.certified = kept.certified || rc.certified;
                dup = true;
                break;
            }
        if (!dup) comps.push_back(std::move(rc));
    }
    // drop components containing the intersection of the others
    for (bool changed = true; changed && comps.size() > 1;) {
        changed = false;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            std::vector<IdealHandle> others;
            for (std::size_t j = 0; j < comps.size(); ++j)
                if (j != i) others.push_back(comps[j].ideal);
            IdealHandle inter = intersect_all(others, I.universe());
            if (comps[i].ideal.contains(inter)) {
                comps.erase(comps.begin() + i);
                changed = true;
                break;
            }
        }
    }

    std::sort(comps.begin(), comps.end(), [](const RawComponent& a, const RawComponent& b) {
        int da = dimension(a.ideal), db = dimension(b.ideal);
        if (da != db) return da > db;
        return basis_key(a.ideal) < basis_key(b.ideal);
    });

    const UniversePtr& u = I.universe();
    std::vector<int> not_x, not_s;
    for (int i = 0; i < static_cast<int>(u->size()); ++i) {
        if (u->cls(i) != VarClass::X) not_x.push_back(i);
        if (u->cls(i) != VarClass::S) not_s.push_back(i);
    }
    std::vector<PrimaryComponent> out;
    for (auto& rc : comps) {
        PrimaryComponent pc;
        pc.x_part = eliminate(rc.ideal, not_x);
        pc.s_part = eliminate(rc.ideal, not_s);
        pc.component = std::move(rc.ideal);
        pc.certified = rc.certified;
        out.push_back(std::move(pc));
    }
    return out;
}

struct DecompositionReport {
    bool intersection_equal = false;
    bool components_contain = false;
    int primarity_probes = 0;
    int primarity_failures = 0;
    std::vector<std::string> notes;

    bool passed() const
    {
        return intersection_equal && components_contain && primarity_failures == 0;
    }
};

// (a) the intersection reproduces I exactly, (b) every component contains I,
// (c) randomized primarity probes: pairs (g, h) with g h in Y and g not in Y
// must satisfy h^N in Y for a small N.
inline DecompositionReport verify_decomposition(const IdealHandle& I,
                                                const std::vector<PrimaryComponent>& comps)
{
    DecompositionReport rep;
    std::vector<IdealHandle> ideals;
    for (const auto& c : comps) ideals.push_back(c.component);
    rep.intersection_equal = equal(intersect_all(ideals, I.universe()), I);
    if (!rep.intersection_equal) rep.notes.push_back("intersection differs from the input ideal");

    rep.components_contain = true;
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (!comps[i].component.contains(I)) {
            rep.components_contain = false;
            rep.notes.push_back("component " + std::to_string(i + 1) + " does not contain the ideal");
        }

    std::mt19937 rng(20240208);
    const UniversePtr& u = I.universe();
    for (std::size_t ci = 0; ci < comps.size() && rep.primarity_probes < 50; ++ci) {
        const IdealHandle& Y = comps[ci].component;
        std::uint32_t maxdeg = 1;
        for (const Polynomial& g : Y.generators()) maxdeg = std::max(maxdeg, g.total_degree());
        const int N = static_cast<int>(1 + maxdeg * maxdeg);

        auto probe = [&](const Polynomial& g, const Polynomial& h) {
            if (g.is_zero() || h.is_zero()) return;
            if (!Y.contains(g * h) || Y.contains(g)) return;
            ++rep.primarity_probes;
            Polynomial pw = Polynomial::constant(u, Rational(1));
            for (int k = 1; k <= N; ++k) {
                pw = pw * h;
                if (Y.contains(pw)) return;
            }
            ++rep.primarity_failures;
            rep.notes.push_back("component " + std::to_string(ci + 1) +
                                " failed a primarity probe");
        };

        // factor pairs of the generators are the sharpest available probes
        for (const Polynomial& g : Y.canonical_basis()) {
            if (rep.primarity_probes >= 50) break;
            if (g.is_constant()) continue;
            auto fac = factor_multivariate(g);
            if (fac.factors.size() < 2) continue;
            for (const auto& [f, m] : fac.factors) {
                Polynomial g1 = f.pow(static_cast<unsigned>(m));
                auto rest = g.divided_by(g1);
                if (rest && !rest->is_constant()) probe(g1, *rest);
            }
        }
        // random pairs conditioned on the product landing in Y
        std::uniform_int_distribution<int> dc(-3, 3);
        for (int t = 0; t < 20 && rep.primarity_probes < 50; ++t) {
            std::vector<Term> ts;
            for (int k = 0; k < 3; ++k) {
                int c = dc(rng);
                if (c == 0) continue;
                Monomial m(static_cast<int>(u->size()));
                for (int vs = 0; vs < static_cast<int>(u->size()); ++vs)
                    m.set(vs, static_cast<Monomial::Exp>(rng() % 2));
                ts.push_back({m, Rational(c)});
            }
            Polynomial g = Polynomial::from_terms(u, std::move(ts));
            if (g.is_zero()) continue;
            const auto& gens = Y.generators();
            if (gens.empty()) continue;
            probe(g, gens[rng() % gens.size()]);
        }
    }
    return rep;
}

}  // namespace bsato

#endif
