// The noncommutative layer: D<t,dt>[u,v] and D[s] arithmetic on normally
// ordered elements, the annihilator of f^s via u,v-elimination with the
// Z^p weight normalization (t_j: +1, dt_j: -1), the contraction to Q[x,s],
// and the symbolic f^s-action oracle used to check all of it.
#ifndef BSATO_WEYL_HPP
#define BSATO_WEYL_HPP

#include "ideal.hpp"

namespace bsato {

// Same data as a commutative polynomial; the exponent vectors are read as
// normally ordered words x^a dx^b t^c dt^d u^e v^f s^g.
using WeylElement = Polynomial;

inline WeylElement weyl_mul(const WeylElement& P, const WeylElement& Q)
{
    require_same_universe(P.universe(), Q.universe(), "weyl_mul");
    std::vector<Term> out;
    for (const Term& a : P.terms())
        for (const Term& b : Q.terms())
            gbdetail::weyl_mono_product(*P.universe(), a.mon, b.mon, a.coef * b.coef, out);
    return Polynomial::from_terms(P.universe(), std::move(out));
}

inline std::vector<WeylElement> weyl_buchberger(const std::vector<WeylElement>& gens,
                                                const TermOrder& order)
{
    return groebner_basis(gens, order, RingKind::Weyl);
}

inline WeylElement weyl_normal_form(const WeylElement& p, const std::vector<WeylElement>& basis,
                                    const TermOrder& order)
{
    return normal_form(p, basis, order, RingKind::Weyl);
}

// (numerator / F^denom_exp) * f^s with F = f_1...f_p; canonical when F does
// not divide the numerator unless denom_exp = 0.
struct FsElement {
    Polynomial numerator;
    int denom_exp = 0;

    bool is_zero() const { return numerator.is_zero(); }

    bool operator==(const FsElement& o) const
    {
        return denom_exp == o.denom_exp && numerator == o.numerator;
    }
};

namespace wdetail {

struct FsContext {
    UniversePtr uni;
    std::vector<Polynomial> f;
    Polynomial F;
    std::vector<int> xs, dxs, ts, dts, us, vs, ss;
    std::vector<std::vector<Polynomial>> df;   // df[j][i] = d f_j / d x_i
    std::vector<Polynomial> cof;               // cof[j] = F / f_j

    explicit FsContext(std::vector<Polynomial> fin)
    {
        if (fin.empty()) throw std::invalid_argument("fs action: need at least one polynomial");
        uni = fin.front().universe();
        f = std::move(fin);
        xs = uni->indices_of(VarClass::X);
        dxs = uni->indices_of(VarClass::Dx);
        ts = uni->indices_of(VarClass::T);
        dts = uni->indices_of(VarClass::Dt);
        us = uni->indices_of(VarClass::U);
        vs = uni->indices_of(VarClass::V);
        ss = uni->indices_of(VarClass::S);
        if (f.size() != ss.size() || (ts.size() != 0 && ts.size() != f.size()))
            throw std::invalid_argument("fs action: universe does not match the tuple size");
        F = Polynomial::constant(uni, Rational(1));
        for (const Polynomial& fj : f) {
            if (fj.is_zero()) throw std::invalid_argument("fs action: zero polynomial in tuple");
            if (!fj.free_of(dxs) || !fj.free_of(ts) || !fj.free_of(dts) || !fj.free_of(us) ||
                !fj.free_of(vs) || !fj.free_of(ss))
                throw std::invalid_argument("fs action: f must involve only x variables");
            F = F * fj;
        }
        df.resize(f.size());
        cof.resize(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) {
            for (int xi : xs) df[j].push_back(f[j].derivative(xi));
            Polynomial c = Polynomial::constant(uni, Rational(1));
            for (std::size_t k = 0; k < f.size(); ++k)
                if (k != j) c = c * f[k];
            cof[j] = c;
        }
    }

    void canonicalize(FsElement& e) const
    {
        if (e.numerator.is_zero()) {
            e.denom_exp = 0;
            return;
        }
        while (e.denom_exp > 0) {
            auto q = e.numerator.divided_by(F);
            if (!q) break;
            e.numerator = std::move(*q);
            --e.denom_exp;
        }
    }
};

}  // namespace wdetail

// Exact image of f^s under an operator P in D<t,dt>[s] (no u, v), by the
// shift action of t_j, dt_j on the s variables and the logarithmic-derivative
// action of dx_i.
inline FsElement apply_to_fs(const WeylElement& P, const std::vector<Polynomial>& f)
{
    wdetail::FsContext ctx(f);
    const UniversePtr& u = ctx.uni;
    require_same_universe(u, P.universe(), "apply_to_fs");
    if (!P.free_of(ctx.us) || !P.free_of(ctx.vs))
        throw std::invalid_argument("apply_to_fs: operator must be free of u and v");

    const int p = static_cast<int>(ctx.f.size());
    FsElement total{Polynomial::zero(u), 0};

    for (const Term& term : P.terms()) {
        FsElement e{Polynomial::constant(u, term.coef), 0};
        const Monomial& m = term.mon;
        // rightmost factors act first: s^g, then dt^d, then t^c, then dx^b, then x^a
        for (int j = 0; j < p; ++j)
            if (m[ctx.ss[j]])
                e.numerator = e.numerator.mul_term(
                    Rational(1), Monomial::variable(static_cast<int>(u->size()), ctx.ss[j], m[ctx.ss[j]]));
        for (int j = 0; j < p; ++j) {
            Polynomial sj = Polynomial::variable(u, ctx.ss[j]);
            Polynomial sj_minus = sj - Polynomial::constant(u, Rational(1));
            for (unsigned k = 0; k < m[ctx.dts[j]]; ++k) {
                e.numerator = -sj * e.numerator.substituted(ctx.ss[j], sj_minus) * ctx.cof[j];
                ++e.denom_exp;
            }
        }
        for (int j = 0; j < p; ++j) {
            Polynomial sj = Polynomial::variable(u, ctx.ss[j]);
            Polynomial sj_plus = sj + Polynomial::constant(u, Rational(1));
            for (unsigned k = 0; k < m[ctx.ts[j]]; ++k)
                e.numerator = e.numerator.substituted(ctx.ss[j], sj_plus) * ctx.f[j];
        }
        for (std::size_t i = 0; i < ctx.dxs.size(); ++i) {
            for (unsigned k = 0; k < m[ctx.dxs[i]]; ++k) {
                Polynomial num = e.numerator.derivative(ctx.xs[i]) * ctx.F -
                                 Rational(e.denom_exp) * e.numerator * ctx.F.derivative(ctx.xs[i]);
                for (int j = 0; j < p; ++j)
                    num = num + e.numerator * Polynomial::variable(u, ctx.ss[j]) *
                                    ctx.df[j][i] * ctx.cof[j];
                e.numerator = std::move(num);
                ++e.denom_exp;
            }
        }
        for (std::size_t i = 0; i < ctx.xs.size(); ++i)
            if (m[ctx.xs[i]])
                e.numerator = e.numerator.mul_term(
                    Rational(1),
                    Monomial::variable(static_cast<int>(u->size()), ctx.xs[i], m[ctx.xs[i]]));
        ctx.canonicalize(e);

        // common denominator
        if (total.is_zero()) {
            total = std::move(e);
        } else if (!e.is_zero()) {
            int M = std::max(total.denom_exp, e.denom_exp);
            total.numerator = total.numerator * ctx.F.pow(M - total.denom_exp) +
                              e.numerator * ctx.F.pow(M - e.denom_exp);
            total.denom_exp = M;
        }
    }
    ctx.canonicalize(total);
    return total;
}

struct AnnResult {
    UniversePtr universe;                         // the ambient Weyl universe
    std::vector<WeylElement> I1;                  // generators of ann in D[s]
    std::vector<WeylElement> eliminated;          // u,v-free basis before normalization
    std::vector<std::vector<long>> multidegrees;  // Z^p weight of each eliminated element
};

// Z^p weight (t_j: +1, dt_j: -1) when the element is homogeneous.
inline std::optional<std::vector<long>> weight_multidegree(const WeylElement& g)
{
    const UniversePtr& u = g.universe();
    const auto& ts = u->indices_of(VarClass::T);
    const auto& dts = u->indices_of(VarClass::Dt);
    std::vector<long> d;
    bool first = true;
    for (const Term& t : g.terms()) {
        std::vector<long> cur(ts.size());
        for (std::size_t j = 0; j < ts.size(); ++j)
            cur[j] = static_cast<long>(t.mon[ts[j]]) - static_cast<long>(t.mon[dts[j]]);
        if (first) {
            d = std::move(cur);
            first = false;
        } else if (cur != d) {
            return std::nullopt;
        }
    }
    return d;
}

// Generators of ann_{D[s]}(f^s): eliminate u, v from
//   t_j - u_j f_j,  dx_i + sum_j u_j (df_j/dx_i) dt_j,  1 - u_j v_j,
// keep the u,v-free elements (each Z^p-homogeneous), normalize the weight to
// zero by left multiplication with dt_j / t_j powers, and rewrite
// t_j^a dt_j^a into prod_{k<a}(-s_j - 1 - k).
inline AnnResult ann_fs(const std::vector<Polynomial>& f)
{
    wdetail::FsContext ctx(f);
    const UniversePtr& u = ctx.uni;
    const int n = static_cast<int>(ctx.xs.size());
    const int p = static_cast<int>(ctx.f.size());
    if (p < 1 || n < 1) throw std::invalid_argument("ann_fs: need n >= 1 and p >= 1");
    const int nv = static_cast<int>(u->size());

    std::vector<WeylElement> gens;
    for (int j = 0; j < p; ++j)
        gens.push_back(Polynomial::variable(u, ctx.ts[j]) -
                       Polynomial::variable(u, ctx.us[j]) * ctx.f[j]);
    for (int i = 0; i < n; ++i) {
        Polynomial g = Polynomial::variable(u, ctx.dxs[i]);
        for (int j = 0; j < p; ++j)
            g = g + Polynomial::variable(u, ctx.us[j]) * ctx.df[j][i] *
                        Polynomial::variable(u, ctx.dts[j]);
        gens.push_back(std::move(g));
    }
    for (int j = 0; j < p; ++j)
        gens.push_back(Polynomial::constant(u, Rational(1)) -
                       Polynomial::variable(u, ctx.us[j]) * Polynomial::variable(u, ctx.vs[j]));

    std::vector<int> uv = ctx.us;
    uv.insert(uv.end(), ctx.vs.begin(), ctx.vs.end());
    TermOrder ord = TermOrder::elimination(u, uv);
    auto basis = weyl_buchberger(gens, ord);

    AnnResult out;
    out.universe = u;
    for (const WeylElement& g : basis) {
        if (!g.free_of(uv)) continue;
        auto d = weight_multidegree(g);
        if (!d)
            throw std::logic_error("ann_fs: eliminated element is not weight-homogeneous");
        out.eliminated.push_back(g);
        out.multidegrees.push_back(*d);

        // left-multiply to weight zero
        Monomial shift(nv);
        for (int j = 0; j < p; ++j) {
            if ((*d)[j] > 0)
                shift.set(ctx.dts[j], static_cast<Monomial::Exp>((*d)[j]));
            else if ((*d)[j] < 0)
                shift.set(ctx.ts[j], static_cast<Monomial::Exp>(-(*d)[j]));
        }
        WeylElement g0 = g;
        if (!shift.is_one())
            g0 = weyl_mul(Polynomial::from_terms(u, {{shift, Rational(1)}}), g);

        // rewrite t_j^a dt_j^a -> prod_{k<a} (-s_j - 1 - k)
        Polynomial rewritten = Polynomial::zero(u);
        for (const Term& t : g0.terms()) {
            Monomial m = t.mon;
            Polynomial factor = Polynomial::constant(u, t.coef);
            for (int j = 0; j < p; ++j) {
                unsigned a = m[ctx.ts[j]];
                if (m[ctx.dts[j]] != a)
                    throw std::logic_error("ann_fs: weight-zero element has unbalanced t powers");
                if (a == 0) continue;
                Polynomial sj = Polynomial::variable(u, ctx.ss[j]);
                for (unsigned k = 0; k < a; ++k)
                    factor = factor * (-sj - Polynomial::constant(u, Rational(k + 1)));
                m.set(ctx.ts[j], 0);
                m.set(ctx.dts[j], 0);
            }
            rewritten = rewritten + factor.mul_term(Rational(1), m);
        }
        if (!rewritten.is_zero()) out.I1.push_back(std::move(rewritten));
    }
    return out;
}

// I2 = (I1 + D[s] F) cap Q[x,s], by a block order with every dx above every
// dx-free monomial; returns an ideal over the restricted Q[x,s] universe.
inline IdealHandle compute_I2(const AnnResult& ann, const std::vector<Polynomial>& f)
{
    wdetail::FsContext ctx(f);
    const UniversePtr& u = ctx.uni;
    require_same_universe(u, ann.universe, "compute_I2");

    std::vector<int> forbidden = ctx.ts;
    forbidden.insert(forbidden.end(), ctx.dts.begin(), ctx.dts.end());
    forbidden.insert(forbidden.end(), ctx.us.begin(), ctx.us.end());
    forbidden.insert(forbidden.end(), ctx.vs.begin(), ctx.vs.end());

    std::vector<WeylElement> gens = ann.I1;
    gens.push_back(ctx.F);
    for (const WeylElement& g : gens)
        if (!g.free_of(forbidden))
            throw std::invalid_argument("compute_I2: generators must lie in D[s]");

    std::vector<int> xs_ss = ctx.xs;
    xs_ss.insert(xs_ss.end(), ctx.ss.begin(), ctx.ss.end());
    std::vector<TermOrder::Group> groups;
    groups.push_back({ctx.dxs, TermOrder::Kind::DegRevLex});
    groups.push_back({xs_ss, TermOrder::Kind::DegRevLex});
    if (!forbidden.empty()) groups.push_back({forbidden, TermOrder::Kind::DegRevLex});
    TermOrder ord = TermOrder::block(u, groups);

    auto basis = weyl_buchberger(gens, ord);

    std::vector<int> keep = xs_ss;
    UniversePtr ru = u->restricted(keep);
    std::vector<int> down(u->size(), -1);
    for (std::size_t k = 0; k < keep.size(); ++k) down[keep[k]] = static_cast<int>(k);

    std::vector<Polynomial> out;
    for (const WeylElement& g : basis)
        if (g.free_of(ctx.dxs)) out.push_back(g.mapped(ru, down));
    return IdealHandle(ru, std::move(out));
}

}  // namespace bsato

#endif
