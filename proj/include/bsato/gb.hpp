// Buchberger engine shared by the commutative ring and the Weyl algebra.
// Working polynomials are term vectors sorted descending under the active
// order. The noncommutative case differs only in how a term multiplies a
// polynomial: normal ordering via [dx, x] = 1 and [dt, t] = 1 pushes strictly
// smaller correction terms, so lm(m * g) = m * lm(g) for every term order and
// the classical reduction loop goes through unchanged. Pair management is
// Gebauer-Moeller; the coprime (product) criterion is applied only in the
// commutative case, where it is justified.
#ifndef BSATO_GB_HPP
#define BSATO_GB_HPP

#include <set>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "polynomial.hpp"

namespace bsato {

enum class RingKind { Commutative, Weyl };

namespace gbdetail {

using TermVec = std::vector<Term>;

// Normal-ordered product of two exponent vectors. Corrections appear for
// every derivation exponent in the left factor meeting its paired position
// exponent in the right factor:
//   d^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) d^(b-k).
inline void weyl_mono_product(const VarUniverse& u, const Monomial& a, const Monomial& b,
                              const Rational& coef, TermVec& out)
{
    struct ActivePair { int pos, der; unsigned kmax; };
    std::vector<ActivePair> act;
    for (VarClass pc : {VarClass::X, VarClass::T})
        for (int q : u.indices_of(pc)) {
            int d = u.partner(q);
            if (d < 0) continue;
            unsigned kmax = std::min<unsigned>(a[d], b[q]);
            if (kmax > 0) act.push_back({q, d, kmax});
        }

    Monomial base = a * b;
    if (act.empty()) {
        out.push_back({base, coef});
        return;
    }

    std::vector<unsigned> k(act.size(), 0);
    for (;;) {
        Monomial m = base;
        Integer num(1);
        for (std::size_t i = 0; i < act.size(); ++i) {
            if (k[i] == 0) continue;
            const ActivePair& ap = act[i];
            m.set(ap.pos, static_cast<Monomial::Exp>(m[ap.pos] - k[i]));
            m.set(ap.der, static_cast<Monomial::Exp>(m[ap.der] - k[i]));
            Integer bin1, bin2, fact;
            mpz_bin_uiui(bin1.get_mpz_t(), a[ap.der], k[i]);
            mpz_bin_uiui(bin2.get_mpz_t(), b[ap.pos], k[i]);
            mpz_fac_ui(fact.get_mpz_t(), k[i]);
            num *= bin1 * bin2 * fact;
        }
        out.push_back({m, coef * Rational(num)});

        std::size_t pos = 0;
        while (pos < act.size() && k[pos] == act[pos].kmax) k[pos++] = 0;
        if (pos == act.size()) break;
        ++k[pos];
    }
}

struct Engine {
    const VarUniverse& uni;
    const TermOrder& order;
    RingKind kind;

    bool greater(const Monomial& a, const Monomial& b) const { return order.compare(a, b) > 0; }

    void sort_terms(TermVec& v) const
    {
        std::sort(v.begin(), v.end(),
                  [this](const Term& x, const Term& y) { return greater(x.mon, y.mon); });
        std::size_t out = 0;
        for (std::size_t i = 0; i < v.size();) {
            Monomial m = v[i].mon;
            Rational c = std::move(v[i].coef);
            std::size_t j = i + 1;
            while (j < v.size() && v[j].mon == m) c += v[j++].coef;
            if (c != 0) v[out++] = {m, std::move(c)};
            i = j;
        }
        v.resize(out);
    }

    TermVec to_sorted(const Polynomial& p) const
    {
        TermVec v = p.terms();
        std::sort(v.begin(), v.end(),
                  [this](const Term& x, const Term& y) { return greater(x.mon, y.mon); });
        return v;
    }

    // c * m applied on the left of g.
    TermVec mul_term(const Rational& c, const Monomial& m, const TermVec& g) const
    {
        TermVec out;
        if (kind == RingKind::Commutative) {
            out.reserve(g.size());
            for (const Term& t : g) out.push_back({m * t.mon, c * t.coef});
            return out;  // order compatible with multiplication keeps the sort
        }
        for (const Term& t : g) weyl_mono_product(uni, m, t.mon, c * t.coef, out);
        sort_terms(out);
        return out;
    }

    // a - b, both sorted.
    TermVec sub(const TermVec& a, std::size_t abeg, const TermVec& b) const
    {
        TermVec r;
        r.reserve(a.size() - abeg + b.size());
        std::size_t i = abeg, j = 0;
        while (i < a.size() && j < b.size()) {
            int c = order.compare(a[i].mon, b[j].mon);
            if (c > 0) r.push_back(a[i++]);
            else if (c < 0) { r.push_back({b[j].mon, -b[j].coef}); ++j; }
            else {
                Rational s = a[i].coef - b[j].coef;
                if (s != 0) r.push_back({a[i].mon, std::move(s)});
                ++i; ++j;
            }
        }
        for (; i < a.size(); ++i) r.push_back(a[i]);
        for (; j < b.size(); ++j) r.push_back({b[j].mon, -b[j].coef});
        return r;
    }

    struct BasisElem {
        TermVec t;
        std::uint32_t sugar = 0;
        bool kept = true;
    };

    // Scale to coprime integer coefficients with positive lead; returns the
    // factor that was multiplied in.
    static Rational make_primitive(TermVec& v)
    {
        if (v.empty()) return Rational(1);
        Integer den_lcm = 1, num_gcd = 0;
        for (const Term& t : v) {
            Integer d = t.coef.get_den();
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        }
        for (const Term& t : v) {
            Integer n = t.coef.get_num() * (den_lcm / t.coef.get_den());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        }
        Rational scale = make_rational(den_lcm, num_gcd);
        if (v.front().coef < 0) scale = -scale;
        if (scale == 1) return scale;
        for (Term& t : v) t.coef *= scale;
        return scale;
    }

    // Full normal form. The working polynomial is kept integer-primitive to
    // bound rational growth; the accumulated scale is divided back out so the
    // returned remainder is exact.
    TermVec normal_form(TermVec p, const std::vector<BasisElem>& basis, std::uint32_t* sugar) const
    {
        TermVec out;
        Rational scale(1);
        std::size_t beg = 0;
        while (beg < p.size()) {
            const Term& lt = p[beg];
            const BasisElem* red = nullptr;
            for (const BasisElem& g : basis)
                if (g.kept && !g.t.empty() && g.t.front().mon.divides(lt.mon)) { red = &g; break; }
            if (!red) {
                out.push_back(lt);
                ++beg;
                continue;
            }
            Monomial m = red->t.front().mon.quotient_of(lt.mon);
            Rational c = lt.coef / red->t.front().coef;
            if (sugar) *sugar = std::max(*sugar, red->sugar + m.degree());
            TermVec mult = mul_term(c, m, red->t);
            // leading terms cancel exactly
            p = sub(p, beg, mult);
            beg = 0;
            Rational k = make_primitive(p);
            if (k != 1) {
                scale *= k;
                for (Term& t : out) t.coef *= k;
            }
        }
        if (scale != 1) {
            Rational inv = 1 / scale;
            for (Term& t : out) t.coef *= inv;
        }
        return out;
    }

    TermVec spoly(const BasisElem& f, const BasisElem& g, std::uint32_t* sugar) const
    {
        const Monomial lcm = f.t.front().mon.lcm(g.t.front().mon);
        Monomial mf = f.t.front().mon.quotient_of(lcm);
        Monomial mg = g.t.front().mon.quotient_of(lcm);
        if (sugar)
            *sugar = std::max(f.sugar + mf.degree(), g.sugar + mg.degree());
        TermVec a = mul_term(1 / f.t.front().coef, mf, f.t);
        TermVec b = mul_term(1 / g.t.front().coef, mg, g.t);
        return sub(a, 0, b);
    }
};

}  // namespace gbdetail

// Left (or two-sided commutative) reduced Groebner basis. Deterministic for
// fixed input and order; elements come back monic in canonical polynomial
// form, sorted by decreasing leading monomial under `order`.
inline std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens,
                                              const TermOrder& order, RingKind kind)
{
    using namespace gbdetail;
    UniversePtr uni;
    for (const Polynomial& g : gens)
        if (!g.is_zero()) { uni = g.universe(); break; }
    if (!uni) return {};  // zero ideal

    Engine eng{*uni, order, kind};
    std::vector<Engine::BasisElem> basis;

    struct PairKey {
        std::uint32_t sugar;
        Monomial lcm;
        int i, j;
    };
    struct PairLess {
        const TermOrder* order;
        bool use_sugar;
        bool operator()(const PairKey& a, const PairKey& b) const
        {
            if (use_sugar && a.sugar != b.sugar) return a.sugar < b.sugar;
            int c = order->compare(a.lcm, b.lcm);
            if (c != 0) return c < 0;
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        }
    };
    // Normal selection: the pair with the order-smallest lcm first. A
    // sugar-first queue stalls badly on the elimination orders this engine
    // exists for, so sugar is tracked only as a tiebreaker statistic.
    std::set<PairKey, PairLess> pairs(PairLess{&order, false});

    auto add_element = [&](TermVec t, std::uint32_t sugar) {
        const int h = static_cast<int>(basis.size());
        const Monomial lmh = t.front().mon;

        // Gebauer-Moeller update of the pending pair set against the new lead.
        for (auto it = pairs.begin(); it != pairs.end();) {
            const Monomial& lij = it->lcm;
            if (lmh.divides(lij) &&
                basis[it->i].t.front().mon.lcm(lmh) != lij &&
                basis[it->j].t.front().mon.lcm(lmh) != lij)
                it = pairs.erase(it);
            else
                ++it;
        }

        struct Cand { Monomial lcm; int i; bool coprime; bool alive; };
        std::vector<Cand> cands;
        for (int i = 0; i < h; ++i) {
            if (!basis[i].kept) continue;
            const Monomial& lmi = basis[i].t.front().mon;
            cands.push_back({lmi.lcm(lmh), i, lmi.coprime_with(lmh), true});
        }
        // criterion M: drop candidates whose lcm is a proper multiple of another's
        for (auto& a : cands)
            for (auto& b : cands) {
                if (!a.alive || !b.alive || a.i == b.i) continue;
                if (b.lcm.divides(a.lcm) && !(a.lcm == b.lcm)) { a.alive = false; break; }
            }
        // criterion F: one representative per lcm value; a coprime member kills
        // the whole class in the commutative case
        for (std::size_t x = 0; x < cands.size(); ++x) {
            if (!cands[x].alive) continue;
            bool class_coprime = cands[x].coprime;
            for (std::size_t y = x + 1; y < cands.size(); ++y) {
                if (!cands[y].alive || !(cands[y].lcm == cands[x].lcm)) continue;
                class_coprime = class_coprime || cands[y].coprime;
                cands[y].alive = false;
            }
            if (kind == RingKind::Commutative && class_coprime) cands[x].alive = false;
        }
        for (const auto& c : cands) {
            if (!c.alive) continue;
            Monomial mi = basis[c.i].t.front().mon.quotient_of(c.lcm);
            Monomial mh = lmh.quotient_of(c.lcm);
            std::uint32_t sug = std::max(basis[c.i].sugar + mi.degree(), sugar + mh.degree());
            pairs.insert({sug, c.lcm, c.i, h});
        }

        for (auto& g : basis)
            if (g.kept && lmh.divides(g.t.front().mon)) g.kept = false;
        basis.push_back({std::move(t), sugar, true});
    };

    for (const Polynomial& g : gens) {
        if (g.is_zero()) continue;
        require_same_universe(uni, g.universe(), "groebner");
        TermVec t = eng.to_sorted(g);
        std::uint32_t sugar = g.total_degree();
        t = eng.normal_form(std::move(t), basis, &sugar);
        Engine::make_primitive(t);
        if (!t.empty()) add_element(std::move(t), sugar);
    }

    static const bool trace = std::getenv("BSATO_GB_TRACE") != nullptr;
    long processed = 0;
    while (!pairs.empty()) {
        PairKey pk = *pairs.begin();
        pairs.erase(pairs.begin());
        std::uint32_t sugar = pk.sugar;
        TermVec sp = eng.spoly(basis[pk.i], basis[pk.j], &sugar);
        sp = eng.normal_form(std::move(sp), basis, &sugar);
        Engine::make_primitive(sp);
        ++processed;
        if (trace) {
            std::size_t maxterms = 0, maxbits = 0;
            for (const auto& b : basis) {
                if (!b.kept) continue;
                maxterms = std::max(maxterms, b.t.size());
                for (const Term& t : b.t)
                    maxbits = std::max(maxbits,
                                       mpz_sizeinbase(t.coef.get_num().get_mpz_t(), 2) +
                                           mpz_sizeinbase(t.coef.get_den().get_mpz_t(), 2));
            }
            std::fprintf(stderr, "[gb] pairs=%zu basis=%zu processed=%ld sugar=%u terms<=%zu bits<=%zu\n",
                         pairs.size(), basis.size(), processed, sugar, maxterms, maxbits);
        }
        if (!sp.empty()) add_element(std::move(sp), sugar);
    }

    // Minimalize, tail-reduce, make monic: the unique reduced basis.
    std::vector<gbdetail::TermVec> kept;
    for (auto& g : basis)
        if (g.kept) kept.push_back(std::move(g.t));
    std::sort(kept.begin(), kept.end(), [&](const TermVec& a, const TermVec& b) {
        return order.compare(a.front().mon, b.front().mon) > 0;
    });

    std::vector<Engine::BasisElem> reduced;
    for (std::size_t i = kept.size(); i-- > 0;) {
        // reduce each element against the others (leads are pairwise
        // indivisible after minimalization, so only tails change)
        std::vector<Engine::BasisElem> others;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back({kept[j], 0, true});
        TermVec t = eng.normal_form(kept[i], others, nullptr);
        if (t.empty()) continue;  // safety; cannot happen for a minimal basis
        Rational inv = 1 / t.front().coef;
        for (Term& tm : t) tm.coef *= inv;
        kept[i] = std::move(t);
    }

    std::vector<Polynomial> out;
    out.reserve(kept.size());
    for (auto& t : kept) out.push_back(Polynomial::from_terms(uni, std::move(t)));
    if (out.size() == 1 && out[0].is_constant()) out[0] = Polynomial::constant(uni, Rational(1));
    return out;
}

// Remainder of p on division by `basis` (typically a Groebner basis): no
// remaining term is divisible by any basis leading monomial.
inline Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                              const TermOrder& order, RingKind kind)
{
    using namespace gbdetail;
    if (p.is_zero() || basis.empty()) return p;
    Engine eng{*p.universe(), order, kind};
    std::vector<Engine::BasisElem> b;
    b.reserve(basis.size());
    for (const Polynomial& g : basis) {
        require_same_universe(p.universe(), g.universe(), "normal_form");
        if (!g.is_zero()) b.push_back({eng.to_sorted(g), 0, true});
    }
    TermVec t = eng.normal_form(eng.to_sorted(p), b, nullptr);
    return Polynomial::from_terms(p.universe(), std::move(t));
}

// Buchberger criterion as an assertable check: every S-polynomial of the
// basis reduces to zero.
inline bool all_spolys_reduce_to_zero(const std::vector<Polynomial>& basis,
                                      const TermOrder& order, RingKind kind)
{
    using namespace gbdetail;
    if (basis.size() < 2) return true;
    Engine eng{*basis.front().universe(), order, kind};
    std::vector<Engine::BasisElem> b;
    for (const Polynomial& g : basis)
        if (!g.is_zero()) b.push_back({eng.to_sorted(g), 0, true});
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            TermVec sp = eng.spoly(b[i], b[j], nullptr);
            if (!eng.normal_form(std::move(sp), b, nullptr).empty()) return false;
        }
    return true;
}

// Leading term of p under an arbitrary order (p stores canonical order).
inline const Term& lead_term(const Polynomial& p, const TermOrder& order)
{
    if (p.is_zero()) throw std::logic_error("lead_term: zero polynomial");
    const Term* best = &p.terms()[0];
    for (const Term& t : p.terms())
        if (order.compare(t.mon, best->mon) > 0) best = &t;
    return *best;
}

}  // namespace bsato

#endif
