// Commutative ideal handles: generator lists plus a once-per-order cache of
// the reduced Groebner basis, and the ideal operations the pipeline and the
// primary decomposition consume. The canonical order for equality and
// serialization is degrevlex over the declared variable order.
#ifndef BSATO_IDEAL_HPP
#define BSATO_IDEAL_HPP

#include <map>
#include <memory>
#include <mutex>

#include "gb.hpp"

namespace bsato {

class IdealHandle {
public:
    IdealHandle() = default;

    IdealHandle(UniversePtr u, std::vector<Polynomial> gens)
        : uni_(std::move(u)), gens_(std::move(gens)), cache_(std::make_shared<Cache>())
    {
        for (const Polynomial& g : gens_)
            require_same_universe(uni_, g.universe(), "ideal");
    }

    static IdealHandle zero(UniversePtr u) { return IdealHandle(std::move(u), {}); }

    static IdealHandle unit(UniversePtr u)
    {
        std::vector<Polynomial> g{Polynomial::constant(u, Rational(1))};
        return IdealHandle(std::move(u), std::move(g));
    }

    static IdealHandle span(std::vector<Polynomial> gens)
    {
        if (gens.empty()) throw std::invalid_argument("ideal: need a universe or a generator");
        UniversePtr u = gens.front().universe();
        return IdealHandle(std::move(u), std::move(gens));
    }

    const UniversePtr& universe() const { return uni_; }
    const std::vector<Polynomial>& generators() const { return gens_; }

    // Reduced Groebner basis for `order`, computed at most once per order.
    const std::vector<Polynomial>& basis(const TermOrder& order) const
    {
        {
            std::lock_guard<std::mutex> lock(cache_->mu);
            auto it = cache_->bases.find(order.key());
            if (it != cache_->bases.end()) return *it->second;
        }
        auto computed = std::make_shared<std::vector<Polynomial>>(
            groebner_basis(gens_, order, RingKind::Commutative));
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto [it, inserted] = cache_->bases.emplace(order.key(), std::move(computed));
        return *it->second;  // first writer wins
    }

    const std::vector<Polynomial>& canonical_basis() const { return basis(canonical_order()); }

    TermOrder canonical_order() const { return TermOrder::degrevlex(uni_); }

    bool is_zero() const { return canonical_basis().empty(); }

    bool is_unit() const
    {
        const auto& b = canonical_basis();
        return b.size() == 1 && b[0].is_constant();
    }

    bool contains(const Polynomial& p) const
    {
        require_same_universe(uni_, p.universe(), "ideal membership");
        return normal_form(p, canonical_basis(), canonical_order(), RingKind::Commutative).is_zero();
    }

    bool contains(const IdealHandle& other) const
    {
        for (const Polynomial& g : other.generators())
            if (!contains(g)) return false;
        return true;
    }

    IdealHandle plus(const std::vector<Polynomial>& more) const
    {
        std::vector<Polynomial> gens = gens_;
        gens.insert(gens.end(), more.begin(), more.end());
        return IdealHandle(uni_, std::move(gens));
    }

private:
    struct Cache {
        std::mutex mu;
        std::map<std::string, std::shared_ptr<const std::vector<Polynomial>>> bases;
    };

    UniversePtr uni_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_;
};

inline Polynomial normal_form(const Polynomial& p, const IdealHandle& I, const TermOrder& order)
{
    return normal_form(p, I.basis(order), order, RingKind::Commutative);
}

// True iff the reduced canonical bases coincide.
inline bool equal(const IdealHandle& I, const IdealHandle& J)
{
    require_same_universe(I.universe(), J.universe(), "ideal equality");
    const auto& a = I.canonical_basis();
    const auto& b = J.canonical_basis();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

// I intersected with the subring on the variables outside `kill`, as an
// ideal over the restricted universe.
inline IdealHandle eliminate(const IdealHandle& I, const std::vector<int>& kill)
{
    const UniversePtr& u = I.universe();
    std::vector<char> killed(u->size(), 0);
    for (int i : kill) killed[i] = 1;
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(u->size()); ++i)
        if (!killed[i]) keep.push_back(i);
    UniversePtr ru = u->restricted(keep);
    std::vector<int> index_map(u->size(), -1);
    for (std::size_t k = 0; k < keep.size(); ++k) index_map[keep[k]] = static_cast<int>(k);

    if (kill.empty()) {
        std::vector<Polynomial> gens;
        for (const Polynomial& g : I.generators()) gens.push_back(g.mapped(ru, index_map));
        return IdealHandle(ru, std::move(gens));
    }

    const auto& b = I.basis(TermOrder::elimination(u, kill));
    std::vector<Polynomial> gens;
    for (const Polynomial& g : b)
        if (g.free_of(kill)) gens.push_back(g.mapped(ru, index_map));
    return IdealHandle(ru, std::move(gens));
}

inline std::vector<int> indices_of_classes(const UniversePtr& u, std::initializer_list<VarClass> cs)
{
    std::vector<int> out;
    for (VarClass c : cs)
        for (int i : u->indices_of(c)) out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

// I cap J via one fresh tag variable w: eliminate {w} from <w I, (1-w) J>.
inline IdealHandle intersect(const IdealHandle& I, const IdealHandle& J)
{
    require_same_universe(I.universe(), J.universe(), "intersect");
    const UniversePtr& u = I.universe();
    if (I.generators().empty() || J.generators().empty()) return IdealHandle::zero(u);

    UniversePtr eu = u->extended("@w", VarClass::X);
    const int wi = static_cast<int>(eu->size()) - 1;
    std::vector<int> up(u->size());
    for (std::size_t i = 0; i < u->size(); ++i) up[i] = static_cast<int>(i);

    Polynomial w = Polynomial::variable(eu, wi);
    Polynomial one_minus_w = Polynomial::constant(eu, Rational(1)) - w;
    std::vector<Polynomial> gens;
    for (const Polynomial& g : I.generators()) gens.push_back(w * g.mapped(eu, up));
    for (const Polynomial& g : J.generators()) gens.push_back(one_minus_w * g.mapped(eu, up));

    const auto b = groebner_basis(gens, TermOrder::elimination(eu, {wi}), RingKind::Commutative);
    std::vector<int> down(eu->size(), -1);
    for (std::size_t i = 0; i < u->size(); ++i) down[i] = static_cast<int>(i);
    std::vector<Polynomial> out;
    for (const Polynomial& g : b)
        if (g.free_of({wi})) out.push_back(g.mapped(u, down));
    return IdealHandle(u, std::move(out));
}

// (I : f) computed from I cap <f>.
inline IdealHandle quotient(const IdealHandle& I, const Polynomial& f)
{
    require_same_universe(I.universe(), f.universe(), "quotient");
    if (f.is_zero()) throw std::invalid_argument("quotient: divisor is zero");
    IdealHandle meet = intersect(I, IdealHandle(I.universe(), {f}));
    std::vector<Polynomial> out;
    for (const Polynomial& g : meet.canonical_basis()) {
        auto q = g.divided_by(f);
        if (!q) throw std::logic_error("quotient: intersection member not divisible");
        out.push_back(std::move(*q));
    }
    return IdealHandle(I.universe(), std::move(out));
}

// (I : f^inf) via the inverse-tag trick, plus the smallest l with
// (I : f^l) = (I : f^inf).
inline std::pair<IdealHandle, int> saturate(const IdealHandle& I, const Polynomial& f)
{
    require_same_universe(I.universe(), f.universe(), "saturate");
    if (f.is_zero()) throw std::invalid_argument("saturate: divisor is zero");
    const UniversePtr& u = I.universe();

    UniversePtr eu = u->extended("@w", VarClass::X);
    const int wi = static_cast<int>(eu->size()) - 1;
    std::vector<int> up(u->size());
    for (std::size_t i = 0; i < u->size(); ++i) up[i] = static_cast<int>(i);

    Polynomial w = Polynomial::variable(eu, wi);
    std::vector<Polynomial> gens;
    for (const Polynomial& g : I.generators()) gens.push_back(g.mapped(eu, up));
    gens.push_back(Polynomial::constant(eu, Rational(1)) - w * f.mapped(eu, up));

    const auto b = groebner_basis(gens, TermOrder::elimination(eu, {wi}), RingKind::Commutative);
    std::vector<int> down(eu->size(), -1);
    for (std::size_t i = 0; i < u->size(); ++i) down[i] = static_cast<int>(i);
    std::vector<Polynomial> satgens;
    for (const Polynomial& g : b)
        if (g.free_of({wi})) satgens.push_back(g.mapped(u, down));
    IdealHandle sat(u, std::move(satgens));

    int l = 0;
    IdealHandle J = I;
    while (!equal(J, sat)) {
        J = quotient(J, f);
        ++l;
        if (l > 512) throw std::logic_error("saturate: exponent did not stabilize");
    }
    return {sat, l};
}

// g in rad(I), by the Rabinowitsch trick: 1 in I + <1 - w g>.
inline bool radical_member(const Polynomial& g, const IdealHandle& I)
{
    require_same_universe(I.universe(), g.universe(), "radical_member");
    if (g.is_zero()) return true;
    const UniversePtr& u = I.universe();
    UniversePtr eu = u->extended("@w", VarClass::X);
    const int wi = static_cast<int>(eu->size()) - 1;
    std::vector<int> up(u->size());
    for (std::size_t i = 0; i < u->size(); ++i) up[i] = static_cast<int>(i);
    std::vector<Polynomial> gens;
    for (const Polynomial& p : I.generators()) gens.push_back(p.mapped(eu, up));
    gens.push_back(Polynomial::constant(eu, Rational(1)) -
                   Polynomial::variable(eu, wi) * g.mapped(eu, up));
    const auto b = groebner_basis(gens, TermOrder::degrevlex(eu), RingKind::Commutative);
    return b.size() == 1 && b[0].is_constant();
}

}  // namespace bsato

#endif
