// Term orders: lex, degrevlex, block (product) orders with an optional
// leading weight row. Block orders whose leading group collects the variables
// to kill realize elimination orders.
#ifndef BSATO_TERM_ORDER_HPP
#define BSATO_TERM_ORDER_HPP

#include <numeric>
#include <string>
#include <vector>

#include "monomial.hpp"
#include "variables.hpp"

namespace bsato {

class TermOrder {
public:
    enum class Kind { Lex, DegRevLex };

    struct Group {
        std::vector<int> vars;  // in priority order within the group
        Kind kind = Kind::DegRevLex;
    };

    static TermOrder lex(const UniversePtr& u)
    {
        return single_group(u, Kind::Lex);
    }

    static TermOrder degrevlex(const UniversePtr& u)
    {
        return single_group(u, Kind::DegRevLex);
    }

    static TermOrder block(const UniversePtr& u, std::vector<Group> groups)
    {
        TermOrder o;
        o.nvars_ = static_cast<int>(u->size());
        o.groups_ = std::move(groups);
        o.validate();
        o.build_key();
        return o;
    }

    // Block order [kill >> rest], degrevlex inside both groups.
    static TermOrder elimination(const UniversePtr& u, const std::vector<int>& kill)
    {
        std::vector<char> killed(u->size(), 0);
        for (int i : kill) killed[i] = 1;
        Group hi, lo;
        hi.vars = kill;
        for (int i = 0; i < static_cast<int>(u->size()); ++i)
            if (!killed[i]) lo.vars.push_back(i);
        std::vector<Group> gs;
        if (!hi.vars.empty()) gs.push_back(std::move(hi));
        gs.push_back(std::move(lo));
        return block(u, std::move(gs));
    }

    TermOrder with_weight(std::vector<long> w) const
    {
        TermOrder o = *this;
        o.weight_ = std::move(w);
        if (static_cast<int>(o.weight_.size()) != o.nvars_)
            throw std::invalid_argument("term order: weight length mismatch");
        o.build_key();
        return o;
    }

    int nvars() const { return nvars_; }
    const std::string& key() const { return key_; }

    // -1 if a < b, 0 if equal, +1 if a > b.
    int compare(const Monomial& a, const Monomial& b) const
    {
        if (!weight_.empty()) {
            long long wa = 0, wb = 0;
            for (int i = 0; i < nvars_; ++i) {
                wa += static_cast<long long>(weight_[i]) * a[i];
                wb += static_cast<long long>(weight_[i]) * b[i];
            }
            if (wa != wb) return wa < wb ? -1 : 1;
        }
        for (const Group& g : groups_) {
            int c = g.kind == Kind::Lex ? cmp_lex(g.vars, a, b) : cmp_degrevlex(g.vars, a, b);
            if (c != 0) return c;
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

private:
    static TermOrder single_group(const UniversePtr& u, Kind k)
    {
        TermOrder o;
        o.nvars_ = static_cast<int>(u->size());
        Group g;
        g.vars.resize(u->size());
        std::iota(g.vars.begin(), g.vars.end(), 0);
        g.kind = k;
        o.groups_.push_back(std::move(g));
        o.build_key();
        return o;
    }

    static int cmp_lex(const std::vector<int>& vars, const Monomial& a, const Monomial& b)
    {
        for (int i : vars)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static int cmp_degrevlex(const std::vector<int>& vars, const Monomial& a, const Monomial& b)
    {
        std::uint32_t da = a.degree_on(vars), db = b.degree_on(vars);
        if (da != db) return da < db ? -1 : 1;
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
        return 0;
    }

    void validate() const
    {
        std::vector<char> seen(nvars_, 0);
        for (const Group& g : groups_)
            for (int i : g.vars) {
                if (i < 0 || i >= nvars_ || seen[i])
                    throw std::invalid_argument("term order: groups must partition the variables");
                seen[i] = 1;
            }
        for (char c : seen)
            if (!c) throw std::invalid_argument("term order: groups must partition the variables");
    }

    void build_key()
    {
        key_.clear();
        if (!weight_.empty()) {
            key_ += "w[";
            for (long w : weight_) key_ += std::to_string(w) + ",";
            key_ += "]";
        }
        for (const Group& g : groups_) {
            key_ += g.kind == Kind::Lex ? "L(" : "D(";
            for (int i : g.vars) key_ += std::to_string(i) + ",";
            key_ += ")";
        }
    }

    int nvars_ = 0;
    std::vector<Group> groups_;
    std::vector<long> weight_;
    std::string key_;
};

}  // namespace bsato

#endif
