// Variable universes: an ordered list of named variables, each tagged with a
// class. Position variables (x, t) pair with their derivations (dx, dt) by
// class index; u, v and s are commutative. All ring elements reference one
// universe, and mixing universes is a usage error detected at the call site.
#ifndef BSATO_VARIABLES_HPP
#define BSATO_VARIABLES_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsato {

enum class VarClass : std::uint8_t { X, Dx, T, Dt, U, V, S };

inline const char* var_class_name(VarClass c)
{
    switch (c) {
        case VarClass::X: return "x";
        case VarClass::Dx: return "dx";
        case VarClass::T: return "t";
        case VarClass::Dt: return "dt";
        case VarClass::U: return "u";
        case VarClass::V: return "v";
        case VarClass::S: return "s";
    }
    return "?";
}

class VarUniverse;
using UniversePtr = std::shared_ptr<const VarUniverse>;

class VarUniverse {
public:
    static constexpr std::size_t max_vars = 32;

    static UniversePtr make(std::vector<std::string> names, std::vector<VarClass> classes)
    {
        return UniversePtr(new VarUniverse(std::move(names), std::move(classes)));
    }

    // Plain commutative polynomial ring: every variable of class X.
    static UniversePtr commutative(std::vector<std::string> names)
    {
        std::vector<VarClass> cls(names.size(), VarClass::X);
        return make(std::move(names), std::move(cls));
    }

    // k[x1..xn, s1..sp] with x names given and s names generated as s1..sp.
    static UniversePtr poly_with_s(std::vector<std::string> xnames, int p)
    {
        std::vector<std::string> names = std::move(xnames);
        std::vector<VarClass> cls(names.size(), VarClass::X);
        for (int j = 1; j <= p; ++j) {
            names.push_back("s" + std::to_string(j));
            cls.push_back(VarClass::S);
        }
        return make(std::move(names), std::move(cls));
    }

    // D<t,dt>[u,v][s] universe for the annihilator stage. Derivation and
    // auxiliary variable names use '@' so they can never collide with
    // parser-visible identifiers.
    static UniversePtr weyl(const std::vector<std::string>& xnames, int p)
    {
        std::vector<std::string> names;
        std::vector<VarClass> cls;
        const int n = static_cast<int>(xnames.size());
        for (int i = 0; i < n; ++i) { names.push_back(xnames[i]); cls.push_back(VarClass::X); }
        for (int i = 0; i < n; ++i) { names.push_back("@d" + xnames[i]); cls.push_back(VarClass::Dx); }
        for (int j = 1; j <= p; ++j) { names.push_back("@t" + std::to_string(j)); cls.push_back(VarClass::T); }
        for (int j = 1; j <= p; ++j) { names.push_back("@dt" + std::to_string(j)); cls.push_back(VarClass::Dt); }
        for (int j = 1; j <= p; ++j) { names.push_back("@u" + std::to_string(j)); cls.push_back(VarClass::U); }
        for (int j = 1; j <= p; ++j) { names.push_back("@v" + std::to_string(j)); cls.push_back(VarClass::V); }
        for (int j = 1; j <= p; ++j) { names.push_back("s" + std::to_string(j)); cls.push_back(VarClass::S); }
        return make(std::move(names), std::move(cls));
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(int i) const { return names_[i]; }
    VarClass cls(int i) const { return classes_[i]; }

    int index_of(const std::string& name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }

    const std::vector<int>& indices_of(VarClass c) const
    {
        return by_class_[static_cast<int>(c)];
    }

    // Index of the paired derivation/position variable, or -1.
    int partner(int i) const { return partner_[i]; }

    bool is_commutative() const
    {
        return indices_of(VarClass::Dx).empty() && indices_of(VarClass::Dt).empty();
    }

    bool operator==(const VarUniverse& o) const
    {
        return names_ == o.names_ && classes_ == o.classes_;
    }
    bool operator!=(const VarUniverse& o) const { return !(*this == o); }

    // New universe with one variable appended (intersection tag, minimal
    // polynomial variable). The only sanctioned way to grow a universe.
    UniversePtr extended(const std::string& name, VarClass c) const
    {
        std::vector<std::string> names = names_;
        std::vector<VarClass> cls = classes_;
        names.push_back(name);
        cls.push_back(c);
        return make(std::move(names), std::move(cls));
    }

    // New universe keeping exactly the variables in `keep` (ascending order
    // of the original indices is preserved).
    UniversePtr restricted(const std::vector<int>& keep) const
    {
        std::vector<std::string> names;
        std::vector<VarClass> cls;
        for (int i : keep) {
            names.push_back(names_[i]);
            cls.push_back(classes_[i]);
        }
        return make(std::move(names), std::move(cls));
    }

private:
    VarUniverse(std::vector<std::string> names, std::vector<VarClass> classes)
        : names_(std::move(names)), classes_(std::move(classes))
    {
        if (names_.size() != classes_.size())
            throw std::invalid_argument("universe: names/classes size mismatch");
        if (names_.size() > max_vars)
            throw std::invalid_argument("universe: more than 32 variables is not supported");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty())
                throw std::invalid_argument("universe: empty variable name");
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("universe: duplicate variable name '" + names_[i] + "'");
        }
        for (std::size_t i = 0; i < names_.size(); ++i)
            by_class_[static_cast<int>(classes_[i])].push_back(static_cast<int>(i));

        auto& xs = by_class_[static_cast<int>(VarClass::X)];
        auto& dxs = by_class_[static_cast<int>(VarClass::Dx)];
        auto& ts = by_class_[static_cast<int>(VarClass::T)];
        auto& dts = by_class_[static_cast<int>(VarClass::Dt)];
        if (!dxs.empty() && dxs.size() != xs.size())
            throw std::invalid_argument("universe: dx variables must pair with x variables");
        if (!dts.empty() && dts.size() != ts.size())
            throw std::invalid_argument("universe: dt variables must pair with t variables");

        partner_.assign(names_.size(), -1);
        if (!dxs.empty())
            for (std::size_t k = 0; k < xs.size(); ++k) {
                partner_[xs[k]] = dxs[k];
                partner_[dxs[k]] = xs[k];
            }
        if (!dts.empty())
            for (std::size_t k = 0; k < ts.size(); ++k) {
                partner_[ts[k]] = dts[k];
                partner_[dts[k]] = ts[k];
            }
    }

    std::vector<std::string> names_;
    std::vector<VarClass> classes_;
    std::vector<int> by_class_[7];
    std::vector<int> partner_;
};

inline bool same_universe(const UniversePtr& a, const UniversePtr& b)
{
    return a == b || (a && b && *a == *b);
}

inline void require_same_universe(const UniversePtr& a, const UniversePtr& b, const char* where)
{
    if (!same_universe(a, b))
        throw std::invalid_argument(std::string(where) + ": mismatched variable universes");
}

}  // namespace bsato

#endif
