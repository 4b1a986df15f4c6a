// Exponent vectors over a universe of at most 32 variables, stored inline so
// monomial arithmetic never allocates.
#ifndef BSATO_MONOMIAL_HPP
#define BSATO_MONOMIAL_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>

#include "variables.hpp"

namespace bsato {

class Monomial {
public:
    using Exp = std::uint16_t;

    Monomial() = default;
    explicit Monomial(int nvars) : n_(static_cast<std::uint8_t>(nvars)) {}

    static Monomial variable(int nvars, int i, Exp e = 1)
    {
        Monomial m(nvars);
        m.set(i, e);
        return m;
    }

    int nvars() const { return n_; }
    Exp operator[](int i) const { return e_[i]; }
    void set(int i, Exp v)
    {
        deg_ += static_cast<std::int32_t>(v) - e_[i];
        e_[i] = v;
    }

    std::uint32_t degree() const { return deg_; }
    bool is_one() const { return deg_ == 0; }

    std::uint32_t degree_on(const std::vector<int>& vars) const
    {
        std::uint32_t d = 0;
        for (int i : vars) d += e_[i];
        return d;
    }

    bool supported_on(const std::vector<int>& vars) const
    {
        std::uint32_t d = 0;
        for (int i : vars) d += e_[i];
        return d == deg_;
    }

    bool free_of(const std::vector<int>& vars) const
    {
        for (int i : vars)
            if (e_[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const
    {
        Monomial r(n_);
        for (int i = 0; i < n_; ++i) {
            std::uint32_t s = static_cast<std::uint32_t>(e_[i]) + o.e_[i];
            if (s > 0xffffu) throw std::overflow_error("monomial: exponent overflow");
            r.e_[i] = static_cast<Exp>(s);
        }
        r.deg_ = deg_ + o.deg_;
        return r;
    }

    bool divides(const Monomial& o) const
    {
        if (deg_ > o.deg_) return false;
        for (int i = 0; i < n_; ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    // Quotient o / *this; caller must check divisibility.
    Monomial quotient_of(const Monomial& num) const
    {
        Monomial r(n_);
        for (int i = 0; i < n_; ++i) r.e_[i] = static_cast<Exp>(num.e_[i] - e_[i]);
        r.deg_ = num.deg_ - deg_;
        return r;
    }

    Monomial lcm(const Monomial& o) const
    {
        Monomial r(n_);
        std::uint32_t d = 0;
        for (int i = 0; i < n_; ++i) {
            r.e_[i] = e_[i] > o.e_[i] ? e_[i] : o.e_[i];
            d += r.e_[i];
        }
        r.deg_ = d;
        return r;
    }

    bool coprime_with(const Monomial& o) const
    {
        for (int i = 0; i < n_; ++i)
            if (e_[i] && o.e_[i]) return false;
        return true;
    }

    bool operator==(const Monomial& o) const
    {
        if (n_ != o.n_ || deg_ != o.deg_) return false;
        for (int i = 0; i < n_; ++i)
            if (e_[i] != o.e_[i]) return false;
        return true;
    }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::array<Exp, VarUniverse::max_vars> e_{};
    std::uint32_t deg_ = 0;
    std::uint8_t n_ = 0;
};

}  // namespace bsato

#endif
