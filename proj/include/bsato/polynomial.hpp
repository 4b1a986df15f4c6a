// Sparse distributed multivariate polynomials over Q in canonical form:
// terms sorted descending under degrevlex on the declared variable order,
// no zero coefficients. Canonical form makes equality structural, which the
// Groebner cache and all ideal comparisons rely on.
#ifndef BSATO_POLYNOMIAL_HPP
#define BSATO_POLYNOMIAL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"
#include "term_order.hpp"
#include "variables.hpp"

namespace bsato {

struct Term {
    Monomial mon;
    Rational coef;
};

// Fixed structural order: degrevlex over the full declared variable list.
inline int canonical_compare(const Monomial& a, const Monomial& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.nvars() - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
}

inline bool canonical_greater(const Monomial& a, const Monomial& b)
{
    return canonical_compare(a, b) > 0;
}

class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(UniversePtr u) : uni_(std::move(u)) {}

    static Polynomial zero(UniversePtr u) { return Polynomial(std::move(u)); }

    static Polynomial constant(UniversePtr u, Rational c)
    {
        Polynomial p(std::move(u));
        if (c != 0) p.terms_.push_back({Monomial(static_cast<int>(p.uni_->size())), std::move(c)});
        return p;
    }

    static Polynomial variable(UniversePtr u, int i, Monomial::Exp e = 1)
    {
        Polynomial p(u);
        if (i < 0 || i >= static_cast<int>(u->size()))
            throw std::invalid_argument("polynomial: variable index out of range");
        p.terms_.push_back({Monomial::variable(static_cast<int>(u->size()), i, e), Rational(1)});
        return p;
    }

    static Polynomial from_terms(UniversePtr u, std::vector<Term> ts)
    {
        Polynomial p(std::move(u));
        p.terms_ = std::move(ts);
        p.normalize();
        return p;
    }

    const UniversePtr& universe() const { return uni_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mon.is_one());
    }

    Rational constant_value() const
    {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("polynomial: not a constant");
        return terms_[0].coef;
    }

    // Leading data under the canonical order.
    const Monomial& lead_monomial() const { return require_nonzero().mon; }
    const Rational& lead_coef() const { return require_nonzero().coef; }

    std::uint32_t total_degree() const
    {
        std::uint32_t d = 0;
        for (const Term& t : terms_) d = std::max(d, t.mon.degree());
        return d;
    }

    std::uint32_t degree_in(int var) const
    {
        std::uint32_t d = 0;
        for (const Term& t : terms_) d = std::max<std::uint32_t>(d, t.mon[var]);
        return d;
    }

    // Variables with a nonzero exponent somewhere.
    std::vector<int> support() const
    {
        std::vector<int> vs;
        for (int i = 0; i < static_cast<int>(uni_->size()); ++i)
            if (degree_in(i) > 0) vs.push_back(i);
        return vs;
    }

    bool free_of(const std::vector<int>& vars) const
    {
        for (const Term& t : terms_)
            if (!t.mon.free_of(vars)) return false;
        return true;
    }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (Term& t : r.terms_) t.coef = -t.coef;
        return r;
    }

    Polynomial operator+(const Polynomial& o) const
    {
        require_same_universe(uni_, o.uni_, "poly add");
        return merged(*this, o, false);
    }

    Polynomial operator-(const Polynomial& o) const
    {
        require_same_universe(uni_, o.uni_, "poly sub");
        return merged(*this, o, true);
    }

    Polynomial operator*(const Polynomial& o) const
    {
        require_same_universe(uni_, o.uni_, "poly mul");
        Polynomial r(uni_);
        if (terms_.empty() || o.terms_.empty()) return r;
        r.terms_.reserve(terms_.size() * o.terms_.size());
        for (const Term& a : terms_)
            for (const Term& b : o.terms_)
                r.terms_.push_back({a.mon * b.mon, a.coef * b.coef});
        r.normalize();
        return r;
    }

    Polynomial operator*(const Rational& c) const
    {
        Polynomial r(uni_);
        if (c == 0) return r;
        r.terms_ = terms_;
        for (Term& t : r.terms_) t.coef *= c;
        return r;
    }

    Polynomial mul_term(const Rational& c, const Monomial& m) const
    {
        Polynomial r(uni_);
        if (c == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.push_back({t.mon * m, t.coef * c});
        return r;  // shifting by a fixed monomial preserves the canonical sort
    }

    Polynomial pow(unsigned e) const
    {
        Polynomial r = constant(uni_, Rational(1));
        Polynomial b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = (e >>= 1u) ? b * b : b;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const
    {
        if (!same_universe(uni_, o.uni_) || terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mon != o.terms_[i].mon || terms_[i].coef != o.terms_[i].coef)
                return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial monic() const
    {
        if (terms_.empty()) return *this;
        Rational inv = 1 / terms_.front().coef;
        return *this * inv;
    }

    // Scale so coefficients are coprime integers and the leading one is
    // positive; the canonical shape for printed generators.
    Polynomial integer_cleared() const
    {
        if (terms_.empty()) return *this;
        Integer den_lcm = 1, num_gcd = 0;
        for (const Term& t : terms_) {
            Integer d = t.coef.get_den();
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        }
        for (const Term& t : terms_) {
            Integer n = t.coef.get_num() * (den_lcm / t.coef.get_den());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        }
        Rational scale = make_rational(den_lcm, num_gcd);
        if (terms_.front().coef < 0) scale = -scale;
        return *this * scale;
    }

    Polynomial derivative(int var) const
    {
        Polynomial r(uni_);
        for (const Term& t : terms_) {
            Monomial::Exp e = t.mon[var];
            if (e == 0) continue;
            Monomial m = t.mon;
            m.set(var, static_cast<Monomial::Exp>(e - 1));
            r.terms_.push_back({m, t.coef * Rational(e)});
        }
        r.normalize();
        return r;
    }

    // Substitute rational values for the given variables; other variables
    // remain untouched.
    Polynomial substituted(const std::map<int, Rational>& values) const
    {
        Polynomial r(uni_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) {
            Rational c = t.coef;
            Monomial m = t.mon;
            for (const auto& [var, val] : values) {
                Monomial::Exp e = m[var];
                if (e == 0) continue;
                Rational pw(1);
                for (Monomial::Exp k = 0; k < e; ++k) pw *= val;
                c *= pw;
                m.set(var, 0);
            }
            if (c != 0) r.terms_.push_back({m, std::move(c)});
        }
        r.normalize();
        return r;
    }

    // Substitute a polynomial for one variable.
    Polynomial substituted(int var, const Polynomial& value) const
    {
        require_same_universe(uni_, value.uni_, "substitute");
        std::uint32_t maxe = degree_in(var);
        std::vector<Polynomial> powers;
        powers.push_back(constant(uni_, Rational(1)));
        for (std::uint32_t k = 1; k <= maxe; ++k) powers.push_back(powers.back() * value);
        Polynomial r(uni_);
        for (const Term& t : terms_) {
            Monomial m = t.mon;
            Monomial::Exp e = m[var];
            m.set(var, 0);
            Polynomial piece = powers[e].mul_term(t.coef, m);
            r = r + piece;
        }
        return r;
    }

    // Exact division; nullopt if o does not divide *this.
    std::optional<Polynomial> divided_by(const Polynomial& o) const
    {
        require_same_universe(uni_, o.uni_, "poly div");
        if (o.is_zero()) throw std::invalid_argument("poly div: division by zero");
        Polynomial rem = *this;
        Polynomial quot(uni_);
        const Monomial& dm = o.lead_monomial();
        const Rational& dc = o.lead_coef();
        while (!rem.is_zero()) {
            const Term& lt = rem.terms_.front();
            if (!dm.divides(lt.mon)) return std::nullopt;
            Rational c = lt.coef / dc;
            Monomial m = dm.quotient_of(lt.mon);
            quot.terms_.push_back({m, c});
            rem = rem - o.mul_term(c, m);
        }
        quot.normalize();
        return quot;
    }

    bool divides(const Polynomial& num) const { return num.divided_by(*this).has_value(); }

    // Transport to another universe. index_map[i] is the image of variable i,
    // or -1 when variable i must not occur.
    Polynomial mapped(const UniversePtr& target, const std::vector<int>& index_map) const
    {
        Polynomial r(target);
        int tn = static_cast<int>(target->size());
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) {
            Monomial m(tn);
            for (int i = 0; i < static_cast<int>(uni_->size()); ++i) {
                if (t.mon[i] == 0) continue;
                if (index_map[i] < 0)
                    throw std::invalid_argument("polynomial: variable '" + uni_->name(i) +
                                                "' cannot be mapped away while present");
                m.set(index_map[i], t.mon[i]);
            }
            r.terms_.push_back({m, t.coef});
        }
        r.normalize();
        return r;
    }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const Term& t = terms_[i];
            Rational c = t.coef;
            if (i == 0) {
                if (c < 0) { out += "-"; c = -c; }
            } else {
                out += c < 0 ? " - " : " + ";
                if (c < 0) c = -c;
            }
            std::string ms = monomial_str(t.mon);
            if (ms.empty())
                out += rational_to_string(c);
            else if (c == 1)
                out += ms;
            else
                out += rational_to_string(c) + "*" + ms;
        }
        return out;
    }

    std::string monomial_str(const Monomial& m) const
    {
        std::string out;
        for (int i = 0; i < static_cast<int>(uni_->size()); ++i) {
            if (m[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += uni_->name(i);
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
        }
        return out;
    }

    void normalize()
    {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return canonical_greater(a.mon, b.mon); });
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms_.size();) {
            Monomial m = terms_[i].mon;
            Rational c = std::move(terms_[i].coef);
            std::size_t j = i + 1;
            while (j < terms_.size() && terms_[j].mon == m) c += terms_[j++].coef;
            if (c != 0) terms_[out++] = {m, std::move(c)};
            i = j;
        }
        terms_.resize(out);
    }

private:
    const Term& require_nonzero() const
    {
        if (terms_.empty()) throw std::logic_error("polynomial: zero has no leading term");
        return terms_.front();
    }

    static Polynomial merged(const Polynomial& a, const Polynomial& b, bool subtract)
    {
        Polynomial r(a.uni_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = canonical_compare(a.terms_[i].mon, b.terms_[j].mon);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                const Term& t = b.terms_[j++];
                r.terms_.push_back({t.mon, subtract ? -t.coef : t.coef});
            } else {
                Rational s = a.terms_[i].coef;
                if (subtract) s -= b.terms_[j].coef; else s += b.terms_[j].coef;
                if (s != 0) r.terms_.push_back({a.terms_[i].mon, std::move(s)});
                ++i; ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) {
            const Term& t = b.terms_[j];
            r.terms_.push_back({t.mon, subtract ? -t.coef : t.coef});
        }
        return r;
    }

    UniversePtr uni_;
    std::vector<Term> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

}  // namespace bsato

#endif
