// Dense univariate machinery over Q, Z and Z/p, backing squarefree
// decomposition (Yun) and irreducible factorization over Q: prime selection,
// Cantor-Zassenhaus modulo a machine-word prime, quadratic Hensel lifting to
// a Landau-Mignotte-style bound, Zassenhaus recombination.
#ifndef BSATO_UPOLY_HPP
#define BSATO_UPOLY_HPP

#include <functional>
#include <optional>
#include <random>

#include "polynomial.hpp"

namespace bsato {

namespace updetail {

using ZPoly = std::vector<Integer>;   // c[i] * x^i, high zeros trimmed
using QPoly = std::vector<Rational>;
using PPoly = std::vector<std::uint64_t>;

template <class V> inline void trim(V& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}
template <class V> inline int deg(const V& f) { return static_cast<int>(f.size()) - 1; }

// ---- Q[x] ----

inline QPoly q_mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline QPoly q_sub(QPoly a, const QPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

inline QPoly q_derivative(const QPoly& f)
{
    QPoly r;
    for (std::size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * Rational(static_cast<long>(i)));
    trim(r);
    return r;
}

inline void q_divmod(const QPoly& f, const QPoly& g, QPoly& q, QPoly& r)
{
    if (g.empty()) throw std::invalid_argument("upoly: division by zero");
    r = f;
    q.assign(f.size() >= g.size() ? f.size() - g.size() + 1 : 1, Rational(0));
    while (deg(r) >= deg(g)) {
        int d = deg(r) - deg(g);
        Rational c = r.back() / g.back();
        q[d] = c;
        for (std::size_t i = 0; i < g.size(); ++i) r[d + i] -= c * g[i];
        trim(r);
    }
    trim(q);
}

inline QPoly q_divexact(const QPoly& f, const QPoly& g)
{
    QPoly q, r;
    q_divmod(f, g, q, r);
    if (!r.empty()) throw std::logic_error("upoly: inexact division");
    return q;
}

inline QPoly q_monic(QPoly f)
{
    if (f.empty()) return f;
    Rational inv = 1 / f.back();
    for (Rational& c : f) c *= inv;
    return f;
}

inline QPoly q_gcd(QPoly a, QPoly b)
{
    while (!b.empty()) {
        QPoly q, r;
        q_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return q_monic(std::move(a));
}

// Yun: monic pairwise-coprime squarefree factors with multiplicities.
inline std::vector<std::pair<QPoly, int>> q_squarefree(const QPoly& f)
{
    std::vector<std::pair<QPoly, int>> out;
    if (deg(f) < 1) return out;
    QPoly fp = q_derivative(f);
    QPoly g = q_gcd(f, fp);
    QPoly c = q_divexact(f, g);
    QPoly d = q_sub(q_divexact(fp, g), q_derivative(c));
    for (int i = 1; deg(c) > 0; ++i) {
        QPoly a = q_gcd(c, d);
        if (deg(a) > 0) out.emplace_back(a, i);
        c = q_divexact(c, a);
        d = q_sub(q_divexact(d, a), q_derivative(c));
    }
    return out;
}

// ---- Z/p[x], p an odd machine-word prime ----

struct Fp {
    std::uint64_t p;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const
    {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const
    {
        std::uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1u) r = mul(r, a);
            a = mul(a, a);
            e >>= 1u;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

inline PPoly p_mul(const Fp& F, const PPoly& a, const PPoly& b)
{
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

inline void p_divmod(const Fp& F, const PPoly& f, const PPoly& g, PPoly& q, PPoly& r)
{
    r = f;
    q.assign(f.size() >= g.size() ? f.size() - g.size() + 1 : 1, 0);
    std::uint64_t lcInv = F.inv(g.back());
    while (deg(r) >= deg(g)) {
        int d = deg(r) - deg(g);
        std::uint64_t c = F.mul(r.back(), lcInv);
        q[d] = c;
        for (std::size_t i = 0; i < g.size(); ++i)
            r[d + i] = F.sub(r[d + i], F.mul(c, g[i]));
        trim(r);
    }
    trim(q);
}

inline PPoly p_mod(const Fp& F, const PPoly& f, const PPoly& g)
{
    PPoly q, r;
    p_divmod(F, f, g, q, r);
    return r;
}

inline PPoly p_monic(const Fp& F, PPoly f)
{
    if (f.empty()) return f;
    std::uint64_t inv = F.inv(f.back());
    for (auto& c : f) c = F.mul(c, inv);
    return f;
}

inline PPoly p_gcd(const Fp& F, PPoly a, PPoly b)
{
    while (!b.empty()) {
        PPoly r = p_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return p_monic(F, std::move(a));
}

// s*a + t*b = 1 for coprime a, b.
inline void p_extgcd_coprime(const Fp& F, const PPoly& a, const PPoly& b, PPoly& s, PPoly& t)
{
    PPoly r0 = a, r1 = b;
    PPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        PPoly q, r2;
        p_divmod(F, r0, r1, q, r2);
        auto step = [&](PPoly& x0, PPoly& x1) {
            PPoly nx = x0;  // x0 - q*x1
            PPoly qx = p_mul(F, q, x1);
            if (nx.size() < qx.size()) nx.resize(qx.size(), 0);
            for (std::size_t i = 0; i < qx.size(); ++i) nx[i] = F.sub(nx[i], qx[i]);
            trim(nx);
            x0 = std::move(x1);
            x1 = std::move(nx);
        };
        step(s0, s1);
        step(t0, t1);
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    if (deg(r0) != 0) throw std::logic_error("upoly: extgcd expected coprime inputs");
    std::uint64_t inv = F.inv(r0[0]);
    for (auto& c : s0) c = F.mul(c, inv);
    for (auto& c : t0) c = F.mul(c, inv);
    s = std::move(s0);
    t = std::move(t0);
}

inline PPoly p_derivative(const Fp& F, const PPoly& f)
{
    PPoly r;
    for (std::size_t i = 1; i < f.size(); ++i) r.push_back(F.mul(f[i], i % F.p));
    trim(r);
    return r;
}

inline PPoly p_powmod(const Fp& F, const PPoly& base, const Integer& e, const PPoly& mod)
{
    if (e == 0) return PPoly{1};
    PPoly r{1};
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t k = bits; k-- > 0;) {
        r = p_mod(F, p_mul(F, r, r), mod);
        if (mpz_tstbit(e.get_mpz_t(), k)) r = p_mod(F, p_mul(F, r, base), mod);
    }
    return r;
}

// Monic irreducible factors of a monic squarefree f over Z/p.
inline std::vector<PPoly> p_factor_squarefree(const Fp& F, PPoly f, std::mt19937_64& rng)
{
    std::vector<std::pair<PPoly, int>> ddf;
    PPoly v = std::move(f);
    PPoly h{0, 1};  // x
    int d = 0;
    while (deg(v) >= 2 * (d + 1)) {
        ++d;
        h = p_powmod(F, h, Integer(static_cast<unsigned long>(F.p)), v);
        PPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = F.sub(hx[1], 1);
        trim(hx);
        PPoly g = p_gcd(F, hx, v);
        if (deg(g) > 0) {
            ddf.emplace_back(g, d);
            PPoly q, r;
            p_divmod(F, v, g, q, r);
            v = std::move(q);
            h = p_mod(F, h, v);
        }
    }
    if (deg(v) > 0) ddf.emplace_back(v, deg(v));

    std::vector<PPoly> out;
    std::function<void(const PPoly&, int)> edf = [&](const PPoly& g, int dd) {
        if (deg(g) == dd) {
            out.push_back(g);
            return;
        }
        Integer e(static_cast<unsigned long>(F.p));
        mpz_pow_ui(e.get_mpz_t(), e.get_mpz_t(), dd);
        e = (e - 1) / 2;
        for (;;) {
            PPoly a(deg(g), 0);
            for (auto& c : a) c = rng() % F.p;
            trim(a);
            if (deg(a) < 1) continue;
            PPoly t = p_powmod(F, a, e, g);
            if (t.empty()) continue;
            t[0] = F.sub(t[0], 1);
            trim(t);
            PPoly w = p_gcd(F, t, g);
            if (deg(w) > 0 && deg(w) < deg(g)) {
                PPoly q, r;
                p_divmod(F, g, w, q, r);
                edf(w, dd);
                edf(p_monic(F, q), dd);
                return;
            }
        }
    };
    for (auto& [g, dd] : ddf) edf(p_monic(F, g), dd);
    std::sort(out.begin(), out.end());
    return out;
}

// ---- Z[x] ----

inline ZPoly z_mul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline ZPoly z_sub(ZPoly a, const ZPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

inline Integer z_content(const ZPoly& f)
{
    Integer c(0);
    for (const Integer& a : f) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
    return c;
}

// Content removed and leading coefficient made positive.
inline ZPoly z_primitive(ZPoly f)
{
    trim(f);
    if (f.empty()) return f;
    Integer c = z_content(f);
    if (f.back() < 0) c = -c;
    for (Integer& a : f) a /= c;
    return f;
}

inline std::optional<ZPoly> z_divexact(const ZPoly& f, const ZPoly& g)
{
    if (g.empty()) throw std::invalid_argument("upoly: division by zero");
    ZPoly r = f, q(f.size() >= g.size() ? f.size() - g.size() + 1 : 1, Integer(0));
    while (deg(r) >= deg(g)) {
        int d = deg(r) - deg(g);
        Integer c, rem;
        mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), g.back().get_mpz_t());
        if (rem != 0) return std::nullopt;
        q[d] = c;
        for (std::size_t i = 0; i < g.size(); ++i) r[d + i] -= c * g[i];
        trim(r);
    }
    if (!r.empty()) return std::nullopt;
    trim(q);
    return q;
}

inline Integer z_isqrt_ceil(const Integer& n)
{
    if (n <= 0) return Integer(0);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) r += 1;
    return r;
}

// C(n, n/2) * ceil(||f||_2): any factor's max-norm stays below this.
inline Integer z_mignotte(const ZPoly& f)
{
    Integer bin;
    mpz_bin_uiui(bin.get_mpz_t(), deg(f), deg(f) / 2);
    Integer s(0);
    for (const Integer& c : f) s += c * c;
    return bin * z_isqrt_ceil(s);
}

inline Integer z_symmetric_mod(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r * 2 > m) r -= m;
    return r;
}

inline void z_mod_coeffs(ZPoly& f, const Integer& m)
{
    for (Integer& c : f) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    trim(f);
}

inline ZPoly z_symmetric(ZPoly f, const Integer& m)
{
    for (Integer& c : f) c = z_symmetric_mod(c, m);
    trim(f);
    return f;
}

// f = q*g + r in (Z/m)[x]; lc(g) must be a unit mod m (g monic here).
inline void z_divmod_mod(const ZPoly& f, const ZPoly& g, const Integer& m, ZPoly& q, ZPoly& r)
{
    if (g.empty() || g.back() != 1)
        throw std::logic_error("upoly: modulus division expects a monic divisor");
    r = f;
    z_mod_coeffs(r, m);
    q.assign(r.size() >= g.size() ? r.size() - g.size() + 1 : 1, Integer(0));
    while (deg(r) >= deg(g)) {
        int d = deg(r) - deg(g);
        Integer c = r.back();
        q[d] = c;
        for (std::size_t i = 0; i < g.size(); ++i) {
            r[d + i] -= c * g[i];
            mpz_fdiv_r(r[d + i].get_mpz_t(), r[d + i].get_mpz_t(), m.get_mpz_t());
        }
        trim(r);
    }
    trim(q);
}

inline ZPoly z_mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m)
{
    ZPoly r = z_mul(a, b);
    z_mod_coeffs(r, m);
    return r;
}

inline ZPoly z_from_p(const PPoly& f)
{
    ZPoly r;
    r.reserve(f.size());
    for (auto c : f) r.emplace_back(static_cast<unsigned long>(c));
    trim(r);
    return r;
}

// Quadratic Hensel lifting of a balanced factor tree. Leaves are the mod-p
// irreducible factors; the leading coefficient of f rides on the leftmost
// leaf. On return the leaves multiply to f modulo the returned modulus,
// which exceeds 2*|lc(f)|*mignotte(f).
struct HenselNode {
    ZPoly g, h;  // left and right subtree products
    ZPoly s, t;  // s*g + t*h = 1 (mod current modulus)
    int left = -1, right = -1;
};

inline int hensel_build(std::vector<HenselNode>& nodes, const Fp& F,
                        const std::vector<PPoly>& factors, int lo, int hi)
{
    const int idx = static_cast<int>(nodes.size());
    nodes.push_back({});
    const int mid = (lo + hi) / 2;
    PPoly g = factors[lo];
    for (int i = lo + 1; i < mid; ++i) g = p_mul(F, g, factors[i]);
    PPoly h = factors[mid];
    for (int i = mid + 1; i < hi; ++i) h = p_mul(F, h, factors[i]);
    PPoly s, t;
    p_extgcd_coprime(F, g, h, s, t);
    nodes[idx].g = z_from_p(g);
    nodes[idx].h = z_from_p(h);
    nodes[idx].s = z_from_p(s);
    nodes[idx].t = z_from_p(t);
    if (mid - lo >= 2) nodes[idx].left = hensel_build(nodes, F, factors, lo, mid);
    if (hi - mid >= 2) nodes[idx].right = hensel_build(nodes, F, factors, mid, hi);
    return idx;
}

inline void hensel_step(HenselNode& n, const ZPoly& f, const Integer& m)
{
    const Integer m2 = m * m;
    // factor lift
    ZPoly e = z_sub(f, z_mul(n.g, n.h));
    for (Integer& c : e) c /= m;
    z_mod_coeffs(e, m);
    ZPoly q, r;
    z_divmod_mod(z_mul(n.s, e), n.h, m, q, r);
    ZPoly tau = z_mul(n.t, e);
    {
        ZPoly qg = z_mul(q, n.g);
        if (tau.size() < qg.size()) tau.resize(qg.size(), Integer(0));
        for (std::size_t i = 0; i < qg.size(); ++i) tau[i] += qg[i];
        z_mod_coeffs(tau, m);
    }
    for (Integer& c : tau) c *= m;
    for (Integer& c : r) c *= m;
    {
        if (n.g.size() < tau.size()) n.g.resize(tau.size(), Integer(0));
        for (std::size_t i = 0; i < tau.size(); ++i) n.g[i] += tau[i];
        z_mod_coeffs(n.g, m2);
        if (n.h.size() < r.size()) n.h.resize(r.size(), Integer(0));
        for (std::size_t i = 0; i < r.size(); ++i) n.h[i] += r[i];
        z_mod_coeffs(n.h, m2);
    }
    // Bezout lift
    ZPoly ep{Integer(1)};
    ep = z_sub(ep, z_mul(n.s, n.g));
    ep = z_sub(ep, z_mul(n.t, n.h));
    for (Integer& c : ep) c /= m;
    z_mod_coeffs(ep, m);
    ZPoly q2, r2;
    z_divmod_mod(z_mul(n.s, ep), n.h, m, q2, r2);
    ZPoly tau2 = z_mul(n.t, ep);
    {
        ZPoly qg = z_mul(q2, n.g);
        if (tau2.size() < qg.size()) tau2.resize(qg.size(), Integer(0));
        for (std::size_t i = 0; i < qg.size(); ++i) tau2[i] += qg[i];
        z_mod_coeffs(tau2, m);
    }
    for (Integer& c : r2) c *= m;
    for (Integer& c : tau2) c *= m;
    if (n.s.size() < r2.size()) n.s.resize(r2.size(), Integer(0));
    for (std::size_t i = 0; i < r2.size(); ++i) n.s[i] += r2[i];
    z_mod_coeffs(n.s, m2);
    if (n.t.size() < tau2.size()) n.t.resize(tau2.size(), Integer(0));
    for (std::size_t i = 0; i < tau2.size(); ++i) n.t[i] += tau2[i];
    z_mod_coeffs(n.t, m2);
}

inline void hensel_lift_rec(std::vector<HenselNode>& nodes, int idx, const ZPoly& target,
                            const Integer& m)
{
    hensel_step(nodes[idx], target, m);
    if (nodes[idx].left >= 0) hensel_lift_rec(nodes, nodes[idx].left, nodes[idx].g, m);
    if (nodes[idx].right >= 0) hensel_lift_rec(nodes, nodes[idx].right, nodes[idx].h, m);
}

inline void hensel_collect(const std::vector<HenselNode>& nodes, int idx,
                           std::vector<ZPoly>& out)
{
    const HenselNode& n = nodes[idx];
    if (n.left < 0) out.push_back(n.g);
    else hensel_collect(nodes, n.left, out);
    if (n.right < 0) out.push_back(n.h);
    else hensel_collect(nodes, n.right, out);
}

inline std::pair<std::vector<ZPoly>, Integer> hensel_lift(const ZPoly& f,
                                                          const std::vector<PPoly>& factors,
                                                          const Fp& F)
{
    Integer lc = f.back();
    if (lc < 0) throw std::logic_error("upoly: hensel expects positive leading coefficient");
    Integer target = 2 * lc * z_mignotte(f);

    std::vector<PPoly> adj = factors;
    std::uint64_t lcp = mpz_fdiv_ui(lc.get_mpz_t(), F.p);
    for (auto& c : adj[0]) c = F.mul(c, lcp);

    std::vector<HenselNode> nodes;
    hensel_build(nodes, F, adj, 0, static_cast<int>(adj.size()));

    Integer m(static_cast<unsigned long>(F.p));
    while (m <= target) {
        hensel_lift_rec(nodes, 0, f, m);
        m = m * m;
    }
    std::vector<ZPoly> lifted;
    hensel_collect(nodes, 0, lifted);
    return {std::move(lifted), std::move(m)};
}

// Zassenhaus subset recombination; input primitive squarefree with lc > 0.
inline std::vector<ZPoly> zassenhaus_recombine(ZPoly fstar, std::vector<ZPoly> lifted,
                                               const Integer& m)
{
    std::vector<ZPoly> result;
    std::vector<int> T(lifted.size());
    for (std::size_t i = 0; i < T.size(); ++i) T[i] = static_cast<int>(i);

    auto const_term = [](const ZPoly& f) { return f.empty() ? Integer(0) : f[0]; };

    auto next_combination = [](std::vector<int>& idx, int n) {
        int s = static_cast<int>(idx.size());
        int i = s - 1;
        while (i >= 0 && idx[i] == n - s + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };

    int s = 1;
    while (2 * s <= static_cast<int>(T.size())) {
        bool found = false;
        const int n = static_cast<int>(T.size());
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        do {
            bool has_lc = false;
            for (int k = 0; k < s; ++k)
                if (T[idx[k]] == 0) has_lc = true;
            Integer lc_mult = has_lc ? Integer(1) : fstar.back();

            // cheap constant-term test before the full product
            Integer c_prod = lc_mult;
            for (int k = 0; k < s; ++k) c_prod *= const_term(lifted[T[idx[k]]]);
            c_prod = z_symmetric_mod(c_prod, m);
            if (c_prod != 0) {
                Integer target = fstar.back() * const_term(fstar);
                if (target % c_prod != 0) continue;
            }

            ZPoly g{lc_mult};
            for (int k = 0; k < s; ++k) g = z_mul_mod(g, lifted[T[idx[k]]], m);
            g = z_primitive(z_symmetric(std::move(g), m));
            if (g.empty()) continue;
            auto q = z_divexact(fstar, g);
            if (!q) continue;

            result.push_back(g);
            fstar = z_primitive(std::move(*q));
            for (int k = s - 1; k >= 0; --k) T.erase(T.begin() + idx[k]);
            found = true;
            break;
        } while (next_combination(idx, n));
        if (found) s = 1;
        else ++s;
    }
    if (deg(fstar) > 0) result.push_back(std::move(fstar));
    std::sort(result.begin(), result.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return result;
}

inline bool is_prime_u64(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Irreducible factors of a primitive squarefree f with lc > 0, deg >= 1.
inline std::vector<ZPoly> z_factor_squarefree(const ZPoly& f)
{
    if (deg(f) == 1) return {f};

    std::mt19937_64 rng(0x5eedf00dULL);
    std::uint64_t best_p = 0;
    std::vector<PPoly> best_factors;
    int tried = 0;
    for (std::uint64_t p = 8191; tried < 3; ++p) {
        if (!is_prime_u64(p)) continue;
        Fp F{p};
        if (mpz_fdiv_ui(f.back().get_mpz_t(), p) == 0) continue;
        PPoly fp;
        fp.reserve(f.size());
        for (const Integer& c : f) fp.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
        trim(fp);
        if (deg(fp) != deg(f)) continue;
        if (deg(p_gcd(F, fp, p_derivative(F, fp))) != 0) continue;
        ++tried;
        auto factors = p_factor_squarefree(F, p_monic(F, fp), rng);
        if (factors.size() <= 1) return {f};  // irreducible over Z/p, hence over Q
        if (best_factors.empty() || factors.size() < best_factors.size()) {
            best_factors = std::move(factors);
            best_p = p;
        }
    }
    if (best_factors.size() > 24)
        throw std::runtime_error("upoly: too many modular factors for recombination");
    auto [lifted, m] = hensel_lift(f, best_factors, Fp{best_p});
    return zassenhaus_recombine(f, std::move(lifted), m);
}

}  // namespace updetail

// ---- Polynomial-level API ----

// The single variable occurring in p, nullopt for constants.
inline std::optional<int> univariate_variable(const Polynomial& p)
{
    std::vector<int> sup = p.support();
    if (sup.empty()) return std::nullopt;
    if (sup.size() > 1)
        throw std::invalid_argument("expected a univariate polynomial");
    return sup[0];
}

inline updetail::QPoly to_dense(const Polynomial& p, int var)
{
    updetail::QPoly f(p.degree_in(var) + 1, Rational(0));
    for (const Term& t : p.terms()) {
        if (t.mon.degree() != t.mon[var])
            throw std::invalid_argument("expected a univariate polynomial");
        f[t.mon[var]] += t.coef;
    }
    updetail::trim(f);
    return f;
}

inline Polynomial from_dense(const UniversePtr& u, int var, const updetail::QPoly& f)
{
    std::vector<Term> ts;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0)
            ts.push_back({Monomial::variable(static_cast<int>(u->size()), var,
                                             static_cast<Monomial::Exp>(i)),
                          f[i]});
    return Polynomial::from_terms(u, std::move(ts));
}

// Pairwise-coprime monic squarefree factors with multiplicities; the product
// reproduces p up to a rational constant.
inline std::vector<std::pair<Polynomial, int>> squarefree_decompose(const Polynomial& p)
{
    if (p.is_zero()) throw std::invalid_argument("squarefree_decompose: zero polynomial");
    auto var = univariate_variable(p);
    if (!var) return {};
    auto parts = updetail::q_squarefree(to_dense(p, *var));
    std::vector<std::pair<Polynomial, int>> out;
    for (auto& [f, mult] : parts) out.emplace_back(from_dense(p.universe(), *var, f), mult);
    return out;
}

struct UnivariateFactors {
    Rational constant;
    std::vector<std::pair<Polynomial, int>> factors;  // monic irreducible over Q

    Polynomial expanded(const UniversePtr& u) const
    {
        Polynomial r = Polynomial::constant(u, constant);
        for (const auto& [f, m] : factors) r = r * f.pow(m);
        return r;
    }
};

// Monic irreducible factors over Q with multiplicities and the leading
// constant; the product reproduces p exactly.
inline UnivariateFactors factor_univariate(const Polynomial& p)
{
    using namespace updetail;
    if (p.is_zero()) throw std::invalid_argument("factor_univariate: zero polynomial");
    auto var = univariate_variable(p);
    if (!var) return {p.constant_value(), {}};

    QPoly f = to_dense(p, *var);
    UnivariateFactors out;
    out.constant = f.back();

    for (auto& [part, mult] : q_squarefree(f)) {
        // monic over Q -> primitive over Z with positive lead
        Integer den(1);
        for (const Rational& c : part)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        ZPoly zf;
        zf.reserve(part.size());
        for (const Rational& c : part) {
            Rational scaled = c * Rational(den);
            zf.push_back(scaled.get_num());
        }
        zf = z_primitive(std::move(zf));
        for (const ZPoly& zfac : z_factor_squarefree(zf)) {
            QPoly qf;
            qf.reserve(zfac.size());
            Rational inv = make_rational(Integer(1), zfac.back());
            for (const Integer& c : zfac) qf.push_back(Rational(c) * inv);
            out.factors.emplace_back(from_dense(p.universe(), *var, qf), mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.total_degree() != b.first.total_degree())
            return a.first.total_degree() < b.first.total_degree();
        return a.first.str() < b.first.str();
    });
    return out;
}

}  // namespace bsato

#endif
