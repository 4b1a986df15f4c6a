// Orchestration of the four-step computation: annihilator in D<t,dt>[u,v],
// contraction to Q[x,s], elimination to Q[s] for the global ideal, primary
// decomposition for the local ideals, and the constructible stratification on
// which the local ideal is constant. Stages are computed lazily, timed, and
// checked against an optional wall-clock deadline.
#ifndef BSATO_PIPELINE_HPP
#define BSATO_PIPELINE_HPP

#include <chrono>

#include "primary.hpp"
#include "weyl.hpp"

namespace bsato {

struct Problem {
    UniversePtr xuni;           // Q[x], user-visible names
    std::vector<Polynomial> f;  // over xuni, all nonzero
    Polynomial F;               // f_1 ... f_p
    int n = 0, p = 0;

    static Problem make(UniversePtr xuni, std::vector<Polynomial> f)
    {
        Problem prob;
        prob.xuni = std::move(xuni);
        prob.n = static_cast<int>(prob.xuni->size());
        prob.p = static_cast<int>(f.size());
        if (prob.n < 1) throw std::invalid_argument("problem: need at least one variable");
        if (prob.p < 1) throw std::invalid_argument("problem: need at least one polynomial");
        prob.F = Polynomial::constant(prob.xuni, Rational(1));
        for (const Polynomial& fj : f) {
            require_same_universe(prob.xuni, fj.universe(), "problem");
            if (fj.is_zero()) throw std::invalid_argument("problem: zero polynomial in the tuple");
            prob.F = prob.F * fj;
        }
        prob.f = std::move(f);
        return prob;
    }
};

class TimeoutError : public std::runtime_error {
public:
    TimeoutError(const std::string& stage, const std::string& next)
        : std::runtime_error("timeout after stage '" + stage + "' (next: " + next + ")"),
          stage_reached_(stage)
    {}
    const std::string& stage_reached() const { return stage_reached_; }

private:
    std::string stage_reached_;
};

struct Stratum {
    std::vector<int> sigma;                              // 0-based component indices
    std::vector<Polynomial> closed_conditions;           // over Q[x]
    std::vector<std::vector<Polynomial>> open_conditions;  // per component outside sigma
    IdealHandle bideal;                                  // over Q[s]
    bool witness_found = false;
    std::vector<Rational> witness;

    bool contains(const std::vector<Rational>& a) const
    {
        std::map<int, Rational> at;
        for (std::size_t i = 0; i < a.size(); ++i) at[static_cast<int>(i)] = a[i];
        for (const Polynomial& g : closed_conditions)
            if (!g.substituted(at).is_zero()) return false;
        for (const auto& open : open_conditions) {
            bool some_nonzero = false;
            for (const Polynomial& g : open)
                if (!g.substituted(at).is_zero()) { some_nonzero = true; break; }
            if (!some_nonzero) return false;
        }
        return true;
    }
};

struct CheckReport {
    enum class Verdict { Equal, NotEqual, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    bool retained_equal = false;   // cap over all retained strata equals global
    bool certified_equal = false;  // cap over witness-certified strata equals global
    int strata_total = 0;
    int strata_certified = 0;
    std::string detail;
};

struct BsatoResult {
    IdealHandle I2;
    std::vector<PrimaryComponent> components;
    IdealHandle global;
    std::vector<Stratum> strata;
};

struct PipelineOptions {
    double timeout_seconds = 0;  // 0: no deadline
};

// sigma_a: the components whose x-contraction vanishes at a.
inline std::vector<int> select_sigma(const std::vector<PrimaryComponent>& components,
                                     const std::vector<Rational>& a)
{
    std::vector<int> sigma;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const IdealHandle& xp = components[i].x_part;
        if (a.size() != xp.universe()->size())
            throw std::invalid_argument("select_sigma: point arity does not match");
        std::map<int, Rational> at;
        for (std::size_t k = 0; k < a.size(); ++k) at[static_cast<int>(k)] = a[k];
        bool vanishes = true;
        for (const Polynomial& g : xp.generators())
            if (!g.substituted(at).is_zero()) { vanishes = false; break; }
        if (vanishes) sigma.push_back(static_cast<int>(i));
    }
    return sigma;
}

class Pipeline {
public:
    explicit Pipeline(Problem prob, PipelineOptions opts = {})
        : prob_(std::move(prob)), opts_(opts), start_(Clock::now())
    {
        wuni_ = VarUniverse::weyl(names_of(prob_.xuni), prob_.p);
        std::vector<int> up(prob_.n);
        const auto& xs = wuni_->indices_of(VarClass::X);
        for (int i = 0; i < prob_.n; ++i) up[i] = xs[i];
        for (const Polynomial& fj : prob_.f) fw_.push_back(fj.mapped(wuni_, up));
    }

    const Problem& problem() const { return prob_; }
    const UniversePtr& weyl_universe() const { return wuni_; }
    const std::vector<Polynomial>& f_weyl() const { return fw_; }

    const AnnResult& ann()
    {
        if (!ann_) run_stage("annihilator", [&] { ann_ = ann_fs(fw_); });
        return *ann_;
    }

    const IdealHandle& I2()
    {
        if (!I2_) {
            ann();
            run_stage("contraction", [&] { I2_ = compute_I2(*ann_, fw_); });
        }
        return *I2_;
    }

    UniversePtr xs_universe() { return I2().universe(); }

    UniversePtr s_universe()
    {
        if (!suni_) {
            UniversePtr xs = xs_universe();
            suni_ = xs->restricted(xs->indices_of(VarClass::S));
        }
        return suni_;
    }

    const IdealHandle& global()
    {
        if (!global_) {
            I2();
            run_stage("elimination", [&] {
                global_ = eliminate(*I2_, I2_->universe()->indices_of(VarClass::X));
            });
        }
        return *global_;
    }

    const std::vector<PrimaryComponent>& components()
    {
        if (!components_) {
            I2();
            run_stage("decomposition", [&] { components_ = primary_decompose(*I2_); });
        }
        return *components_;
    }

    std::vector<int> sigma_at(const std::vector<Rational>& a)
    {
        if (static_cast<int>(a.size()) != prob_.n)
            throw std::invalid_argument("local: point arity does not match the variable count");
        return select_sigma(components(), a);
    }

    // (cap_{i in sigma} Y_i) cap Q[s]; the unit ideal when sigma is empty.
    IdealHandle local_from_sigma(const std::vector<int>& sigma)
    {
        const auto& comps = components();
        if (sigma.empty()) return IdealHandle::unit(s_universe());
        std::vector<IdealHandle> picked;
        for (int i : sigma) picked.push_back(comps[i].component);
        IdealHandle meet = intersect_all(picked, I2_->universe());
        IdealHandle b = eliminate(meet, meet.universe()->indices_of(VarClass::X));
        return b;
    }

    IdealHandle local(const std::vector<Rational>& a) { return local_from_sigma(sigma_at(a)); }

    const std::vector<Stratum>& strata()
    {
        if (!strata_) {
            components();
            run_stage("stratification", [&] { strata_ = build_strata(); });
        }
        return *strata_;
    }

    CheckReport check()
    {
        global();
        strata();
        CheckReport rep;
        rep.strata_total = static_cast<int>(strata_->size());
        std::vector<IdealHandle> retained, certified;
        for (const Stratum& st : *strata_) {
            retained.push_back(st.bideal);
            if (st.witness_found) {
                certified.push_back(st.bideal);
                ++rep.strata_certified;
            }
        }
        IdealHandle capAll = intersect_all(retained, s_universe());
        IdealHandle capCert = intersect_all(certified, s_universe());
        rep.retained_equal = equal(capAll, *global_);
        rep.certified_equal = equal(capCert, *global_);
        if (rep.retained_equal && rep.certified_equal) {
            rep.verdict = CheckReport::Verdict::Equal;
            rep.detail = "intersection of stratum ideals equals the global ideal";
        } else if (rep.strata_certified == rep.strata_total) {
            rep.verdict = CheckReport::Verdict::NotEqual;
            rep.detail = "all strata carry rational witnesses and the intersection differs";
        } else {
            rep.verdict = CheckReport::Verdict::Inconclusive;
            rep.detail = "some strata have no rational witness on the search grid";
        }
        return rep;
    }

    BsatoResult result()
    {
        BsatoResult r;
        r.I2 = I2();
        r.components = components();
        r.global = global();
        r.strata = strata();
        return r;
    }

    const std::vector<std::pair<std::string, double>>& timings() const { return timings_; }

private:
    using Clock = std::chrono::steady_clock;

    static std::vector<std::string> names_of(const UniversePtr& u)
    {
        std::vector<std::string> names;
        for (int i = 0; i < static_cast<int>(u->size()); ++i) names.push_back(u->name(i));
        return names;
    }

    template <class Fn>
    void run_stage(const char* name, Fn&& fn)
    {
        if (opts_.timeout_seconds > 0) {
            double elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
            if (elapsed > opts_.timeout_seconds) {
                std::string last = timings_.empty() ? "none" : timings_.back().first;
                throw TimeoutError(last, name);
            }
        }
        auto t0 = Clock::now();
        fn();
        timings_.emplace_back(name, std::chrono::duration<double>(Clock::now() - t0).count());
    }

    // Subsets of components are grouped by equal x-contraction: a subset
    // whose closed part meets a component outside it along the whole closed
    // part gives an empty stratum, so only unions of groups survive. Each
    // survivor gets its ideal and, when the search grid finds one, a rational
    // witness point.
    std::vector<Stratum> build_strata()
    {
        const auto& comps = *components_;
        const int r = static_cast<int>(comps.size());
        const UniversePtr& xu = comps.empty() ? prob_.xuni : comps[0].x_part.universe();

        // group components with equal x-part
        std::vector<int> group_of(r, -1);
        std::vector<std::vector<int>> groups;
        for (int i = 0; i < r; ++i) {
            for (std::size_t g = 0; g < groups.size(); ++g)
                if (equal(comps[groups[g][0]].x_part, comps[i].x_part)) {
                    group_of[i] = static_cast<int>(g);
                    break;
                }
            if (group_of[i] < 0) {
                group_of[i] = static_cast<int>(groups.size());
                groups.push_back({});
            }
            groups[group_of[i]].push_back(i);
        }
        const int k = static_cast<int>(groups.size());
        if (k > 16) throw std::runtime_error("stratify: too many distinct x-contractions");

        // witness search on the rational grid
        std::vector<Rational> coords;
        for (int v = -3; v <= 3; ++v) coords.emplace_back(v);
        for (int num : {-5, -3, -1, 1, 3, 5}) coords.push_back(make_rational(num, 2));
        for (int num : {-5, -4, -2, -1, 1, 2, 4, 5}) coords.push_back(make_rational(num, 3));

        std::map<std::vector<int>, std::vector<Rational>> witness_by_sigma;
        std::vector<Rational> point(prob_.n, Rational(0));
        std::function<void(int)> enumerate = [&](int pos) {
            if (pos == prob_.n) {
                std::vector<int> sigma;
                for (int g = 0; g < k; ++g) {
                    std::map<int, Rational> at;
                    for (int i = 0; i < prob_.n; ++i) at[i] = point[i];
                    bool vanish = true;
                    for (const Polynomial& gen : comps[groups[g][0]].x_part.generators())
                        if (!gen.substituted(at).is_zero()) { vanish = false; break; }
                    if (vanish)
                        for (int i : groups[g]) sigma.push_back(i);
                }
                std::sort(sigma.begin(), sigma.end());
                auto it = witness_by_sigma.find(sigma);
                if (it == witness_by_sigma.end()) witness_by_sigma.emplace(sigma, point);
                return;
            }
            for (const Rational& c : coords) {
                point[pos] = c;
                enumerate(pos + 1);
            }
        };
        enumerate(0);

        std::vector<Stratum> out;
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            std::vector<int> sigma;
            std::vector<Polynomial> closed;
            for (int g = 0; g < k; ++g)
                if (mask & (1u << g)) {
                    for (int i : groups[g]) sigma.push_back(i);
                    for (const Polynomial& gen : comps[groups[g][0]].x_part.canonical_basis())
                        closed.push_back(gen);
                }
            std::sort(sigma.begin(), sigma.end());

            IdealHandle C(xu, closed);
            if (!sigma.empty() && C.is_unit()) continue;  // closed part empty
            bool provably_empty = false;
            for (int g = 0; g < k && !provably_empty; ++g) {
                if (mask & (1u << g)) continue;
                if (sigma.empty()) break;  // zero ideal: whole space, never inside a proper V
                bool inside = true;
                for (const Polynomial& gen : comps[groups[g][0]].x_part.generators())
                    if (!radical_member(gen, C)) { inside = false; break; }
                if (inside) provably_empty = true;  // closed part lies in an excluded variety
            }
            if (provably_empty) continue;

            Stratum st;
            st.sigma = sigma;
            st.closed_conditions = std::move(closed);
            for (int g = 0; g < k; ++g)
                if (!(mask & (1u << g)))
                    st.open_conditions.push_back(comps[groups[g][0]].x_part.canonical_basis());
            st.bideal = local_from_sigma(sigma);
            auto it = witness_by_sigma.find(sigma);
            if (it != witness_by_sigma.end()) {
                st.witness_found = true;
                st.witness = it->second;
            }
            out.push_back(std::move(st));
        }
        std::sort(out.begin(), out.end(), [](const Stratum& a, const Stratum& b) {
            if (a.sigma.size() != b.sigma.size()) return a.sigma.size() < b.sigma.size();
            return a.sigma < b.sigma;
        });
        return out;
    }

    Problem prob_;
    PipelineOptions opts_;
    Clock::time_point start_;
    UniversePtr wuni_;
    std::vector<Polynomial> fw_;
    std::optional<AnnResult> ann_;
    std::optional<IdealHandle> I2_;
    std::optional<IdealHandle> global_;
    UniversePtr suni_;
    std::optional<std::vector<PrimaryComponent>> components_;
    std::optional<std::vector<Stratum>> strata_;
    std::vector<std::pair<std::string, double>> timings_;
};

inline IdealHandle global_bideal(const Problem& prob)
{
    Pipeline p(prob);
    return p.global();
}

inline IdealHandle local_bideal(const Problem& prob, const std::vector<Rational>& a)
{
    Pipeline p(prob);
    return p.local(a);
}

inline std::vector<Stratum> stratify(const Problem& prob)
{
    Pipeline p(prob);
    return p.strata();
}

// f(a) = 0 with every f_j(a) = 0 and the Jacobian of full rank p (p <= n).
inline bool smooth_common_zero(const Problem& prob, const std::vector<Rational>& a)
{
    if (static_cast<int>(a.size()) != prob.n || prob.p > prob.n) return false;
    std::map<int, Rational> at;
    for (int i = 0; i < prob.n; ++i) at[i] = a[i];
    for (const Polynomial& fj : prob.f)
        if (!fj.substituted(at).is_zero()) return false;

    std::vector<std::vector<Rational>> J(prob.p, std::vector<Rational>(prob.n));
    for (int j = 0; j < prob.p; ++j)
        for (int i = 0; i < prob.n; ++i)
            J[j][i] = prob.f[j].derivative(i).substituted(at).constant_value();
    int rank = 0;
    for (int col = 0; col < prob.n && rank < prob.p; ++col) {
        int piv = rank;
        while (piv < prob.p && J[piv][col] == 0) ++piv;
        if (piv == prob.p) continue;
        std::swap(J[piv], J[rank]);
        for (int rr = 0; rr < prob.p; ++rr) {
            if (rr == rank || J[rr][col] == 0) continue;
            Rational fct = J[rr][col] / J[rank][col];
            for (int cc = col; cc < prob.n; ++cc) J[rr][cc] -= fct * J[rank][cc];
        }
        ++rank;
    }
    return rank == prob.p;
}

}  // namespace bsato

#endif
