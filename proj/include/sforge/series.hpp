#pragma once

#include "sforge/axioms.hpp"
#include "sforge/tits.hpp"

#include <random>

namespace sforge {

// A series truncated at nmax: one S_n-invariant component per degree.
class Series {
public:
    Series(const Model& h, int nmax) : h_(&h), comps_(static_cast<std::size_t>(nmax) + 1) {
        if (nmax < 0) throw std::invalid_argument("series: negative truncation degree");
    }
    Series(const Model& h, std::vector<Vec> comps) : h_(&h), comps_(std::move(comps)) {
        if (comps_.empty()) throw std::invalid_argument("series: no components");
    }
    template <class Fn>
    static Series from(const Model& h, int nmax, Fn&& fn) {
        Series s(h, nmax);
        for (int n = 0; n <= nmax; ++n) s[n] = fn(n);
        return s;
    }
    static Series unit(const Model& h, int nmax) {
        Series s(h, nmax);
        s[0] = h.unit();
        return s;
    }

    const Model& model() const { return *h_; }
    int nmax() const { return static_cast<int>(comps_.size()) - 1; }
    const Vec& operator[](int n) const { return comps_.at(static_cast<std::size_t>(n)); }
    Vec& operator[](int n) { return comps_.at(static_cast<std::size_t>(n)); }
    const std::vector<Vec>& components() const { return comps_; }

    friend Series operator+(Series a, const Series& b) {
        a.require_compatible(b);
        for (int n = 0; n <= a.nmax(); ++n) a[n] += b[n];
        return a;
    }
    friend Series operator-(Series a, const Series& b) {
        a.require_compatible(b);
        for (int n = 0; n <= a.nmax(); ++n) a[n] -= b[n];
        return a;
    }
    friend Series operator*(const Rational& c, Series a) {
        for (auto& v : a.comps_) v *= c;
        return a;
    }
    friend bool operator==(const Series& a, const Series& b) { return a.h_ == b.h_ && a.comps_ == b.comps_; }

    void require_compatible(const Series& b) const {
        if (h_ != b.h_ && h_->name() != b.h_->name()) throw std::invalid_argument("series: model mismatch");
        if (nmax() != b.nmax()) throw std::invalid_argument("series: truncation mismatch");
    }

private:
    const Model* h_;
    std::vector<Vec> comps_;
};

// ---- products -------------------------------------------------------------------------------

inline Series cauchy(const Series& s, const Series& t) {
    s.require_compatible(t);
    const Model& h = s.model();
    Series out(h, s.nmax());
    for (int n = 0; n <= s.nmax(); ++n) {
        const Mask full = full_mask(n);
        for (Mask m = 0;; ++m) {
            int a = popcount(m);
            out[n] += mu(h, n, m, s[a], t[n - a]);
            if (m == full) break;
        }
    }
    return out;
}

// s^{*k}, k ≥ 0.
inline Series cauchy_power(const Series& s, int k) {
    Series r = Series::unit(s.model(), s.nmax());
    for (int i = 0; i < k; ++i) r = cauchy(r, s);
    return r;
}

// Components c^n s_n: the Hadamard product with e(c) read back in the same species.
inline Series rescale(const Series& s, const Rational& c) {
    Series out = s;
    Rational p(1);
    for (int n = 0; n <= s.nmax(); ++n, p *= c) out[n] *= p;
    return out;
}

inline Series hadamard(const HadamardModel& had, const Series& a, const Series& b) {
    if (a.nmax() != b.nmax()) throw std::invalid_argument("hadamard: truncation mismatch");
    Series out(had, a.nmax());
    for (int n = 0; n <= a.nmax(); ++n) {
        for (const auto& [x, cx] : a[n])
            for (const auto& [y, cy] : b[n]) out[n].push_raw(had.pack(x, y), cx * cy);
        out[n].normalize();
    }
    return out;
}

// ---- functional calculus ---------------------------------------------------------------------

namespace detail {

inline void require_vanishing(const Series& s, const char* what) {
    if (!s[0].empty()) throw std::invalid_argument(std::string(what) + ": series must vanish in degree 0");
}

inline void require_unital(const Series& t, const char* what) {
    if (t[0] != t.model().unit()) throw std::invalid_argument(std::string(what) + ": degree-0 component must be the unit");
}

// μ_F(s_F) for a composition F of [n].
inline Vec mu_on_series(const Series& s, const SetComposition& f) {
    TVec t(TKey{});
    for (Mask b : f.blocks) {
        const Vec& c = s[popcount(b)];
        TVec next;
        for (const auto& [tk, a] : t)
            for (const auto& [k, ck] : c) {
                TKey u = tk;
                u.push(k);
                next.push_raw(u, a * ck);
            }
        next.normalize();
        t = std::move(next);
        if (t.empty()) return {};
    }
    return higher_mu(s.model(), SetDecomposition::from(f), t);
}

}  // namespace detail

// a(s)_n = Σ_{F ⊨ [n]} a_{l(F)} μ_F(s_F), for s vanishing in degree 0.
inline Series functional_calculus(const std::function<Rational(int)>& a, const Series& s) {
    detail::require_vanishing(s, "functional calculus");
    const Model& h = s.model();
    Series out(h, s.nmax());
    std::vector<Rational> coeff;
    for (int k = 0; k <= s.nmax(); ++k) coeff.push_back(a(k));
    out[0] = coeff[0] * h.unit();
    for (int n = 1; n <= s.nmax(); ++n)
        for (const auto& f : enumerate_compositions(n)) {
            const Rational& c = coeff[static_cast<std::size_t>(f.length())];
            if (!c.is_zero()) out[n].add_scaled(detail::mu_on_series(s, f), c);
        }
    return out;
}

inline Series series_exp(const Series& s) {
    return functional_calculus([](int k) { return Rational(1) / factorial(k); }, s);
}

inline Series series_log(const Series& t) {
    detail::require_unital(t, "log");
    return functional_calculus([](int k) { return k == 0 ? Rational(0) : Rational(k % 2 ? 1 : -1, k); },
                               t - Series::unit(t.model(), t.nmax()));
}

// t^c = Σ_k binom(c, k) (t - u)^{*k}.
inline Series series_power(const Series& t, const Rational& c) {
    detail::require_unital(t, "power");
    return functional_calculus([&](int k) { return binomial(c, k); }, t - Series::unit(t.model(), t.nmax()));
}

// ---- predicates ------------------------------------------------------------------------------

// relabel(σ) s_n = s_n for random σ (all of S_n when n! ≤ samples).
inline bool is_invariant(const Series& s, int samples = 100, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    const Model& h = s.model();
    for (int n = 2; n <= s.nmax(); ++n) {
        Perm sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 0);
        bool exhaustive = factorial(n) <= Rational(samples);
        for (int i = 0; i < samples; ++i) {
            if (exhaustive) {
                if (i > 0 && !std::next_permutation(sigma.begin(), sigma.end())) break;
            } else {
                std::shuffle(sigma.begin(), sigma.end(), rng);
            }
            if (relabel(h, n, sigma, s[n]) != s[n]) return false;
        }
    }
    return true;
}

inline Vec2 tensor(const Vec& x, const Vec& y) {
    Vec2 out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) out.push_raw(KeyPair{a, b}, ca * cb);
    out.normalize();
    return out;
}

// Δ_{S,T}(x_n) = g_S ⊗ x_T + x_S ⊗ h_T for all S ⊔ T = [n], and ε(x_0) = 0.
inline bool is_gh_primitive(const Series& x, const Series& g, const Series& h) {
    const Model& m = x.model();
    Rational e;
    for (const auto& [k, c] : x[0]) e += c * m.counit(k);
    if (!e.is_zero()) return false;
    for (int n = 0; n <= x.nmax(); ++n) {
        const Mask full = full_mask(n);
        for (Mask s = 0;; ++s) {
            int a = popcount(s);
            Vec2 rhs = tensor(g[a], x[n - a]);
            rhs += tensor(x[a], h[n - a]);
            if (delta(m, n, s, x[n]) != rhs) return false;
            if (s == full) break;
        }
    }
    return true;
}

inline bool is_group_like(const Series& g) {
    const Model& m = g.model();
    Rational e;
    for (const auto& [k, c] : g[0]) e += c * m.counit(k);
    if (!e.is_one()) return false;
    for (int n = 0; n <= g.nmax(); ++n) {
        const Mask full = full_mask(n);
        for (Mask s = 0;; ++s) {
            int a = popcount(s);
            if (delta(m, n, s, g[n]) != tensor(g[a], g[n - a])) return false;
            if (s == full) break;
        }
    }
    return true;
}

// (u, u)-primitive; on connected bimonoids this is the usual notion.
inline bool is_primitive(const Series& x) {
    Series u = Series::unit(x.model(), x.nmax());
    return is_gh_primitive(x, u, u);
}

inline bool is_exponential(const Series& e) {
    const Model& m = e.model();
    if (e[0] != m.unit()) return false;
    for (int n = 1; n <= e.nmax(); ++n) {
        const Mask full = full_mask(n);
        for (Mask s = 0;; ++s) {
            int a = popcount(s);
            if (mu(m, n, s, e[a], e[n - a]) != e[n]) return false;
            if (s == full) break;
        }
    }
    return true;
}

// ---- distinguished series -----------------------------------------------------------------

// uni_n = H_{(I)} in Σ, with uni_0 the empty composition.
inline Series uni(const Model& sigma, int nmax) {
    if (!dynamic_cast<const FaceModel*>(&sigma)) throw UnsupportedStructure("uni is a series of Σ, not " + sigma.name());
    return Series::from(sigma, nmax, [](int) { return Vec(Key(0)); });
}

inline Series euler_series(const Model& sigma, int nmax) {
    if (!dynamic_cast<const FaceModel*>(&sigma)) throw UnsupportedStructure("euler is a series of Σ, not " + sigma.name());
    return Series::from(sigma, nmax, [](int n) { return euler1(n).v; });
}

// e(c)_n = c^n H_I in E.
inline Series exp_series(const Model& e, int nmax, const Rational& c) {
    if (!dynamic_cast<const ExpModel*>(&e)) throw UnsupportedStructure("e(c) is a series of E, not " + e.name());
    return rescale(Series::from(e, nmax, [](int) { return Vec(Key(0)); }), c);
}

// g(c)_n = c^n/n! Σ_ℓ H_ℓ in L.
inline Series linear_group_like(const Model& l, int nmax, const Rational& c) {
    if (!dynamic_cast<const LinearModel*>(&l)) throw UnsupportedStructure("g(c) is a series of L, not " + l.name());
    return Series::from(l, nmax, [&](int n) {
        Vec v;
        for (Key k : l.basis(n)) v.push_raw(k, pow(c, n) / factorial(n));
        v.normalize();
        return v;
    });
}

// Σ_x M_x over the basis of a dual model.
inline Series dual_distinguished(const Model& d, int nmax) {
    if (!dynamic_cast<const DualModel*>(&d)) throw UnsupportedStructure(d.name() + " is not a dual model");
    return Series::from(d, nmax, [&](int n) {
        Vec v;
        for (Key k : d.basis(n)) v.push_raw(k, Rational(1));
        v.normalize();
        return v;
    });
}

// A group-like series with every component nonzero where one is known:
// uni in Σ_q, the one-block partition in Π, the complete graph in G,
// H_I in E, g(1) in L_q, and the distinguished series of a dual.
inline Series standard_group_like(const Model& h, int nmax) {
    if (dynamic_cast<const FaceModel*>(&h)) return uni(h, nmax);
    if (dynamic_cast<const ExpModel*>(&h)) return exp_series(h, nmax, Rational(1));
    if (dynamic_cast<const LinearModel*>(&h)) {
        if (!h.q().is_one()) throw UnsupportedStructure("no standard group-like series registered for " + h.name());
        return linear_group_like(h, nmax, Rational(1));
    }
    if (dynamic_cast<const PartitionModel*>(&h))
        return Series::from(h, nmax, [](int n) { return Vec(partition_key(SetPartition{n, n ? std::vector<Mask>{full_mask(n)} : std::vector<Mask>{}})); });
    if (dynamic_cast<const GraphModel*>(&h))
        return Series::from(h, nmax, [](int n) { return Vec(n < 2 ? Key(0) : full_mask(n * (n - 1) / 2)); });
    if (dynamic_cast<const DualModel*>(&h) && h.flags().set_theoretic) return dual_distinguished(h, nmax);
    throw UnsupportedStructure("no standard group-like series registered for " + h.name());
}

// Σ_σ σ·x for x in h[n].
inline Vec symmetrize(const Model& h, int n, const Vec& x) {
    Perm sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    Vec out;
    do out += relabel(h, n, sigma, x);
    while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

// Primitive series concentrated in one degree: symmetrized basis vectors
// of P(h)[n], n = 1..nmax, dropping those that symmetrize to zero.
inline std::vector<Series> primitive_witnesses(const Model& h, int nmax) {
    std::vector<Series> out;
    for (int n = 1; n <= nmax; ++n)
        for (const auto& p : primitive_part(h, n)) {
            Vec v = symmetrize(h, n, p);
            if (v.empty()) continue;
            Series s(h, nmax);
            s[n] = std::move(v);
            out.push_back(std::move(s));
        }
    return out;
}

// ---- exp/log bijection -------------------------------------------------------------------

struct SeriesReport {
    std::vector<AxiomReport> checks;
    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const AxiomReport& r) { return r.pass(); });
    }
};

// exp of primitive witnesses (and of their sum) is group-like and log
// returns them; log of group-like witnesses is primitive and exp returns them.
inline SeriesReport exp_log_bijection_check(const Model& h, int nmax) {
    if (!h.flags().connected) throw UnsupportedStructure(h.name() + " is not connected");
    SeriesReport rep;
    AxiomReport to_gl("exp-lands-group-like", "e:calc-exp", nmax);
    AxiomReport round1("log-exp-round-trip", "e:calc-log", nmax);
    AxiomReport to_pr("log-lands-primitive", "e:primser1", nmax);
    AxiomReport round2("exp-log-round-trip", "e:calc-exp", nmax);

    auto prims = primitive_witnesses(h, nmax);
    if (!prims.empty()) {
        Series total(h, nmax);
        Rational c(1);
        for (const auto& p : prims) {
            total = total + c * p;
            c = c + Rational(1, 2);
        }
        prims.push_back(total);
    }
    for (std::size_t i = 0; i < prims.size(); ++i) {
        Series g = series_exp(prims[i]);
        ++to_gl.cases;
        if (!is_group_like(g)) to_gl.fail("primitive witness " + std::to_string(i));
        ++round1.cases;
        if (series_log(g) != prims[i]) round1.fail("primitive witness " + std::to_string(i));
    }

    std::vector<Series> gls;
    try {
        Series g = standard_group_like(h, nmax);
        gls.push_back(g);
        for (const Rational& c : {Rational(1, 2), Rational(-1), Rational(2)}) gls.push_back(series_power(g, c));
    } catch (const UnsupportedStructure&) {
    }
    for (const auto& p : prims) gls.push_back(series_exp(p));
    for (std::size_t i = 0; i < gls.size(); ++i) {
        Series x = series_log(gls[i]);
        ++to_pr.cases;
        if (!is_primitive(x)) to_pr.fail("group-like witness " + std::to_string(i));
        ++round2.cases;
        if (series_exp(x) != gls[i]) round2.fail("group-like witness " + std::to_string(i));
    }
    rep.checks = {to_gl, round1, to_pr, round2};
    return rep;
}

// Δ_{S,T} φ_n = (φ_S ⊗ φ_T) Δ_{S,T} at every degree.
inline bool is_comonoid_morphism(const OpSeries& phi) {
    const Model& h = phi.model();
    for (int n = 0; n <= phi.nmax(); ++n) {
        const Mask full = full_mask(n);
        for (Key x : h.basis(n))
            for (Mask s = 0;; ++s) {
                int a = popcount(s);
                Vec2 lhs = delta(h, n, s, phi[n].apply(Vec(x)));
                Vec2 rhs;
                for (const auto& [yz, c] : h.coproduct(n, s, x)) {
                    Vec2 t = tensor(phi[a].apply(Vec(yz.first)), phi[n - a].apply(Vec(yz.second)));
                    rhs.add_scaled(t, c);
                }
                if (lhs != rhs) return false;
                if (s == full) break;
            }
    }
    return true;
}

}  // namespace sforge
