#pragma once

#include "sforge/bases.hpp"

#include <functional>
#include <map>

namespace sforge {

enum class AntipodeMethod { Takeuchi, MilnorMooreLeft, MilnorMooreRight, ClosedForm };

inline std::string method_str(AntipodeMethod m) {
    switch (m) {
        case AntipodeMethod::Takeuchi: return "takeuchi";
        case AntipodeMethod::MilnorMooreLeft: return "mm-left";
        case AntipodeMethod::MilnorMooreRight: return "mm-right";
        case AntipodeMethod::ClosedForm: return "closed";
    }
    return "?";
}

inline AntipodeMethod parse_method(std::string_view s) {
    if (s == "takeuchi") return AntipodeMethod::Takeuchi;
    if (s == "mm-left") return AntipodeMethod::MilnorMooreLeft;
    if (s == "mm-right") return AntipodeMethod::MilnorMooreRight;
    if (s == "closed") return AntipodeMethod::ClosedForm;
    throw std::invalid_argument("unknown antipode method '" + std::string(s) + "'");
}

inline void require_connected(const Model& h) {
    if (!h.flags().connected || !h.flags().hopf || h.dim(0) != 1)
        throw UnsupportedStructure(h.name() + " is not a connected Hopf monoid");
}

// Σ_F (-1)^{l(F)} μ_F Δ_F over all compositions F of [n].
inline LinMap<Key> antipode_takeuchi(const Model& h, int n) {
    require_connected(h);
    auto comps = enumerate_compositions(n);
    return endomorphism(h, n, [&](const Vec& x) {
        Vec out;
        for (const auto& c : comps) {
            Vec t = mu_delta(h, SetDecomposition::from(c), x);
            out += c.length() % 2 ? Rational(-1) * t : t;
        }
        return out;
    });
}

// Milnor-Moore recursion from S * id = uε (left) or id * S = uε (right),
// memoized over degrees below n.
class MilnorMoore {
public:
    MilnorMoore(const Model& h, bool left) : h_(h), left_(left) { require_connected(h); }

    const LinMap<Key>& at(int n) {
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
        LinMap<Key> m;
        if (n == 0) {
            m = LinMap<Key>::identity(h_.basis(0));
        } else {
            for (int k = 0; k < n; ++k) at(k);
            const Mask full = full_mask(n);
            m = endomorphism(h_, n, [&](const Vec& x) {
                Vec out;
                for (Mask s = 0; s <= full; ++s) {
                    // the term with the full antipode on one side is the unknown
                    if (left_ ? s == full : s == 0) continue;
                    int a = popcount(s);
                    for (const auto& [xy, c] : delta(h_, n, s, x)) {
                        Vec u = left_ ? memo_.at(a).apply(Vec(xy.first)) : Vec(xy.first);
                        Vec v = left_ ? Vec(xy.second) : memo_.at(n - a).apply(Vec(xy.second));
                        out.add_scaled(mu(h_, n, s, u, v), -c);
                    }
                    if (s == full) break;
                }
                return out;
            });
        }
        return memo_.emplace(n, std::move(m)).first->second;
    }

private:
    const Model& h_;
    bool left_;
    std::map<int, LinMap<Key>> memo_;
};

// ---- closed forms ------------------------------------------------------------------------

// Antipode of G on H_g: Σ_{X ∈ L(g)} (-1)^{l(X)} a(g/X) H_{g|X}, with the
// raw term count (one per X) reported through terms.
inline Vec graph_antipode(int n, Key g, std::size_t* terms = nullptr) {
    SimpleGraph gr{n, g};
    Vec out;
    auto lat = contraction_lattice(gr);
    for (const auto& x : lat) {
        Rational c(acyclic_orientations(contract(gr, x)));
        out.push_raw(restrict_to_blocks(gr, x).edges, x.length() % 2 ? -c : c);
    }
    out.normalize();
    if (terms) *terms = lat.size();
    return out;
}

inline Vec closed_antipode(const Model& h, int n, Key k);

namespace detail {

inline Vec closed_antipode_dual(const DualModel& d, int n, Key k) {
    const Model& base = *d.base();
    Vec out;
    for (Key z : base.basis(n)) out.push_raw(z, closed_antipode(base, n, z).coeff(k));
    out.normalize();
    return out;
}

}  // namespace detail

// Registered cancellation-free formulas. Throws UnsupportedStructure for
// models without one.
inline Vec closed_antipode(const Model& h, int n, Key k) {
    require_connected(h);
    if (dynamic_cast<const ExpModel*>(&h)) return Vec(k, Rational(n % 2 ? -1 : 1));
    if (auto l = dynamic_cast<const LinearModel*>(&h)) {
        auto ord = key_order(n, k);
        std::reverse(ord.begin(), ord.end());
        Rational c = pow(l->q(), static_cast<long long>(n) * (n - 1) / 2);
        return Vec(order_key(ord), n % 2 ? -c : c);
    }
    if (dynamic_cast<const PartitionModel*>(&h)) {
        auto x = key_partition(n, k);
        Vec out;
        for (Key yk : h.basis(n)) {
            auto y = key_partition(n, yk);
            if (!refines(x, y)) continue;
            Rational c = factorial_quotient(x, y);
            out.push_raw(yk, y.length() % 2 ? -c : c);
        }
        out.normalize();
        return out;
    }
    if (dynamic_cast<const GraphModel*>(&h)) return graph_antipode(n, k);
    if (auto f = dynamic_cast<const FaceModel*>(&h)) {
        auto fc = key_composition(n, k);
        auto o = opp(fc);
        Rational w = pow(f->q(), distance(fc, o));
        Vec out;
        for (Key gk : h.basis(n)) {
            auto g = key_composition(n, gk);
            if (refines(o, g)) out.push_raw(gk, g.length() % 2 ? -w : w);
        }
        out.normalize();
        return out;
    }
    if (auto d = dynamic_cast<const DualModel*>(&h)) return detail::closed_antipode_dual(*d, n, k);
    if (auto v = dynamic_cast<const BasisView*>(&h)) {
        if (v->tag() == "Q") return q_antipode(q_family(*v->base()), n, k);
        if (v->tag() == "P") {
            auto d = std::dynamic_pointer_cast<const DualModel>(v->base());
            QFamily fam = q_family(*d->base());
            Vec out;
            for (Key z : h.basis(n)) out.push_raw(z, q_antipode(fam, n, z).coeff(k));
            out.normalize();
            return out;
        }
    }
    throw UnsupportedStructure("no closed antipode formula registered for " + h.name());
}

inline LinMap<Key> antipode(const Model& h, int n, AntipodeMethod method) {
    switch (method) {
        case AntipodeMethod::Takeuchi: return antipode_takeuchi(h, n);
        case AntipodeMethod::MilnorMooreLeft: return MilnorMoore(h, true).at(n);
        case AntipodeMethod::MilnorMooreRight: return MilnorMoore(h, false).at(n);
        case AntipodeMethod::ClosedForm: {
            require_connected(h);
            std::vector<Vec> cols;
            for (Key k : h.basis(n)) cols.push_back(closed_antipode(h, n, k));
            return LinMap<Key>(h.basis(n), h.basis(n), std::move(cols));
        }
    }
    throw std::invalid_argument("bad antipode method");
}

// ---- verification ----------------------------------------------------------------------------

struct AntipodeReport {
    int n = 0;
    long long cases = 0;
    std::vector<std::string> counterexamples;
    bool pass() const { return counterexamples.empty(); }
};

// Checks Σ μ_{S,T}(id ⊗ S)Δ_{S,T} = uε and Σ μ_{S,T}(S ⊗ id)Δ_{S,T} = uε on
// every basis element of degree n; candidate(m) gives S in degree m ≤ n.
inline AntipodeReport verify_antipode(const Model& h, int n, const std::function<LinMap<Key>(int)>& candidate) {
    require_connected(h);
    AntipodeReport r;
    r.n = n;
    std::vector<LinMap<Key>> s;
    for (int m = 0; m <= n; ++m) s.push_back(candidate(m));
    const Mask full = full_mask(n);
    const Vec u = h.unit();
    for (Key x : h.basis(n)) {
        for (int side = 0; side < 2; ++side) {
            Vec total;
            for (Mask m = 0; m <= full; ++m) {
                int a = popcount(m);
                for (const auto& [xy, c] : h.coproduct(n, m, x)) {
                    Vec l = side ? s[static_cast<std::size_t>(a)].apply(Vec(xy.first)) : Vec(xy.first);
                    Vec rr = side ? Vec(xy.second) : s[static_cast<std::size_t>(n - a)].apply(Vec(xy.second));
                    total.add_scaled(mu(h, n, m, l, rr), c);
                }
                if (m == full) break;
            }
            Vec expect = n == 0 ? h.counit(x) * u : Vec();
            ++r.cases;
            if (total != expect && r.counterexamples.size() < 20)
                r.counterexamples.push_back(std::string(side ? "S*id" : "id*S") + " on " + h.key_str(n, x) + ": " + vec_str(h, n, total));
        }
    }
    return r;
}

}  // namespace sforge
