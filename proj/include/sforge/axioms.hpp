#pragma once

#include "sforge/species.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace sforge {

struct AxiomReport {
    std::string axiom;
    std::string anchor;
    int n = 0;
    long long cases = 0;
    long long failures = 0;
    bool skipped = false;
    std::vector<std::string> counterexamples;  // first few only

    AxiomReport() = default;
    AxiomReport(std::string name, std::string anchor_id, int degree)
        : axiom(std::move(name)), anchor(std::move(anchor_id)), n(degree) {}

    bool pass() const { return failures == 0; }
    void fail(std::string what) {
        ++failures;
        if (counterexamples.size() < kMaxListed) counterexamples.push_back(std::move(what));
    }
    static constexpr std::size_t kMaxListed = 20;
};

namespace detail {

inline std::string mask_str(Mask s) { return "{" + block_str(s) + "}"; }

// Basis tensor of F as text.
inline std::string tkey_str(const Model& h, const SetDecomposition& f, const TKey& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += " (x) ";
        s += h.key_str(popcount(f.blocks[i]), t[i]);
    }
    return s;
}

inline Vec2 tensor(const Vec& a, const Vec& b) {
    Vec2 out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) out.push_raw(KeyPair{x, y}, cx * cy);
    out.normalize();
    return out;
}

inline std::vector<Perm> sample_perms(int n, int samples, unsigned seed) {
    Perm id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> out;
    long long total = 1;
    for (int i = 2; i <= n; ++i) total *= i;
    if (samples < 0 || total <= samples) {
        Perm p = id;
        do out.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        return out;
    }
    std::mt19937 rng(seed);
    for (int i = 0; i < samples; ++i) {
        Perm p = id;
        std::shuffle(p.begin(), p.end(), rng);
        out.push_back(p);
    }
    return out;
}

// All decompositions of [n] into exactly k blocks (k^n of them).
inline std::vector<SetDecomposition> ordered_splits(int n, int k) { return enumerate_decompositions(n, k); }

}  // namespace detail

// ---- naturality ------------------------------------------------------------------

// samples < 0 means all of S_n.
inline AxiomReport check_naturality(const Model& h, int n, int samples = 100, unsigned seed = 1) {
    AxiomReport r{"naturality", "e:nat", n};
    const auto perms = detail::sample_perms(n, samples, seed);
    for (const auto& sigma : perms) {
        for (Key z : h.basis(n)) {
            // group action: relabel by sigma then by its inverse returns z
            ++r.cases;
            if (relabel(h, n, inverse_perm(sigma), h.relabel(n, sigma, z)) != Vec(z))
                r.fail("relabel is not an action on " + h.key_str(n, z));
        }
        for (Mask s = 0;; ++s) {
            Mask t = full_mask(n) & ~s, ss = apply_perm(sigma, s);
            int a = popcount(s);
            Perm ps = restrict_perm(sigma, s), pt = restrict_perm(sigma, t);
            for (Key x : h.basis(a))
                for (Key y : h.basis(n - a)) {
                    ++r.cases;
                    Vec lhs = relabel(h, n, sigma, h.product(n, s, x, y));
                    Vec rhs = mu(h, n, ss, h.relabel(a, ps, x), h.relabel(n - a, pt, y));
                    if (lhs != rhs) r.fail("product at S=" + detail::mask_str(s) + " on " + h.key_str(a, x) + ", " + h.key_str(n - a, y));
                }
            for (Key z : h.basis(n)) {
                ++r.cases;
                Vec2 lhs;
                for (const auto& [xy, c] : h.coproduct(n, s, z))
                    for (const auto& [u, cu] : h.relabel(a, ps, xy.first))
                        for (const auto& [v, cv] : h.relabel(n - a, pt, xy.second)) lhs.push_raw(KeyPair{u, v}, c * cu * cv);
                lhs.normalize();
                Vec2 rhs = delta(h, n, ss, h.relabel(n, sigma, z));
                if (lhs != rhs) r.fail("coproduct at S=" + detail::mask_str(s) + " on " + h.key_str(n, z));
            }
            if (s == full_mask(n)) break;
        }
    }
    return r;
}

// ---- monoid axioms ------------------------------------------------------------------

inline AxiomReport check_associativity(const Model& h, int n) {
    AxiomReport r{"associativity", "e:assoc", n};
    for (const auto& d : detail::ordered_splits(n, 3)) {
        Mask R = d.blocks[0], S = d.blocks[1], T = d.blocks[2];
        int a = popcount(R), b = popcount(S), c = popcount(T);
        Mask rs = R | S, st = S | T;
        for (Key x : h.basis(a))
            for (Key y : h.basis(b))
                for (Key z : h.basis(c)) {
                    ++r.cases;
                    Vec left = mu(h, n, rs, h.product(a + b, standardize(R, rs), x, y), Vec(z));
                    Vec right = mu(h, n, R, Vec(x), h.product(b + c, standardize(S, st), y, z));
                    if (left != right)
                        r.fail(encode(d) + " on " + h.key_str(a, x) + ", " + h.key_str(b, y) + ", " + h.key_str(c, z));
                }
    }
    return r;
}

inline AxiomReport check_unitality(const Model& h, int n) {
    AxiomReport r{"unitality", "e:unit", n};
    const Vec u = h.unit();
    for (Key x : h.basis(n)) {
        ++r.cases;
        if (mu(h, n, full_mask(n), Vec(x), u) != Vec(x)) r.fail("right unit on " + h.key_str(n, x));
        ++r.cases;
        if (mu(h, n, 0, u, Vec(x)) != Vec(x)) r.fail("left unit on " + h.key_str(n, x));
    }
    return r;
}

// ---- comonoid axioms ----------------------------------------------------------------

inline AxiomReport check_coassociativity(const Model& h, int n) {
    AxiomReport r{"coassociativity", "e:iterated-delta", n};
    for (const auto& d : detail::ordered_splits(n, 3)) {
        Mask R = d.blocks[0], S = d.blocks[1], T = d.blocks[2];
        int a = popcount(R), b = popcount(S), c = popcount(T);
        Mask rs = R | S, st = S | T;
        for (Key z : h.basis(n)) {
            ++r.cases;
            TVec left, right;
            for (const auto& [uv, cu] : h.coproduct(n, rs, z))
                for (const auto& [xy, cx] : h.coproduct(a + b, standardize(R, rs), uv.first))
                    left.push_raw(TKey{xy.first, xy.second, uv.second}, cu * cx);
            for (const auto& [uv, cu] : h.coproduct(n, R, z))
                for (const auto& [yz, cy] : h.coproduct(b + c, standardize(S, st), uv.second))
                    right.push_raw(TKey{uv.first, yz.first, yz.second}, cu * cy);
            left.normalize();
            right.normalize();
            if (left != right) r.fail(encode(d) + " on " + h.key_str(n, z));
        }
    }
    return r;
}

inline AxiomReport check_counitality(const Model& h, int n) {
    AxiomReport r{"counitality", "e:iterated-delta", n};
    for (Key z : h.basis(n)) {
        Vec left, right;
        for (const auto& [xy, c] : h.coproduct(n, full_mask(n), z)) left.push_raw(xy.first, c * h.counit(xy.second));
        for (const auto& [xy, c] : h.coproduct(n, 0, z)) right.push_raw(xy.second, c * h.counit(xy.first));
        left.normalize();
        right.normalize();
        ++r.cases;
        if (left != Vec(z)) r.fail("right counit on " + h.key_str(n, z));
        ++r.cases;
        if (right != Vec(z)) r.fail("left counit on " + h.key_str(n, z));
    }
    return r;
}

// ---- compatibility --------------------------------------------------------------------

// Δ_{T1,T2} μ_{S1,S2} = (μ_{A,C} ⊗ μ_{B,D}) (id ⊗ β_q ⊗ id) (Δ_{A,B} ⊗ Δ_{C,D})
// over all pairs of two-block decompositions; at n = 0 also the unit and
// counit diagrams.
inline AxiomReport check_compatibility(const Model& h, int n) {
    AxiomReport r{"compatibility", "e:comp", n};
    const Rational q = h.q();
    if (n == 0) {
        const Vec u = h.unit();
        ++r.cases;
        Rational eu;
        for (const auto& [k, c] : u) eu += c * h.counit(k);
        if (!eu.is_one()) r.fail("counit of unit is " + eu.str());
        ++r.cases;
        if (delta(h, 0, 0, u) != detail::tensor(u, u)) r.fail("coproduct of unit");
        for (Key x : h.basis(0))
            for (Key y : h.basis(0)) {
                ++r.cases;
                Rational e;
                for (const auto& [k, c] : h.product(0, 0, x, y)) e += c * h.counit(k);
                if (e != h.counit(x) * h.counit(y)) r.fail("counit of product on " + h.key_str(0, x) + ", " + h.key_str(0, y));
            }
    }
    const Mask full = full_mask(n);
    for (Mask s1 = 0;; ++s1) {
        Mask s2 = full & ~s1;
        int ns1 = popcount(s1), ns2 = n - ns1;
        for (Mask t1 = 0;; ++t1) {
            Mask t2 = full & ~t1;
            Mask A = s1 & t1, B = s1 & t2, C = s2 & t1;
            int na = popcount(A), nb = popcount(B), nc = popcount(C);
            Rational braid = pow(q, static_cast<long long>(nb) * nc);
            Mask a_in_s1 = standardize(A, s1), c_in_s2 = standardize(C, s2);
            Mask a_in_t1 = standardize(A, t1), b_in_t2 = standardize(B, t2);
            for (Key x : h.basis(ns1))
                for (Key y : h.basis(ns2)) {
                    ++r.cases;
                    Vec2 lhs = delta(h, n, t1, h.product(n, s1, x, y));
                    Vec2 rhs;
                    for (const auto& [ab, cab] : h.coproduct(ns1, a_in_s1, x))
                        for (const auto& [cd, ccd] : h.coproduct(ns2, c_in_s2, y)) {
                            Rational c0 = braid * cab * ccd;
                            for (const auto& [u, cu] : h.product(na + nc, a_in_t1, ab.first, cd.first))
                                for (const auto& [v, cv] : h.product(n - na - nc, b_in_t2, ab.second, cd.second))
                                    rhs.push_raw(KeyPair{u, v}, c0 * cu * cv);
                        }
                    rhs.normalize();
                    if (lhs != rhs)
                        r.fail("S1=" + detail::mask_str(s1) + " T1=" + detail::mask_str(t1) + " on " + h.key_str(ns1, x) + ", " +
                               h.key_str(ns2, y));
                }
            if (t1 == full) break;
        }
        if (s1 == full) break;
    }
    return r;
}

// ---- higher structure -------------------------------------------------------------------

namespace detail {

// A_ij = S_i ∩ T_j, p x q grid of blocks.
struct Grid {
    int p = 0, q = 0;
    std::vector<Mask> a;
    Mask at(int i, int j) const { return a[static_cast<std::size_t>(i * q + j)]; }
};

inline Grid grid(const SetDecomposition& f, const SetDecomposition& g) {
    Grid gr{f.length(), g.length(), {}};
    for (Mask s : f.blocks)
        for (Mask t : g.blocks) gr.a.push_back(s & t);
    return gr;
}

// Σ over i<i', j>j' of |A_ij| |A_i'j'|.
inline long long grid_inversions(const Grid& gr) {
    long long d = 0;
    for (int i = 0; i < gr.p; ++i)
        for (int ii = i + 1; ii < gr.p; ++ii)
            for (int j = 0; j < gr.q; ++j)
                for (int jj = 0; jj < j; ++jj) d += static_cast<long long>(popcount(gr.at(i, j))) * popcount(gr.at(ii, jj));
    return d;
}

// Row i of the grid as a decomposition of the standardized block S_i.
inline SetDecomposition grid_row(const Grid& gr, Mask s, int i) {
    SetDecomposition d{popcount(s), {}};
    for (int j = 0; j < gr.q; ++j) d.blocks.push_back(standardize(gr.at(i, j), s));
    return d;
}

inline SetDecomposition grid_col(const Grid& gr, Mask t, int j) {
    SetDecomposition d{popcount(t), {}};
    for (int i = 0; i < gr.p; ++i) d.blocks.push_back(standardize(gr.at(i, j), t));
    return d;
}

}  // namespace detail

// Right-hand side of the higher compatibility identity: split each factor
// along its row of the grid, braid rows into columns, multiply each column.
inline TVec higher_compat_rhs(const Model& h, const SetDecomposition& f, const SetDecomposition& g, const TKey& x) {
    auto gr = detail::grid(f, g);
    const int p = gr.p, q = gr.q;
    std::vector<TVec> rows;
    for (int i = 0; i < p; ++i) rows.push_back(higher_delta(h, detail::grid_row(gr, f.blocks[static_cast<std::size_t>(i)], i), x[static_cast<std::size_t>(i)]));
    std::vector<SetDecomposition> cols;
    for (int j = 0; j < q; ++j) cols.push_back(detail::grid_col(gr, g.blocks[static_cast<std::size_t>(j)], j));
    const Rational braid = pow(h.q(), detail::grid_inversions(gr));

    TVec out;
    std::vector<const TKey*> pick(static_cast<std::size_t>(p));
    std::vector<Rational> coef(static_cast<std::size_t>(p) + 1);
    coef[0] = braid;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == p) {
            // multiply column by column
            std::vector<Vec> colvals;
            for (int j = 0; j < q; ++j) {
                TKey c;
                for (int ii = 0; ii < p; ++ii) c.push((*pick[static_cast<std::size_t>(ii)])[static_cast<std::size_t>(j)]);
                colvals.push_back(higher_mu(h, cols[static_cast<std::size_t>(j)], c));
            }
            TKey acc;
            auto emit = [&](auto&& em, int j, const Rational& c) -> void {
                if (j == q) {
                    out.push_raw(acc, c);
                    return;
                }
                for (const auto& [k, ck] : colvals[static_cast<std::size_t>(j)]) {
                    acc.push(k);
                    em(em, j + 1, c * ck);
                    --acc.len;
                }
            };
            emit(emit, 0, coef[static_cast<std::size_t>(p)]);
            return;
        }
        for (const auto& [t, c] : rows[static_cast<std::size_t>(i)]) {
            pick[static_cast<std::size_t>(i)] = &t;
            coef[static_cast<std::size_t>(i) + 1] = coef[static_cast<std::size_t>(i)] * c;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    out.normalize();
    return out;
}

// Δ_G μ_F = μ β Δ over all pairs (F, G). With canonical_f set, F ranges
// over compositions into consecutive intervals only; naturality carries the
// result to every F of the same block sizes. With decompositions set, F and
// G range over decompositions with at most max_blocks blocks instead.
struct HigherCompatOptions {
    bool canonical_f = false;
    bool decompositions = false;
    int max_blocks = 3;
};

inline AxiomReport check_higher_compatibility(const Model& h, int n, HigherCompatOptions opt = {}) {
    AxiomReport r{"higher-compatibility", "e:gen-comp-conn", n};
    std::vector<SetDecomposition> fs, gs;
    if (opt.decompositions) {
        for (int k = 0; k <= opt.max_blocks; ++k)
            for (const auto& d : enumerate_decompositions(n, k)) gs.push_back(d);
    } else {
        for (const auto& c : enumerate_compositions(n)) gs.push_back(SetDecomposition::from(c));
    }
    if (opt.canonical_f) {
        for (const auto& d : gs) {
            bool intervals = true;
            Mask prev = 0;
            for (Mask b : d.blocks) {
                Mask expect = b ? full_mask(popcount(prev) + popcount(b)) & ~full_mask(popcount(prev)) : 0;
                if (b != expect) intervals = false;
                prev |= b;
            }
            if (intervals) fs.push_back(d);
        }
    } else {
        fs = gs;
    }
    for (const auto& f : fs) {
        auto tb = tensor_basis(h, f);
        for (const auto& x : tb) {
            Vec prod = higher_mu(h, f, x);
            for (const auto& g : gs) {
                ++r.cases;
                TVec lhs = higher_delta(h, g, prod);
                TVec rhs = higher_compat_rhs(h, f, g, x);
                if (lhs != rhs) r.fail("F=" + encode(f) + " G=" + encode(g) + " on " + detail::tkey_str(h, f, x));
            }
        }
    }
    return r;
}

// μ_G = μ_F ∘ μ_{G/F} for nested compositions F ≤ G.
inline AxiomReport check_higher_associativity(const Model& h, int n) {
    AxiomReport r{"higher-associativity", "e:gen-asso-conn", n};
    auto comps = enumerate_compositions(n);
    for (const auto& g : comps) {
        auto gd = SetDecomposition::from(g);
        auto tb = tensor_basis(h, gd);
        for (const auto& f : comps) {
            if (!refines(f, g)) continue;
            auto fd = SetDecomposition::from(f);
            for (const auto& x : tb) {
                ++r.cases;
                // group the factors of x by the block of F containing them
                std::vector<Vec> inner;
                std::size_t j = 0;
                for (Mask fb : f.blocks) {
                    SetDecomposition sub{popcount(fb), {}};
                    TKey part;
                    while (j < g.blocks.size() && (g.blocks[j] & ~fb) == 0) {
                        sub.blocks.push_back(standardize(g.blocks[j], fb));
                        part.push(x[j]);
                        ++j;
                    }
                    inner.push_back(higher_mu(h, sub, part));
                }
                TVec outer;
                TKey acc;
                auto rec = [&](auto&& self, std::size_t i, const Rational& c) -> void {
                    if (i == inner.size()) {
                        outer.push_raw(acc, c);
                        return;
                    }
                    for (const auto& [k, ck] : inner[i]) {
                        acc.push(k);
                        self(self, i + 1, c * ck);
                        --acc.len;
                    }
                };
                rec(rec, 0, Rational(1));
                outer.normalize();
                if (higher_mu(h, fd, outer) != higher_mu(h, gd, x))
                    r.fail("F=" + encode(f) + " G=" + encode(g) + " on " + detail::tkey_str(h, gd, x));
            }
        }
    }
    return r;
}

// On connected models: Δ_F μ_F = id and Δ_{opp F} μ_F = q^{dist(F, opp F)} reversal.
inline AxiomReport check_hopf_split(const Model& h, int n) {
    AxiomReport r{"hopf-split", "e:hopf-split2", n};
    if (!h.flags().connected) {
        r.skipped = true;
        return r;
    }
    for (const auto& c : enumerate_compositions(n)) {
        auto f = SetDecomposition::from(c);
        auto o = opp(f);
        Rational w = pow(h.q(), distance(f, o));
        for (const auto& x : tensor_basis(h, f)) {
            ++r.cases;
            Vec m = higher_mu(h, f, x);
            if (higher_delta(h, f, m) != TVec(x)) r.fail("split F=" + encode(f) + " on " + detail::tkey_str(h, f, x));
            TKey rev;
            for (std::size_t i = x.size(); i-- > 0;) rev.push(x[i]);
            ++r.cases;
            if (higher_delta(h, o, m) != TVec(rev, w)) r.fail("reversed split F=" + encode(f) + " on " + detail::tkey_str(h, f, x));
        }
    }
    return r;
}

// ---- (co)commutativity ------------------------------------------------------------------

// μ_{T,S} β_q = μ_{S,T}; only required when the model is flagged commutative.
inline AxiomReport check_commutativity(const Model& h, int n) {
    AxiomReport r{"commutativity", "e:comm", n};
    if (!h.flags().commutative) {
        r.skipped = true;
        return r;
    }
    for (Mask s = 0;; ++s) {
        Mask t = full_mask(n) & ~s;
        int a = popcount(s);
        Rational braid = pow(h.q(), static_cast<long long>(a) * (n - a));
        for (Key x : h.basis(a))
            for (Key y : h.basis(n - a)) {
                ++r.cases;
                if (h.product(n, s, x, y) != braid * h.product(n, t, y, x))
                    r.fail("S=" + detail::mask_str(s) + " on " + h.key_str(a, x) + ", " + h.key_str(n - a, y));
            }
        if (s == full_mask(n)) break;
    }
    return r;
}

// β_q Δ_{S,T} = Δ_{T,S}; only required when flagged cocommutative.
inline AxiomReport check_cocommutativity(const Model& h, int n) {
    AxiomReport r{"cocommutativity", "e:comm", n};
    if (!h.flags().cocommutative) {
        r.skipped = true;
        return r;
    }
    for (Mask s = 0;; ++s) {
        Mask t = full_mask(n) & ~s;
        int a = popcount(s);
        Rational braid = pow(h.q(), static_cast<long long>(a) * (n - a));
        for (Key z : h.basis(n)) {
            ++r.cases;
            Vec2 swapped;
            for (const auto& [xy, c] : h.coproduct(n, s, z)) swapped.push_raw(KeyPair{xy.second, xy.first}, braid * c);
            swapped.normalize();
            if (swapped != h.coproduct(n, t, z)) r.fail("S=" + detail::mask_str(s) + " on " + h.key_str(n, z));
        }
        if (s == full_mask(n)) break;
    }
    return r;
}

// ---- suite ---------------------------------------------------------------------------------

struct SuiteOptions {
    int naturality_samples = 100;
    bool higher = true;
    // Degree from which higher compatibility runs on canonical F only.
    int canonical_from = 5;
    bool decompositions = false;
    int max_blocks = 3;
};

inline std::vector<AxiomReport> run_axiom_suite(const Model& h, int n, const SuiteOptions& opt = {}) {
    std::vector<AxiomReport> out;
    out.push_back(check_naturality(h, n, opt.naturality_samples));
    out.push_back(check_associativity(h, n));
    out.push_back(check_unitality(h, n));
    out.push_back(check_coassociativity(h, n));
    out.push_back(check_counitality(h, n));
    out.push_back(check_compatibility(h, n));
    out.push_back(check_commutativity(h, n));
    out.push_back(check_cocommutativity(h, n));
    if (opt.higher) {
        HigherCompatOptions hc;
        hc.canonical_f = n >= opt.canonical_from;
        hc.decompositions = opt.decompositions;
        hc.max_blocks = opt.max_blocks;
        if (hc.canonical_f) out.push_back(check_naturality(h, n, -1));
        out.push_back(check_higher_compatibility(h, n, hc));
        if (!opt.decompositions) {
            out.push_back(check_higher_associativity(h, n));
            out.push_back(check_hopf_split(h, n));
        }
    }
    return out;
}

}  // namespace sforge
