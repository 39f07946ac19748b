#pragma once

#include "sforge/bases.hpp"
#include "sforge/convolution.hpp"

#include <functional>
#include <map>
#include <numeric>

namespace sforge {

// An element Σ a_F H_F of the Tits algebra Σ[n]; keys are composition keys.
struct TitsElement {
    int n = 0;
    Vec v;

    friend TitsElement operator+(TitsElement a, const TitsElement& b) {
        a.v += b.v;
        return a;
    }
    friend TitsElement operator-(TitsElement a, const TitsElement& b) {
        a.v -= b.v;
        return a;
    }
    friend TitsElement operator*(const Rational& c, TitsElement a) {
        a.v *= c;
        return a;
    }
    friend bool operator==(const TitsElement& a, const TitsElement& b) { return a.n == b.n && a.v == b.v; }
};

inline const FaceModel& tits_model() {
    static const FaceModel sigma;
    return sigma;
}

inline TitsElement tits_basis(const SetComposition& f) { return {f.n, Vec(composition_key(f))}; }

// H_{(I)}; the empty composition when n = 0.
inline TitsElement tits_unit(int n) { return {n, Vec(Key(0))}; }

inline TitsElement tits_multiply(const TitsElement& z, const TitsElement& w) {
    if (z.n != w.n) throw std::invalid_argument("tits product: degree mismatch");
    TitsElement out{z.n, {}};
    for (const auto& [f, a] : z.v) {
        auto fc = key_composition(z.n, f);
        for (const auto& [g, b] : w.v) out.v.push_raw(composition_key(tits_product(fc, key_composition(z.n, g))), a * b);
    }
    out.v.normalize();
    return out;
}

inline std::string tits_str(const TitsElement& z) { return vec_str(tits_model(), z.n, z.v); }

// ---- characteristic operations ---------------------------------------------------------

// z ⊲ x = Σ a_F μ_F Δ_F(x). Compositions double as decompositions without
// empty blocks, so this also applies to bimonoids that are not connected.
inline Vec characteristic_op(const Model& h, const TitsElement& z, const Vec& x) {
    Vec out;
    for (const auto& [f, a] : z.v) out.add_scaled(mu_delta(h, SetDecomposition::from(key_composition(z.n, f)), x), a);
    return out;
}

// Decomposition-indexed variant: Σ a_F μ_F Δ_F with F ranging over decompositions.
inline Vec characteristic_op(const Model& h, const std::vector<std::pair<SetDecomposition, Rational>>& z, const Vec& x) {
    Vec out;
    for (const auto& [f, a] : z) out.add_scaled(mu_delta(h, f, x), a);
    return out;
}

// Ψ(z) as an endomorphism of h[n].
inline LinMap<Key> psi(const Model& h, const TitsElement& z) {
    return endomorphism(h, z.n, [&](const Vec& x) { return characteristic_op(h, z, x); });
}

// Ψ applied degreewise to a family of Tits elements.
inline OpSeries psi_series(const Model& h, int nmax, const std::function<TitsElement(int)>& z) {
    return OpSeries::from(h, nmax, [&](int n) { return psi(h, z(n)); });
}

// ---- distinguished elements -----------------------------------------------------------

// Q_F in the H basis.
inline TitsElement q_element(const SetComposition& f) {
    return {f.n, q_to_h(tits_model(), f.n).apply(Vec(composition_key(f)))};
}

// First Eulerian idempotent Σ_F (-1)^{l(F)-1}/l(F) H_F; zero in degree 0.
inline TitsElement euler1(int n) {
    TitsElement z{n, {}};
    if (n == 0) return z;
    for (const auto& f : enumerate_compositions(n)) {
        int l = f.length();
        z.v.push_raw(composition_key(f), Rational(l % 2 ? 1 : -1, l));
    }
    z.v.normalize();
    return z;
}

// Garsia-Reutenauer idempotent E_X = (1/l(X)!) Σ_{supp F = X} Q_F.
inline TitsElement garsia_reutenauer(const SetPartition& x) {
    const int n = x.n;
    auto to_h = q_to_h(tits_model(), n);
    Vec q;
    std::vector<Mask> blocks = x.blocks;
    std::sort(blocks.begin(), blocks.end());
    do q.add(composition_key(SetComposition{n, blocks}), Rational(1));
    while (std::next_permutation(blocks.begin(), blocks.end()));
    TitsElement z{n, to_h.apply(q)};
    z.v *= Rational(1) / factorial(x.length());
    return z;
}

// k-th Eulerian idempotent Σ_{l(X) = k} E_X.
inline TitsElement euler_k(int n, int k) {
    TitsElement z{n, {}};
    for (const auto& x : enumerate_partitions(n))
        if (x.length() == k) z = z + garsia_reutenauer(x);
    return z;
}

// D_i = Σ_{F: i in last block} (-1)^{l(F)-1} H_F.
inline TitsElement pdynkin(int n, int i) {
    TitsElement z{n, {}};
    for (const auto& f : enumerate_compositions(n))
        if (f.blocks.back() >> i & 1) z.v.push_raw(composition_key(f), Rational(f.length() % 2 ? 1 : -1));
    z.v.normalize();
    return z;
}

// D = Σ_F (-1)^{l(F)-1} |last block| H_F; zero in degree 0.
inline TitsElement dynkin(int n) {
    TitsElement z{n, {}};
    if (n == 0) return z;
    for (const auto& f : enumerate_compositions(n)) {
        Rational c(popcount(f.blocks.back()));
        z.v.push_raw(composition_key(f), f.length() % 2 ? c : -c);
    }
    z.v.normalize();
    return z;
}

// Right version, weighted by the first block.
inline TitsElement dynkin_right(int n) {
    TitsElement z{n, {}};
    if (n == 0) return z;
    for (const auto& f : enumerate_compositions(n)) {
        Rational c(popcount(f.blocks.front()));
        z.v.push_raw(composition_key(f), f.length() % 2 ? c : -c);
    }
    z.v.normalize();
    return z;
}

// H_p = Σ_F binom(p, l(F)) H_F.
inline TitsElement h_power(int n, const Rational& p) {
    TitsElement z{n, {}};
    for (const auto& f : enumerate_compositions(n)) z.v.push_raw(composition_key(f), binomial(p, f.length()));
    z.v.normalize();
    return z;
}

// Ĥ_p: all decompositions of [n] into p blocks, for bimonoids that are
// not connected.
inline std::vector<std::pair<SetDecomposition, Rational>> hat_power(int n, int p) {
    std::vector<std::pair<SetDecomposition, Rational>> z;
    for (auto& d : enumerate_decompositions(n, p)) z.emplace_back(std::move(d), Rational(1));
    return z;
}

// ---- primitives, indecomposables, cumulants ------------------------------------------------

// Basis of P(h)[n]: the common kernel of all Δ_{S,T} with S, T nonempty.
inline std::vector<Vec> primitive_part(const Model& h, int n) {
    if (!h.flags().connected) throw UnsupportedStructure(h.name() + " is not connected");
    if (n == 0) return {};
    const auto& b = h.basis(n);
    std::map<std::pair<Mask, KeyPair>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(b.size());
    for (Mask s = 1; s < full_mask(n); ++s)
        for (std::size_t j = 0; j < b.size(); ++j)
            for (const auto& [xy, c] : h.coproduct(n, s, b[j])) {
                auto [it, fresh] = rows.try_emplace({s, xy}, rows.size());
                cols[j].emplace_back(it->second, c);
            }
    Matrix m(rows.size(), b.size());
    for (std::size_t j = 0; j < b.size(); ++j)
        for (const auto& [i, c] : cols[j]) m(i, j) += c;
    std::vector<Vec> out;
    for (const auto& v : m.kernel_basis()) {
        Vec x;
        for (std::size_t j = 0; j < v.size(); ++j) x.push_raw(b[j], v[j]);
        x.normalize();
        out.push_back(std::move(x));
    }
    return out;
}

// dim of h[n] modulo the images of all μ_{S,T} with S, T nonempty.
inline std::size_t indecomposable_dim(const Model& h, int n) {
    if (!h.flags().connected) throw UnsupportedStructure(h.name() + " is not connected");
    if (n == 0) return 0;
    const auto& b = h.basis(n);
    std::map<Key, std::size_t> idx;
    for (std::size_t i = 0; i < b.size(); ++i) idx[b[i]] = i;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> imgs;
    for (Mask s = 1; s < full_mask(n); ++s) {
        int a = popcount(s);
        for (Key x : h.basis(a))
            for (Key y : h.basis(n - a)) {
                std::vector<std::pair<std::size_t, Rational>> col;
                for (const auto& [k, c] : h.product(n, s, x, y)) col.emplace_back(idx.at(k), c);
                imgs.push_back(std::move(col));
            }
    }
    Matrix m(b.size(), imgs.size());
    for (std::size_t j = 0; j < imgs.size(); ++j)
        for (const auto& [i, c] : imgs[j]) m(i, j) = c;
    return b.size() - m.rank();
}

// k_n = Σ_{Y ⊢ [n]} μ({I}, Y) ∏_{B ∈ Y} dims[|B|].
inline Rational cumulant(const std::vector<Rational>& dims, int n) {
    if (n == 0) return Rational(0);
    Rational k;
    SetPartition top{n, {full_mask(n)}};
    for (const auto& y : enumerate_partitions(n)) {
        Rational d(1);
        for (Mask b : y.blocks) d *= dims.at(static_cast<std::size_t>(popcount(b)));
        k += mobius_partition(top, y) * d;
    }
    return k;
}

// k_X = ∏_B k_{|B|}.
inline Rational cumulant(const std::vector<Rational>& dims, const SetPartition& x) {
    Rational k(1);
    for (Mask b : x.blocks) k *= cumulant(dims, popcount(b));
    return k;
}

inline std::vector<Rational> dimension_sequence(const Model& h, int nmax) {
    std::vector<Rational> d;
    for (int n = 0; n <= nmax; ++n) d.emplace_back(static_cast<long long>(h.dim(n)));
    return d;
}

// ---- Eulerian decomposition ------------------------------------------------------------------

struct EulerianSummand {
    SetPartition x;
    std::size_t rank = 0;
    Rational expected;
    bool injective = false;  // Δ_F restricted to the summand, for one F with support X
};

struct EulerianReport {
    int n = 0;
    std::vector<EulerianSummand> summands;
    std::size_t rank_sum = 0;
    std::size_t dim = 0;
    bool pass() const {
        if (rank_sum != dim) return false;
        for (const auto& s : summands)
            if (Rational(static_cast<long long>(s.rank)) != s.expected || !s.injective) return false;
        return true;
    }
};

// Ranks of Ψ(E_X) over all partitions X of [n]. The idempotent family may
// be replaced (for mutation tests).
inline EulerianReport eulerian_decomposition(const Model& h, int n,
                                             const std::function<TitsElement(const SetPartition&)>& idem = garsia_reutenauer) {
    if (!h.flags().cocommutative || !h.flags().connected)
        throw UnsupportedStructure(h.name() + " is not cocommutative and connected");
    EulerianReport r{n, {}, 0, h.dim(n)};
    auto dims = dimension_sequence(h, n);
    for (const auto& x : enumerate_partitions(n)) {
        auto p = psi(h, idem(x));
        EulerianSummand s{x, p.rank(), cumulant(dims, x), false};
        // Δ_F on the summand, F the composition listing the blocks of X in order
        SetDecomposition f{n, x.blocks};
        std::map<TKey, std::size_t> rows;
        std::vector<std::vector<std::pair<std::size_t, Rational>>> cols;
        for (const auto& col : p.columns()) {
            std::vector<std::pair<std::size_t, Rational>> c;
            for (const auto& [t, a] : higher_delta(h, f, col)) {
                auto [it, fresh] = rows.try_emplace(t, rows.size());
                c.emplace_back(it->second, a);
            }
            cols.push_back(std::move(c));
        }
        Matrix m(rows.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [i, a] : cols[j]) m(i, j) = a;
        s.injective = m.rank() == s.rank;
        r.rank_sum += s.rank;
        r.summands.push_back(std::move(s));
    }
    return r;
}

// ---- brackets -------------------------------------------------------------------------------

// Commutator [x, y] = μ_{S,T}(x ⊗ y) - q^{|S||T|} μ_{T,S}(y ⊗ x), x on S and y on T.
inline Vec commutator(const Model& h, int n, Mask s, const Vec& x, const Vec& y) {
    int a = popcount(s);
    Rational braid = pow(h.q(), static_cast<long long>(a) * (n - a));
    return mu(h, n, s, x, y) - braid * mu(h, n, full_mask(n) & ~s, y, x);
}

inline bool is_primitive(const Model& h, int n, const Vec& x) {
    for (Mask s = 1; s < full_mask(n); ++s)
        if (!delta(h, n, s, x).empty()) return false;
    return true;
}

// [..[x_1, x_2], .., x_k] with x_i on the i-th block of F.
inline Vec left_bracketing(const Model& h, const SetComposition& f, const std::vector<Vec>& xs, bool check_primitive = true) {
    if (xs.size() != f.blocks.size()) throw std::invalid_argument("left bracketing: one factor per block");
    if (f.blocks.empty()) throw std::invalid_argument("left bracketing: empty composition");
    if (check_primitive)
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!is_primitive(h, popcount(f.blocks[i]), xs[i])) throw std::invalid_argument("left bracketing: factor is not primitive");
    Vec acc = xs[0];
    Mask ground = f.blocks[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
        Mask next = ground | f.blocks[i];
        acc = commutator(h, popcount(next), standardize(ground, next), acc, xs[i]);
        ground = next;
    }
    return acc;
}

// (x)_F = μ_F(x_1 ⊗ .. ⊗ x_k).
inline Vec ordered_product(const Model& h, const SetComposition& f, const std::vector<Vec>& xs) {
    TVec t;
    t.push_raw(TKey{}, Rational(1));
    for (const auto& x : xs) {
        TVec next;
        for (const auto& [tk, c] : t)
            for (const auto& [k, ck] : x) {
                TKey u = tk;
                u.push(k);
                next.push_raw(u, c * ck);
            }
        next.normalize();
        t = std::move(next);
    }
    return higher_mu(h, SetDecomposition::from(f), t);
}

// Expansion of [x]_F as Σ ± (x)_{opp(F|S) · F|T} over F-admissible T
// containing the first block, with sign (-1)^{number of blocks in S}.
inline Vec left_bracketing_expansion(const Model& h, const SetComposition& f, const std::vector<Vec>& xs) {
    const int k = f.length();
    Vec out;
    for (unsigned sel = 0; sel < (1u << k); ++sel) {
        if (sel & 1u) continue;  // block 0 must be in T
        std::vector<int> sidx, tidx;
        for (int i = 0; i < k; ++i) (sel >> i & 1u ? sidx : tidx).push_back(i);
        std::reverse(sidx.begin(), sidx.end());
        SetComposition g{f.n, {}};
        std::vector<Vec> ys;
        for (int i : sidx) {
            g.blocks.push_back(f.blocks[static_cast<std::size_t>(i)]);
            ys.push_back(xs[static_cast<std::size_t>(i)]);
        }
        for (int i : tidx) {
            g.blocks.push_back(f.blocks[static_cast<std::size_t>(i)]);
            ys.push_back(xs[static_cast<std::size_t>(i)]);
        }
        out.add_scaled(ordered_product(h, g, ys), Rational(sidx.size() % 2 ? -1 : 1));
    }
    return out;
}

// ---- PBW ---------------------------------------------------------------------------------

// For each partition X and each choice of primitive basis vectors on its
// blocks, the image (1/l(X)!) Σ_{supp F = X} μ_F(β_F(⊗ p_B)).
struct PbwColumn {
    SetPartition x;
    std::vector<std::size_t> choice;  // index into the primitive basis of each block
    Vec image;
};

inline std::vector<PbwColumn> pbw_map(const Model& h, int n, const std::vector<std::vector<Vec>>& prim) {
    std::vector<PbwColumn> out;
    for (const auto& x : enumerate_partitions(n)) {
        const std::size_t l = x.blocks.size();
        std::vector<std::size_t> choice(l, 0);
        bool empty = false;
        for (Mask b : x.blocks)
            if (prim.at(static_cast<std::size_t>(popcount(b))).empty()) empty = true;
        if (empty) continue;
        while (true) {
            Vec img;
            std::vector<std::size_t> perm(l);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                SetComposition f{n, {}};
                std::vector<Vec> xs;
                for (std::size_t i : perm) {
                    f.blocks.push_back(x.blocks[i]);
                    xs.push_back(prim[static_cast<std::size_t>(popcount(x.blocks[i]))][choice[i]]);
                }
                img += ordered_product(h, f, xs);
            } while (std::next_permutation(perm.begin(), perm.end()));
            img *= Rational(1) / factorial(static_cast<int>(l));
            out.push_back({x, choice, std::move(img)});
            std::size_t i = 0;
            for (; i < l; ++i) {
                if (++choice[i] < prim[static_cast<std::size_t>(popcount(x.blocks[i]))].size()) break;
                choice[i] = 0;
            }
            if (i == l) break;
        }
    }
    return out;
}

struct PbwReport {
    int n = 0;
    std::size_t columns = 0;
    std::size_t rank = 0;
    std::size_t dim = 0;
    bool coproduct_preserving = true;
    bool bijective() const { return columns == dim && rank == dim; }
};

// Builds the map on degrees 0..n and checks that it is bijective in degree n
// and carries the coproduct of S(P(h)) to that of h.
inline PbwReport pbw_check(const Model& h, int n) {
    if (!h.flags().cocommutative || !h.flags().connected)
        throw UnsupportedStructure(h.name() + " is not cocommutative and connected");
    std::vector<std::vector<Vec>> prim;
    for (int m = 0; m <= n; ++m) prim.push_back(primitive_part(h, m));
    std::vector<std::map<std::pair<Key, std::vector<std::size_t>>, Vec>> phi(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m)
        for (auto& c : pbw_map(h, m, prim)) phi[static_cast<std::size_t>(m)][{partition_key(c.x), c.choice}] = std::move(c.image);

    PbwReport r{n, phi[static_cast<std::size_t>(n)].size(), 0, h.dim(n), true};
    std::vector<Vec> cols;
    for (const auto& [k, v] : phi[static_cast<std::size_t>(n)]) cols.push_back(v);
    {
        const auto& b = h.basis(n);
        std::map<Key, std::size_t> idx;
        for (std::size_t i = 0; i < b.size(); ++i) idx[b[i]] = i;
        Matrix m(b.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [k, c] : cols[j]) m(idx.at(k), j) = c;
        r.rank = m.rank();
    }
    for (const auto& [key, img] : phi[static_cast<std::size_t>(n)]) {
        auto x = key_partition(n, key.first);
        for (Mask s = 0;; ++s) {
            Mask t = full_mask(n) & ~s;
            Vec2 expect;
            if (admissible(s, x.blocks)) {
                SetPartition xs{popcount(s), {}}, xt{popcount(t), {}};
                std::vector<std::size_t> cs, ct;
                for (std::size_t i = 0; i < x.blocks.size(); ++i) {
                    Mask b = x.blocks[i];
                    if ((b & s) == b) {
                        xs.blocks.push_back(standardize(b, s));
                        cs.push_back(key.second[i]);
                    } else {
                        xt.blocks.push_back(standardize(b, t));
                        ct.push_back(key.second[i]);
                    }
                }
                const Vec& u = phi[static_cast<std::size_t>(xs.n)].at({partition_key(xs), cs});
                const Vec& v = phi[static_cast<std::size_t>(xt.n)].at({partition_key(xt), ct});
                for (const auto& [a, ca] : u)
                    for (const auto& [bk, cb] : v) expect.push_raw(KeyPair{a, bk}, ca * cb);
                expect.normalize();
            }
            if (delta(h, n, s, img) != expect) r.coproduct_preserving = false;
            if (s == full_mask(n)) break;
        }
    }
    return r;
}

}  // namespace sforge
