#pragma once

#include "sforge/lincomb.hpp"
#include "sforge/linalg.hpp"
#include "sforge/setcomb.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sforge {

using Key = std::uint64_t;
using Vec = LinComb<Key>;
using KeyPair = std::pair<Key, Key>;
using Vec2 = LinComb<KeyPair>;

inline constexpr int kMaxTensor = 16;

// Basis tensor: one key per block, each on its standardized block.
struct TKey {
    std::array<Key, kMaxTensor> k{};
    std::uint8_t len = 0;

    TKey() = default;
    TKey(std::initializer_list<Key> ks) {
        for (Key x : ks) push(x);
    }
    void push(Key x) {
        if (len == kMaxTensor) throw std::length_error("tensor has too many factors");
        k[len++] = x;
    }
    Key operator[](std::size_t i) const { return k[i]; }
    std::size_t size() const { return len; }
    friend bool operator<(const TKey& a, const TKey& b) {
        if (a.len != b.len) return a.len < b.len;
        for (std::uint8_t i = 0; i < a.len; ++i)
            if (a.k[i] != b.k[i]) return a.k[i] < b.k[i];
        return false;
    }
    friend bool operator==(const TKey& a, const TKey& b) {
        if (a.len != b.len) return false;
        for (std::uint8_t i = 0; i < a.len; ++i)
            if (a.k[i] != b.k[i]) return false;
        return true;
    }
};
using TVec = LinComb<TKey>;

struct ModelFlags {
    bool connected = true;
    bool commutative = false;
    bool cocommutative = false;
    bool set_theoretic = true;     // linearized set-theoretic structure maps
    bool permutation_basis = true;  // relabel permutes the basis
    bool hopf = true;
};

// A (q-)bimonoid in species, realized on canonical ground sets [n].
//
// product(n, S, x, y): x lives on [|S|], y on [n-|S|]; both are transported
// to S and its complement by the order-preserving bijections and multiplied.
// coproduct(n, S, z): returns pairs (x, y) on [|S|] and [n-|S|].
class Model {
public:
    virtual ~Model() = default;

    virtual std::string name() const = 0;
    virtual Rational q() const { return Rational(1); }
    virtual ModelFlags flags() const = 0;
    // Largest degree whose basis may be enumerated under the default budget.
    virtual int degree_cap() const { return 5; }

    virtual Vec relabel(int n, const Perm& sigma, Key k) const = 0;
    virtual Vec product(int n, Mask s, Key x, Key y) const = 0;
    virtual Vec2 coproduct(int n, Mask s, Key z) const = 0;
    virtual Vec unit() const = 0;
    virtual Rational counit(Key k) const = 0;

    virtual std::string key_str(int n, Key k) const = 0;
    virtual Key parse_key(int n, std::string_view s) const = 0;

    const std::vector<Key>& basis(int n) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = bases_.find(n);
        if (it == bases_.end()) {
            it = bases_.emplace(n, enumerate(n)).first;
            auto& idx = index_[n];
            for (std::size_t i = 0; i < it->second.size(); ++i) idx.emplace(it->second[i], i);
        }
        return it->second;
    }
    std::size_t dim(int n) const { return basis(n).size(); }
    bool in_basis(int n, Key k) const {
        basis(n);
        std::lock_guard<std::mutex> lock(mu_);
        return index_.at(n).count(k) != 0;
    }
    std::size_t index_of(int n, Key k) const {
        basis(n);
        std::lock_guard<std::mutex> lock(mu_);
        auto& idx = index_.at(n);
        auto it = idx.find(k);
        if (it == idx.end()) throw std::invalid_argument("key not in basis of " + name());
        return it->second;
    }

protected:
    virtual std::vector<Key> enumerate(int n) const = 0;

private:
    mutable std::mutex mu_;
    mutable std::map<int, std::vector<Key>> bases_;
    mutable std::map<int, std::unordered_map<Key, std::size_t>> index_;
};

using ModelPtr = std::shared_ptr<const Model>;

// Requested structure does not exist on this model (e.g. an antipode of a
// bimonoid that is not Hopf).
class UnsupportedStructure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- small helpers ------------------------------------------------------------

// σ restricted to S, as a permutation of [|S|] between standardizations.
inline Perm restrict_perm(const Perm& sigma, Mask s) {
    Mask image = apply_perm(sigma, s);
    Perm out;
    for (Mask t = s; t; t &= t - 1) {
        Mask img = Mask(1) << sigma[lowest(t)];
        out.push_back(popcount(image & (img - 1)));
    }
    return out;
}

inline Perm inverse_perm(const Perm& sigma) {
    Perm inv(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) inv[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
    return inv;
}

template <class Blocks>
SetDecomposition standardize_blocks(int /*n*/, const Blocks& f) {
    Mask g = f.ground();
    SetDecomposition r{popcount(g), {}};
    for (Mask b : f.blocks) r.blocks.push_back(standardize(b, g));
    return r;
}

// ---- bilinear extensions ---------------------------------------------------

inline Vec mu(const Model& h, int n, Mask s, const Vec& x, const Vec& y) {
    Vec out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            Rational c = ca * cb;
            for (const auto& [k, ck] : h.product(n, s, a, b)) out.push_raw(k, c * ck);
        }
    out.normalize();
    return out;
}

inline Vec2 delta(const Model& h, int n, Mask s, const Vec& z) {
    Vec2 out;
    for (const auto& [a, ca] : z)
        for (const auto& [k, ck] : h.coproduct(n, s, a)) out.push_raw(k, ca * ck);
    out.normalize();
    return out;
}

inline Vec relabel(const Model& h, int n, const Perm& sigma, const Vec& x) {
    Vec out;
    for (const auto& [a, ca] : x)
        for (const auto& [k, ck] : h.relabel(n, sigma, a)) out.push_raw(k, ca * ck);
    out.normalize();
    return out;
}

// ---- higher structure maps ----------------------------------------------------

// μ_F on a basis tensor; F must cover [n]. Left-nested iteration.
inline Vec higher_mu(const Model& h, const SetDecomposition& f, const TKey& t) {
    if (static_cast<int>(t.size()) != f.length()) throw std::invalid_argument("higher_mu: tensor shape mismatch");
    if (f.length() == 0) return h.unit();
    Vec acc(t[0]);
    Mask ground = f.blocks[0];
    for (int j = 1; j < f.length(); ++j) {
        Mask next = ground | f.blocks[static_cast<std::size_t>(j)];
        Vec step;
        for (const auto& [a, ca] : acc)
            for (const auto& [k, ck] : h.product(popcount(next), standardize(ground, next), a, t[static_cast<std::size_t>(j)]))
                step.push_raw(k, ca * ck);
        step.normalize();
        acc = std::move(step);
        ground = next;
    }
    return acc;
}

inline Vec higher_mu(const Model& h, const SetDecomposition& f, const TVec& t) {
    Vec out;
    for (const auto& [tk, c] : t)
        for (const auto& [k, ck] : higher_mu(h, f, tk)) out.push_raw(k, c * ck);
    out.normalize();
    return out;
}

// Δ_F on a basis element; F must cover [n].
inline TVec higher_delta(const Model& h, const SetDecomposition& f, Key z) {
    TVec out;
    const int k = f.length();
    if (k == 0) {
        out.push_raw(TKey{}, h.counit(z));
        return out;
    }
    if (k == 1) {
        out.push_raw(TKey{z}, Rational(1));
        return out;
    }
    Mask last = f.blocks.back();
    Mask rest = f.ground() & ~last;
    int n = popcount(f.ground());
    SetDecomposition prefix{popcount(rest), {}};
    for (int j = 0; j + 1 < k; ++j) prefix.blocks.push_back(standardize(f.blocks[static_cast<std::size_t>(j)], rest));
    for (const auto& [xy, c] : h.coproduct(n, rest, z)) {
        for (const auto& [tk, c2] : higher_delta(h, prefix, xy.first)) {
            TKey full = tk;
            full.push(xy.second);
            out.push_raw(full, c * c2);
        }
    }
    out.normalize();
    return out;
}

inline TVec higher_delta(const Model& h, const SetDecomposition& f, const Vec& x) {
    TVec out;
    for (const auto& [z, c] : x)
        for (const auto& [tk, ck] : higher_delta(h, f, z)) out.push_raw(tk, c * ck);
    out.normalize();
    return out;
}

// μ_F Δ_F on a vector of degree n.
inline Vec mu_delta(const Model& h, const SetDecomposition& f, const Vec& x) { return higher_mu(h, f, higher_delta(h, f, x)); }

// Basis of h(F) = ⊗ h[|block|].
inline std::vector<TKey> tensor_basis(const Model& h, const SetDecomposition& f) {
    std::vector<TKey> out{TKey{}};
    for (Mask b : f.blocks) {
        std::vector<TKey> next;
        for (const auto& t : out)
            for (Key k : h.basis(popcount(b))) {
                TKey u = t;
                u.push(k);
                next.push_back(u);
            }
        out = std::move(next);
    }
    return out;
}

// Matrix of a linear endomorphism of h[n] in the ordered basis.
template <class Fn>
LinMap<Key> endomorphism(const Model& h, int n, Fn&& fn) {
    const auto& b = h.basis(n);
    std::vector<Vec> cols;
    cols.reserve(b.size());
    for (Key k : b) cols.push_back(fn(Vec(k)));
    return LinMap<Key>(b, b, std::move(cols));
}

inline std::string vec_str(const Model& h, int n, const Vec& v) {
    if (v.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : v) {
        if (!first) s += " + ";
        first = false;
        if (!c.is_one()) s += c.str() + "*";
        s += "[" + h.key_str(n, k) + "]";
    }
    return s;
}

}  // namespace sforge
