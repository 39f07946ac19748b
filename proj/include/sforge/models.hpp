#pragma once

#include "sforge/graph.hpp"
#include "sforge/species.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

namespace sforge {

// ---- nibble words -------------------------------------------------------------
// Linear orders, partitions and compositions on [m] are packed as words of
// 4-bit entries, one per position or label.

namespace word {
inline int get(Key w, int i) { return static_cast<int>(w >> (4 * i) & 15); }
inline Key put(Key w, int i, int v) { return (w & ~(Key(15) << (4 * i))) | (Key(v) << (4 * i)); }

// Number of distinct entries used when entries are 0..k-1 (max + 1).
inline int blocks(Key w, int m) {
    int k = 0;
    for (int i = 0; i < m; ++i) k = std::max(k, get(w, i) + 1);
    return k;
}

// Relabel entries by order of first appearance (restricted growth form).
inline Key rgs(Key w, int m) {
    int map[16];
    std::fill(std::begin(map), std::end(map), -1);
    int next = 0;
    Key out = 0;
    for (int i = 0; i < m; ++i) {
        int v = get(w, i);
        if (map[v] < 0) map[v] = next++;
        out = put(out, i, map[v]);
    }
    return out;
}

// Keep the relative order of entries but make them consecutive from 0.
inline Key compress(Key w, int m) {
    unsigned used = 0;
    for (int i = 0; i < m; ++i) used |= 1u << get(w, i);
    Key out = 0;
    for (int i = 0; i < m; ++i) {
        unsigned below = used & ((1u << get(w, i)) - 1);
        out = put(out, i, std::popcount(below));
    }
    return out;
}

// Entries at the labels of s, in label order.
inline Key select(Key w, Mask s) {
    Key out = 0;
    int r = 0;
    for (; s; s &= s - 1) out = put(out, r++, get(w, lowest(s)));
    return out;
}

// Word on [n] whose entries at s come from x (offset 0) and at the complement from y (offset off).
inline Key merge(int n, Mask s, Key x, Key y, int off) {
    Key out = 0;
    int rx = 0, ry = 0;
    for (int i = 0; i < n; ++i) {
        if (s >> i & 1) out = put(out, i, get(x, rx++));
        else out = put(out, i, get(y, ry++) + off);
    }
    return out;
}

// Word with entry at sigma(i) equal to the entry at i.
inline Key permute_positions(Key w, int m, const Perm& sigma) {
    Key out = 0;
    for (int i = 0; i < m; ++i) out = put(out, sigma[static_cast<std::size_t>(i)], get(w, i));
    return out;
}
}  // namespace word

// ---- key conversions ----------------------------------------------------------

inline Key composition_key(const SetComposition& f) {
    if (!f.is_full()) throw std::invalid_argument("composition does not cover [n]");
    if (f.n > 16 || f.length() > 16) throw std::invalid_argument("composition too large to pack");
    Key w = 0;
    for (std::size_t b = 0; b < f.blocks.size(); ++b)
        for (Mask s = f.blocks[b]; s; s &= s - 1) w = word::put(w, lowest(s), static_cast<int>(b));
    return w;
}

inline SetComposition key_composition(int n, Key w) {
    SetComposition f{n, std::vector<Mask>(static_cast<std::size_t>(word::blocks(w, n)), 0)};
    for (int i = 0; i < n; ++i) f.blocks[static_cast<std::size_t>(word::get(w, i))] |= Mask(1) << i;
    return f;
}

inline Key partition_key(const SetPartition& x) {
    if (x.ground() != full_mask(x.n)) throw std::invalid_argument("partition does not cover [n]");
    Key w = 0;
    for (std::size_t b = 0; b < x.blocks.size(); ++b)
        for (Mask s = x.blocks[b]; s; s &= s - 1) w = word::put(w, lowest(s), static_cast<int>(b));
    return word::rgs(w, x.n);
}

inline SetPartition key_partition(int n, Key w) {
    SetPartition x{n, std::vector<Mask>(static_cast<std::size_t>(word::blocks(w, n)), 0)};
    for (int i = 0; i < n; ++i) x.blocks[static_cast<std::size_t>(word::get(w, i))] |= Mask(1) << i;
    x.sort();
    return x;
}

// Decompositions keep the block count in bits 32.. since empty blocks
// leave no trace in the word.
inline Key decomposition_key(const SetDecomposition& f) {
    if (!f.is_full()) throw std::invalid_argument("decomposition does not cover [n]");
    if (f.n > 8 || f.length() > 16) throw std::invalid_argument("decomposition too large to pack");
    Key w = 0;
    for (std::size_t b = 0; b < f.blocks.size(); ++b)
        for (Mask s = f.blocks[b]; s; s &= s - 1) w = word::put(w, lowest(s), static_cast<int>(b));
    return w | Key(f.length()) << 32;
}

inline SetDecomposition key_decomposition(int n, Key k) {
    int p = static_cast<int>(k >> 32);
    SetDecomposition f{n, std::vector<Mask>(static_cast<std::size_t>(p), 0)};
    for (int i = 0; i < n; ++i) f.blocks[static_cast<std::size_t>(word::get(k, i))] |= Mask(1) << i;
    return f;
}

// Linear order i_0 i_1 ... as the word of its letters.
inline Key order_key(const std::vector<int>& l) {
    Key w = 0;
    for (std::size_t i = 0; i < l.size(); ++i) w = word::put(w, static_cast<int>(i), l[i]);
    return w;
}

inline std::vector<int> key_order(int n, Key w) {
    std::vector<int> l(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) l[static_cast<std::size_t>(i)] = word::get(w, i);
    return l;
}

inline SetComposition order_composition(const std::vector<int>& l) {
    SetComposition f{static_cast<int>(l.size()), {}};
    for (int v : l) f.blocks.push_back(Mask(1) << v);
    return f;
}

// ---- E ------------------------------------------------------------------------

class ExpModel final : public Model {
public:
    std::string name() const override { return "E"; }
    ModelFlags flags() const override { return {true, true, true, true, true, true}; }
    Vec relabel(int, const Perm&, Key k) const override { return Vec(k); }
    Vec product(int, Mask, Key, Key) const override { return Vec(0); }
    Vec2 coproduct(int, Mask, Key) const override { return Vec2(KeyPair{0, 0}); }
    Vec unit() const override { return Vec(0); }
    Rational counit(Key) const override { return Rational(1); }
    std::string key_str(int, Key) const override { return "I"; }
    Key parse_key(int, std::string_view s) const override {
        if (s != "I") throw std::invalid_argument("E has the single basis key 'I'");
        return 0;
    }

protected:
    std::vector<Key> enumerate(int) const override { return {0}; }
};

// ---- L_q ----------------------------------------------------------------------

class LinearModel final : public Model {
public:
    explicit LinearModel(Rational q = Rational(1)) : q_(std::move(q)) {}
    std::string name() const override { return q_.is_one() ? "L" : "Lq:" + q_.str(); }
    Rational q() const override { return q_; }
    ModelFlags flags() const override {
        bool sym = q_ == Rational(1) || q_ == Rational(-1);
        return {true, false, sym, q_.is_one(), true, true};
    }

    Vec relabel(int n, const Perm& sigma, Key k) const override {
        Key out = 0;
        for (int i = 0; i < n; ++i) out = word::put(out, i, sigma[static_cast<std::size_t>(word::get(k, i))]);
        return Vec(out);
    }
    Vec product(int n, Mask s, Key x, Key y) const override {
        int a = popcount(s);
        std::vector<int> ps, pt;
        for (int i = 0; i < n; ++i) (s >> i & 1 ? ps : pt).push_back(i);
        Key out = 0;
        for (int i = 0; i < a; ++i) out = word::put(out, i, ps[static_cast<std::size_t>(word::get(x, i))]);
        for (int i = 0; i < n - a; ++i) out = word::put(out, a + i, pt[static_cast<std::size_t>(word::get(y, i))]);
        return Vec(out);
    }
    Vec2 coproduct(int n, Mask s, Key z) const override {
        Key x = 0, y = 0;
        int rx = 0, ry = 0;
        long long area = 0, t_seen = 0;
        for (int i = 0; i < n; ++i) {
            int v = word::get(z, i);
            if (s >> v & 1) {
                x = word::put(x, rx++, popcount(s & ((Mask(1) << v) - 1)));
                area += t_seen;
            } else {
                y = word::put(y, ry++, popcount(~s & ((Mask(1) << v) - 1)));
                ++t_seen;
            }
        }
        return Vec2(KeyPair{x, y}, pow(q_, area));
    }
    Vec unit() const override { return Vec(0); }
    Rational counit(Key) const override { return Rational(1); }
    std::string key_str(int n, Key k) const override {
        static const char* hex = "0123456789abcdef";
        std::string s;
        for (int i = 0; i < n; ++i) s += hex[word::get(k, i)];
        return s;
    }
    Key parse_key(int n, std::string_view s) const override {
        if (static_cast<int>(s.size()) != n) throw std::invalid_argument("linear order has wrong length");
        std::vector<int> l;
        Mask seen = 0;
        for (char c : s) {
            Mask b = detail::parse_block(std::string_view(&c, 1));
            if (seen & b || lowest(b) >= n) throw std::invalid_argument("not a linear order on [n]");
            seen |= b;
            l.push_back(lowest(b));
        }
        return order_key(l);
    }

protected:
    std::vector<Key> enumerate(int n) const override {
        std::vector<int> l(static_cast<std::size_t>(n));
        std::iota(l.begin(), l.end(), 0);
        std::vector<Key> out;
        do out.push_back(order_key(l));
        while (std::next_permutation(l.begin(), l.end()));
        return out;
    }

private:
    Rational q_;
};

// ---- Π ------------------------------------------------------------------------

class PartitionModel final : public Model {
public:
    std::string name() const override { return "Pi"; }
    ModelFlags flags() const override { return {true, true, true, true, true, true}; }
    Vec relabel(int n, const Perm& sigma, Key k) const override {
        return Vec(word::rgs(word::permute_positions(k, n, sigma), n));
    }
    Vec product(int n, Mask s, Key x, Key y) const override {
        int a = popcount(s);
        return Vec(word::rgs(word::merge(n, s, x, y, word::blocks(x, a)), n));
    }
    Vec2 coproduct(int n, Mask s, Key z) const override {
        Key x = word::rgs(word::select(z, s), popcount(s));
        Key y = word::rgs(word::select(z, full_mask(n) & ~s), n - popcount(s));
        return Vec2(KeyPair{x, y});
    }
    Vec unit() const override { return Vec(0); }
    Rational counit(Key) const override { return Rational(1); }
    std::string key_str(int n, Key k) const override { return encode(key_partition(n, k)); }
    Key parse_key(int n, std::string_view s) const override {
        auto x = parse_partition(s);
        if (x.n != n) throw std::invalid_argument("partition has wrong degree");
        return partition_key(x);
    }

protected:
    std::vector<Key> enumerate(int n) const override {
        std::vector<Key> out;
        for (const auto& x : enumerate_partitions(n)) out.push_back(partition_key(x));
        return out;
    }
};

// ---- G ------------------------------------------------------------------------

class GraphModel final : public Model {
public:
    std::string name() const override { return "G"; }
    ModelFlags flags() const override { return {true, true, true, true, true, true}; }
    int degree_cap() const override { return 4; }
    Vec relabel(int n, const Perm& sigma, Key k) const override {
        Key out = 0;
        for (Mask e = k; e; e &= e - 1) {
            auto [i, j] = edge_ends(lowest(e));
            out |= Key(1) << edge_index(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]);
        }
        (void)n;
        return Vec(out);
    }
    Vec product(int n, Mask s, Key x, Key y) const override {
        int a = popcount(s);
        return Vec(disjoint_union(n, s, SimpleGraph{a, x}, SimpleGraph{n - a, y}).edges);
    }
    Vec2 coproduct(int n, Mask s, Key z) const override {
        SimpleGraph g{n, z};
        return Vec2(KeyPair{induced(g, s).edges, induced(g, full_mask(n) & ~s).edges});
    }
    Vec unit() const override { return Vec(0); }
    Rational counit(Key) const override { return Rational(1); }
    std::string key_str(int n, Key k) const override { return encode(SimpleGraph{n, k}); }
    Key parse_key(int n, std::string_view s) const override {
        auto g = parse_graph(s);
        if (g.n != n) throw std::invalid_argument("graph has wrong degree");
        return g.edges;
    }

protected:
    std::vector<Key> enumerate(int n) const override {
        if (n > max_graph_degree()) throw std::invalid_argument("graph degree too large");
        std::vector<Key> out;
        Key m = Key(1) << (n * (n - 1) / 2);
        for (Key e = 0; e < m; ++e) out.push_back(e);
        return out;
    }
};

// ---- Σ_q ----------------------------------------------------------------------

class FaceModel final : public Model {
public:
    explicit FaceModel(Rational q = Rational(1)) : q_(std::move(q)) {}
    std::string name() const override { return q_.is_one() ? "Sigma" : "Sigmaq:" + q_.str(); }
    Rational q() const override { return q_; }
    ModelFlags flags() const override {
        bool sym = q_ == Rational(1) || q_ == Rational(-1);
        return {true, false, sym, q_.is_one(), true, true};
    }
    Vec relabel(int n, const Perm& sigma, Key k) const override { return Vec(word::permute_positions(k, n, sigma)); }
    Vec product(int n, Mask s, Key x, Key y) const override {
        return Vec(word::merge(n, s, x, y, word::blocks(x, popcount(s))));
    }
    Vec2 coproduct(int n, Mask s, Key z) const override {
        Key x = word::compress(word::select(z, s), popcount(s));
        Key y = word::compress(word::select(z, full_mask(n) & ~s), n - popcount(s));
        if (q_.is_one()) return Vec2(KeyPair{x, y});
        long long area = 0;
        for (int i = 0; i < n; ++i)
            if (!(s >> i & 1))
                for (int j = 0; j < n; ++j)
                    if ((s >> j & 1) && word::get(z, i) < word::get(z, j)) ++area;
        return Vec2(KeyPair{x, y}, pow(q_, area));
    }
    Vec unit() const override { return Vec(0); }
    Rational counit(Key) const override { return Rational(1); }
    std::string key_str(int n, Key k) const override { return encode(key_composition(n, k)); }
    Key parse_key(int n, std::string_view s) const override {
        auto f = parse_composition(s);
        if (f.n != n) throw std::invalid_argument("composition has wrong degree");
        return composition_key(f);
    }

protected:
    std::vector<Key> enumerate(int n) const override {
        std::vector<Key> out;
        for (const auto& f : enumerate_compositions(n)) out.push_back(composition_key(f));
        return out;
    }

private:
    Rational q_;
};

// ---- Σ̂ ------------------------------------------------------------------------

// Set decompositions. The block bound limits basis enumeration only;
// products may carry more blocks.
class DecompositionModel final : public Model {
public:
    explicit DecompositionModel(int max_blocks) : k_(max_blocks) {
        if (k_ < 0 || k_ > 16) throw std::invalid_argument("block bound out of range");
    }
    int max_blocks() const { return k_; }
    std::string name() const override { return "SigmaHat:" + std::to_string(k_); }
    ModelFlags flags() const override { return {false, false, true, true, true, false}; }
    Vec relabel(int n, const Perm& sigma, Key k) const override {
        Key w = word::permute_positions(k & 0xffffffffu, n, sigma);
        return Vec(w | (k >> 32) << 32);
    }
    Vec product(int n, Mask s, Key x, Key y) const override {
        Key px = x >> 32, py = y >> 32;
        if (px + py > 16) throw std::length_error("decomposition exceeds 16 blocks");
        Key w = word::merge(n, s, x & 0xffffffffu, y & 0xffffffffu, static_cast<int>(px));
        return Vec(w | (px + py) << 32);
    }
    Vec2 coproduct(int n, Mask s, Key z) const override {
        Key p = z >> 32;
        Key x = word::select(z & 0xffffffffu, s), y = word::select(z & 0xffffffffu, full_mask(n) & ~s);
        return Vec2(KeyPair{x | p << 32, y | p << 32});
    }
    Vec unit() const override { return Vec(0); }
    Rational counit(Key) const override { return Rational(1); }
    std::string key_str(int n, Key k) const override { return encode(key_decomposition(n, k)); }
    Key parse_key(int n, std::string_view s) const override {
        auto f = parse_decomposition(s);
        if (f.n != n) throw std::invalid_argument("decomposition has wrong degree");
        return decomposition_key(f);
    }

protected:
    std::vector<Key> enumerate(int n) const override {
        std::vector<Key> out;
        for (const auto& f : enumerate_decompositions_upto(n, k_)) out.push_back(decomposition_key(f));
        return out;
    }

private:
    int k_;
};

// ---- dual ---------------------------------------------------------------------

// Structure maps are transposes of the base maps; keys index the M basis.
class DualModel final : public Model {
public:
    explicit DualModel(ModelPtr base) : base_(std::move(base)) {}
    const ModelPtr& base() const { return base_; }
    std::string name() const override { return "dual:" + base_->name(); }
    Rational q() const override { return base_->q(); }
    int degree_cap() const override { return base_->degree_cap(); }
    ModelFlags flags() const override {
        auto f = base_->flags();
        std::swap(f.commutative, f.cocommutative);
        f.set_theoretic = false;
        return f;
    }
    Vec relabel(int n, const Perm& sigma, Key k) const override {
        if (base_->flags().permutation_basis) return base_->relabel(n, sigma, k);
        Perm inv = inverse_perm(sigma);
        Vec out;
        for (Key z : base_->basis(n)) out.push_raw(z, base_->relabel(n, inv, z).coeff(k));
        out.normalize();
        return out;
    }
    Vec product(int n, Mask s, Key x, Key y) const override {
        const auto& table = product_table(n, s);
        auto it = table.find(KeyPair{x, y});
        return it == table.end() ? Vec() : it->second;
    }
    Vec2 coproduct(int n, Mask s, Key z) const override {
        const auto& table = coproduct_table(n, s);
        auto it = table.find(z);
        return it == table.end() ? Vec2() : it->second;
    }
    Vec unit() const override {
        Vec out;
        for (Key k : base_->basis(0)) out.push_raw(k, base_->counit(k));
        out.normalize();
        return out;
    }
    Rational counit(Key k) const override { return base_->unit().coeff(k); }
    std::string key_str(int n, Key k) const override { return base_->key_str(n, k); }
    Key parse_key(int n, std::string_view s) const override { return base_->parse_key(n, s); }

protected:
    std::vector<Key> enumerate(int n) const override { return base_->basis(n); }

private:
    using PTable = std::map<KeyPair, Vec>;
    using CTable = std::map<Key, Vec2>;

    const PTable& product_table(int n, Mask s) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = ptables_.try_emplace({n, s});
        if (fresh) {
            for (Key z : base_->basis(n))
                for (const auto& [xy, c] : base_->coproduct(n, s, z)) it->second[xy].push_raw(z, c);
            for (auto& [xy, v] : it->second) v.normalize();
        }
        return it->second;
    }
    const CTable& coproduct_table(int n, Mask s) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = ctables_.try_emplace({n, s});
        if (fresh) {
            int a = popcount(s);
            for (Key x : base_->basis(a))
                for (Key y : base_->basis(n - a))
                    for (const auto& [z, c] : base_->product(n, s, x, y)) it->second[z].push_raw(KeyPair{x, y}, c);
            for (auto& [z, v] : it->second) v.normalize();
        }
        return it->second;
    }

    ModelPtr base_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, Mask>, PTable> ptables_;
    mutable std::map<std::pair<int, Mask>, CTable> ctables_;
};

// ---- Hadamard product -----------------------------------------------------------

// Keys pack (a, b) as a << 32 | b when both fit in 31 bits; otherwise the
// pair is interned and the key has its top bit set.
class HadamardModel final : public Model {
public:
    HadamardModel(ModelPtr a, ModelPtr b) : a_(std::move(a)), b_(std::move(b)) {}
    const ModelPtr& first() const { return a_; }
    const ModelPtr& second() const { return b_; }
    std::string name() const override { return "had:" + a_->name() + "," + b_->name(); }
    Rational q() const override { return a_->q() * b_->q(); }
    int degree_cap() const override { return std::min(a_->degree_cap(), b_->degree_cap()); }
    ModelFlags flags() const override {
        auto fa = a_->flags(), fb = b_->flags();
        return {fa.connected && fb.connected,         fa.commutative && fb.commutative, fa.cocommutative && fb.cocommutative,
                fa.set_theoretic && fb.set_theoretic, fa.permutation_basis && fb.permutation_basis, fa.hopf && fb.hopf};
    }

    Key pack(Key x, Key y) const {
        constexpr Key lim = Key(1) << 31;
        if (x < lim && y < lim) return x << 32 | y;
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = intern_.try_emplace(KeyPair{x, y}, pairs_.size());
        if (fresh) pairs_.push_back({x, y});
        return Key(1) << 63 | it->second;
    }
    KeyPair unpack(Key k) const {
        if (k >> 63) {
            std::lock_guard<std::mutex> lock(mu_);
            return pairs_.at(k & ~(Key(1) << 63));
        }
        return {k >> 32, k & 0xffffffffu};
    }

    Vec relabel(int n, const Perm& sigma, Key k) const override {
        auto [x, y] = unpack(k);
        Vec out;
        for (const auto& [u, cu] : a_->relabel(n, sigma, x))
            for (const auto& [v, cv] : b_->relabel(n, sigma, y)) out.push_raw(pack(u, v), cu * cv);
        out.normalize();
        return out;
    }
    Vec product(int n, Mask s, Key x, Key y) const override {
        auto [x1, x2] = unpack(x);
        auto [y1, y2] = unpack(y);
        Vec out;
        for (const auto& [u, cu] : a_->product(n, s, x1, y1))
            for (const auto& [v, cv] : b_->product(n, s, x2, y2)) out.push_raw(pack(u, v), cu * cv);
        out.normalize();
        return out;
    }
    Vec2 coproduct(int n, Mask s, Key z) const override {
        auto [z1, z2] = unpack(z);
        Vec2 out;
        for (const auto& [u, cu] : a_->coproduct(n, s, z1))
            for (const auto& [v, cv] : b_->coproduct(n, s, z2))
                out.push_raw(KeyPair{pack(u.first, v.first), pack(u.second, v.second)}, cu * cv);
        out.normalize();
        return out;
    }
    Vec unit() const override {
        Vec out;
        for (const auto& [u, cu] : a_->unit())
            for (const auto& [v, cv] : b_->unit()) out.push_raw(pack(u, v), cu * cv);
        out.normalize();
        return out;
    }
    Rational counit(Key k) const override {
        auto [x, y] = unpack(k);
        return a_->counit(x) * b_->counit(y);
    }
    std::string key_str(int n, Key k) const override {
        auto [x, y] = unpack(k);
        return "(" + a_->key_str(n, x) + ";" + b_->key_str(n, y) + ")";
    }
    Key parse_key(int n, std::string_view s) const override {
        if (s.size() < 3 || s.front() != '(' || s.back() != ')') throw std::invalid_argument("hadamard key must be (a;b)");
        int depth = 0;
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            else if (s[i] == ')') --depth;
            else if (s[i] == ';' && depth == 0)
                return pack(a_->parse_key(n, s.substr(1, i - 1)), b_->parse_key(n, s.substr(i + 1, s.size() - i - 2)));
        }
        throw std::invalid_argument("hadamard key must be (a;b)");
    }

protected:
    std::vector<Key> enumerate(int n) const override {
        std::vector<Key> out;
        for (Key x : a_->basis(n))
            for (Key y : b_->basis(n)) out.push_back(pack(x, y));
        return out;
    }

private:
    ModelPtr a_, b_;
    mutable std::mutex mu_;
    mutable std::map<KeyPair, Key> intern_;
    mutable std::vector<KeyPair> pairs_;
};

// ---- change of basis view ---------------------------------------------------------

// The same bimonoid written in another basis. to_new(n) maps base-basis
// coordinates to new-basis coordinates; to_old(n) is its inverse. Keys of
// the new basis reuse the base keys.
class BasisView final : public Model {
public:
    using ChangeFn = std::function<LinMap<Key>(int)>;

    BasisView(ModelPtr base, std::string tag, ChangeFn to_new, ChangeFn to_old)
        : base_(std::move(base)), tag_(std::move(tag)), to_new_(std::move(to_new)), to_old_(std::move(to_old)) {}

    const ModelPtr& base() const { return base_; }
    const std::string& tag() const { return tag_; }
    std::string name() const override { return tag_ + ":" + base_->name(); }
    Rational q() const override { return base_->q(); }
    int degree_cap() const override { return base_->degree_cap(); }
    ModelFlags flags() const override {
        auto f = base_->flags();
        f.set_theoretic = false;
        return f;
    }

    Vec from_base(int n, const Vec& x) const { return change(n, true).apply(x); }
    Vec to_base(int n, const Vec& x) const { return change(n, false).apply(x); }

    Vec relabel(int n, const Perm& sigma, Key k) const override {
        return from_base(n, sforge::relabel(*base_, n, sigma, to_base(n, Vec(k))));
    }
    Vec product(int n, Mask s, Key x, Key y) const override {
        int a = popcount(s);
        return from_base(n, mu(*base_, n, s, to_base(a, Vec(x)), to_base(n - a, Vec(y))));
    }
    Vec2 coproduct(int n, Mask s, Key z) const override {
        int a = popcount(s);
        Vec2 out;
        for (const auto& [xy, c] : delta(*base_, n, s, to_base(n, Vec(z))))
            for (const auto& [u, cu] : from_base(a, Vec(xy.first)))
                for (const auto& [v, cv] : from_base(n - a, Vec(xy.second))) out.push_raw(KeyPair{u, v}, c * cu * cv);
        out.normalize();
        return out;
    }
    Vec unit() const override { return from_base(0, base_->unit()); }
    Rational counit(Key k) const override {
        Rational r;
        for (const auto& [z, c] : to_base(0, Vec(k))) r += c * base_->counit(z);
        return r;
    }
    std::string key_str(int n, Key k) const override { return base_->key_str(n, k); }
    Key parse_key(int n, std::string_view s) const override { return base_->parse_key(n, s); }

protected:
    std::vector<Key> enumerate(int n) const override { return base_->basis(n); }

private:
    const LinMap<Key>& change(int n, bool forward) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto& cache = forward ? fwd_ : bwd_;
        auto it = cache.find(n);
        if (it == cache.end()) it = cache.emplace(n, forward ? to_new_(n) : to_old_(n)).first;
        return it->second;
    }

    ModelPtr base_;
    std::string tag_;
    ChangeFn to_new_, to_old_;
    mutable std::mutex mu_;
    mutable std::map<int, LinMap<Key>> fwd_, bwd_;
};

}  // namespace sforge
