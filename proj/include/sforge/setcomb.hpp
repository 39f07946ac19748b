#pragma once

#include "sforge/rational.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sforge {

using Mask = std::uint64_t;
inline constexpr int kMaxDegree = 64;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask(0) : (Mask(1) << n) - 1; }
inline int lowest(Mask m) { return std::countr_zero(m); }

inline void check_degree(int n) {
    if (n < 0 || n > kMaxDegree) throw std::invalid_argument("degree out of range: " + std::to_string(n));
}

// Deposit the low bits of x into the positions of s (order preserving).
inline Mask embed(Mask x, Mask s) {
    Mask out = 0;
    for (Mask b = 1; s; b <<= 1) {
        Mask low = s & -s;
        if (x & b) out |= low;
        s ^= low;
    }
    return out;
}

// Inverse of embed: read the bits of x at the positions of s.
inline Mask standardize(Mask x, Mask s) {
    Mask out = 0;
    for (Mask b = 1; s; b <<= 1) {
        Mask low = s & -s;
        if (x & low) out |= b;
        s ^= low;
    }
    return out;
}

struct GroundSubset {
    Mask mask = 0;
    int n = 0;

    static GroundSubset make(int n, Mask mask) {
        check_degree(n);
        if (mask & ~full_mask(n)) throw std::invalid_argument("subset uses labels outside [n]");
        return {mask, n};
    }
    int size() const { return popcount(mask); }
    GroundSubset complement() const { return {full_mask(n) & ~mask, n}; }
    auto operator<=>(const GroundSubset&) const = default;
};

// Permutation of [n] stored as images.
using Perm = std::vector<int>;

inline Mask apply_perm(const Perm& sigma, Mask s) {
    Mask out = 0;
    for (; s; s &= s - 1) out |= Mask(1) << sigma[lowest(s)];
    return out;
}

namespace detail {
inline void validate_blocks(int n, const std::vector<Mask>& blocks, bool allow_empty) {
    check_degree(n);
    Mask seen = 0;
    for (Mask b : blocks) {
        if (!allow_empty && b == 0) throw std::invalid_argument("empty block in composition");
        if (b & ~full_mask(n)) throw std::invalid_argument("block uses labels outside [n]");
        if (b & seen) throw std::invalid_argument("blocks overlap");
        seen |= b;
    }
}
}  // namespace detail

// Ordered nonempty blocks. The ground set is the union of the blocks; it
// is [n] for a composition of [n] and a subset S for a composition of S.
struct SetComposition {
    int n = 0;
    std::vector<Mask> blocks;

    static SetComposition make(int n, std::vector<Mask> blocks) {
        detail::validate_blocks(n, blocks, false);
        return {n, std::move(blocks)};
    }
    Mask ground() const {
        Mask g = 0;
        for (Mask b : blocks) g |= b;
        return g;
    }
    bool is_full() const { return ground() == full_mask(n); }
    int length() const { return static_cast<int>(blocks.size()); }
    auto operator<=>(const SetComposition&) const = default;
};

// Ordered blocks, empty blocks allowed; ∅^p is {n = 0, p zero blocks}.
struct SetDecomposition {
    int n = 0;
    std::vector<Mask> blocks;

    static SetDecomposition make(int n, std::vector<Mask> blocks) {
        detail::validate_blocks(n, blocks, true);
        return {n, std::move(blocks)};
    }
    static SetDecomposition from(const SetComposition& f) { return {f.n, f.blocks}; }
    static SetDecomposition empty_power(int p) { return {0, std::vector<Mask>(static_cast<std::size_t>(p), 0)}; }
    Mask ground() const {
        Mask g = 0;
        for (Mask b : blocks) g |= b;
        return g;
    }
    bool is_full() const { return ground() == full_mask(n); }
    int length() const { return static_cast<int>(blocks.size()); }
    auto operator<=>(const SetDecomposition&) const = default;
};

// Unordered nonempty blocks, stored sorted by least element.
struct SetPartition {
    int n = 0;
    std::vector<Mask> blocks;

    static SetPartition make(int n, std::vector<Mask> blocks) {
        detail::validate_blocks(n, blocks, false);
        SetPartition x{n, std::move(blocks)};
        x.sort();
        return x;
    }
    void sort() {
        std::sort(blocks.begin(), blocks.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
    }
    Mask ground() const {
        Mask g = 0;
        for (Mask b : blocks) g |= b;
        return g;
    }
    int length() const { return static_cast<int>(blocks.size()); }
    // Index of the block containing label i, or -1.
    int block_of(int i) const {
        for (std::size_t k = 0; k < blocks.size(); ++k)
            if (blocks[k] >> i & 1) return static_cast<int>(k);
        return -1;
    }
    auto operator<=>(const SetPartition&) const = default;
};

// ---- basic operations -------------------------------------------------------

template <class F>
F opp(const F& f) {
    F r = f;
    std::reverse(r.blocks.begin(), r.blocks.end());
    return r;
}

inline SetComposition concat(const SetComposition& a, const SetComposition& b) {
    if (a.n != b.n) throw std::invalid_argument("concat: degree mismatch");
    if (a.ground() & b.ground()) throw std::invalid_argument("concat: overlapping ground sets");
    if ((a.ground() | b.ground()) != full_mask(a.n)) throw std::invalid_argument("concat: ground sets do not cover [n]");
    SetComposition r = a;
    r.blocks.insert(r.blocks.end(), b.blocks.begin(), b.blocks.end());
    return r;
}

inline SetDecomposition concat(const SetDecomposition& a, const SetDecomposition& b) {
    if (a.n != b.n) throw std::invalid_argument("concat: degree mismatch");
    if (a.ground() & b.ground()) throw std::invalid_argument("concat: overlapping ground sets");
    if ((a.ground() | b.ground()) != full_mask(a.n)) throw std::invalid_argument("concat: ground sets do not cover [n]");
    SetDecomposition r = a;
    r.blocks.insert(r.blocks.end(), b.blocks.begin(), b.blocks.end());
    return r;
}

// Same as concat but only requires disjointness.
template <class F>
F concat_disjoint(const F& a, const F& b) {
    if (a.ground() & b.ground()) throw std::invalid_argument("concat: overlapping ground sets");
    F r = a;
    r.blocks.insert(r.blocks.end(), b.blocks.begin(), b.blocks.end());
    return r;
}

inline SetComposition restrict_to(const SetComposition& f, Mask s) {
    SetComposition r{f.n, {}};
    for (Mask b : f.blocks)
        if (b & s) r.blocks.push_back(b & s);
    return r;
}

inline SetDecomposition restrict_to(const SetDecomposition& f, Mask s) {
    SetDecomposition r{f.n, {}};
    for (Mask b : f.blocks) r.blocks.push_back(b & s);
    return r;
}

inline SetComposition tits_product(const SetComposition& f, const SetComposition& g) {
    if (f.n != g.n) throw std::invalid_argument("tits product: degree mismatch");
    SetComposition r{f.n, {}};
    for (Mask a : f.blocks)
        for (Mask b : g.blocks)
            if (a & b) r.blocks.push_back(a & b);
    return r;
}

inline SetDecomposition tits_product(const SetDecomposition& f, const SetDecomposition& g) {
    if (f.n != g.n) throw std::invalid_argument("tits product: degree mismatch");
    SetDecomposition r{f.n, {}};
    for (Mask a : f.blocks)
        for (Mask b : g.blocks) r.blocks.push_back(a & b);
    return r;
}

inline SetComposition positive_part(const SetDecomposition& f) {
    SetComposition r{f.n, {}};
    for (Mask b : f.blocks)
        if (b) r.blocks.push_back(b);
    return r;
}

inline SetPartition support(const SetComposition& f) { return SetPartition::make(f.n, f.blocks); }

template <class F>
F relabel(const Perm& sigma, const F& f) {
    F r = f;
    for (auto& b : r.blocks) b = apply_perm(sigma, b);
    if constexpr (std::is_same_v<F, SetPartition>) r.sort();
    return r;
}

// ---- refinement ---------------------------------------------------------------

// F ≤ G: every block of F is a union of consecutive blocks of G.
inline bool refines(const SetComposition& f, const SetComposition& g) {
    if (f.n != g.n) throw std::invalid_argument("refines: degree mismatch");
    if (f.ground() != g.ground()) return false;
    std::size_t j = 0;
    for (Mask a : f.blocks) {
        Mask acc = 0;
        while (j < g.blocks.size() && (g.blocks[j] & ~a) == 0 && acc != a) acc |= g.blocks[j++];
        if (acc != a) return false;
    }
    return j == g.blocks.size();
}

// X ≤ Y: every block of Y lies inside a block of X.
inline bool refines(const SetPartition& x, const SetPartition& y) {
    if (x.n != y.n) throw std::invalid_argument("refines: degree mismatch");
    if (x.ground() != y.ground()) return false;
    for (Mask b : y.blocks) {
        bool inside = false;
        for (Mask a : x.blocks)
            if ((b & ~a) == 0) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return true;
}

inline SetPartition join(const SetPartition& x, const SetPartition& y) {
    if (x.n != y.n) throw std::invalid_argument("join: degree mismatch");
    std::vector<Mask> out;
    for (Mask a : x.blocks)
        for (Mask b : y.blocks)
            if (a & b) out.push_back(a & b);
    return SetPartition::make(x.n, std::move(out));
}

inline SetPartition meet(const SetPartition& x, const SetPartition& y) {
    if (x.n != y.n) throw std::invalid_argument("meet: degree mismatch");
    std::vector<Mask> blocks = x.blocks;
    blocks.insert(blocks.end(), y.blocks.begin(), y.blocks.end());
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < blocks.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < blocks.size(); ++j)
                if (blocks[i] & blocks[j]) {
                    blocks[i] |= blocks[j];
                    blocks.erase(blocks.begin() + static_cast<long>(j));
                    merged = true;
                    break;
                }
    }
    return SetPartition::make(x.n, std::move(blocks));
}

// All splittings of (F, G): sequences (G_1..G_k), G_j a decomposition of
// the j-th block of F, whose concatenation is G.
inline std::vector<std::vector<SetDecomposition>> splittings(const SetDecomposition& f, const SetDecomposition& g) {
    if (f.n != g.n) throw std::invalid_argument("splittings: degree mismatch");
    std::vector<std::vector<SetDecomposition>> out;
    const int k = f.length(), p = g.length();
    std::vector<int> cut(static_cast<std::size_t>(k) + 1, 0);
    auto rec = [&](auto&& self, int j, int start) -> void {
        if (j == k) {
            if (start != p) return;
            std::vector<SetDecomposition> gamma;
            for (int t = 0; t < k; ++t) {
                SetDecomposition piece{f.n, {}};
                for (int i = cut[static_cast<std::size_t>(t)]; i < cut[static_cast<std::size_t>(t) + 1]; ++i)
                    piece.blocks.push_back(g.blocks[static_cast<std::size_t>(i)]);
                gamma.push_back(std::move(piece));
            }
            out.push_back(std::move(gamma));
            return;
        }
        Mask target = f.blocks[static_cast<std::size_t>(j)];
        Mask acc = 0;
        for (int end = start;; ++end) {
            if (acc == target) {
                cut[static_cast<std::size_t>(j) + 1] = end;
                self(self, j + 1, end);
            }
            if (end == p) break;
            Mask b = g.blocks[static_cast<std::size_t>(end)];
            if (b & ~target) break;
            acc |= b;
        }
    };
    if (k == 0) {
        if (p == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, 0);
    return out;
}

// Preorder on decompositions: F ≤ G iff a splitting exists.
inline bool refines(const SetDecomposition& f, const SetDecomposition& g) {
    if (f.ground() != g.ground()) return false;
    return !splittings(f, g).empty();
}

// ---- statistics -------------------------------------------------------------

inline Rational factorial_of(const SetComposition& f) {
    Rational r(1);
    for (Mask b : f.blocks) r *= factorial(popcount(b));
    return r;
}

inline Rational factorial_of(const SetPartition& x) {
    Rational r(1);
    for (Mask b : x.blocks) r *= factorial(popcount(b));
    return r;
}

// Number of blocks of G inside each block of F (requires F ≤ G as sets of
// blocks; G may be a composition or partition refining F's blocks).
inline std::vector<int> blocks_inside(const std::vector<Mask>& coarse, const std::vector<Mask>& fine) {
    std::vector<int> cnt;
    for (Mask a : coarse) {
        int c = 0;
        Mask acc = 0;
        for (Mask b : fine)
            if ((b & ~a) == 0) {
                ++c;
                acc |= b;
            }
        if (acc != a) throw std::invalid_argument("not a refinement");
        cnt.push_back(c);
    }
    return cnt;
}

// l(G/F) = ∏ n_i.
inline Rational length_quotient(const SetComposition& f, const SetComposition& g) {
    if (!refines(f, g)) throw std::invalid_argument("length_quotient: F does not refine to G");
    Rational r(1);
    for (int c : blocks_inside(f.blocks, g.blocks)) r *= Rational(c);
    return r;
}

// (G/F)! = ∏ n_i!.
inline Rational factorial_quotient(const SetComposition& f, const SetComposition& g) {
    if (!refines(f, g)) throw std::invalid_argument("factorial_quotient: F does not refine to G");
    Rational r(1);
    for (int c : blocks_inside(f.blocks, g.blocks)) r *= factorial(c);
    return r;
}

inline Rational factorial_quotient(const SetPartition& x, const SetPartition& y) {
    if (!refines(x, y)) throw std::invalid_argument("factorial_quotient: X is not below Y");
    Rational r(1);
    for (int c : blocks_inside(x.blocks, y.blocks)) r *= factorial(c);
    return r;
}

// X¡ = ∏ (|B| - 1)!.
inline Rational cyclic_factorial(const SetPartition& x) {
    Rational r(1);
    for (Mask b : x.blocks) r *= factorial(popcount(b) - 1);
    return r;
}

// area_{S,T}(F) = Σ_{i<j} |I_i ∩ T| |I_j ∩ S|.
template <class F>
long long schubert_area(Mask s, Mask t, const F& f) {
    long long area = 0, t_seen = 0;
    for (Mask b : f.blocks) {
        area += t_seen * popcount(b & s);
        t_seen += popcount(b & t);
    }
    return area;
}

// dist(F,F') = Σ_{i<j, m>l} |I_i ∩ I'_m| |I_j ∩ I'_l|.
template <class F>
long long distance(const F& f, const F& g) {
    long long d = 0;
    const auto& a = f.blocks;
    const auto& b = g.blocks;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            for (std::size_t l = 0; l < b.size(); ++l)
                for (std::size_t m = l + 1; m < b.size(); ++m)
                    d += static_cast<long long>(popcount(a[i] & b[m])) * popcount(a[j] & b[l]);
    return d;
}

// μ(X,Y) = (-1)^{l(Y)-l(X)} ∏_B (n_B - 1)!, n_B = blocks of Y inside B.
inline Rational mobius_partition(const SetPartition& x, const SetPartition& y) {
    if (!refines(x, y)) throw std::invalid_argument("mobius: X is not below Y");
    Rational r((y.length() - x.length()) % 2 ? -1 : 1);
    for (int c : blocks_inside(x.blocks, y.blocks)) r *= factorial(c - 1);
    return r;
}

// ---- enumeration ------------------------------------------------------------

// Partitions of [n] in restricted-growth-string order.
inline std::vector<SetPartition> enumerate_partitions(int n) {
    check_degree(n);
    std::vector<SetPartition> out;
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int i, int mx) -> void {
        if (i == n) {
            std::vector<Mask> blocks(static_cast<std::size_t>(mx + 1), 0);
            for (int t = 0; t < n; ++t) blocks[static_cast<std::size_t>(a[static_cast<std::size_t>(t)])] |= Mask(1) << t;
            out.push_back(SetPartition{n, std::move(blocks)});
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            a[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, std::max(mx, v));
        }
    };
    if (n == 0) {
        out.push_back(SetPartition{0, {}});
        return out;
    }
    a[0] = 0;
    rec(rec, 1, 0);
    return out;
}

// Compositions of [n]: partitions in RGS order, each followed by all
// orderings of its blocks in lexicographic permutation order.
inline std::vector<SetComposition> enumerate_compositions(int n) {
    std::vector<SetComposition> out;
    for (const auto& x : enumerate_partitions(n)) {
        std::vector<int> idx(x.blocks.size());
        std::iota(idx.begin(), idx.end(), 0);
        do {
            SetComposition f{n, {}};
            for (int i : idx) f.blocks.push_back(x.blocks[static_cast<std::size_t>(i)]);
            out.push_back(std::move(f));
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
    return out;
}

// Decompositions of [n] with exactly k blocks, ordered by the word
// (block of label 0, block of label 1, ...) read lexicographically.
inline std::vector<SetDecomposition> enumerate_decompositions(int n, int k) {
    check_degree(n);
    if (k < 0) throw std::invalid_argument("negative block count");
    std::vector<SetDecomposition> out;
    if (n == 0) {
        out.push_back(SetDecomposition::empty_power(k));
        return out;
    }
    if (k == 0) return out;
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    while (true) {
        SetDecomposition d{n, std::vector<Mask>(static_cast<std::size_t>(k), 0)};
        for (int i = 0; i < n; ++i) d.blocks[static_cast<std::size_t>(w[static_cast<std::size_t>(i)])] |= Mask(1) << i;
        out.push_back(std::move(d));
        int i = n - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == k - 1) w[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

// Decompositions with at most k blocks, by block count then word order.
inline std::vector<SetDecomposition> enumerate_decompositions_upto(int n, int k) {
    std::vector<SetDecomposition> out;
    for (int p = 0; p <= k; ++p) {
        auto part = enumerate_decompositions(n, p);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// All H with H|_S = a and H|_T = b, for a, b on disjoint ground sets.
inline std::vector<SetComposition> quasi_shuffles(const SetComposition& a, const SetComposition& b) {
    if (a.n != b.n) throw std::invalid_argument("quasi_shuffles: degree mismatch");
    if (a.ground() & b.ground()) throw std::invalid_argument("quasi_shuffles: overlapping ground sets");
    std::vector<SetComposition> out;
    SetComposition cur{a.n, {}};
    auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> void {
        if (i == a.blocks.size() && j == b.blocks.size()) {
            out.push_back(cur);
            return;
        }
        if (i < a.blocks.size()) {
            cur.blocks.push_back(a.blocks[i]);
            self(self, i + 1, j);
            cur.blocks.pop_back();
        }
        if (j < b.blocks.size()) {
            cur.blocks.push_back(b.blocks[j]);
            self(self, i, j + 1);
            cur.blocks.pop_back();
        }
        if (i < a.blocks.size() && j < b.blocks.size()) {
            cur.blocks.push_back(a.blocks[i] | b.blocks[j]);
            self(self, i + 1, j + 1);
            cur.blocks.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Shuffles: quasi-shuffles without merged blocks.
inline std::vector<SetComposition> shuffles(const SetComposition& a, const SetComposition& b) {
    std::vector<SetComposition> out;
    for (auto& h : quasi_shuffles(a, b))
        if (h.length() == a.length() + b.length()) out.push_back(std::move(h));
    return out;
}

// S is F-admissible when every block of F lies in S or in its complement.
inline bool admissible(Mask s, const std::vector<Mask>& blocks) {
    for (Mask b : blocks)
        if ((b & s) && (b & ~s)) return false;
    return true;
}

// S is an initial segment of F: S is a union of its first blocks.
inline bool initial_segment(Mask s, const SetComposition& f) {
    Mask acc = 0;
    if (acc == s) return true;
    for (Mask b : f.blocks) {
        acc |= b;
        if (acc == s) return true;
        if (acc & ~s) return false;
    }
    return false;
}

// ---- text encodings -----------------------------------------------------------

namespace detail {
inline std::string block_str(Mask b) {
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (; b; b &= b - 1) {
        int i = lowest(b);
        if (i >= 16) throw std::invalid_argument("label too large for text encoding");
        s += hex[i];
    }
    return s;
}

inline Mask parse_block(std::string_view s) {
    Mask m = 0;
    for (char c : s) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument(std::string("bad label character '") + c + "'");
        if (m >> v & 1) throw std::invalid_argument("repeated label");
        m |= Mask(1) << v;
    }
    return m;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return parts;
}

inline int degree_of(Mask g) {
    if (g & (g + 1)) throw std::invalid_argument("labels do not form [n]");
    return popcount(g);
}
}  // namespace detail

inline std::string encode(const SetComposition& f) {
    std::string s;
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        if (i) s += '|';
        s += detail::block_str(f.blocks[i]);
    }
    return s;
}

// ∅^p has no labels to separate blocks, so it is written "^p".
inline std::string encode(const SetDecomposition& f) {
    if (f.n == 0) return "^" + std::to_string(f.blocks.size());
    std::string s;
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        if (i) s += '|';
        s += detail::block_str(f.blocks[i]);
    }
    return s;
}

inline std::string encode(const SetPartition& x) {
    std::string s;
    for (std::size_t i = 0; i < x.blocks.size(); ++i) {
        if (i) s += '.';
        s += detail::block_str(x.blocks[i]);
    }
    return s;
}

inline SetComposition parse_composition(std::string_view s) {
    if (s.empty()) return {0, {}};
    std::vector<Mask> blocks;
    for (auto p : detail::split(s, '|')) blocks.push_back(detail::parse_block(p));
    Mask g = 0;
    for (Mask b : blocks) g |= b;
    return SetComposition::make(detail::degree_of(g), std::move(blocks));
}

inline SetDecomposition parse_decomposition(std::string_view s) {
    if (!s.empty() && s[0] == '^') return SetDecomposition::empty_power(std::stoi(std::string(s.substr(1))));
    std::vector<Mask> blocks;
    for (auto p : detail::split(s, '|')) blocks.push_back(detail::parse_block(p));
    Mask g = 0;
    for (Mask b : blocks) g |= b;
    return SetDecomposition::make(detail::degree_of(g), std::move(blocks));
}

inline SetPartition parse_partition(std::string_view s) {
    if (s.empty()) return {0, {}};
    std::vector<Mask> blocks;
    for (auto p : detail::split(s, '.')) blocks.push_back(detail::parse_block(p));
    Mask g = 0;
    for (Mask b : blocks) g |= b;
    return SetPartition::make(detail::degree_of(g), std::move(blocks));
}

}  // namespace sforge
