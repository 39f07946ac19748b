#pragma once

#include "sforge/setcomb.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sforge {

// Edge (i,j), i<j, has bit index j(j-1)/2 + i, so the edges among the
// first m vertices occupy the first C(m,2) bits for every m.
inline int edge_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
}

inline std::pair<int, int> edge_ends(int e) {
    int j = 1;
    while ((j + 1) * j / 2 <= e) ++j;
    return {e - j * (j - 1) / 2, j};
}

inline int max_graph_degree() { return 11; }

struct SimpleGraph {
    int n = 0;
    Mask edges = 0;

    static SimpleGraph make(int n, Mask edges) {
        if (n < 0 || n > max_graph_degree()) throw std::invalid_argument("graph degree out of range");
        int m = n * (n - 1) / 2;
        if (m < 64 && (edges >> m)) throw std::invalid_argument("edge outside vertex set");
        return {n, edges};
    }
    bool has_edge(int i, int j) const { return edges >> edge_index(i, j) & 1; }
    int edge_count() const { return popcount(edges); }
    auto operator<=>(const SimpleGraph&) const = default;
};

inline Mask neighbours(const SimpleGraph& g, int v) {
    Mask nb = 0;
    for (int u = 0; u < g.n; ++u)
        if (u != v && g.has_edge(u, v)) nb |= Mask(1) << u;
    return nb;
}

// Induced subgraph on s, relabelled onto [|s|].
inline SimpleGraph induced(const SimpleGraph& g, Mask s) {
    SimpleGraph r{popcount(s), 0};
    int ri = 0;
    for (Mask a = s; a; a &= a - 1, ++ri) {
        int i = lowest(a);
        int rj = 0;
        for (Mask b = s; b; b &= b - 1, ++rj) {
            int j = lowest(b);
            if (j <= i) continue;
            if (g.has_edge(i, j)) r.edges |= Mask(1) << edge_index(ri, rj);
        }
    }
    return r;
}

// Edges of h (on [|s|]) transported onto s.
inline Mask embed_edges(const SimpleGraph& h, Mask s) {
    std::vector<int> pos;
    for (Mask a = s; a; a &= a - 1) pos.push_back(lowest(a));
    Mask out = 0;
    for (Mask e = h.edges; e; e &= e - 1) {
        auto [i, j] = edge_ends(lowest(e));
        out |= Mask(1) << edge_index(pos[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(j)]);
    }
    return out;
}

inline SimpleGraph disjoint_union(int n, Mask s, const SimpleGraph& a, const SimpleGraph& b) {
    return {n, embed_edges(a, s) | embed_edges(b, full_mask(n) & ~s)};
}

// True when no edge joins s to its complement.
inline bool graph_admissible(const SimpleGraph& g, Mask s) {
    for (Mask e = g.edges; e; e &= e - 1) {
        auto [i, j] = edge_ends(lowest(e));
        if (((s >> i) & 1) != ((s >> j) & 1)) return false;
    }
    return true;
}

inline SetPartition components(const SimpleGraph& g) {
    std::vector<Mask> blocks;
    Mask seen = 0;
    for (int v = 0; v < g.n; ++v) {
        if (seen >> v & 1) continue;
        Mask comp = Mask(1) << v, frontier = comp;
        while (frontier) {
            int u = lowest(frontier);
            frontier &= frontier - 1;
            Mask nb = neighbours(g, u) & ~comp;
            comp |= nb;
            frontier |= nb;
        }
        seen |= comp;
        blocks.push_back(comp);
    }
    return SetPartition::make(g.n, std::move(blocks));
}

inline bool is_connected(const SimpleGraph& g) { return g.n == 0 ? false : components(g).length() == 1; }

// g|_X: union of the induced subgraphs on the blocks of X.
inline SimpleGraph restrict_to_blocks(const SimpleGraph& g, const SetPartition& x) {
    SimpleGraph r{g.n, 0};
    for (Mask e = g.edges; e; e &= e - 1) {
        auto [i, j] = edge_ends(lowest(e));
        if (x.block_of(i) == x.block_of(j)) r.edges |= Mask(1) << lowest(e);
    }
    return r;
}

// g/_X: vertices are the blocks of X (in partition order), with an edge
// between two blocks when some edge of g joins them.
inline SimpleGraph contract(const SimpleGraph& g, const SetPartition& x) {
    SimpleGraph r{x.length(), 0};
    for (Mask e = g.edges; e; e &= e - 1) {
        auto [i, j] = edge_ends(lowest(e));
        int bi = x.block_of(i), bj = x.block_of(j);
        if (bi != bj) r.edges |= Mask(1) << edge_index(bi, bj);
    }
    return r;
}

// L(g): partitions whose blocks induce connected subgraphs.
inline std::vector<SetPartition> contraction_lattice(const SimpleGraph& g) {
    std::vector<SetPartition> out;
    for (const auto& x : enumerate_partitions(g.n)) {
        bool ok = true;
        for (Mask b : x.blocks)
            if (!is_connected(induced(g, b))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return out;
}

// Number of acyclic orientations, by deletion-contraction on the lowest edge.
inline long long acyclic_orientations(const SimpleGraph& g) {
    if (g.edges == 0) return 1;
    int e = lowest(g.edges);
    auto [i, j] = edge_ends(e);
    SimpleGraph del{g.n, g.edges & ~(Mask(1) << e)};
    std::vector<Mask> blocks;
    for (int v = 0; v < g.n; ++v)
        if (v != j) blocks.push_back(v == i ? (Mask(1) << i | Mask(1) << j) : Mask(1) << v);
    SimpleGraph con = contract(g, SetPartition::make(g.n, std::move(blocks)));
    return acyclic_orientations(del) + acyclic_orientations(con);
}

// k_X: disjoint union of complete graphs on the blocks of X.
inline SimpleGraph complete_on_blocks(const SetPartition& x) {
    SimpleGraph r{x.n, 0};
    for (Mask b : x.blocks)
        for (Mask a = b; a; a &= a - 1)
            for (Mask c = a & (a - 1); c; c &= c - 1) r.edges |= Mask(1) << edge_index(lowest(a), lowest(c));
    return r;
}

inline SimpleGraph complement(const SimpleGraph& g) {
    return {g.n, full_mask(g.n * (g.n - 1) / 2) & ~g.edges};
}

inline std::string encode(const SimpleGraph& g) {
    static const char* hex = "0123456789abcdef";
    std::string s = std::to_string(g.n) + ":";
    bool first = true;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.has_edge(i, j)) {
                if (!first) s += ',';
                first = false;
                s += 'e';
                s += hex[i];
                s += hex[j];
            }
    return s;
}

inline SimpleGraph parse_graph(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("graph encoding needs 'n:'");
    int n = std::stoi(std::string(s.substr(0, colon)));
    SimpleGraph g = SimpleGraph::make(n, 0);
    std::string_view rest = s.substr(colon + 1);
    if (rest.empty()) return g;
    for (auto part : detail::split(rest, ',')) {
        if (part.size() != 3 || part[0] != 'e') throw std::invalid_argument("bad edge token");
        Mask ends = detail::parse_block(part.substr(1));
        if (popcount(ends) != 2) throw std::invalid_argument("edge needs two distinct ends");
        int i = lowest(ends), j = lowest(ends & (ends - 1));
        if (j >= n) throw std::invalid_argument("edge end outside [n]");
        g.edges |= Mask(1) << edge_index(i, j);
    }
    return g;
}

}  // namespace sforge
