#include "sforge/graph.hpp"
#include "sforge/setcomb.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

using namespace sforge;

namespace {

SetComposition comp(int n, std::vector<Mask> b) { return SetComposition::make(n, std::move(b)); }

// Ordered set partitions by brute force: all maps [n] -> [k] that are onto.
long long ordered_partitions_oracle(int n) {
    long long total = n == 0 ? 1 : 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> f(static_cast<std::size_t>(n), 0);
        while (true) {
            std::set<int> img(f.begin(), f.end());
            if (static_cast<int>(img.size()) == k) ++total;
            int i = 0;
            while (i < n && ++f[static_cast<std::size_t>(i)] == k) f[static_cast<std::size_t>(i++)] = 0;
            if (i == n) break;
        }
    }
    return total;
}

// Set partitions by brute force: canonical labelings among all maps [n] -> [n].
long long partitions_oracle(int n) {
    if (n == 0) return 1;
    std::set<std::vector<Mask>> seen;
    std::vector<int> f(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<Mask> blocks(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) blocks[static_cast<std::size_t>(f[static_cast<std::size_t>(i)])] |= Mask(1) << i;
        std::vector<Mask> nz;
        for (Mask b : blocks)
            if (b) nz.push_back(b);
        std::sort(nz.begin(), nz.end());
        seen.insert(nz);
        int i = 0;
        while (i < n && ++f[static_cast<std::size_t>(i)] == n) f[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
    }
    return static_cast<long long>(seen.size());
}

// Möbius function of the partition lattice from its defining recurrence.
Rational mobius_oracle(const SetPartition& x, const SetPartition& y, const std::vector<SetPartition>& all) {
    if (x == y) return Rational(1);
    Rational s;
    for (const auto& z : all)
        if (refines(x, z) && refines(z, y) && !(z == y)) s += mobius_oracle(x, z, all);
    return -s;
}

// Acyclic orientations by enumerating all 2^|E| orientations.
long long acyclic_oracle(const SimpleGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.edges >> edge_index(i, j) & 1) edges.emplace_back(i, j);
    long long count = 0;
    for (Mask o = 0; o < (Mask(1) << edges.size()); ++o) {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [a, b] = edges[e];
            if (o >> e & 1) std::swap(a, b);
            adj[static_cast<std::size_t>(a)].push_back(b);
        }
        std::vector<int> state(static_cast<std::size_t>(g.n), 0);
        bool cyclic = false;
        std::function<void(int)> dfs = [&](int v) {
            state[static_cast<std::size_t>(v)] = 1;
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (state[static_cast<std::size_t>(w)] == 1) cyclic = true;
                else if (state[static_cast<std::size_t>(w)] == 0) dfs(w);
            }
            state[static_cast<std::size_t>(v)] = 2;
        };
        for (int v = 0; v < g.n; ++v)
            if (!state[static_cast<std::size_t>(v)]) dfs(v);
        if (!cyclic) ++count;
    }
    return count;
}

}  // namespace

TEST(Concat, Examples) {
    EXPECT_EQ(concat(comp(2, {1}), SetComposition{2, {2}}), comp(2, {1, 2}));
    EXPECT_EQ(concat(SetComposition{4, {3}}, SetComposition{4, {4, 8}}), comp(4, {3, 4, 8}));
    auto e = concat(SetDecomposition::empty_power(2), SetDecomposition::empty_power(3));
    EXPECT_EQ(e, SetDecomposition::empty_power(5));
    EXPECT_THROW(concat(SetComposition{2, {1}}, SetComposition{2, {1}}), std::invalid_argument);
}

TEST(Restrict, Examples) {
    auto f = comp(3, {3, 4});
    EXPECT_EQ(restrict_to(f, 5), (SetComposition{3, {1, 4}}));
    EXPECT_EQ(restrict_to(f, 7), f);
    EXPECT_EQ(restrict_to(f, 3), (SetComposition{3, {3}}));
}

TEST(TitsProduct, Example) {
    EXPECT_EQ(tits_product(comp(3, {3, 4}), comp(3, {5, 2})), comp(3, {1, 2, 4}));
}

TEST(TitsProduct, LeftRegularBandLaws) {
    for (int n = 0; n <= 4; ++n) {
        auto all = enumerate_compositions(n);
        for (const auto& f : all) {
            EXPECT_EQ(tits_product(f, f), f);
            EXPECT_EQ(tits_product(f, opp(f)), f);
            for (const auto& g : all) {
                EXPECT_EQ(refines(f, g), tits_product(f, g) == g);
                EXPECT_EQ(tits_product(tits_product(f, g), f), tits_product(f, g));
            }
        }
    }
}

TEST(TitsProduct, Associative) {
    for (int n = 0; n <= 3; ++n) {
        auto all = enumerate_compositions(n);
        for (const auto& f : all)
            for (const auto& g : all)
                for (const auto& h : all) EXPECT_EQ(tits_product(tits_product(f, g), h), tits_product(f, tits_product(g, h)));
    }
}

TEST(Refines, Examples) {
    EXPECT_TRUE(refines(comp(3, {7}), comp(3, {1, 6})));
    EXPECT_FALSE(refines(comp(3, {1, 6}), comp(3, {6, 1})));
}

TEST(Statistics, Examples) {
    SetComposition f{2, {2, 1}};
    EXPECT_EQ(schubert_area(2, 1, f), 0);
    EXPECT_EQ(schubert_area(1, 2, f), 1);
    auto g = comp(3, {1, 2, 4});
    EXPECT_EQ(distance(g, opp(g)), 3);
    EXPECT_EQ(factorial_of(comp(3, {3, 4})), Rational(2));
}

TEST(Mobius, ClosedFormAgainstRecurrence) {
    SetPartition top{3, {7}};
    EXPECT_EQ(mobius_partition(top, SetPartition::make(3, {1, 2, 4})), Rational(2));
    for (int n = 1; n <= 4; ++n) {
        auto all = enumerate_partitions(n);
        for (const auto& x : all) {
            EXPECT_EQ(mobius_partition(x, x), Rational(1));
            for (const auto& y : all)
                if (refines(x, y)) {
                    EXPECT_EQ(mobius_partition(x, y), mobius_oracle(x, y, all)) << encode(x) << " " << encode(y);
                }
        }
    }
}

TEST(Enumeration, CountsMatchBruteForce) {
    for (int n = 0; n <= 6; ++n) {
        EXPECT_EQ(static_cast<long long>(enumerate_compositions(n).size()), ordered_partitions_oracle(n)) << n;
        EXPECT_EQ(static_cast<long long>(enumerate_partitions(n).size()), partitions_oracle(n)) << n;
    }
    EXPECT_EQ(enumerate_compositions(3).size(), 13u);
    EXPECT_EQ(enumerate_partitions(4).size(), 15u);
    EXPECT_EQ(enumerate_decompositions(2, 3).size(), 9u);
    for (int n = 0; n <= 4; ++n)
        for (int k = 1; k <= 4; ++k) {
            long long kn = 1;
            for (int i = 0; i < n; ++i) kn *= k;
            EXPECT_EQ(static_cast<long long>(enumerate_decompositions(n, k).size()), kn);
        }
}

TEST(Enumeration, DistinctAndValid) {
    for (int n = 0; n <= 5; ++n) {
        auto c = enumerate_compositions(n);
        EXPECT_EQ(std::set<SetComposition>(c.begin(), c.end()).size(), c.size());
        for (const auto& f : c) EXPECT_TRUE(f.is_full());
    }
}

TEST(Shuffles, Examples) {
    auto qs = quasi_shuffles(SetComposition{2, {1}}, SetComposition{2, {2}});
    std::set<SetComposition> got(qs.begin(), qs.end());
    std::set<SetComposition> want{comp(2, {1, 2}), comp(2, {2, 1}), comp(2, {3})};
    EXPECT_EQ(got, want);
    EXPECT_EQ(shuffles(SetComposition{3, {1}}, SetComposition{3, {2, 4}}).size(), 3u);
}

TEST(Shuffles, QuasiShufflesAreRestrictionPreimages) {
    for (int n = 1; n <= 4; ++n)
        for (Mask s = 0; s <= full_mask(n); ++s) {
            Mask t = full_mask(n) & ~s;
            std::map<std::pair<SetComposition, SetComposition>, std::set<SetComposition>> brute;
            for (const auto& h : enumerate_compositions(n)) brute[{restrict_to(h, s), restrict_to(h, t)}].insert(h);
            for (const auto& [ab, hs] : brute) {
                auto qs = quasi_shuffles(ab.first, ab.second);
                EXPECT_EQ(std::set<SetComposition>(qs.begin(), qs.end()), hs);
            }
        }
}

TEST(PositivePart, DropsEmptyBlocks) {
    EXPECT_EQ(positive_part(SetDecomposition{2, {1, 0, 2}}), comp(2, {1, 2}));
}

TEST(Encoding, RoundTrip) {
    for (int n = 0; n <= 4; ++n) {
        for (const auto& f : enumerate_compositions(n)) EXPECT_EQ(parse_composition(encode(f)), f);
        for (const auto& x : enumerate_partitions(n)) EXPECT_EQ(parse_partition(encode(x)), x);
        for (const auto& f : enumerate_decompositions(n, 3))
            if (n > 0) {
                EXPECT_EQ(parse_decomposition(encode(f)), f);
            }
    }
    EXPECT_EQ(parse_decomposition("^3"), SetDecomposition::empty_power(3));
    EXPECT_THROW(parse_composition("01|1"), std::invalid_argument);
    EXPECT_THROW(parse_composition("0|2"), std::invalid_argument);
}

TEST(Graphs, AcyclicOrientationsMatchBruteForce) {
    for (int n = 0; n <= 4; ++n)
        for (Mask e = 0; e < (Mask(1) << (n * (n - 1) / 2)); ++e) {
            SimpleGraph g{n, e};
            EXPECT_EQ(acyclic_orientations(g), acyclic_oracle(g)) << encode(g);
        }
    EXPECT_EQ(acyclic_orientations(SimpleGraph{2, 1}), 2);
    EXPECT_EQ(acyclic_orientations(SimpleGraph{3, 7}), 6);
    EXPECT_EQ(acyclic_orientations(SimpleGraph{4, 0}), 1);
    SimpleGraph k5{5, full_mask(10)};
    EXPECT_EQ(acyclic_orientations(k5), 120);
}

TEST(Graphs, ContractionLatticeOfAnEdge) {
    auto lat = contraction_lattice(SimpleGraph{2, 1});
    std::set<SetPartition> got(lat.begin(), lat.end());
    std::set<SetPartition> want{SetPartition::make(2, {3}), SetPartition::make(2, {1, 2})};
    EXPECT_EQ(got, want);
}
