#include "sforge/axioms.hpp"
#include "sforge/genfun.hpp"
#include "sforge/registry.hpp"

#include <gtest/gtest.h>

using namespace sforge;

namespace {

Vec vec(const Model& h, int n, std::initializer_list<std::pair<const char*, Rational>> terms) {
    Vec v;
    for (const auto& [k, c] : terms) v.add(h.parse_key(n, k), c);
    return v;
}

// Checks that a basis map of degree-wise linear maps preserves products and coproducts.
template <class Fn>
bool is_morphism(const Model& a, const Model& b, Fn&& f, int n) {
    auto img = [&](int m, const Vec& x) {
        Vec out;
        for (const auto& [k, c] : x) out.add_scaled(f(m, k), c);
        return out;
    };
    for (Mask s = 0; s <= full_mask(n); ++s) {
        int p = popcount(s);
        for (Key x : a.basis(p))
            for (Key y : a.basis(n - p))
                if (img(n, a.product(n, s, x, y)) != mu(b, n, s, img(p, Vec(x)), img(n - p, Vec(y)))) return false;
        for (Key z : a.basis(n)) {
            Vec2 lhs;
            for (const auto& [xy, c] : a.coproduct(n, s, z))
                for (const auto& [u, cu] : img(p, Vec(xy.first)))
                    for (const auto& [v, cv] : img(n - p, Vec(xy.second))) lhs.add(KeyPair{u, v}, c * cu * cv);
            if (lhs != delta(b, n, s, img(n, Vec(z)))) return false;
        }
        if (s == full_mask(n)) break;
    }
    return true;
}

}  // namespace

TEST(Registry, NamesRoundTrip) {
    for (auto name : {"E", "L", "Lq:2", "Pi", "G", "Sigma", "Sigmaq:-1", "SigmaHat:3", "dual:L", "had:L,Pi", "Q:Sigma", "P:dual:Pi"})
        EXPECT_EQ(make_model(name)->name(), name);
    EXPECT_EQ(make_model("P:Pi")->name(), "P:dual:Pi");
    EXPECT_THROW(make_model("Foo"), UnknownModel);
    EXPECT_THROW(make_model("SigmaHat:x"), UnknownModel);
    EXPECT_THROW(make_model("had:L"), UnknownModel);
    EXPECT_THROW(make_model("Q:L"), std::invalid_argument);
}

TEST(Dimensions, SmallDegrees) {
    EXPECT_EQ(make_model("L")->dim(3), 6u);
    EXPECT_EQ(make_model("Pi")->dim(4), 15u);
    EXPECT_EQ(make_model("G")->dim(3), 8u);
    EXPECT_EQ(make_model("Sigma")->dim(3), 13u);
    for (int k = 1; k <= 4; ++k) EXPECT_EQ(make_model("SigmaHat:" + std::to_string(k))->dim(0), static_cast<std::size_t>(k + 1));
    for (auto name : {"E", "L", "Pi", "G", "Sigma"}) {
        auto h = make_model(name);
        auto d = *known_dimensions(name, 4);
        for (int n = 0; n <= 4; ++n) EXPECT_EQ(Rational(static_cast<long long>(h->dim(n))), d[static_cast<std::size_t>(n)]) << name << n;
    }
}

TEST(Keys, ParseAndPrintRoundTrip) {
    for (auto name : {"E", "L", "Pi", "G", "Sigma", "SigmaHat:2", "had:L,Pi"}) {
        auto h = make_model(name);
        for (int n = 0; n <= 3; ++n)
            for (Key k : h->basis(n)) EXPECT_EQ(h->parse_key(n, h->key_str(n, k)), k) << name;
    }
    auto g = make_model("G");
    EXPECT_EQ(g->key_str(2, 1), "2:e01");
    EXPECT_EQ(g->key_str(0, 0), "0:");
    EXPECT_THROW(make_model("L")->parse_key(3, "011"), std::invalid_argument);
}

TEST(Orbits, Counts) {
    EXPECT_EQ(orbit_count(*make_model("Pi"), 4), 5);
    EXPECT_EQ(orbit_count(*make_model("L"), 4), 1);
    EXPECT_EQ(orbit_count(*make_model("E"), 4), 1);
    EXPECT_EQ(orbit_count(*make_model("G"), 4), 11);
    EXPECT_EQ(orbit_count(*make_model("Q:Sigma"), 3), 4);
}

TEST(Dual, ShuffleProductOnLinearOrders) {
    auto d = make_model("dual:L");
    auto x = d->parse_key(1, "0");
    EXPECT_EQ(d->product(2, 1, x, x), vec(*d, 2, {{"01", Rational(1)}, {"10", Rational(1)}}));
}

TEST(Dual, DoubleDualRecoversStructureConstants) {
    for (auto name : {"L", "Pi", "Sigma", "Lq:3"}) {
        auto h = make_model(name);
        auto dd = make_model(std::string("dual:dual:") + name);
        for (int n = 0; n <= 3; ++n)
            for (Mask s = 0; s <= full_mask(n); ++s) {
                int a = popcount(s);
                for (Key x : h->basis(a))
                    for (Key y : h->basis(n - a)) EXPECT_EQ(dd->product(n, s, x, y), h->product(n, s, x, y));
                for (Key z : h->basis(n)) EXPECT_EQ(dd->coproduct(n, s, z), h->coproduct(n, s, z));
                if (s == full_mask(n)) break;
            }
    }
}

TEST(Dual, PartitionCoproductNeedsAdmissibleSubset) {
    auto d = make_model("dual:Pi");
    for (int n = 1; n <= 4; ++n)
        for (Mask s = 0; s <= full_mask(n); ++s) {
            for (Key z : d->basis(n)) {
                bool adm = admissible(s, key_partition(n, z).blocks);
                EXPECT_EQ(d->coproduct(n, s, z).empty(), !adm);
            }
            if (s == full_mask(n)) break;
        }
}

TEST(Hadamard, ExponentialIsTheIdentityFactor) {
    auto l = make_model("L");
    auto el = std::make_shared<HadamardModel>(make_model("E"), l);
    auto strip = [&](int, Key k) { return Vec(el->unpack(k).second); };
    for (int n = 0; n <= 3; ++n) {
        EXPECT_EQ(el->dim(n), l->dim(n));
        EXPECT_TRUE(is_morphism(*el, *l, strip, n));
    }
}

TEST(Hadamard, LinearSquared) {
    auto h = make_model("had:L,L");
    for (int n = 0; n <= 3; ++n) {
        auto f = factorial(n);
        EXPECT_EQ(Rational(static_cast<long long>(h->dim(n))), f * f);
    }
    for (const auto& r : run_axiom_suite(*h, 3)) EXPECT_TRUE(r.pass()) << r.axiom;
}

TEST(QBasis, FaceExample) {
    auto s = make_model("Sigma");
    Vec q = q_to_h(*s, 2).apply(Vec(s->parse_key(2, "01")));
    EXPECT_EQ(q, vec(*s, 2, {{"01", Rational(1)}, {"0|1", Rational(-1, 2)}, {"1|0", Rational(-1, 2)}}));
}

TEST(QBasis, PartitionExample) {
    auto p = make_model("Pi");
    Vec h = h_to_q(*p, 2).apply(Vec(p->parse_key(2, "01")));
    EXPECT_EQ(h, vec(*p, 2, {{"01", Rational(1)}, {"0.1", Rational(1)}}));
}

TEST(QBasis, RoundTripsAreExact) {
    for (auto name : {"Pi", "G", "Sigma"}) {
        auto h = make_model(name);
        for (int n = 0; n <= 3; ++n) {
            auto id = compose(q_to_h(*h, n), h_to_q(*h, n));
            EXPECT_EQ(id, LinMap<Key>::identity(h->basis(n))) << name << n;
        }
    }
}

TEST(QBasis, ViewMatchesDirectStructureConstants) {
    for (auto name : {"Pi", "G", "Sigma"}) {
        auto h = make_model(name);
        auto q = q_view(h);
        auto fam = q_family(*h);
        for (int n = 0; n <= 3; ++n)
            for (Mask s = 0; s <= full_mask(n); ++s) {
                int a = popcount(s);
                for (Key x : h->basis(a))
                    for (Key y : h->basis(n - a)) EXPECT_EQ(q->product(n, s, x, y), q_product(fam, *h, n, s, x, y));
                for (Key z : h->basis(n)) EXPECT_EQ(q->coproduct(n, s, z), q_coproduct(fam, *h, n, s, z)) << name << " " << h->key_str(n, z);
                if (s == full_mask(n)) break;
            }
    }
}

TEST(Morphisms, DropEmptyBlocks) {
    auto hat = make_model("SigmaHat:2");
    auto sigma = make_model("Sigma");
    for (int n = 0; n <= 2; ++n) EXPECT_TRUE(is_morphism(*hat, *sigma, [](int m, Key k) { return Vec(upsilon(m, k)); }, n));
}

TEST(Morphisms, SupportAndCompleteGraph) {
    auto sigma = make_model("Sigma");
    auto pi = make_model("Pi");
    auto g = make_model("G");
    for (int n = 0; n <= 3; ++n) {
        EXPECT_TRUE(is_morphism(*sigma, *pi, [](int m, Key k) { return Vec(support_map(m, k)); }, n));
        EXPECT_TRUE(is_morphism(*pi, *g, [](int m, Key k) { return Vec(complete_map(m, k)); }, n));
    }
}

TEST(Morphisms, SupportSendsQToQ) {
    auto sigma = make_model("Sigma");
    auto pi = make_model("Pi");
    for (int n = 0; n <= 4; ++n) {
        auto sup = key_map(*sigma, *pi, n, [](int m, Key k) { return Vec(support_map(m, k)); });
        auto lhs = compose(h_to_q(*pi, n), compose(sup, q_to_h(*sigma, n)));
        EXPECT_EQ(lhs, sup) << n;
    }
}

TEST(SelfDuality, GraphMapOnAnEdge) {
    GraphModel g;
    EXPECT_EQ(isograph_graphs(g, 2).apply(Vec(Key(1))), Vec(Key(0)));
    EXPECT_EQ(isograph_graphs(g, 2).apply(Vec(Key(0))), Vec(Key(0)) + Vec(Key(1)));
}

TEST(SelfDuality, MapsAreBimonoidMorphisms) {
    auto lq = std::make_shared<LinearModel>(Rational(2));
    auto pi = std::make_shared<PartitionModel>();
    auto g = std::make_shared<GraphModel>();
    auto s = std::make_shared<FaceModel>();
    DualModel dl(lq), dp(pi), dg(g), ds(s);
    for (int n = 0; n <= 3; ++n) {
        EXPECT_TRUE(is_dual_morphism(*lq, dl, [&](int m) { return isolinear(*lq, m); }, n)) << n;
        EXPECT_TRUE(is_dual_morphism(*pi, dp, [&](int m) { return isoflat(*pi, m); }, n)) << n;
        EXPECT_TRUE(is_dual_morphism(*g, dg, [&](int m) { return isograph_graphs(*g, m); }, n)) << n;
        EXPECT_TRUE(is_dual_morphism(*s, ds, [&](int m) { return isoface(*s, m); }, n)) << n;
    }
    EXPECT_EQ(isolinear(*lq, 3).rank(), 6u);
}

TEST(SelfDuality, FlatQGoesToScaledP) {
    PartitionModel p;
    for (int n = 0; n <= 4; ++n) {
        auto m = compose(q_to_h(p, n).transpose(), compose(isoflat(p, n), q_to_h(p, n)));
        for (Key x : p.basis(n)) EXPECT_EQ(m.apply(Vec(x)), Vec(x, cyclic_factorial(key_partition(n, x)))) << p.key_str(n, x);
    }
}
