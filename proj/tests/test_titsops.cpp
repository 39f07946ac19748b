#include "sforge/registry.hpp"
#include "sforge/tits.hpp"

#include <gtest/gtest.h>

using namespace sforge;

namespace {

// Tits product from its definition: nonempty intersections F_i ∩ G_j in lexicographic order.
SetComposition tits_oracle(const SetComposition& f, const SetComposition& g) {
    SetComposition out{f.n, {}};
    for (Mask a : f.blocks)
        for (Mask b : g.blocks)
            if (a & b) out.blocks.push_back(a & b);
    return out;
}

TitsElement h(int n, std::vector<Mask> blocks) { return tits_basis(SetComposition::make(n, std::move(blocks))); }

Vec lkey(const Model& l, int n, const char* s) { return Vec(l.parse_key(n, s)); }

}  // namespace

TEST(TitsAlgebra, ProductMatchesDefinition) {
    for (int n = 0; n <= 4; ++n)
        for (const auto& f : enumerate_compositions(n))
            for (const auto& g : enumerate_compositions(n))
                EXPECT_EQ(tits_multiply(tits_basis(f), tits_basis(g)), tits_basis(tits_oracle(f, g)));
}

TEST(TitsAlgebra, UnitAndIdempotentBasis) {
    for (int n = 0; n <= 3; ++n)
        for (const auto& f : enumerate_compositions(n)) {
            auto x = tits_basis(f);
            EXPECT_EQ(tits_multiply(x, x), x);
            EXPECT_EQ(tits_multiply(tits_unit(n), x), x);
            EXPECT_EQ(tits_multiply(x, tits_unit(n)), x);
        }
}

TEST(TitsAlgebra, EulerianIdempotent) {
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(tits_multiply(euler1(n), euler1(n)), euler1(n)) << n;
    EXPECT_EQ(euler1(2), h(2, {3}) - Rational(1, 2) * (h(2, {1, 2}) + h(2, {2, 1})));
}

TEST(TitsAlgebra, GarsiaReutenauerFamily) {
    for (int n = 1; n <= 4; ++n) {
        TitsElement sum{n, {}};
        auto parts = enumerate_partitions(n);
        for (const auto& x : parts) {
            sum = sum + garsia_reutenauer(x);
            for (const auto& y : parts) {
                auto p = tits_multiply(garsia_reutenauer(x), garsia_reutenauer(y));
                TitsElement expect = x == y ? garsia_reutenauer(x) : TitsElement{n, {}};
                EXPECT_EQ(p, expect) << encode(x) << " " << encode(y);
            }
        }
        EXPECT_EQ(sum, tits_unit(n));
        EXPECT_EQ(euler_k(n, 1), euler1(n));
    }
}

TEST(TitsAlgebra, DynkinQuasiIdempotent) {
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(tits_multiply(dynkin(n), dynkin(n)), Rational(n) * dynkin(n));
        TitsElement sum{n, {}};
        for (int i = 0; i < n; ++i) sum = sum + pdynkin(n, i);
        EXPECT_EQ(sum, dynkin(n));
    }
}

TEST(TitsAlgebra, PowerLaws) {
    const Rational ps[] = {Rational(-1), Rational(0), Rational(1), Rational(2), Rational(1, 2)};
    for (int n = 0; n <= 3; ++n)
        for (const auto& p : ps)
            for (const auto& q : ps) EXPECT_EQ(tits_multiply(h_power(n, p), h_power(n, q)), h_power(n, p * q));
    EXPECT_EQ(h_power(2, Rational(-1)), h(2, {1, 2}) + h(2, {2, 1}) - h(2, {3}));
    EXPECT_EQ(h_power(3, Rational(1)), tits_unit(3));
}

TEST(Characteristic, DynkinOnLinearOrders) {
    auto l = make_model("L");
    EXPECT_EQ(characteristic_op(*l, dynkin(2), lkey(*l, 2, "01")), lkey(*l, 2, "01") - lkey(*l, 2, "10"));
}

TEST(Characteristic, ActionLawOnCocommutativeModels) {
    for (auto name : {"L", "Pi", "Sigma", "G"}) {
        auto m = make_model(name);
        for (int n = 1; n <= 3; ++n) {
            auto fs = enumerate_compositions(n);
            for (std::size_t i = 0; i < fs.size(); i += 2)
                for (std::size_t j = 0; j < fs.size(); j += 3) {
                    auto z = tits_basis(fs[i]), w = tits_basis(fs[j]);
                    EXPECT_EQ(compose(psi(*m, z), psi(*m, w)), psi(*m, tits_multiply(z, w))) << name;
                }
        }
    }
}

TEST(Characteristic, FacesActOnThemselves) {
    auto s = make_model("Sigma");
    for (const auto& f : enumerate_compositions(3))
        for (const auto& g : enumerate_compositions(3))
            EXPECT_EQ(characteristic_op(*s, tits_basis(f), Vec(composition_key(g))), Vec(composition_key(tits_product(f, g))));
}

TEST(Primitives, SmallDimensions) {
    auto l = make_model("L");
    auto p2 = primitive_part(*l, 2);
    ASSERT_EQ(p2.size(), 1u);
    EXPECT_EQ(p2[0].coeff(l->parse_key(2, "01")), -p2[0].coeff(l->parse_key(2, "10")));
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(Rational(static_cast<long long>(primitive_part(*l, n).size())), factorial(n - 1));
        EXPECT_EQ(primitive_part(*make_model("Pi"), n).size(), 1u);
    }
    auto g = make_model("G");
    EXPECT_EQ(primitive_part(*g, 3).size(), 4u);
    for (const auto& x : primitive_part(*g, 3)) EXPECT_TRUE(is_primitive(*g, 3, x));
    EXPECT_THROW(primitive_part(*make_model("SigmaHat:2"), 1), UnsupportedStructure);
}

TEST(Primitives, Indecomposables) {
    auto l = make_model("L");
    auto pi = make_model("Pi");
    EXPECT_EQ(indecomposable_dim(*l, 1), 1u);
    for (int n = 2; n <= 4; ++n) EXPECT_EQ(indecomposable_dim(*l, n), 0u);
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(indecomposable_dim(*pi, n), 1u);
}

TEST(Cumulants, KnownSequences) {
    auto bell = dimension_sequence(*make_model("Pi"), 5);
    auto ones = dimension_sequence(*make_model("E"), 5);
    auto graphs = dimension_sequence(*make_model("G"), 4);
    auto orders = dimension_sequence(*make_model("L"), 5);
    for (int n = 1; n <= 5; ++n) {
        EXPECT_EQ(cumulant(bell, n), Rational(1));
        EXPECT_EQ(cumulant(ones, n), Rational(n == 1 ? 1 : 0));
        EXPECT_EQ(cumulant(orders, n), factorial(n - 1));
    }
    EXPECT_EQ(cumulant(graphs, 3), Rational(4));
    EXPECT_EQ(cumulant(graphs, 4), Rational(38));
}

TEST(Eulerian, RanksMatchCumulants) {
    auto r = eulerian_decomposition(*make_model("Sigma"), 3);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.rank_sum, 13u);
    auto rl = eulerian_decomposition(*make_model("L"), 3);
    EXPECT_TRUE(rl.pass());
    for (const auto& s : rl.summands)
        if (s.x.length() == 1) {
            EXPECT_EQ(s.rank, 2u);
        }
    EXPECT_THROW(eulerian_decomposition(*make_model("Lq:2"), 2), UnsupportedStructure);
}

TEST(Eulerian, CorruptedIdempotentIsCaught) {
    auto bad = [](const SetPartition& x) { return x.length() == 1 ? tits_unit(x.n) : garsia_reutenauer(x); };
    EXPECT_FALSE(eulerian_decomposition(*make_model("Pi"), 3, bad).pass());
}

TEST(Brackets, LeftBracketingOfThreeLetters) {
    auto l = make_model("L");
    std::vector<Vec> xs(3, lkey(*l, 1, "0"));
    auto f = SetComposition::make(3, {1, 2, 4});
    Vec expect = lkey(*l, 3, "012") - lkey(*l, 3, "102") - lkey(*l, 3, "201") + lkey(*l, 3, "210");
    EXPECT_EQ(left_bracketing(*l, f, xs), expect);
    EXPECT_EQ(left_bracketing_expansion(*l, f, xs), expect);
}

TEST(Brackets, ExpansionMatchesOnAllOrders) {
    auto l = make_model("L");
    for (int n = 1; n <= 4; ++n) {
        std::vector<Vec> xs(static_cast<std::size_t>(n), lkey(*l, 1, "0"));
        for (const auto& f : enumerate_compositions(n))
            if (f.length() == n) {
                EXPECT_EQ(left_bracketing(*l, f, xs), left_bracketing_expansion(*l, f, xs)) << encode(f);
            }
    }
}

TEST(Brackets, RejectsNonPrimitiveFactors) {
    auto l = make_model("L");
    std::vector<Vec> xs{lkey(*l, 2, "01"), lkey(*l, 1, "0")};
    EXPECT_THROW(left_bracketing(*l, SetComposition::make(3, {3, 4}), xs), std::invalid_argument);
}

TEST(Dynkin, ImageIsTheTopEigenspace) {
    auto l = make_model("L");
    for (int n = 1; n <= 4; ++n) {
        auto d = psi(*l, dynkin(n));
        EXPECT_EQ(compose(d, d), Rational(n) * d);
        EXPECT_EQ(Rational(static_cast<long long>(d.rank())), factorial(n - 1));
        for (const auto& col : d.columns()) EXPECT_TRUE(is_primitive(*l, n, col));
    }
}

TEST(Pbw, BijectiveAndCoproductPreserving) {
    for (auto name : {"L", "Pi", "Sigma", "E"})
        for (int n = 0; n <= 3; ++n) {
            auto r = pbw_check(*make_model(name), n);
            EXPECT_TRUE(r.bijective()) << name << n;
            EXPECT_TRUE(r.coproduct_preserving) << name << n;
        }
}
