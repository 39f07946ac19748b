#include "sforge/antipode.hpp"
#include "sforge/convolution.hpp"
#include "sforge/registry.hpp"

#include <gtest/gtest.h>

using namespace sforge;

namespace {

Vec vec(const Model& h, int n, std::initializer_list<std::pair<const char*, Rational>> terms) {
    Vec v;
    for (const auto& [k, c] : terms) v.add(h.parse_key(n, k), c);
    return v;
}

Vec apply_antipode(const Model& h, int n, const char* key, AntipodeMethod m) {
    return antipode(h, n, m).apply(Vec(h.parse_key(n, key)));
}

constexpr AntipodeMethod kAll[] = {AntipodeMethod::Takeuchi, AntipodeMethod::MilnorMooreLeft, AntipodeMethod::MilnorMooreRight,
                                   AntipodeMethod::ClosedForm};

}  // namespace

TEST(Antipode, ExponentialIsASign) {
    auto e = make_model("E");
    for (auto m : kAll) {
        EXPECT_EQ(apply_antipode(*e, 3, "I", m), vec(*e, 3, {{"I", Rational(-1)}}));
        EXPECT_EQ(apply_antipode(*e, 2, "I", m), vec(*e, 2, {{"I", Rational(1)}}));
    }
}

TEST(Antipode, PartitionsOfTwo) {
    auto p = make_model("Pi");
    for (auto m : kAll) EXPECT_EQ(apply_antipode(*p, 2, "01", m), vec(*p, 2, {{"01", Rational(-1)}, {"0.1", Rational(2)}}));
}

TEST(Antipode, GraphEdge) {
    auto g = make_model("G");
    for (auto m : kAll) EXPECT_EQ(apply_antipode(*g, 2, "2:e01", m), vec(*g, 2, {{"2:e01", Rational(-1)}, {"2:", Rational(2)}}));
}

TEST(Antipode, QLinearReversal) {
    auto l = make_model("Lq:2");
    for (auto m : kAll) EXPECT_EQ(apply_antipode(*l, 3, "012", m), vec(*l, 3, {{"210", Rational(-8)}}));
}

TEST(Antipode, FacesInQBasis) {
    auto q = make_model("Q:Sigma");
    for (auto m : kAll) {
        EXPECT_EQ(apply_antipode(*q, 2, "01", m), vec(*q, 2, {{"01", Rational(-1)}}));
        EXPECT_EQ(apply_antipode(*q, 2, "0|1", m), vec(*q, 2, {{"1|0", Rational(1)}}));
    }
}

TEST(Antipode, GraphsInQBasis) {
    auto q = make_model("Q:G");
    for (auto m : kAll) {
        EXPECT_EQ(apply_antipode(*q, 2, "2:e01", m), vec(*q, 2, {{"2:e01", Rational(-1)}}));
        EXPECT_EQ(apply_antipode(*q, 2, "2:", m), vec(*q, 2, {{"2:", Rational(1)}}));
    }
}

TEST(Antipode, TakeuchiVerifies) {
    auto p = make_model("Pi");
    auto r = verify_antipode(*p, 4, [&](int m) { return antipode_takeuchi(*p, m); });
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.cases, 30);
}

TEST(Antipode, IdentityIsRejected) {
    auto l = make_model("L");
    auto r = verify_antipode(*l, 2, [&](int m) { return LinMap<Key>::identity(l->basis(m)); });
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.counterexamples.empty());
}

TEST(Antipode, MethodsAgree) {
    for (auto name : {"E", "L", "Lq:2", "Lq:0", "Pi", "G", "Sigma", "Sigmaq:2", "dual:L", "dual:Pi", "Q:Sigma", "P:Pi", "P:G"}) {
        auto h = make_model(name);
        for (int n = 0; n <= 3; ++n) {
            auto ref = antipode_takeuchi(*h, n);
            for (auto m : kAll) EXPECT_EQ(antipode(*h, n, m), ref) << name << " " << method_str(m) << " n=" << n;
            EXPECT_TRUE(verify_antipode(*h, n, [&](int k) { return antipode_takeuchi(*h, k); }).pass()) << name;
        }
    }
}

TEST(Antipode, InvolutionWhenCommutativeOrCocommutative) {
    for (auto name : {"E", "L", "Pi", "G", "Sigma", "dual:L"}) {
        auto h = make_model(name);
        for (int n = 0; n <= 3; ++n) {
            auto s = antipode(*h, n, AntipodeMethod::ClosedForm);
            EXPECT_EQ(compose(s, s), LinMap<Key>::identity(h->basis(n))) << name << n;
        }
    }
    auto l = make_model("Lq:2");
    auto s = antipode(*l, 3, AntipodeMethod::ClosedForm);
    EXPECT_EQ(compose(s, s), Rational(64) * LinMap<Key>::identity(l->basis(3)));
}

TEST(Antipode, ConvolutionInverseOfIdentity) {
    for (auto name : {"L", "Pi", "Sigma"}) {
        auto h = make_model(name);
        auto s = OpSeries::from(*h, 3, [&](int n) { return antipode(*h, n, AntipodeMethod::ClosedForm); });
        auto id = OpSeries::identity(*h, 3);
        EXPECT_EQ(convolve(s, id), OpSeries::unit(*h, 3)) << name;
        EXPECT_EQ(convolve(id, s), OpSeries::unit(*h, 3)) << name;
    }
}

TEST(Antipode, GraphClosedFormOnAllGraphsOfFour) {
    auto g = make_model("G");
    auto t = antipode_takeuchi(*g, 4);
    ASSERT_EQ(g->dim(4), 64u);
    for (Key k : g->basis(4)) EXPECT_EQ(closed_antipode(*g, 4, k), t.apply(Vec(k))) << g->key_str(4, k);
}

TEST(Antipode, RequiresConnectedModel) {
    auto h = make_model("SigmaHat:2");
    EXPECT_THROW(antipode(*h, 2, AntipodeMethod::Takeuchi), UnsupportedStructure);
    EXPECT_THROW(antipode(*make_model("had:L,Pi"), 2, AntipodeMethod::ClosedForm), UnsupportedStructure);
}

TEST(Antipode, MethodNames) {
    for (auto m : kAll) EXPECT_EQ(parse_method(method_str(m)), m);
    EXPECT_THROW(parse_method("nope"), std::invalid_argument);
}
