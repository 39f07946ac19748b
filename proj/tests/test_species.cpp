#include "sforge/axioms.hpp"
#include "sforge/registry.hpp"

#include <gtest/gtest.h>

using namespace sforge;

namespace {

// Delegates to a base model but flips the sign of one product.
class SignFlipModel final : public Model {
public:
    SignFlipModel(ModelPtr base, int n, Mask s, Key x, Key y) : base_(std::move(base)), n_(n), s_(s), x_(x), y_(y) {}
    std::string name() const override { return "flip:" + base_->name(); }
    ModelFlags flags() const override { return base_->flags(); }
    Vec relabel(int n, const Perm& sigma, Key k) const override { return base_->relabel(n, sigma, k); }
    Vec product(int n, Mask s, Key x, Key y) const override {
        Vec v = base_->product(n, s, x, y);
        if (n == n_ && s == s_ && x == x_ && y == y_) v *= Rational(-1);
        return v;
    }
    Vec2 coproduct(int n, Mask s, Key z) const override { return base_->coproduct(n, s, z); }
    Vec unit() const override { return base_->unit(); }
    Rational counit(Key k) const override { return base_->counit(k); }
    std::string key_str(int n, Key k) const override { return base_->key_str(n, k); }
    Key parse_key(int n, std::string_view s) const override { return base_->parse_key(n, s); }

protected:
    std::vector<Key> enumerate(int n) const override { return base_->basis(n); }

private:
    ModelPtr base_;
    int n_;
    Mask s_;
    Key x_, y_;
};

Key key(const Model& h, int n, std::string_view s) { return h.parse_key(n, s); }

bool all_pass(const std::vector<AxiomReport>& rs) {
    for (const auto& r : rs)
        if (!r.pass()) return false;
    return true;
}

}  // namespace

TEST(HigherMaps, OneBlockAndEmpty) {
    auto l = make_model("L");
    Vec x(key(*l, 3, "201"));
    EXPECT_EQ(higher_mu(*l, SetDecomposition{3, {7}}, TKey{x.begin()->first}), x);
    EXPECT_EQ(higher_mu(*l, SetDecomposition{0, {}}, TKey{}), l->unit());
    TVec d = higher_delta(*l, SetDecomposition{3, {7}}, x);
    EXPECT_EQ(d, TVec(TKey{x.begin()->first}));
}

TEST(HigherMaps, ExponentialProduct) {
    auto e = make_model("E");
    EXPECT_EQ(higher_mu(*e, SetDecomposition{2, {1, 2}}, TKey{0, 0}), Vec(Key(0)));
}

TEST(HigherMaps, LinearCoproduct) {
    auto l = make_model("L");
    TVec d = higher_delta(*l, SetDecomposition{2, {1, 2}}, Key(key(*l, 2, "01")));
    EXPECT_EQ(d, TVec(TKey{key(*l, 1, "0"), key(*l, 1, "0")}));
}

TEST(HigherMaps, FaceCoproductIsRestriction) {
    auto sigma = make_model("Sigma");
    for (int n = 1; n <= 4; ++n)
        for (const auto& f : enumerate_compositions(n))
            for (const auto& g : enumerate_compositions(n)) {
                TKey expect;
                for (Mask b : f.blocks) {
                    SetComposition part{popcount(b), {}};
                    for (Mask c : restrict_to(tits_product(f, g), b).blocks) part.blocks.push_back(standardize(c, b));
                    expect.push(composition_key(part));
                }
                EXPECT_EQ(higher_delta(*sigma, SetDecomposition::from(f), composition_key(g)), TVec(expect));
            }
}

TEST(HigherMaps, MuDeltaOfIdentityComposition) {
    auto pi = make_model("Pi");
    for (Key k : pi->basis(3)) EXPECT_EQ(mu_delta(*pi, SetDecomposition{3, {7}}, Vec(k)), Vec(k));
}

TEST(Axioms, ExponentialAllPassAtThree) {
    auto e = make_model("E");
    for (int n = 0; n <= 3; ++n) EXPECT_TRUE(all_pass(run_axiom_suite(*e, n)));
}

TEST(Axioms, QLinearCompatibility) {
    auto l = make_model("Lq:2");
    auto r = check_compatibility(*l, 3);
    EXPECT_TRUE(r.pass());
    EXPECT_GT(r.cases, 0);
}

TEST(Axioms, SuitesPassOnSmallDegrees) {
    for (auto name : {"L", "Lq:2", "Pi", "G", "Sigma", "Sigmaq:2", "dual:L", "dual:Pi", "had:L,Pi", "Q:Sigma", "P:Pi"})
        for (int n = 0; n <= 3; ++n) {
            auto h = make_model(name);
            for (const auto& r : run_axiom_suite(*h, n)) EXPECT_TRUE(r.pass()) << name << " " << r.axiom << " n=" << n;
        }
}

TEST(Axioms, DecompositionBimonoid) {
    auto h = make_model("SigmaHat:3");
    SuiteOptions opt;
    opt.decompositions = true;
    for (int n = 0; n <= 2; ++n)
        for (const auto& r : run_axiom_suite(*h, n, opt)) EXPECT_TRUE(r.pass()) << r.axiom << " n=" << n;
}

TEST(Axioms, CorruptedProductIsCaught) {
    auto l = make_model("L");
    auto bad = std::make_shared<SignFlipModel>(l, 3, 1, key(*l, 1, "0"), key(*l, 2, "01"));
    auto r = check_associativity(*bad, 3);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.counterexamples.empty());
    EXPECT_TRUE(check_associativity(*l, 3).pass());
}

TEST(Axioms, CorruptedProductBreaksCompatibility) {
    auto pi = make_model("Pi");
    auto bad = std::make_shared<SignFlipModel>(pi, 2, 1, Key(key(*pi, 1, "0")), Key(key(*pi, 1, "0")));
    EXPECT_FALSE(check_compatibility(*bad, 2).pass());
}

TEST(Axioms, CommutativityOnlyWhenFlagged) {
    auto l = make_model("L");
    EXPECT_TRUE(check_commutativity(*l, 3).skipped);
    auto pi = make_model("Pi");
    auto r = check_commutativity(*pi, 3);
    EXPECT_FALSE(r.skipped);
    EXPECT_TRUE(r.pass());
}

TEST(Relabel, IsAnActionOnFaces) {
    auto sigma = make_model("Sigma");
    Perm a{1, 2, 0}, b{0, 2, 1};
    Perm ab(3);
    for (std::size_t i = 0; i < 3; ++i) ab[i] = a[static_cast<std::size_t>(b[i])];
    for (Key k : sigma->basis(3)) EXPECT_EQ(relabel(*sigma, 3, ab, Vec(k)), relabel(*sigma, 3, a, relabel(*sigma, 3, b, Vec(k))));
}
