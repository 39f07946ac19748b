#include "sforge/antipode.hpp"
#include "sforge/registry.hpp"
#include "sforge/series.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sforge;

namespace {

Series random_series(const Model& h, int nmax, unsigned seed, bool vanishing = true) {
    std::mt19937 rng(seed);
    return Series::from(h, nmax, [&](int n) {
        Vec v;
        if (n == 0 && vanishing) return v;
        for (Key k : h.basis(n)) v.add(k, Rational(static_cast<long long>(rng() % 7) - 3, static_cast<long long>(rng() % 3) + 1));
        return v;
    });
}

// Σ_k a_k s^{*k}, by repeated Cauchy products.
Series calculus_oracle(const std::function<Rational(int)>& a, const Series& s) {
    Series out = a(0) * Series::unit(s.model(), s.nmax());
    for (int k = 1; k <= s.nmax(); ++k) out = out + a(k) * cauchy_power(s, k);
    return out;
}

Series degree_one(const Model& h, int nmax, Key k) {
    Series s(h, nmax);
    s[1] = Vec(k);
    return s;
}

}  // namespace

TEST(Cauchy, UnitLaw) {
    auto l = make_model("L");
    auto s = random_series(*l, 3, 1, false);
    auto u = Series::unit(*l, 3);
    EXPECT_EQ(cauchy(u, s), s);
    EXPECT_EQ(cauchy(s, u), s);
}

TEST(Cauchy, ExponentialSeriesAdd) {
    auto e = make_model("E");
    EXPECT_EQ(cauchy(exp_series(*e, 5, Rational(2)), exp_series(*e, 5, Rational(-1, 3))), exp_series(*e, 5, Rational(5, 3)));
}

TEST(Cauchy, LinearGroupLikeSquares) {
    auto l = make_model("L");
    auto g = linear_group_like(*l, 4, Rational(1));
    EXPECT_EQ(cauchy(g, g), linear_group_like(*l, 4, Rational(2)));
    EXPECT_TRUE(is_group_like(g));
}

TEST(Cauchy, ExponentialSpeciesIsPowerSeries) {
    auto e = make_model("E");
    std::mt19937 rng(5);
    std::vector<Rational> a, b;
    for (int n = 0; n <= 5; ++n) {
        a.emplace_back(static_cast<long long>(rng() % 9) - 4);
        b.emplace_back(static_cast<long long>(rng() % 9) - 4);
    }
    auto sa = Series::from(*e, 5, [&](int n) { return a[static_cast<std::size_t>(n)] * Vec(Key(0)); });
    auto sb = Series::from(*e, 5, [&](int n) { return b[static_cast<std::size_t>(n)] * Vec(Key(0)); });
    auto c = cauchy(sa, sb);
    for (int n = 0; n <= 5; ++n) {
        Rational s;
        for (int k = 0; k <= n; ++k) s += binomial(Rational(n), k) * a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(n - k)];
        EXPECT_EQ(c[n].coeff(0), s);
    }
}

TEST(Calculus, MatchesRepeatedProducts) {
    auto s = make_model("Sigma");
    auto x = random_series(*s, 3, 2);
    auto a = [](int k) { return Rational(k * k - 2, k + 1); };
    EXPECT_EQ(functional_calculus(a, x), calculus_oracle(a, x));
    EXPECT_EQ(functional_calculus([](int k) { return Rational(k == 1 ? 1 : 0); }, x), x);
    EXPECT_EQ(functional_calculus([](int k) { return Rational(k == 2 ? 1 : 0); }, x), cauchy(x, x));
}

TEST(Calculus, ProductOfCoefficientSequences) {
    auto sigma = make_model("Sigma");
    auto x = euler_series(*sigma, 3);
    std::mt19937 rng(3);
    for (int t = 0; t < 5; ++t) {
        std::vector<Rational> a(4), b(4);
        for (int i = 0; i < 4; ++i) {
            a[static_cast<std::size_t>(i)] = Rational(static_cast<long long>(rng() % 7) - 3);
            b[static_cast<std::size_t>(i)] = Rational(static_cast<long long>(rng() % 7) - 3);
        }
        auto fa = [&](int k) { return k < 4 ? a[static_cast<std::size_t>(k)] : Rational(0); };
        auto fb = [&](int k) { return k < 4 ? b[static_cast<std::size_t>(k)] : Rational(0); };
        auto fab = [&](int k) {
            Rational c;
            for (int i = 0; i <= k; ++i) c += fa(i) * fb(k - i);
            return c;
        };
        EXPECT_EQ(functional_calculus(fab, x), cauchy(functional_calculus(fa, x), functional_calculus(fb, x)));
    }
}

TEST(ExpLog, RoundTripOnPartitions) {
    auto pi = make_model("Pi");
    auto x = random_series(*pi, 4, 9);
    EXPECT_EQ(series_log(series_exp(x)), x);
    auto g = standard_group_like(*pi, 4);
    EXPECT_EQ(series_exp(series_log(g)), g);
}

TEST(ExpLog, UniAndEuler) {
    auto sigma = make_model("Sigma");
    EXPECT_EQ(series_log(uni(*sigma, 5)), euler_series(*sigma, 5));
    EXPECT_EQ(series_exp(euler_series(*sigma, 5)), uni(*sigma, 5));
    auto e = make_model("E");
    EXPECT_EQ(series_log(exp_series(*e, 5, Rational(1))), degree_one(*e, 5, 0));
}

TEST(ExpLog, RequiresNormalizedInput) {
    auto sigma = make_model("Sigma");
    EXPECT_THROW(series_exp(uni(*sigma, 3)), std::invalid_argument);
    EXPECT_THROW(series_log(euler_series(*sigma, 3)), std::invalid_argument);
}

TEST(ExpLog, BijectionCheck) {
    for (auto name : {"Sigma", "Pi", "L", "E", "dual:L"}) {
        auto h = make_model(name);
        auto r = exp_log_bijection_check(*h, 3);
        EXPECT_TRUE(r.pass()) << name;
        for (const auto& c : r.checks) EXPECT_GT(c.cases, 0) << name << " " << c.axiom;
    }
}

TEST(Predicates, GroupLikeAndPrimitive) {
    auto sigma = make_model("Sigma");
    auto u = uni(*sigma, 4);
    auto e = euler_series(*sigma, 4);
    EXPECT_TRUE(is_group_like(u));
    EXPECT_FALSE(is_primitive(u));
    EXPECT_TRUE(is_primitive(e));
    EXPECT_FALSE(is_group_like(e));
    EXPECT_FALSE(is_exponential(u));
    EXPECT_TRUE(is_exponential(exp_series(*make_model("E"), 4, Rational(3))));
    EXPECT_TRUE(is_group_like(dual_distinguished(*make_model("dual:L"), 4)));
    EXPECT_TRUE(is_group_like(standard_group_like(*make_model("G"), 4)));
}

TEST(Predicates, Invariance) {
    auto sigma = make_model("Sigma");
    EXPECT_TRUE(is_invariant(uni(*sigma, 4)));
    EXPECT_TRUE(is_invariant(euler_series(*sigma, 4)));
    EXPECT_TRUE(is_invariant(series_power(uni(*sigma, 4), Rational(1, 3))));
    Series s(*sigma, 2);
    s[2] = Vec(sigma->parse_key(2, "0|1"));
    EXPECT_FALSE(is_invariant(s));
}

TEST(Powers, SquareRootOfUni) {
    auto sigma = make_model("Sigma");
    auto u = uni(*sigma, 4);
    auto r = series_power(u, Rational(1, 2));
    EXPECT_TRUE(is_group_like(r));
    EXPECT_EQ(cauchy(r, r), u);
}

TEST(Powers, ExponentLaws) {
    auto pi = make_model("Pi");
    auto g = standard_group_like(*pi, 4);
    const Rational cs[] = {Rational(1, 2), Rational(-1), Rational(2)};
    for (const auto& c : cs)
        for (const auto& d : cs) {
            EXPECT_EQ(cauchy(series_power(g, c), series_power(g, d)), series_power(g, c + d));
            EXPECT_EQ(series_power(series_power(g, c), d), series_power(g, c * d));
        }
    EXPECT_EQ(series_power(g, Rational(3)), cauchy_power(g, 3));
}

TEST(Transport, PrimitivesMoveWithGroupLikes) {
    auto sigma = make_model("Sigma");
    auto g = uni(*sigma, 3);
    auto h = series_power(g, Rational(1, 2));
    auto f = series_power(g, Rational(-1));
    auto x = g - h;
    EXPECT_TRUE(is_gh_primitive(x, g, h));
    EXPECT_TRUE(is_gh_primitive(cauchy(f, x), cauchy(f, g), cauchy(f, h)));
    EXPECT_FALSE(is_gh_primitive(x, g, g));
}

TEST(Hadamard, GroupLikesMultiply) {
    auto l = make_model("L");
    auto had = std::make_shared<HadamardModel>(l, l);
    auto g = linear_group_like(*l, 3, Rational(1));
    auto gg = hadamard(*had, g, g);
    EXPECT_TRUE(is_group_like(gg));
    auto sigma = make_model("Sigma");
    auto hs = std::make_shared<HadamardModel>(sigma, sigma);
    EXPECT_TRUE(is_group_like(hadamard(*hs, uni(*sigma, 3), uni(*sigma, 3))));
}

TEST(Psi, DistinguishedElements) {
    for (auto name : {"L", "Pi", "G", "Sigma", "E"}) {
        auto h = make_model(name);
        const int nmax = 3;
        auto id = OpSeries::identity(*h, nmax);
        EXPECT_EQ(psi_series(*h, nmax, tits_unit), id) << name;
        for (int p = 0; p <= 3; ++p)
            EXPECT_EQ(psi_series(*h, nmax, [p](int n) { return h_power(n, Rational(p)); }), id.power(p)) << name << p;
        auto s = OpSeries::from(*h, nmax, [&](int n) { return antipode(*h, n, AntipodeMethod::Takeuchi); });
        EXPECT_EQ(psi_series(*h, nmax, [](int n) { return h_power(n, Rational(-1)); }), s) << name;
        EXPECT_EQ(psi_series(*h, nmax, euler1), id.log()) << name;
    }
}

TEST(Psi, ExpOfEulerIsComonoidMorphism) {
    auto sigma = make_model("Sigma");
    auto phi = psi_series(*sigma, 3, euler1).exp();
    EXPECT_TRUE(is_comonoid_morphism(phi));
    EXPECT_EQ(phi, OpSeries::identity(*sigma, 3));
    EXPECT_FALSE(is_comonoid_morphism(psi_series(*sigma, 3, euler1)));
}
