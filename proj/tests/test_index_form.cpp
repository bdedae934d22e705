#include <monogen/index_form.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace monogen;

namespace {

FamilyParams P(Family f, std::optional<long> n, long m) {
    return validate_params(f, n ? std::optional<Integer>(*n) : std::nullopt, m);
}

std::vector<long long> random_point(std::mt19937_64& rng, int len) {
    std::vector<long long> x(len);
    for (auto& v : x) v = static_cast<long long>(rng() % 7) - 3;
    return x;
}

}  // namespace

TEST(IndexForm, FactorLayout) {
    for (auto [d, degrees] : std::vector<std::pair<int, std::vector<int>>>{
             {6, {6, 3, 6}}, {8, {8, 4, 4, 8, 4}}, {12, {12, 12, 6, 6, 12, 12, 6}}}) {
        auto specs = factor_specs(d);
        std::vector<int> got;
        std::set<std::pair<int, int>> pairs;
        for (auto& s : specs) {
            got.push_back(s.degree());
            for (auto& pd : s.pairs) EXPECT_TRUE(pairs.insert(std::minmax(pd.a, pd.b)).second);
        }
        EXPECT_EQ(got, degrees);
        EXPECT_EQ(static_cast<int>(pairs.size()), d * (d - 1) / 2);
    }
}

TEST(IndexForm, QuadraticDifference) {
    // L^(1) - L^(2) for the basis {1, omega} of Q(sqrt 5) is sqrt(5) X_2
    auto p = P(Family::SimplestCubic, 5, 1);
    auto lf = linear_forms(p, maximal_order_basis(p).basis);
    EXPECT_EQ(lf.nvars(), 5);
    EXPECT_EQ(lf.forms.size(), 6u);
    auto K = lf.conj.ring;
    auto omega = (TowerElement::scalar(K, 1) + TowerElement::generator(K, 0)) * Rational(1, 2);
    auto diff = lf.conj.embed(omega, 0) - lf.conj.embed(omega, 3);
    EXPECT_EQ(diff, TowerElement::generator(K, 0));
}

TEST(IndexForm, SimplestCubicContents) {
    auto p = P(Family::SimplestCubic, 5, 1);
    auto r = factor_report(p, {Expansion::Exact, 1, true});
    ASSERT_EQ(r.factors.size(), 3u);
    // f1 = (m^2+3m+9)^2, f2 = 5 sqrt 5, f3 = 1
    EXPECT_EQ(r.factors[0].content, 169);
    EXPECT_EQ(r.factors[0].monomial, 0);
    EXPECT_EQ(r.factors[1].content, 5);
    EXPECT_EQ(r.factors[1].w_square, 5);
    EXPECT_EQ(r.factors[2].content, 1);
    EXPECT_EQ(r.disc, 3570125);
    EXPECT_TRUE(r.identity_ok());
    EXPECT_TRUE(r.relations_ok());
}

TEST(IndexForm, ExactAndModularAgree) {
    for (auto p : {P(Family::PureCubic, 2, 10), P(Family::PureQuartic, -1, 3)}) {
        auto order = maximal_order_basis(p);
        auto a = factor_report(p, order, {Expansion::Exact, 1, false});
        auto b = factor_report(p, order, {Expansion::Modular, 2, false});
        ASSERT_EQ(a.factors.size(), b.factors.size());
        for (size_t i = 0; i < a.factors.size(); ++i) {
            EXPECT_EQ(a.factors[i].content, b.factors[i].content) << p.label();
            EXPECT_EQ(a.factors[i].monomial, b.factors[i].monomial) << p.label();
            EXPECT_EQ(a.factors[i].G, b.factors[i].G) << p.label();
        }
    }
}

TEST(IndexForm, IdentityAndRelations) {
    for (auto p : {P(Family::SimplestCubic, -1, 4), P(Family::PureCubic, -3, 2), P(Family::PureCubic, 7, 10),
                   P(Family::PureQuartic, -1, 3), P(Family::PureQuartic, 2, 3), P(Family::SimplestQuartic, 5, 1)}) {
        auto r = factor_report(p);
        EXPECT_TRUE(r.identity_ok()) << p.label();
        EXPECT_EQ(content_product(r.factors), Rational(abs(r.disc))) << p.label();
        for (auto& rel : r.relations) {
            EXPECT_TRUE(rel.integral) << p.label() << " " << rel.text;
            EXPECT_TRUE(rel.row_holds) << p.label() << " " << rel.text;
        }
    }
}

TEST(IndexForm, LiteralModuliThatFail) {
    // the proofs' single moduli fail in these residue classes; the table rows hold
    auto pc = factor_report(P(Family::PureCubic, 3, 10));
    EXPECT_FALSE(pc.relations[0].holds);
    EXPECT_TRUE(pc.relations[0].row_holds);
    EXPECT_EQ(pc.relations[0].effective, 4);
    auto sq = factor_report(P(Family::SimplestQuartic, -3, 2));
    EXPECT_FALSE(sq.relations[2].holds);
    EXPECT_TRUE(sq.relations[2].row_holds);
    EXPECT_EQ(sq.relations[2].effective, 5);
    // v > 1: modulus 3uv rather than 3m
    auto v7 = factor_report(P(Family::PureCubic, 3, -98));
    EXPECT_FALSE(v7.relations[1].row_holds);
    EXPECT_EQ(v7.relations[1].effective, 42);
}

TEST(IndexForm, EvalMatchesOracle) {
    std::mt19937_64 rng(0);
    for (auto p : {P(Family::SimplestCubic, 5, 1), P(Family::PureCubic, 33, 10), P(Family::PureQuartic, 2, 3),
                   P(Family::SimplestQuartic, 3, 2)}) {
        auto order = maximal_order_basis(p);
        auto r = factor_report(p, order, {Expansion::Modular, 1, false});
        for (int t = 0; t < 20; ++t) {
            auto x = random_point(rng, p.degree - 1);
            EXPECT_EQ(index_eval(r, x), index_oracle(p, order.basis, order.discriminant, x)) << p.label();
        }
        std::vector<long long> zero(p.degree - 1, 0);
        EXPECT_EQ(index_eval(r, zero), 0);
        EXPECT_EQ(index_oracle(p, order.basis, order.discriminant, zero), 0);
        // homogeneity of degree d(d-1)/2
        auto x = random_point(rng, p.degree - 1);
        auto x2 = x;
        for (auto& v : x2) v *= 2;
        EXPECT_EQ(index_oracle(p, order.basis, order.discriminant, x2),
                  index_oracle(p, order.basis, order.discriminant, x) * pow_int(2, p.degree * (p.degree - 1) / 2));
    }
}

TEST(IndexForm, PolyDiscriminant) {
    EXPECT_EQ(poly_discriminant({-5, 0, 1}), 20);
    EXPECT_EQ(poly_discriminant({-2, 0, 0, 1}), -108);
    EXPECT_EQ(poly_discriminant({-1, -4, -1, 1}), 169);  // x^3 - x^2 - 4x - 1, simplest cubic m = 1
}

TEST(IndexForm, ProbeMatchesExpansion) {
    for (auto p : {P(Family::SimplestCubic, 3, 1), P(Family::PureCubic, 2, 10), P(Family::PureQuartic, -1, 7),
                   P(Family::SimplestQuartic, -3, 2)}) {
        auto order = maximal_order_basis(p);
        auto full = factor_report(p, order, {Expansion::Modular, 1, false});
        auto probe = probe_contents(p, order);
        ASSERT_TRUE(probe.certified) << p.label();
        for (size_t i = 0; i < full.factors.size(); ++i) {
            EXPECT_EQ(probe.factors[i].content, full.factors[i].content) << p.label();
            EXPECT_EQ(probe.factors[i].monomial, full.factors[i].monomial) << p.label();
        }
    }
}

TEST(IndexForm, SexticSmallFactors) {
    auto p = P(Family::Sextic, std::nullopt, 2);
    auto order = maximal_order_basis(p);
    auto lf = linear_forms(p, order.basis);
    EXPECT_EQ(lf.forms.size(), 12u);
    EXPECT_EQ(lf.nvars(), 11);
    auto specs = factor_specs(12);
    auto probe = probe_contents(p, order);
    ASSERT_TRUE(probe.certified);
    for (int i : {2, 3, 6}) {
        auto f = expand_factor(lf, specs[i], Expansion::Modular);
        EXPECT_EQ(f.content, probe.factors[i].content);
        EXPECT_EQ(f.G.content(), 1);
    }
}
