#include <monogen/families.hpp>
#include <monogen/modular.hpp>
#include <monogen/polynomial.hpp>
#include <monogen/tower_ring.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace monogen;

namespace {

TowerPtr quadratic(long n) { return make_tower({{"x", {Rational(-n), 0, 1}}}); }

TowerElement random_element(const TowerPtr& r, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    TowerElement e(r);
    for (int k = 0; k < r->dim(); ++k) e[k] = make_rational(num(rng), den(rng));
    return e;
}

}  // namespace

TEST(TowerRing, MakeTowerDimensions) {
    auto r = quadratic(5);
    EXPECT_EQ(r->dim(), 2);
    auto r2 = make_tower({{"x", {-7, 0, 1}}, {"y", {-3, 0, 0, 1}}});
    EXPECT_EQ(r2->dim(), 6);
    auto r3 = make_tower({{"x", {-7, 0, 1}}, {"y", {-2, 0, 0, 0, 0, 0, 1}}, {"z", {1, -1, 1}}});
    EXPECT_EQ(r3->dim(), 24);
    EXPECT_THROW(make_tower({{"x", {-5, 0, 2}}}), InvariantViolation);
}

TEST(TowerRing, Arithmetic) {
    auto r = quadratic(5);
    auto x = TowerElement::generator(r, 0);
    EXPECT_EQ(x * x, TowerElement::scalar(r, 5));
    auto phi = (TowerElement::scalar(r, 1) + x) * Rational(1, 2);
    EXPECT_EQ(phi * phi, (TowerElement::scalar(r, 3) + x) * Rational(1, 2));
    auto c = make_tower({{"y", {-2, 0, 0, 1}}});
    auto y = TowerElement::generator(c, 0);
    EXPECT_EQ((y * y) * (y * y), y * Rational(2));
}

TEST(TowerRing, Invert) {
    auto r = quadratic(5);
    auto x = TowerElement::generator(r, 0);
    EXPECT_EQ(x.invert(), x * Rational(1, 5));
    EXPECT_EQ(TowerElement::scalar(r, 2).invert(), TowerElement::scalar(r, Rational(1, 2)));
    EXPECT_THROW(TowerElement(r).invert(), DivisionByZero);
    auto zd = make_tower({{"a", {-2, 0, 1}}, {"b", {-2, 0, 1}}});
    auto d = TowerElement::generator(zd, 0) - TowerElement::generator(zd, 1);
    EXPECT_THROW(d.invert(), ZeroDivisorError);

    // simplest cubic m = 1: (1+beta) * beta2 = -1
    auto g = make_tower({{"beta", {-1, -4, -1, 1}}});
    auto b = TowerElement::generator(g, 0);
    auto one = TowerElement::scalar(g, 1);
    auto b2 = -(one + b).invert();
    EXPECT_EQ((one + b) * b2, -one);
    // hand elimination: (1+b)^-1 = -(b^2 - 2b - 2)
    EXPECT_EQ(b2, b * b - b * Rational(2) - one * Rational(2));
}

TEST(TowerRing, CharPolyAndTrace) {
    auto r = quadratic(5);
    auto x = TowerElement::generator(r, 0);
    auto phi = (TowerElement::scalar(r, 1) + x) * Rational(1, 2);
    EXPECT_EQ(phi.char_poly(), (std::vector<Rational>{1, -1, -1}));
    EXPECT_EQ(TowerElement::scalar(r, 3).char_poly(), (std::vector<Rational>{1, -6, 9}));
    auto r2 = make_tower({{"x", {-7, 0, 1}}, {"y", {-3, 0, 0, 1}}});
    auto y = TowerElement::generator(r2, 1);
    EXPECT_EQ(y.char_poly(), (std::vector<Rational>{1, 0, 0, -6, 0, 0, 9}));
    EXPECT_EQ(TowerElement::scalar(r2, 1).trace(), 6);
    EXPECT_EQ(x.trace(), 0);
    EXPECT_EQ(phi.trace(), 1);
}

TEST(TowerRing, PropertiesOnFamilyRings) {
    std::mt19937_64 rng(0);
    std::vector<FamilyParams> ps{validate_params(Family::SimplestCubic, 5, 1), validate_params(Family::PureCubic, 7, 50),
                                 validate_params(Family::PureQuartic, -1, 3), validate_params(Family::SimplestQuartic, 5, 1),
                                 validate_params(Family::Sextic, std::nullopt, 2)};
    for (auto& p : ps) {
        for (auto ring : {field_ring(p), conjugate_table(p).ring}) {
            for (int t = 0; t < 40; ++t) {
                auto a = random_element(ring, rng), b = random_element(ring, rng), c = random_element(ring, rng);
                ASSERT_EQ((a + b) + c, a + (b + c));
                ASSERT_EQ(a * (b + c), a * b + a * c);
                ASSERT_EQ(a * b, b * a);
                ASSERT_EQ((a + b).trace(), a.trace() + b.trace());
                ASSERT_EQ((a * Rational(3, 7)).trace(), a.trace() * Rational(3, 7));
            }
        }
    }
}

TEST(TowerRing, CayleyHamiltonAndInverse) {
    std::mt19937_64 rng(1);
    auto p = validate_params(Family::PureCubic, 7, 50);
    auto ring = field_ring(p);
    for (int t = 0; t < 10; ++t) {
        auto a = random_element(ring, rng);
        auto cp = a.char_poly();
        TowerElement acc(ring);
        for (auto& c : cp) acc = acc * a + TowerElement::scalar(ring, c);
        EXPECT_TRUE(acc.is_zero());
        EXPECT_EQ(a * a.invert(), TowerElement::scalar(ring, 1));
    }
}

TEST(TowerRing, MultiPolyProducts) {
    long n = 3;
    auto r = quadratic(n);
    auto one = TowerElement::scalar(r, 1), x = TowerElement::generator(r, 0);
    auto p = MultiPoly::linear(r, {one, x}) * MultiPoly::linear(r, {one, -x});
    EXPECT_EQ(p.total_degree(), 2);
    EXPECT_EQ(p.terms().size(), 2u);
    auto split = content_split(p);
    EXPECT_EQ(split.content, 1);
    EXPECT_EQ(to_string(split.primitive), "x2^2 - 3*x3^2");

    std::mt19937_64 rng(2);
    std::vector<LinearForm> forms;
    std::uniform_int_distribution<int> d(-3, 3);
    for (int k = 0; k < 12; ++k) {
        LinearForm f;
        for (int v = 0; v < 11; ++v) f.push_back(TowerElement::scalar(r, d(rng) + (v == k % 11 ? 7 : 0)));
        forms.push_back(f);
    }
    auto big = expand_modular(r, forms);
    EXPECT_EQ(big.primitive.degree(), 12);
}

TEST(TowerRing, ContentSplit) {
    auto r = quadratic(5);
    auto s = [&](long c) { return TowerElement::scalar(r, c); };
    auto split = content_split(MultiPoly::linear(r, {s(6), s(9)}));
    EXPECT_EQ(split.content, 3);
    EXPECT_EQ(to_string(split.primitive), "2*x2 + 3*x3");
    auto x = TowerElement::generator(r, 0);
    auto sx = content_split(MultiPoly::linear(r, {x * Rational(2), x * Rational(-4)}));
    EXPECT_EQ(sx.content, 2);
    EXPECT_EQ(sx.monomial, 1);
    EXPECT_THROW(content_split(MultiPoly::linear(r, {s(1), x})), InvariantViolation);
}
