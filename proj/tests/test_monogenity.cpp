#include <monogen/monogenity.hpp>

#include <gtest/gtest.h>

using namespace monogen;

namespace {

Verdict C(Family f, std::optional<long> n, long m, CheckOptions opt = {}) {
    return check(f, n ? std::optional<Integer>(*n) : std::nullopt, m, opt);
}

const DerivedCondition& cond(const Verdict& v, int id) {
    for (auto& c : v.conditions)
        if (c.id == id) return c;
    throw std::out_of_range("no condition");
}

}  // namespace

TEST(Monogenity, SimplestCubic) {
    auto v = C(Family::SimplestCubic, 5, 1);
    EXPECT_EQ(v.status, Status::NotMonogenic);
    EXPECT_EQ(cond(v, 2).modulus, 13);
    EXPECT_EQ(*cond(v, 2).a, 125);
    EXPECT_FALSE(cond(v, 2).holds());
    EXPECT_EQ(v.witnesses().size(), 1u);
    auto w = C(Family::SimplestCubic, 3, 1);
    EXPECT_EQ(w.status, Status::Inconclusive);
    EXPECT_EQ(*cond(w, 2).a, 1728);  // 13 | 1729
}

TEST(Monogenity, PureQuarticGaussian) {
    auto v = C(Family::PureQuartic, -1, 7);
    EXPECT_EQ(v.status, Status::NotMonogenic);
    auto& c5 = cond(v, 5);
    EXPECT_EQ(c5.modulus, 7);
    EXPECT_EQ(*c5.a, 16);
    EXPECT_EQ(*c5.b, 1);
    EXPECT_FALSE(c5.holds());
    for (auto& x : v.crosscheck) EXPECT_TRUE(x.modulus_agree && x.values_agree && x.verdict_agree) << x.id;
}

TEST(Monogenity, SexticColumnFour) {
    auto v = C(Family::Sextic, std::nullopt, 11);
    EXPECT_EQ(v.mode, "probed");
    EXPECT_EQ(v.status, Status::NotMonogenic);
    auto& c4 = cond(v, 4);
    EXPECT_EQ(c4.modulus, 11);
    std::set<Rational> vals{*c4.a, *c4.b};
    EXPECT_EQ(vals, (std::set<Rational>{1, 9}));
    EXPECT_TRUE(v.crosscheck[3].values_agree);
    // probing and full expansion give the same verdict
    CheckOptions full;
    full.mode = ContentMode::Expand;
    auto e = C(Family::Sextic, std::nullopt, 2, full);
    auto q = C(Family::Sextic, std::nullopt, 2);
    ASSERT_EQ(e.conditions.size(), q.conditions.size());
    for (size_t i = 0; i < e.conditions.size(); ++i) {
        EXPECT_EQ(e.conditions[i].modulus, q.conditions[i].modulus);
        EXPECT_EQ(*e.conditions[i].a, *q.conditions[i].a);
        EXPECT_EQ(*e.conditions[i].b, *q.conditions[i].b);
    }
    EXPECT_EQ(e.status, q.status);
}

TEST(Monogenity, PureCubicRowSplit) {
    // n = 21,33 (mod 36): modulus 3m for m = 1,10,19 and m for m = 17,26,35
    for (auto [n, m, mod] : std::vector<std::tuple<long, long, long>>{{33, 10, 30}, {33, -17, 51}, {33, 26, 26}, {21, -10, 10}}) {
        auto v = C(Family::PureCubic, n, m);
        EXPECT_EQ(cond(v, 2).modulus, mod) << n << "," << m;
        for (auto& x : v.crosscheck) EXPECT_TRUE(x.modulus_agree && x.values_agree && x.verdict_agree) << n << "," << m;
    }
}

TEST(Monogenity, SimplestQuarticEvenM) {
    // m0 = 20: the m0/4 column gives 5 | 1 +- 1, which holds through 1 - 1 = 0
    auto v = C(Family::SimplestQuartic, -3, 2);
    auto& c5 = cond(v, 5);
    EXPECT_EQ(c5.modulus, 5);
    EXPECT_TRUE(c5.minus);
    EXPECT_TRUE(c5.holds());
    for (auto& x : v.crosscheck) EXPECT_TRUE(x.modulus_agree && x.values_agree && x.verdict_agree) << x.id;
}

TEST(Monogenity, Invalid) {
    auto v = C(Family::SimplestQuartic, 5, 3);
    EXPECT_EQ(v.status, Status::Invalid);
    EXPECT_NE(v.reason.find("excluded-value"), std::string::npos);
}

TEST(Monogenity, ScanDeterministic) {
    auto a = scan(Family::PureQuartic, Range{-1, -1}, Range{-20, 20}, {}, 1);
    auto b = scan(Family::PureQuartic, Range{-1, -1}, Range{-20, 20}, {}, 3);
    ASSERT_EQ(a.size(), b.size());
    ASSERT_EQ(a.size(), 41u);
    for (size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].m, b[i].m);
        EXPECT_EQ(a[i].status, b[i].status);
        EXPECT_EQ(a[i].witnesses().size(), b[i].witnesses().size());
    }
    EXPECT_TRUE(scan(Family::Sextic, std::nullopt, Range{5, 4}).empty());
}

TEST(Monogenity, QuarticISmall) {
    auto s = corollary_scan("quartic_i", 40);
    EXPECT_EQ(s.survivor_abs_m, (std::set<Integer>{3, 5, 15, 17}));
    EXPECT_TRUE(s.expectation_met);
}

TEST(Monogenity, SexticSetSmall) {
    auto s = corollary_scan("sextic_set", 31);
    EXPECT_TRUE(s.expectation_met);
    for (auto& m : s.survivor_abs_m) EXPECT_TRUE((std::set<Integer>{2, 3, 5, 6, 10, 15, 30}).count(m)) << m;
}
