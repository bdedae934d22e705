#include <monogen/maximal_order.hpp>

#include <gtest/gtest.h>

using namespace monogen;

namespace {

TowerPtr q5() { return make_tower({{"x", {-5, 0, 1}}}); }

FamilyParams P(Family f, std::optional<long> n, long m) {
    return validate_params(f, n ? std::optional<Integer>(*n) : std::nullopt, m);
}

}  // namespace

TEST(MaximalOrder, QuadraticDiscriminants) {
    auto K = q5();
    BasisMatrix z{{1, 0}, {0, 1}};
    BasisMatrix w{{1, 0}, {Rational(1, 2), Rational(1, 2)}};
    EXPECT_EQ(basis_discriminant(z, K), 20);
    EXPECT_EQ(basis_discriminant(w, K), 5);
}

TEST(MaximalOrder, Integrality) {
    auto K = q5();
    EXPECT_TRUE(is_integral(TowerElement(K, {Rational(1, 2), Rational(1, 2)})));
    EXPECT_FALSE(is_integral(TowerElement(K, {0, Rational(1, 2)})));
    auto p = P(Family::SimplestCubic, 5, 1);
    auto F = field_ring(p);
    auto a = TowerElement::generator(F, 0);
    EXPECT_TRUE(is_integral((a + TowerElement::scalar(F, 1)) * Rational(1, 2)));
}

TEST(MaximalOrder, EnlargeQuadratic) {
    auto K = q5();
    BasisMatrix z{{1, 0}, {0, 1}};
    auto r = p_enlarge(z, K, 2);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->basis, (BasisMatrix{{1, 0}, {Rational(1, 2), Rational(1, 2)}}));
    EXPECT_EQ(r->step.disc_before, 20);
    EXPECT_EQ(r->step.disc_after, 5);
    EXPECT_EQ(r->step.row, 1);
    EXPECT_FALSE(p_enlarge(r->basis, K, 2).has_value());
    auto e = p_enlarge_enumerate(z, K, 2);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->basis, r->basis);
    std::vector<EnlargeStep> log;
    auto m = p_maximal(z, K, 2, &log);
    EXPECT_EQ(log.size(), 1u);
    EXPECT_EQ(m, r->basis);
    EXPECT_EQ(p_maximal(m, K, 2), m);
    EXPECT_EQ(p_maximal(z, K, 7), z);
}

TEST(MaximalOrder, EnlargePureCubicAtThree) {
    auto p = P(Family::PureCubic, 2, 10);
    auto K = field_ring(p);
    // the product basis already holds the component basis element with denominator 3,
    // so start from the power products
    EXPECT_FALSE(p_enlarge(initial_product_basis(p), K, 3).has_value());
    BasisMatrix b(6, std::vector<Rational>(6, 0));
    for (int i = 0; i < 6; ++i) b[i][i] = 1;
    auto r = p_enlarge(b, K, 3);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->step.disc_before, r->step.disc_after * 9);
    auto e = p_enlarge_enumerate(b, K, 3);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->step.disc_after, r->step.disc_after);
}

TEST(MaximalOrder, EnumerationAgreesOnDegreeSix) {
    for (auto p : {P(Family::SimplestCubic, 5, 1), P(Family::PureCubic, 3, 26), P(Family::PureCubic, 33, 10), P(Family::PureCubic, -3, 10)}) {
        auto K = field_ring(p);
        for (long q : {2, 3}) {
            BasisMatrix b = hnf(initial_product_basis(p));
            for (int guard = 0; guard < 10; ++guard) {
                auto r = p_enlarge(b, K, q);
                auto e = p_enlarge_enumerate(b, K, q);
                ASSERT_EQ(r.has_value(), e.has_value()) << p.label() << " p=" << q;
                if (!r) break;
                EXPECT_EQ(r->step.disc_after, e->step.disc_after);
                b = r->basis;
            }
        }
    }
}

TEST(MaximalOrder, CrtWeights) {
    auto w = crt_weights(4, 3);
    EXPECT_EQ(w.ya, 1);
    EXPECT_EQ(w.yb, 3);
    EXPECT_EQ(Integer(4 * w.ya + 3 * w.yb), 13);
    EXPECT_EQ(w.ell, 1);
    BasisMatrix id{{1, 0}, {0, 1}};
    EXPECT_EQ(crt_combine(id, id, 2, 3), id);
    auto K = q5();
    BasisMatrix w2{{1, 0}, {Rational(1, 2), Rational(1, 2)}};
    EXPECT_EQ(crt_combine(w2, id, 2, 3), w2);
}

TEST(MaximalOrder, SimplestCubicPipeline) {
    auto p = P(Family::SimplestCubic, 5, 1);
    auto rep = maximal_order_basis(p);
    EXPECT_EQ(rep.initial_discriminant, Integer(125) * 28561);
    EXPECT_EQ(rep.discriminant, Integer(125) * 28561);
    EXPECT_TRUE(rep.log.empty());
    EXPECT_TRUE(verify_table_basis(p, rep).match());
}

TEST(MaximalOrder, TableExamples) {
    for (auto p : {P(Family::SimplestQuartic, 5, 1), P(Family::PureCubic, 3, 26), P(Family::PureCubic, 33, 10),
                   P(Family::PureQuartic, -1, 3), P(Family::Sextic, std::nullopt, 2), P(Family::Sextic, std::nullopt, 17)}) {
        auto rep = maximal_order_basis(p);
        auto tc = verify_table_basis(p, rep);
        EXPECT_TRUE(tc.integral()) << p.label();
        EXPECT_TRUE(tc.disc_match()) << p.label() << " table " << tc.table_discriminant.get_str() << " vs " << rep.discriminant.get_str();
        EXPECT_TRUE(tc.unimodular()) << p.label();
        EXPECT_FALSE(rep.crt_fallback) << p.label();
        for (auto& s : rep.log) EXPECT_EQ(s.disc_before, s.disc_after * Rational(s.p * s.p));
    }
}

TEST(MaximalOrder, DiscriminantLowerBounds) {
    // pure cubic: 3 n0^3 (u0 v)^4 | D_K; simplest quartic: n1^4 m1^2 | D_K
    auto strip = [](Integer x, std::initializer_list<long> ps) {
        x = abs(x);
        for (long q : ps)
            while (x % q == 0) x /= q;
        return x;
    };
    for (auto [n, m] : std::vector<std::pair<long, long>>{{7, 50}, {7, 10}, {-3, 2}, {3, 26}, {33, 10}}) {
        auto p = P(Family::PureCubic, n, m);
        auto D = maximal_order_basis(p).discriminant;
        Integer bound = 3 * pow_int(strip(p.n, {2, 3}), 3) * pow_int(strip(p.u, {2, 3}) * p.v, 4);
        EXPECT_EQ(D % bound, 0) << p.label();
    }
    for (auto [n, m] : std::vector<std::pair<long, long>>{{5, 1}, {3, 2}, {-1, 5}}) {
        auto p = P(Family::SimplestQuartic, n, m);
        auto D = maximal_order_basis(p).discriminant;
        Integer bound = pow_int(strip(p.n, {2}), 4) * pow_int(strip(p.m0, {2}), 2);
        EXPECT_EQ(D % bound, 0) << p.label();
    }
}

TEST(MaximalOrder, TableErrata) {
    // printed rows that fail, and their corrected readings
    for (auto p : {P(Family::PureCubic, 3, -98), P(Family::Sextic, std::nullopt, -7)}) {
        auto rep = maximal_order_basis(p);
        const auto& row = table_row(p, "basis");
        ASSERT_FALSE(row.erratum_basis.empty()) << p.label();
        EXPECT_FALSE(verify_table_basis(p, rep).match()) << p.label();
        EXPECT_TRUE(verify_table_basis(p, rep, true).match()) << p.label();
    }
}
