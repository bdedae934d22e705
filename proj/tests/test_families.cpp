#include <monogen/families.hpp>

#include <gtest/gtest.h>

using namespace monogen;

namespace {

Rational gram_det(const std::vector<TowerElement>& b) {
    Matrix<Rational> g(b.size(), std::vector<Rational>(b.size()));
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) g[i][j] = (b[i] * b[j]).trace();
    return det(g);
}

std::string error_of(Family f, std::optional<Integer> n, long m) {
    try {
        validate_params(f, n, m);
    } catch (const InvalidParameters& e) {
        std::string s = e.what();
        return s.substr(0, s.find(':'));
    }
    return "ok";
}

}  // namespace

TEST(Families, Validation) {
    auto a = validate_params(Family::SimplestCubic, 5, 1);
    EXPECT_EQ(a.keys.at("n"), 1);
    auto b = validate_params(Family::PureCubic, 7, 50);
    EXPECT_EQ(b.u, 2);
    EXPECT_EQ(b.v, 5);
    EXPECT_EQ(b.keys.at("m"), 14);
    EXPECT_EQ(error_of(Family::PureCubic, 7, 12), "v-divisible-by-2-or-3");
    EXPECT_EQ(error_of(Family::SimplestQuartic, 5, 3), "excluded-value");
    EXPECT_EQ(error_of(Family::PureCubic, 7, 16), "not-cubefree");
    EXPECT_EQ(error_of(Family::SimplestCubic, 4, 1), "not-squarefree");
    EXPECT_EQ(error_of(Family::SimplestCubic, 13, 1), "gcd-violation");
    EXPECT_EQ(error_of(Family::PureQuartic, 2, 2), "degenerate-composite");
    EXPECT_EQ(error_of(Family::PureQuartic, 6, 3), "gcd-violation");
    EXPECT_EQ(error_of(Family::SimplestQuartic, 3, 1), "ok");
    EXPECT_EQ(error_of(Family::SimplestQuartic, 2, 4), "degenerate-composite");
    EXPECT_EQ(error_of(Family::SimplestQuartic, 3, 22), "m0-odd-square");
    EXPECT_EQ(error_of(Family::Sextic, std::nullopt, -3), "excluded-value");
    EXPECT_EQ(error_of(Family::Sextic, 5, 2), "excluded-value");
    auto c = validate_params(Family::PureQuartic, -1, 7);
    EXPECT_EQ(c.keys.at("n"), 7);
    EXPECT_EQ(parse_family("quad-pure-quartic"), Family::PureQuartic);
    EXPECT_THROW(parse_family("cubic"), InvalidParameters);
}

TEST(Families, ComponentExamples) {
    auto q = component_basis(Part::Quadratic, 5);
    EXPECT_EQ(q.basis[1].str(), "1/2 + 1/2*alpha");
    EXPECT_EQ(q.discriminant, 5);
    auto pc = component_basis(Part::PureCubic, 50);
    EXPECT_EQ(pc.templates[2], "beta^2/v");
    EXPECT_EQ(pc.discriminant, -2700);
    auto pq = component_basis(Part::PureQuartic, 5);
    EXPECT_EQ(pq.discriminant, -2000);
    auto sc = component_basis(Part::SimplestCubic, 1);
    EXPECT_EQ(sc.discriminant, 169);
}

TEST(Families, ComponentDiscriminantsMatchGram) {
    struct Case {
        Part part;
        std::vector<long> params;
    };
    std::vector<Case> cases{
        {Part::Quadratic, {5, -3, 13, 2, 3, -1, 6, -5}},
        {Part::Omega, {0}},
        {Part::SimplestCubic, {1, 2, -1, 4}},
        {Part::PureCubic, {2, 50, 10, 17, 19, 7, 175, -26, 98}},
        {Part::PureQuartic, {2, 3, 7, 17, 33, -7, 5, 13, -3}},
        {Part::SimplestQuartic, {1, 5, 2, 6, 10, 4, 12, 20, 8, 24, 40}},
        {Part::PureSextic, {2, 3, 6, 5, 13, 21, 10, 19, 46, 26, 35, 62, 17, 53, 89, 1, 37, 73, -35}},
    };
    for (auto& c : cases)
        for (long a : c.params) {
            auto cb = component_basis(c.part, a);
            for (auto& e : cb.basis)
                for (auto& coef : e.char_poly()) ASSERT_TRUE(is_integral(coef)) << a << " " << e.str();
            EXPECT_EQ(gram_det(cb.basis), Rational(cb.discriminant)) << static_cast<int>(c.part) << " a=" << a;
        }
}

TEST(Families, ConjugatesAreRoots) {
    std::vector<FamilyParams> ps{validate_params(Family::SimplestCubic, 5, 1), validate_params(Family::PureCubic, 7, 50),
                                 validate_params(Family::PureCubic, -3, 2), validate_params(Family::PureQuartic, -1, 3),
                                 validate_params(Family::PureQuartic, 2, -2), validate_params(Family::PureQuartic, 5, 3),
                                 validate_params(Family::SimplestQuartic, 5, 1), validate_params(Family::Sextic, std::nullopt, 2)};
    for (auto& p : ps) {
        auto t = conjugate_table(p);
        auto K = field_ring(p);
        ASSERT_EQ(t.count(), p.degree);
        for (int g = 0; g < 2; ++g) {
            const auto& rel = K->gen(g).relation;
            for (auto& x : g == 0 ? t.alpha : t.beta) {
                TowerElement acc(t.ring);
                for (auto it = rel.rbegin(); it != rel.rend(); ++it) acc = acc * x + TowerElement::scalar(t.ring, *it);
                EXPECT_TRUE(acc.is_zero()) << p.label();
            }
        }
        // conjugates are pairwise distinct
        auto b = TowerElement::generator(K, 0) + TowerElement::generator(K, 1) * Rational(3);
        for (int i = 0; i < t.count(); ++i)
            for (int j = i + 1; j < t.count(); ++j) EXPECT_FALSE(t.embed(b, i) == t.embed(b, j));
    }
    auto sq = conjugate_table(validate_params(Family::SimplestQuartic, 5, 1));
    auto beta = sq.beta[0];
    EXPECT_EQ(sq.beta[2] * beta, TowerElement::scalar(sq.ring, -1));
}

TEST(Families, TablesLoadAndRowsAreDisjoint) {
    for (auto& fi : all_families())
        for (const char* kind : {"basis", "conditions"}) {
            const Table& t = load_table(fi.id, kind);
            ASSERT_FALSE(t.rows.empty());
            for (auto& r : t.rows) {
                if (std::string(kind) == "basis") {
                    ASSERT_EQ(static_cast<int>(r.basis.size()), fi.degree) << r.id;
                    EXPECT_EQ(r.basis[0], "1");
                }
                for (auto& s : sample_params(fi.id, r, 2, 0)) {
                    int hits = 0;
                    for (auto& r2 : t.rows) hits += r2.matches(s);
                    EXPECT_EQ(hits, 1) << fi.name << " " << kind << " row " << r.id << " " << s.label();
                }
            }
        }
    EXPECT_EQ(load_table(Family::PureQuartic, "basis").rows.size(), 17u);
    EXPECT_EQ(load_table(Family::Sextic, "basis").rows.size(), 24u);
}

TEST(Families, TableExamples) {
    auto p = validate_params(Family::SimplestCubic, 5, 1);
    auto K = field_ring(p);
    auto b = table_basis_elements(p, K);
    EXPECT_EQ(b[3].str(), "1/2 + 1/2*alpha");
    auto conds = table_conditions(p);
    ASSERT_EQ(conds.size(), 2u);
    EXPECT_EQ(conds[0].mod, 5);
    EXPECT_EQ(conds[0].a, 13);
    EXPECT_EQ(conds[1].mod, 13);
    EXPECT_EQ(conds[1].a, 125);
    auto q = validate_params(Family::PureQuartic, 3, 3 + 8);
    bool has16 = false;
    for (auto& c : table_conditions(q)) has16 = has16 || (c.mod == 11 && c.a == 16 && c.b == 1);
    EXPECT_TRUE(has16);
    auto s = validate_params(Family::Sextic, std::nullopt, 38);
    bool has9 = false;
    for (auto& c : table_conditions(s)) has9 = has9 || (c.mod == 38 && c.a == 9 && c.b == 1);
    EXPECT_TRUE(has9);
}

TEST(Families, InitialProductBasis) {
    auto p = validate_params(Family::SimplestCubic, 5, 1);
    auto K = field_ring(p);
    auto e = initial_product_elements(p, K);
    ASSERT_EQ(e.size(), 6u);
    EXPECT_EQ(e[4].str(), "1/2*beta + 1/2*alpha*beta");
    auto q = initial_product_basis(validate_params(Family::PureQuartic, 3, 2));
    for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < q.size(); ++j) EXPECT_EQ(q[i][j], i == j ? 1 : 0);
    auto s = initial_product_elements(validate_params(Family::Sextic, std::nullopt, 17), field_ring(validate_params(Family::Sextic, std::nullopt, 17)));
    EXPECT_EQ(s.size(), 12u);
}
