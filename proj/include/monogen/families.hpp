#pragma once

#include "arith.hpp"
#include "expr.hpp"
#include "linalg.hpp"
#include "tower_ring.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#ifndef MONOGEN_DATA_DIR
#define MONOGEN_DATA_DIR "data/tables"
#endif

namespace monogen {

using BasisMatrix = Matrix<Rational>;

enum class Family { SimplestCubic, PureCubic, PureQuartic, SimplestQuartic, Sextic };

struct FamilyInfo {
    Family id;
    const char* name;
    const char* cli;
    int degree;
    bool has_n;
};

inline const std::vector<FamilyInfo>& all_families() {
    static const std::vector<FamilyInfo> infos{
        {Family::SimplestCubic, "quad_simplest_cubic", "quad-simplest-cubic", 6, true},
        {Family::PureCubic, "quad_pure_cubic", "quad-pure-cubic", 6, true},
        {Family::PureQuartic, "quad_pure_quartic", "quad-pure-quartic", 8, true},
        {Family::SimplestQuartic, "quad_simplest_quartic", "quad-simplest-quartic", 8, true},
        {Family::Sextic, "omega_pure_sextic", "omega-pure-sextic", 12, false},
    };
    return infos;
}

inline const FamilyInfo& info(Family f) {
    for (auto& i : all_families())
        if (i.id == f) return i;
    throw InvalidParameters("unknown family");
}

inline Family parse_family(const std::string& s) {
    for (auto& i : all_families())
        if (s == i.name || s == i.cli) return i.id;
    throw InvalidParameters("unknown family '" + s + "'");
}

struct FamilyParams {
    Family family = Family::SimplestCubic;
    Integer n = 0;  // -3 for the sextic family, where L = Q(omega)
    Integer m = 0;
    Integer u = 0, v = 0, m0 = 0;
    int degree = 0;
    std::map<std::string, long> keys;  // least nonnegative residues

    bool has_n() const { return info(family).has_n; }
    int half() const { return degree / 2; }
    std::string label() const {
        std::string s = info(family).name;
        if (has_n()) s += " n=" + n.get_str();
        return s + " m=" + m.get_str();
    }
};

// residue moduli used by the tables
inline std::map<std::string, long> key_moduli(Family f) {
    switch (f) {
        case Family::SimplestCubic: return {{"n", 4}};
        case Family::PureCubic: return {{"n", 36}, {"m", 36}};
        case Family::PureQuartic: return {{"n", 8}, {"m", 8}};
        case Family::SimplestQuartic: return {{"n", 8}, {"m", 16}};
        case Family::Sextic: return {{"m", 36}};
    }
    return {};
}

inline long residue(const Integer& a, long mod) { return mod_nonneg(a, Integer(mod)).get_si(); }

namespace detail {

[[noreturn]] inline void reject(const std::string& clause, const std::string& detail) {
    throw InvalidParameters(clause + ": " + detail);
}

inline void need_squarefree(const Integer& x, const std::string& what) {
    if (!is_squarefree(x)) reject("not-squarefree", what + "=" + x.get_str() + " is not squarefree");
}

}  // namespace detail

inline FamilyParams validate_params(Family f, std::optional<Integer> n_in, const Integer& m) {
    using detail::reject;
    FamilyParams p;
    p.family = f;
    p.m = m;
    p.degree = info(f).degree;
    if (info(f).has_n) {
        if (!n_in) reject("missing-parameter", "n is required for " + std::string(info(f).name));
        p.n = *n_in;
        if (p.n == 0 || p.n == 1) reject("excluded-value", "n must not be 0 or 1");
        detail::need_squarefree(p.n, "n");
    } else {
        if (n_in) reject("excluded-value", "n is fixed for " + std::string(info(f).name));
        p.n = -3;
    }

    switch (f) {
        case Family::SimplestCubic: {
            Integer q = m * m + 3 * m + 9;
            detail::need_squarefree(q, "m^2+3m+9");
            if (gcd(p.n, q) != 1) reject("gcd-violation", "n and m^2+3m+9 are not coprime");
            break;
        }
        case Family::PureCubic: {
            if (m == 0 || m == 1 || m == -1) reject("excluded-value", "m must not be 0 or +-1");
            if (!is_cubefree(m)) reject("not-cubefree", "m=" + m.get_str() + " is not cubefree");
            Integer g = gcd(p.n, m);
            if (g != 1 && g != 2 && g != 3) reject("gcd-violation", "gcd(n,m)=" + g.get_str() + " not in {1,2,3}");
            p.u = m < 0 ? -1 : 1;
            p.v = 1;
            for (auto& [q, e] : factorize(m)) (e == 1 ? p.u : p.v) *= q;
            if (p.v % 2 == 0 || p.v % 3 == 0)
                reject("v-divisible-by-2-or-3", "m=uv^2 with v=" + p.v.get_str() + " divisible by 2 or 3");
            break;
        }
        case Family::PureQuartic: {
            if (m == 0 || m == 1) reject("excluded-value", "m must not be 0 or 1");
            detail::need_squarefree(m, "m");
            Integer g = gcd(p.n, m);
            if (g != 1 && g != 2) reject("gcd-violation", "gcd(n,m)=" + g.get_str() + " not in {1,2}");
            if (p.n == m) reject("degenerate-composite", "m = n gives a field of degree 4");
            if (m == -1 && abs(p.n) == 2) reject("degenerate-composite", "Q(sqrt(n)) lies in Q(m^(1/4)) for m=-1");
            break;
        }
        case Family::SimplestQuartic: {
            if (m == 0 || m == 3 || m == -3) reject("excluded-value", "m must not be 0 or +-3");
            p.m0 = m * m + 16;
            for (auto& [q, e] : factorize(p.m0))
                if (q != 2 && e > 1) reject("m0-odd-square", "m0=" + p.m0.get_str() + " is divisible by " + q.get_str() + "^2");
            Integer g = gcd(p.n, p.m0);
            if (g != 1 && g != 2) reject("gcd-violation", "gcd(n,m0)=" + g.get_str() + " not in {1,2}");
            if (p.n == squarefree_part(p.m0)) reject("degenerate-composite", "Q(sqrt(n)) is the quadratic subfield of M");
            break;
        }
        case Family::Sextic: {
            if (m == 0 || m == 1 || m == -1 || m == -3) reject("excluded-value", "m must not be 0, +-1 or -3");
            detail::need_squarefree(m, "m");
            break;
        }
    }
    for (auto& [k, mod] : key_moduli(f)) p.keys[k] = residue(k == "n" ? p.n : m, mod);
    return p;
}

// ---- component fields ----

enum class Part { Quadratic, Omega, SimplestCubic, PureCubic, PureQuartic, SimplestQuartic, PureSextic };

struct ComponentBasis {
    TowerPtr ring;  // Q[x]/(relation) with generator named alpha, omega or beta
    std::vector<std::string> templates;
    std::vector<TowerElement> basis;
    Integer discriminant;  // closed formula
};

inline UniPoly generator_relation(Part part, const Integer& a) {
    Rational q(a);
    switch (part) {
        case Part::Quadratic: return {-q, 0, 1};
        case Part::Omega: return {1, -1, 1};
        case Part::SimplestCubic: return {-1, -(q + 3), -q, 1};
        case Part::PureCubic: return {-q, 0, 0, 1};
        case Part::PureQuartic: return {-q, 0, 0, 0, 1};
        case Part::SimplestQuartic: return {1, q, -6, -q, 1};
        case Part::PureSextic: return {-q, 0, 0, 0, 0, 0, 1};
    }
    return {};
}

inline const char* generator_name(Part part) {
    if (part == Part::Quadratic) return "alpha";
    if (part == Part::Omega) return "omega";
    return "beta";
}

inline std::vector<Expr> parse_all(const std::vector<std::string>& ts) {
    std::vector<Expr> out;
    for (auto& t : ts) out.push_back(Expr::parse(t));
    return out;
}

inline std::vector<TowerElement> eval_all(const std::vector<std::string>& ts, const Expr::Bindings& env, const TowerPtr& ring) {
    std::vector<TowerElement> out;
    for (auto& e : parse_all(ts)) out.push_back(e.eval(env).as_element(ring));
    return out;
}

inline ComponentBasis component_basis(Part part, const Integer& a) {
    ComponentBasis cb;
    cb.ring = make_tower({{generator_name(part), generator_relation(part, a)}});
    Expr::Bindings env;
    env[generator_name(part)] = TowerElement::generator(cb.ring, 0);
    auto fail = [&] { throw InvalidParameters("component parameter outside the case list: " + a.get_str()); };
    switch (part) {
        case Part::Quadratic:
            if (mod_nonneg(a, 4) == 1) {
                cb.templates = {"1", "(1+alpha)/2"};
                cb.discriminant = a;
            } else {
                cb.templates = {"1", "alpha"};
                cb.discriminant = 4 * a;
            }
            break;
        case Part::Omega:
            cb.templates = {"1", "omega"};
            cb.discriminant = -3;
            break;
        case Part::SimplestCubic: {
            cb.templates = {"1", "beta", "beta^2"};
            Integer q = a * a + 3 * a + 9;
            cb.discriminant = q * q;
            break;
        }
        case Part::PureCubic: {
            Integer u = a < 0 ? -1 : 1, v = 1;
            for (auto& [q, e] : factorize(a)) {
                if (e > 2) fail();
                (e == 1 ? u : v) *= q;
            }
            env["u"] = Rational(u);
            env["v"] = Rational(v);
            if (mod_nonneg(u * u - v * v, 9) != 0) {
                cb.templates = {"1", "beta", "beta^2/v"};
                cb.discriminant = -27 * u * u * v * v;
            } else {
                cb.templates = {"1", "beta", "(v^2+u*v^2*beta+beta^2)/(3*v)"};
                cb.discriminant = -3 * u * u * v * v;
            }
            break;
        }
        case Part::PureQuartic: {
            Integer m3 = a * a * a;
            long r = residue(a, 8);
            if (r % 4 == 2 || r % 4 == 3) {
                cb.templates = {"1", "beta", "beta^2", "beta^3"};
                cb.discriminant = -256 * m3;
            } else if (r == 1) {
                cb.templates = {"1", "beta", "(1+beta^2)/2", "(1+beta+beta^2+beta^3)/4"};
                cb.discriminant = -4 * m3;
            } else if (r == 5) {
                cb.templates = {"1", "beta", "(1+beta^2)/2", "(beta+beta^3)/2"};
                cb.discriminant = -16 * m3;
            } else {
                fail();
            }
            break;
        }
        case Part::SimplestQuartic: {
            Integer m0 = a * a + 16;
            unsigned v2 = a == 0 ? 99 : valuation(a, 2);
            long idx;
            if (v2 == 0) {
                cb.templates = {"1", "beta", "beta^2", "(1+beta^3)/2"};
                idx = 2;
            } else if (v2 == 1) {
                cb.templates = {"1", "beta", "(1+beta^2)/2", "(beta+beta^3)/2"};
                idx = 4;
            } else if (v2 == 2) {
                cb.templates = {"1", "beta", "(1+beta^2)/2", "(1+beta+beta^2+beta^3)/4"};
                idx = 8;
            } else {
                cb.templates = {"1", "beta", "(1+2*beta-beta^2)/4", "(1+beta+beta^2+beta^3)/4"};
                idx = 16;
            }
            cb.discriminant = 4 * m0 * m0 * m0 / (idx * idx);
            break;
        }
        case Part::PureSextic: {
            long r = residue(a, 36);
            auto in = [r](std::initializer_list<long> s) { return std::find(s.begin(), s.end(), r) != s.end(); };
            long idx;
            if (in({2, 3, 6, 7, 11, 14, 15, 22, 23, 30, 31, 34})) {
                cb.templates = {"1", "beta", "beta^2", "beta^3", "beta^4", "beta^5"};
                idx = 1;
            } else if (in({5, 13, 21, 25, 29, 33})) {
                cb.templates = {"1", "beta", "beta^2", "(1+beta^3)/2", "(beta+beta^4)/2", "(beta^2+beta^5)/2"};
                idx = 8;
            } else if (in({10, 19})) {
                cb.templates = {"1", "beta", "beta^2", "beta^3", "(1+beta^2+beta^4)/3", "(beta+beta^3+beta^5)/3"};
                idx = 9;
            } else if (in({26, 35})) {
                cb.templates = {"1", "beta", "beta^2", "beta^3", "(1+2*beta^2+beta^4)/3", "(beta+2*beta^3+beta^5)/3"};
                idx = 9;
            } else if (r == 17) {
                cb.templates = {"1", "beta", "beta^2", "(1+beta^3)/2", "(4+3*beta+2*beta^2+beta^4)/6",
                                "(4*beta+3*beta^2+2*beta^3+beta^5)/6"};
                idx = 72;
            } else if (r == 1) {
                cb.templates = {"1", "beta", "beta^2", "(1+beta^3)/2", "(4+3*beta+4*beta^2+beta^4)/6",
                                "(3+4*beta+3*beta^2+beta^3+beta^5)/6"};
                idx = 72;
            } else {
                fail();
            }
            Integer m5 = pow_int(a, 5);
            cb.discriminant = Integer(46656) * m5 / (idx * idx);
            break;
        }
    }
    cb.basis = eval_all(cb.templates, env, cb.ring);
    return cb;
}

inline Part quadratic_part(Family f) { return f == Family::Sextic ? Part::Omega : Part::Quadratic; }

inline Part field_part(Family f) {
    switch (f) {
        case Family::SimplestCubic: return Part::SimplestCubic;
        case Family::PureCubic: return Part::PureCubic;
        case Family::PureQuartic: return Part::PureQuartic;
        case Family::SimplestQuartic: return Part::SimplestQuartic;
        case Family::Sextic: return Part::PureSextic;
    }
    return Part::PureSextic;
}

inline ComponentBasis quadratic_component(const FamilyParams& p) { return component_basis(quadratic_part(p.family), p.n); }
inline ComponentBasis field_component(const FamilyParams& p) { return component_basis(field_part(p.family), p.m); }

// ---- the composite ring K = Q[alpha or omega, beta] ----

inline TowerPtr field_ring(const FamilyParams& p) {
    Part q = quadratic_part(p.family), g = field_part(p.family);
    Integer qa = q == Part::Omega ? Integer(0) : p.n;
    return make_tower({{generator_name(q), generator_relation(q, qa)}, {"beta", generator_relation(g, p.m)}});
}

inline Expr::Bindings field_bindings(const FamilyParams& p, const TowerPtr& K) {
    Expr::Bindings env;
    env[p.family == Family::Sextic ? "omega" : "alpha"] = TowerElement::generator(K, 0);
    env["beta"] = TowerElement::generator(K, 1);
    env["m"] = Rational(p.m);
    if (p.has_n()) env["n"] = Rational(p.n);
    if (p.family == Family::PureCubic) {
        env["u"] = Rational(p.u);
        env["v"] = Rational(p.v);
    }
    if (p.family == Family::SimplestQuartic) env["m0"] = Rational(p.m0);
    return env;
}

inline BasisMatrix rows_of(const std::vector<TowerElement>& elems) {
    BasisMatrix b;
    for (auto& e : elems) b.push_back(e.coords());
    return b;
}

// {delta_j} followed by {omega * delta_j}
inline std::vector<TowerElement> initial_product_elements(const FamilyParams& p, const TowerPtr& K) {
    auto env = field_bindings(p, K);
    auto Lb = quadratic_component(p), Mb = field_component(p);
    auto delta = eval_all(Mb.templates, env, K);
    auto omega = eval_all({Lb.templates[1]}, env, K)[0];
    std::vector<TowerElement> out = delta;
    for (auto& d : delta) out.push_back(omega * d);
    return out;
}

inline BasisMatrix initial_product_basis(const FamilyParams& p) {
    auto K = field_ring(p);
    return rows_of(initial_product_elements(p, K));
}

// ---- conjugates ----

struct ConjugateTable {
    TowerPtr ring;                   // conjugate-extension ring
    std::vector<TowerElement> alpha;  // images of the quadratic generator, i = 1, 2
    std::vector<TowerElement> beta;   // images of beta, j = 1..d/2

    int count() const { return static_cast<int>(alpha.size() * beta.size()); }
    // conjugate c = (i-1)*(d/2) + (j-1)
    int index(int i, int j) const { return (i - 1) * static_cast<int>(beta.size()) + (j - 1); }

    TowerElement embed(const TowerElement& e, int c) const {
        const int k = static_cast<int>(beta.size());
        const TowerElement& a = alpha[c / k];
        const TowerElement& b = beta[c % k];
        const TowerSpec& K = *e.spec();
        TowerElement out(ring);
        std::vector<TowerElement> apow{TowerElement::scalar(ring, 1)}, bpow{TowerElement::scalar(ring, 1)};
        for (int t = 1; t < K.gen(0).degree(); ++t) apow.push_back(apow.back() * a);
        for (int t = 1; t < K.gen(1).degree(); ++t) bpow.push_back(bpow.back() * b);
        for (int idx = 0; idx < K.dim(); ++idx) {
            if (e[idx] == 0) continue;
            out += (apow[K.exponent(idx, 0)] * bpow[K.exponent(idx, 1)]) * e[idx];
        }
        return out;
    }
};

inline ConjugateTable conjugate_table(const FamilyParams& p) {
    ConjugateTable t;
    auto gen = [](const TowerPtr& r, int g) { return TowerElement::generator(r, g); };
    auto one = [](const TowerPtr& r) { return TowerElement::scalar(r, 1); };
    switch (p.family) {
        case Family::SimplestCubic:
        case Family::SimplestQuartic: {
            t.ring = field_ring(p);
            auto a = gen(t.ring, 0), y = gen(t.ring, 1), e = one(t.ring);
            t.alpha = {a, -a};
            if (p.family == Family::SimplestCubic) {
                t.beta = {y, -(e + y).invert(), -(e + y) * y.invert()};
            } else {
                t.beta = {y, (y - e) * (y + e).invert(), -y.invert(), -(y + e) * (y - e).invert()};
            }
            break;
        }
        case Family::PureCubic: {
            Rational n(p.n);
            if (p.n == -3) {
                t.ring = make_tower({{"a", {3, 0, 1}}, {"y", generator_relation(Part::PureCubic, p.m)}});
                auto a = gen(t.ring, 0);
                auto eps = (a - one(t.ring)) * Rational(1, 2);
                auto y = gen(t.ring, 1);
                t.alpha = {a, -a};
                t.beta = {y, eps * y, eps * eps * y};
            } else {
                t.ring = make_tower({{"a", {-n, 0, 1}}, {"y", generator_relation(Part::PureCubic, p.m)}, {"s", {3, 0, 1}}});
                auto a = gen(t.ring, 0), y = gen(t.ring, 1), s = gen(t.ring, 2);
                auto eps = (s - one(t.ring)) * Rational(1, 2);
                t.alpha = {a, -a};
                t.beta = {y, eps * y, eps * eps * y};
            }
            break;
        }
        case Family::PureQuartic: {
            Rational n(p.n);
            if (p.n == -1 || p.n == -p.m) {
                // sqrt(n) already lies in Q(m^(1/4), i)
                t.ring = make_tower({{"y", generator_relation(Part::PureQuartic, p.m)}, {"i", {1, 0, 1}}});
                auto y = gen(t.ring, 0), i = gen(t.ring, 1);
                auto a = p.n == -1 ? i : i * y * y;
                t.alpha = {a, -a};
                t.beta = {y, i * y, -y, -(i * y)};
            } else {
                t.ring = make_tower({{"a", {-n, 0, 1}}, {"y", generator_relation(Part::PureQuartic, p.m)}, {"i", {1, 0, 1}}});
                auto a = gen(t.ring, 0), y = gen(t.ring, 1), i = gen(t.ring, 2);
                t.alpha = {a, -a};
                t.beta = {y, i * y, -y, -(i * y)};
            }
            break;
        }
        case Family::Sextic: {
            t.ring = make_tower({{"y", generator_relation(Part::PureSextic, p.m)}, {"s", {3, 0, 1}}});
            auto y = gen(t.ring, 0), s = gen(t.ring, 1), e = one(t.ring);
            auto zeta = (e + s) * Rational(1, 2);
            t.alpha = {zeta, (e - s) * Rational(1, 2)};
            t.beta = {y};
            for (int j = 1; j < 6; ++j) t.beta.push_back(zeta * t.beta.back());
            break;
        }
    }
    return t;
}

// ---- tables ----

struct ConditionTemplate {
    std::string mod, a, b;  // mod | a +- b
};

struct TableRow {
    std::string id;
    std::optional<std::vector<long>> n, m;
    std::vector<std::string> basis;
    std::vector<std::string> erratum_basis;  // documented corrected reading, if any
    std::string erratum_note;
    std::vector<ConditionTemplate> conditions;

    bool matches(const FamilyParams& p) const {
        auto hit = [&](const std::optional<std::vector<long>>& set, const char* key) {
            if (!set) return true;
            auto it = p.keys.find(key);
            if (it == p.keys.end()) return false;
            return std::find(set->begin(), set->end(), it->second) != set->end();
        };
        return hit(n, "n") && hit(m, "m");
    }
};

struct Table {
    Family family;
    std::string kind;  // basis or conditions
    std::map<std::string, long> keys;
    std::vector<TableRow> rows;
};

struct TableLookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string table_dir() {
    if (const char* env = std::getenv("MONOGEN_TABLE_DIR"); env && *env) return env;
    return MONOGEN_DATA_DIR;
}

inline Table parse_table(const nlohmann::json& j) {
    Table t;
    if (j.value("schema", 0) != 1) throw TableLookupError("unsupported table schema");
    t.family = parse_family(j.at("family").get<std::string>());
    t.kind = j.at("kind").get<std::string>();
    for (auto& [k, v] : j.at("keys").items()) t.keys[k] = v.get<long>();
    for (auto& r : j.at("rows")) {
        TableRow row;
        row.id = r.at("id").get<std::string>();
        for (const char* key : {"n", "m"}) {
            if (!r.contains(key) || r[key].is_null()) continue;
            (std::string(key) == "n" ? row.n : row.m) = r[key].get<std::vector<long>>();
        }
        if (r.contains("basis")) row.basis = r["basis"].get<std::vector<std::string>>();
        if (r.contains("erratum")) {
            row.erratum_basis = r["erratum"].at("basis").get<std::vector<std::string>>();
            row.erratum_note = r["erratum"].value("note", "");
        }
        if (r.contains("conditions"))
            for (auto& c : r["conditions"])
                row.conditions.push_back({c.at("mod").get<std::string>(), c.at("a").get<std::string>(), c.at("b").get<std::string>()});
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline const Table& load_table(Family f, const std::string& kind) {
    static std::mutex mu;
    static std::map<std::string, Table> cache;
    std::lock_guard<std::mutex> lock(mu);
    std::string key = std::string(info(f).name) + "." + kind;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::string path = table_dir() + "/" + key + ".json";
    std::ifstream in(path);
    if (!in) throw TableLookupError("cannot open table file " + path);
    Table t = parse_table(nlohmann::json::parse(in));
    if (t.family != f || t.kind != kind) throw TableLookupError("table file " + path + " has unexpected contents");
    return cache.emplace(key, std::move(t)).first->second;
}

inline std::string residue_label(const FamilyParams& p) {
    std::string s;
    for (auto& [k, mod] : key_moduli(p.family)) {
        if (!s.empty()) s += ", ";
        s += k + " mod " + std::to_string(mod) + " = " + std::to_string(p.keys.at(k));
    }
    return s;
}

inline const TableRow& table_row(const FamilyParams& p, const std::string& kind) {
    const Table& t = load_table(p.family, kind);
    const TableRow* hit = nullptr;
    for (auto& r : t.rows) {
        if (!r.matches(p)) continue;
        if (hit) throw TableLookupError("several " + kind + " rows match (" + residue_label(p) + ")");
        hit = &r;
    }
    if (!hit) throw TableLookupError("no " + kind + " row matches (" + residue_label(p) + ")");
    return *hit;
}

// the printed row, or its documented corrected reading
inline std::vector<TowerElement> table_basis_elements(const FamilyParams& p, const TowerPtr& K, bool erratum = false) {
    const TableRow& row = table_row(p, "basis");
    const auto& ts = erratum ? row.erratum_basis : row.basis;
    if (static_cast<int>(ts.size()) != p.degree)
        throw TableLookupError("basis row " + row.id + " has " + std::to_string(ts.size()) + " entries");
    return eval_all(ts, field_bindings(p, K), K);
}

inline BasisMatrix table_basis(const FamilyParams& p, bool erratum = false) {
    return rows_of(table_basis_elements(p, field_ring(p), erratum));
}

struct Condition {
    std::string mod_text, a_text, b_text;
    Rational mod, a, b;  // mod | a +- b
};

inline std::vector<Condition> table_conditions(const FamilyParams& p) {
    const TableRow& row = table_row(p, "conditions");
    auto env = field_bindings(p, field_ring(p));
    auto scalar = [&](const std::string& s) {
        Value v = Expr::parse(s).eval(env);
        if (!v.is_scalar()) throw TableLookupError("condition entry is not a number: " + s);
        return v.scalar;
    };
    std::vector<Condition> out;
    for (auto& c : row.conditions) out.push_back({c.mod, c.a, c.b, scalar(c.mod), scalar(c.a), scalar(c.b)});
    return out;
}

// ---- sampling valid parameters inside a residue row ----

inline std::vector<Integer> residue_candidates(const std::optional<std::vector<long>>& set, long mod, long limit, bool skip_trivial) {
    std::vector<Integer> out;
    for (long a = 1; a <= limit; ++a)
        for (long s : {a, -a}) {
            if (skip_trivial && (s == 0 || s == 1)) continue;
            if (set && mod > 0 && std::find(set->begin(), set->end(), mod_nonneg(s, mod)) == set->end()) continue;
            out.emplace_back(s);
        }
    return out;
}

inline std::vector<FamilyParams> sample_params(Family f, const TableRow& row, int count, uint64_t seed) {
    auto mods = key_moduli(f);
    const bool has_n = info(f).has_n;
    const long mlimit = f == Family::PureCubic ? 3000 : 700;
    auto ns = has_n ? residue_candidates(row.n, mods["n"], 400, true) : std::vector<Integer>{0};
    auto ms = residue_candidates(row.m, mods.count("m") ? mods["m"] : 0, mlimit, false);
    auto make = [&](const Integer& n, const Integer& m) -> std::optional<FamilyParams> {
        try {
            return validate_params(f, has_n ? std::optional<Integer>(n) : std::nullopt, m);
        } catch (const InvalidParameters&) {
            return std::nullopt;
        }
    };
    std::vector<FamilyParams> pool;
    const size_t want = std::max<size_t>(24, 4 * static_cast<size_t>(count));
    std::optional<FamilyParams> wide;  // pure cubic: a sample with v > 1
    for (size_t s = 0; s < ns.size() + ms.size() && pool.size() < want; ++s)
        for (size_t i = 0; i <= s && i < ns.size() && pool.size() < want; ++i) {
            if (s - i >= ms.size()) continue;
            if (auto p = make(ns[i], ms[s - i])) {
                if (!row.matches(*p)) continue;
                pool.push_back(*p);
            }
        }
    if (f == Family::PureCubic) {
        for (auto& p : pool)
            if (p.v > 1) {
                wide = p;
                break;
            }
        for (size_t i = 0; !wide && i < std::min<size_t>(ns.size(), 40); ++i)
            for (auto& m : ms) {
                if (m % 25 != 0 && m % 49 != 0 && m % 121 != 0) continue;
                if (auto p = make(ns[i], m); p && p->v > 1 && row.matches(*p)) {
                    wide = p;
                    break;
                }
            }
    }
    uint64_t h = 1469598103934665603ULL;  // FNV-1a of family and row id
    for (char c : std::string(info(f).name) + "#" + row.id) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    std::mt19937_64 rng(seed ^ h);
    std::vector<FamilyParams> out;
    if (wide) out.push_back(*wide);
    std::vector<size_t> order(pool.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    // keep the smallest candidate, shuffle the rest deterministically
    if (order.size() > 2)
        for (size_t i = order.size() - 1; i > 1; --i) std::swap(order[i], order[1 + rng() % i]);
    for (size_t i : order) {
        if (static_cast<int>(out.size()) >= count) break;
        bool dup = false;
        for (auto& q : out) dup = dup || (q.n == pool[i].n && q.m == pool[i].m);
        if (!dup) out.push_back(pool[i]);
    }
    return out;
}

}  // namespace monogen
