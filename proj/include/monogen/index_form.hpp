#pragma once

#include "arith.hpp"
#include "families.hpp"
#include "maximal_order.hpp"
#include "modular.hpp"
#include "polynomial.hpp"
#include "tower_ring.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace monogen {

// ---- factor and relation layout per family ----

struct PairDiff {
    int a, b;  // L^(a) - L^(b), conjugate indices
};

struct FactorSpec {
    int index;  // 1-based
    std::vector<PairDiff> pairs;
    int degree() const { return static_cast<int>(pairs.size()); }
};

// conjugate index of (i, j), both 1-based, with k = d/2 conjugates of beta
inline int conj_index(int i, int j, int k) { return (i - 1) * k + (j - 1); }

inline std::vector<FactorSpec> factor_specs(int d) {
    const int k = d / 2;
    auto c = [k](int i, int j) { return conj_index(i, ((j - 1) % k + k) % k + 1, k); };
    std::vector<FactorSpec> out;
    auto add = [&](std::vector<PairDiff> pairs) { out.push_back({static_cast<int>(out.size()) + 1, std::move(pairs)}); };
    auto within = [&](int step, int count) {
        std::vector<PairDiff> ps;
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= count; ++j) ps.push_back({c(i, j), c(i, j + step)});
        return ps;
    };
    auto across = [&](std::initializer_list<int> shifts) {
        std::vector<PairDiff> ps;
        for (int j = 1; j <= k; ++j)
            for (int s : shifts) ps.push_back({c(1, j), c(2, j + s)});
        return ps;
    };
    auto listed = [&](std::initializer_list<std::pair<int, int>> ps) {
        std::vector<PairDiff> out;
        for (auto [x, y] : ps) out.push_back({c(x / 10, x % 10), c(y / 10, y % 10)});
        return out;
    };
    switch (d) {
        case 6:
            add(listed({{11, 12}, {11, 13}, {12, 13}, {21, 22}, {21, 23}, {22, 23}}));
            add(across({0}));
            add(listed({{11, 22}, {11, 23}, {12, 21}, {12, 23}, {13, 21}, {13, 22}}));
            break;
        case 8:
            add(within(1, 4));
            add(listed({{11, 13}, {12, 14}, {21, 23}, {22, 24}}));
            add(across({0}));
            add(listed({{11, 22}, {11, 24}, {12, 21}, {12, 23}, {13, 22}, {13, 24}, {14, 21}, {14, 23}}));
            add(listed({{11, 23}, {12, 24}, {13, 21}, {14, 22}}));
            break;
        case 12:
            add(within(1, 6));
            add(within(2, 6));
            add(within(3, 3));
            add(across({0}));
            add(across({1, -1}));
            add(across({2, -2}));
            add(across({3}));
            break;
        default: throw InvalidParameters("no factor layout for degree " + std::to_string(d));
    }
    return out;
}

struct RelationTerm {
    long coef;
    int factor;  // 1-based
    int exp;
};

// modulus | a + sign * b, as polynomials
struct RelationSpec {
    int id;  // 1-based, matches the condition table column
    std::string modulus;
    RelationTerm a, b;
    int sign;
};

inline std::vector<RelationSpec> relation_specs(Family f) {
    switch (f) {
        case Family::SimplestCubic:
            return {{1, "n", {1, 1, 1}, {1, 3, 1}, +1}, {2, "m^2+3*m+9", {1, 2, 2}, {1, 3, 1}, -1}};
        case Family::PureCubic:
            return {{1, "n", {1, 1, 1}, {1, 3, 1}, +1}, {2, "m", {1, 2, 2}, {1, 3, 1}, -1}};
        case Family::PureQuartic:
        case Family::SimplestQuartic: {
            std::string m = f == Family::PureQuartic ? "m" : "m0";
            return {{1, "n", {1, 1, 1}, {1, 4, 1}, -1},      {2, "n", {1, 2, 1}, {1, 5, 1}, -1},
                    {3, m, {1, 3, 2}, {1, 4, 1}, -1},        {4, m, {1, 3, 1}, {1, 5, 1}, -1},
                    {5, m, {1, 4, 1}, {1, 5, 2}, -1},        {6, m + "^3", {16, 1, 1}, {1, 2, 2}, -1}};
        }
        case Family::Sextic:
            return {{1, "m", {1, 4, 2}, {1, 5, 1}, -1},         {2, "m", {1, 4, 2}, {1, 6, 1}, -1},
                    {3, "m", {1, 4, 1}, {1, 7, 1}, -1},         {4, "m", {1, 5, 1}, {1, 6, 1}, -1},
                    {5, "m^3", {729, 1, 1}, {1, 2, 1}, -1},     {6, "m^3", {4096, 1, 1}, {1, 3, 2}, -1},
                    {7, "m^3", {4096, 2, 1}, {729, 3, 2}, -1}};
    }
    return {};
}

inline std::string relation_text(const RelationSpec& r) {
    auto term = [](const RelationTerm& t) {
        std::string s = t.coef == 1 ? "" : std::to_string(t.coef);
        s += "F" + std::to_string(t.factor);
        if (t.exp > 1) s += "^" + std::to_string(t.exp);
        return s;
    };
    return r.modulus + " | " + term(r.a) + (r.sign > 0 ? " + " : " - ") + term(r.b);
}

inline Integer relation_modulus(const RelationSpec& r, const FamilyParams& p) {
    Value v = Expr::parse(r.modulus).eval(field_bindings(p, field_ring(p)));
    require(v.is_scalar() && is_integral(v.scalar), "relation modulus is not an integer");
    return abs(v.scalar.get_num());
}

// ---- linear forms ----

// L^(c) restricted to X_2..X_d, together with the conjugate data that produced it
struct LinearForms {
    ConjugateTable conj;
    std::vector<TowerElement> basis;  // b_1 = 1, b_2, ..., b_d in K
    std::vector<LinearForm> forms;    // forms[c][k-2] = b_k^(c)

    int nvars() const { return static_cast<int>(basis.size()) - 1; }
    LinearForm difference(const PairDiff& pd) const {
        LinearForm out;
        for (int v = 0; v < nvars(); ++v) out.push_back(forms[pd.a][v] - forms[pd.b][v]);
        return out;
    }
};

inline LinearForms linear_forms(const FamilyParams& p, const BasisMatrix& basis) {
    auto K = field_ring(p);
    require(static_cast<int>(basis.size()) == p.degree, "basis has the wrong size");
    LinearForms lf;
    for (auto& row : basis) lf.basis.push_back(row_element(K, row));
    require(lf.basis[0].is_scalar() && lf.basis[0][0] == 1, "first basis element must be 1");
    for (auto& b : lf.basis) require(is_integral(b), "basis element is not integral: " + b.str());
    lf.conj = conjugate_table(p);
    for (int c = 0; c < lf.conj.count(); ++c) {
        LinearForm f;
        for (size_t k = 1; k < lf.basis.size(); ++k) f.push_back(lf.conj.embed(lf.basis[k], c));
        lf.forms.push_back(std::move(f));
    }
    return lf;
}

// ---- factors ----

enum class Expansion { Exact, Modular };

struct Factor {
    int index = 0;
    std::vector<PairDiff> pairs;
    Rational content;        // positive rational part of f_i
    int monomial = 0;        // tower monomial w_i of the conjugate ring
    std::string monomial_name;
    Rational w_square;       // w_i^2, a rational number
    HomPoly G;               // primitive integer part

    int degree() const { return static_cast<int>(pairs.size()); }
    Rational f_square() const { return content * content * w_square; }
    std::string f_str() const {
        std::string s = content.get_str();
        return monomial == 0 ? s : s + "*" + monomial_name;
    }
};

inline Rational monomial_square(const TowerPtr& ring, int monomial) {
    auto w = TowerElement::monomial(ring, monomial);
    auto sq = w * w;
    require(sq.is_scalar(), "factor monomial " + ring->monomial_name(monomial) + " does not square to a rational");
    return sq[0];
}

inline Factor expand_factor(const LinearForms& lf, const FactorSpec& spec, Expansion how) {
    std::vector<LinearForm> diffs;
    for (auto& pd : spec.pairs) diffs.push_back(lf.difference(pd));
    ContentSplit cs = how == Expansion::Exact ? expand_exact(lf.conj.ring, diffs) : expand_modular(lf.conj.ring, diffs);
    Factor f;
    f.index = spec.index;
    f.pairs = spec.pairs;
    f.content = cs.content;
    f.monomial = cs.monomial;
    f.monomial_name = lf.conj.ring->monomial_name(cs.monomial);
    f.w_square = monomial_square(lf.conj.ring, cs.monomial);
    f.G = std::move(cs.primitive);
    return f;
}

// runs jobs 0..count-1 on up to `workers` threads; the first exception is rethrown
template <class Fn>
void parallel_for(size_t count, int workers, Fn fn) {
    workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    if (workers == 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i; (i = next++) < count;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

inline int default_workers() {
    if (const char* env = std::getenv("MONOGEN_WORKERS"); env && *env) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// ---- divisibility relations ----

// c * f^e as a rational number, or nothing when it is not rational
inline std::optional<Rational> term_value(const Factor& f, const RelationTerm& t) {
    if (f.monomial != 0 && t.exp % 2) return std::nullopt;
    Rational v = Rational(t.coef) * pow_rat(f.content, t.exp);
    if (f.monomial != 0) v *= pow_rat(f.w_square, t.exp / 2);
    return v;
}

inline HomPoly hom_power(const HomPoly& g, int e) {
    HomPoly r = g;
    for (int k = 1; k < e; ++k) r = r * g;
    return r;
}

struct RelationCheck {
    int id = 0;
    std::string text;
    Integer modulus;                    // as stated in the proof
    std::optional<Integer> row_modulus;  // from the condition table row, when integral
    std::string row_modulus_text;
    bool integral = false;              // some sign gives integer coefficients
    bool holds = false;                 // stated modulus divides coefficient-wise
    bool row_holds = false;             // table row modulus divides coefficient-wise
    Integer effective = 0;              // largest divisor of the moduli above that divides
    int sign = 0;                       // sign of the second term giving `effective`
    Integer content_plus = 0, content_minus = 0;  // coefficient gcd per sign, 0 if not integral
    std::string offending;
};

inline std::optional<Integer> table_row_modulus(const FamilyParams& p, int id, std::string* text = nullptr) {
    try {
        auto conds = table_conditions(p);
        if (id < 1 || id > static_cast<int>(conds.size())) return std::nullopt;
        const auto& c = conds[id - 1];
        if (text) *text = c.mod_text;
        if (!is_integral(c.mod) || c.mod == 0) return std::nullopt;
        return abs(c.mod.get_num());
    } catch (const TableLookupError&) {
        return std::nullopt;
    }
}

inline RelationCheck check_relation(const RelationSpec& r, const FamilyParams& p, const std::vector<Factor>& fs) {
    RelationCheck out;
    out.id = r.id;
    out.text = relation_text(r);
    out.modulus = relation_modulus(r, p);
    out.row_modulus = table_row_modulus(p, r.id, &out.row_modulus_text);
    const Factor& fa = fs.at(r.a.factor - 1);
    const Factor& fb = fs.at(r.b.factor - 1);
    auto A = term_value(fa, r.a), B = term_value(fb, r.b);
    if (!A || !B) {
        out.offending = "F" + std::to_string(A ? r.b.factor : r.a.factor) + " term is not rational";
        return out;
    }
    HomPoly Pa = hom_power(fa.G, r.a.exp), Pb = hom_power(fb.G, r.b.exp);
    require(Pa.degree() == Pb.degree(), "relation terms have different degrees");
    const Integer bound = out.row_modulus ? lcm(out.modulus, *out.row_modulus) : out.modulus;
    for (int s : {r.sign, -r.sign}) {
        Integer g = 0;
        bool integral = true;
        Rational c;
        for (size_t k = 0; k < Pa.coeffs.size(); ++k) {
            c = *A * Pa.coeffs[k] + Rational(s) * *B * Pb.coeffs[k];
            if (!is_integral(c)) {
                integral = false;
                if (out.offending.empty()) out.offending = c.get_str() + "*" + monomial_string((*Pa.space)[k], Pa.nvars());
                break;
            }
            g = gcd(g, c.get_num());
        }
        if (!integral) continue;
        out.integral = true;
        (s > 0 ? out.content_plus : out.content_minus) = g;
        auto divides = [&](const Integer& m) { return g == 0 || (m != 0 && g % m == 0); };
        out.holds |= divides(out.modulus);
        if (out.row_modulus) out.row_holds |= divides(*out.row_modulus);
        Integer e = g == 0 ? bound : gcd(bound, g);
        if (e > out.effective) {
            out.effective = e;
            out.sign = s;
        }
    }
    if (out.integral) out.offending.clear();
    return out;
}

// ---- report ----

struct FactorReport {
    FamilyParams params;
    BasisMatrix basis;
    Integer disc;                // D_K
    std::vector<Factor> factors;
    bool expanded = true;        // G_i present; false for probed contents
    bool degree_sum_ok = false;
    bool coverage_ok = false;
    bool primitive_ok = false;
    bool content_ok = false;     // (prod f_i)^2 = |D_K|
    std::vector<RelationCheck> relations;
    double seconds = 0;

    bool identity_ok() const { return degree_sum_ok && coverage_ok && primitive_ok && content_ok; }
    bool relations_ok() const {
        for (auto& r : relations)
            if (!r.holds) return false;
        return !relations.empty();
    }
};

inline Rational content_product(const std::vector<Factor>& fs) {
    Rational prod = 1;
    for (auto& f : fs) prod *= f.content * f.content * abs(f.w_square);
    return prod;
}

inline void verify_identity(FactorReport& r) {
    const int d = r.params.degree;
    int sum = 0;
    std::set<std::pair<int, int>> seen;
    bool once = true;
    for (auto& f : r.factors) {
        sum += f.degree();
        for (auto& pd : f.pairs) once &= seen.insert(std::minmax(pd.a, pd.b)).second && pd.a != pd.b;
    }
    r.degree_sum_ok = sum == d * (d - 1) / 2;
    r.coverage_ok = once && static_cast<int>(seen.size()) == d * (d - 1) / 2;
    r.primitive_ok = true;
    if (r.expanded)
        for (auto& f : r.factors) r.primitive_ok &= f.G.content() == 1;
    r.content_ok = content_product(r.factors) == Rational(abs(r.disc));
}

struct ReportOptions {
    Expansion how = Expansion::Modular;
    int workers = 1;
    bool relations = true;
};

inline FactorReport factor_report(const FamilyParams& p, const OrderReport& order, const ReportOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    FactorReport r;
    r.params = p;
    r.basis = order.basis;
    r.disc = order.discriminant;
    auto lf = linear_forms(p, order.basis);
    auto specs = factor_specs(p.degree);
    r.factors.resize(specs.size());
    // largest factors first so the pool stays busy
    std::vector<size_t> order_idx(specs.size());
    for (size_t i = 0; i < specs.size(); ++i) order_idx[i] = i;
    std::stable_sort(order_idx.begin(), order_idx.end(), [&](size_t a, size_t b) { return specs[a].degree() > specs[b].degree(); });
    parallel_for(specs.size(), opt.workers, [&](size_t k) {
        size_t i = order_idx[k];
        r.factors[i] = expand_factor(lf, specs[i], opt.how);
    });
    verify_identity(r);
    if (opt.relations)
        for (auto& rs : relation_specs(p.family)) r.relations.push_back(check_relation(rs, p, r.factors));
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline FactorReport factor_report(const FamilyParams& p, const ReportOptions& opt = {}) {
    return factor_report(p, maximal_order_basis(p), opt);
}

// ---- index values ----

inline Integer index_eval(const FactorReport& r, const std::vector<long long>& x) {
    require(r.expanded, "index_eval needs expanded factors");
    require(static_cast<int>(x.size()) == r.params.degree - 1, "point has the wrong length");
    Integer v = 1;
    for (auto& f : r.factors) v *= f.G.eval(x);
    return abs(v);
}

// discriminant of a monic integer polynomial, coefficients low to high
inline Integer poly_discriminant(const std::vector<Integer>& f) {
    const int n = static_cast<int>(f.size()) - 1;
    require(n >= 1 && f.back() == 1, "discriminant needs a monic polynomial");
    std::vector<Integer> df(n);
    for (int k = 1; k <= n; ++k) df[k - 1] = f[k] * k;
    // Sylvester matrix of f (degree n) and f' (degree n-1)
    const int size = 2 * n - 1;
    Matrix<Integer> s(size, std::vector<Integer>(size, 0));
    for (int r = 0; r < n - 1; ++r)
        for (int k = 0; k <= n; ++k) s[r][r + k] = f[n - k];
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) s[n - 1 + r][r + k] = df[n - 1 - k];
    Integer res = det_bareiss(s);
    return (n * (n - 1) / 2) % 2 ? Integer(-res) : res;
}

inline TowerElement basis_combination(const BasisMatrix& basis, const TowerPtr& K, const std::vector<long long>& x) {
    TowerElement theta(K);
    for (size_t k = 1; k < basis.size(); ++k) theta += row_element(K, basis[k]) * Rational(static_cast<long>(x[k - 1]));
    return theta;
}

// index of theta = sum x_k b_k from its discriminant
inline Integer index_oracle(const FamilyParams& p, const BasisMatrix& basis, const Integer& disc_K, const std::vector<long long>& x) {
    require(static_cast<int>(x.size()) == p.degree - 1, "point has the wrong length");
    auto K = field_ring(p);
    auto cp = basis_combination(basis, K, x).char_poly();
    std::vector<Integer> f;  // low to high
    for (auto it = cp.rbegin(); it != cp.rend(); ++it) {
        const Rational& c = *it;
        require(is_integral(c), "element is not integral");
        f.push_back(c.get_num());
    }
    Integer D = poly_discriminant(f);
    if (D == 0) return 0;
    require(D % disc_K == 0, "discriminant of the element is not a multiple of D_K");
    Integer q = abs(D / disc_K);
    require(is_square(q), "index quotient is not a square");
    return exact_sqrt(q);
}

// ---- contents by restriction to lines ----

// content of F_i restricted to lines x0 + t*y0; the gcd over lines is a
// multiple of the true content
struct ProbeResult {
    std::vector<Factor> factors;  // G left empty
    int lines = 0;
    bool certified = false;       // (prod f_i)^2 = |D_K|
};

inline std::pair<Rational, int> line_content(const LinearForms& lf, const FactorSpec& spec, const std::vector<long long>& x0,
                                             const std::vector<long long>& y0) {
    const TowerPtr& R = lf.conj.ring;
    auto dot = [&](const LinearForm& f, const std::vector<long long>& x) {
        TowerElement s(R);
        for (size_t v = 0; v < f.size(); ++v)
            if (x[v]) s += f[v] * Rational(static_cast<long>(x[v]));
        return s;
    };
    std::vector<TowerElement> poly{TowerElement::scalar(R, 1)};  // coefficients in t, low to high
    for (auto& pd : spec.pairs) {
        auto diff = lf.difference(pd);
        TowerElement a = dot(diff, x0), b = dot(diff, y0);
        std::vector<TowerElement> next(poly.size() + 1, TowerElement(R));
        for (size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * a;
            next[k + 1] += poly[k] * b;
        }
        poly = std::move(next);
    }
    int w = -1;
    std::vector<Rational> values;
    for (auto& c : poly) {
        if (c.is_zero()) continue;
        int k = single_monomial(c);
        require(k >= 0 && (w < 0 || w == k), "line restriction is not supported on a single ring monomial");
        w = k;
        values.push_back(c[k]);
    }
    require(w >= 0, "line restriction vanishes");
    return {rational_content(values), w};
}

inline ProbeResult probe_contents(const FamilyParams& p, const OrderReport& order, uint64_t seed = 0, int max_lines = 8) {
    auto lf = linear_forms(p, order.basis);
    auto specs = factor_specs(p.degree);
    ProbeResult out;
    out.factors.resize(specs.size());
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<long long> dist(-(1LL << 20), 1LL << 20);
    const int nv = p.degree - 1;
    const Rational target(abs(order.discriminant));
    for (int line = 0; line < max_lines; ++line) {
        std::vector<long long> x0(nv), y0(nv);
        for (auto& v : x0) v = dist(rng);
        for (auto& v : y0) v = dist(rng);
        for (size_t i = 0; i < specs.size(); ++i) {
            auto [c, w] = line_content(lf, specs[i], x0, y0);
            Factor& f = out.factors[i];
            if (line == 0) {
                f.index = specs[i].index;
                f.pairs = specs[i].pairs;
                f.content = c;
                f.monomial = w;
                f.monomial_name = lf.conj.ring->monomial_name(w);
                f.w_square = monomial_square(lf.conj.ring, w);
            } else {
                require(f.monomial == w, "line restrictions disagree on the factor monomial");
                f.content = rational_content({f.content, c});
            }
        }
        out.lines = line + 1;
        if (line >= 1 && content_product(out.factors) == target) {
            out.certified = true;
            break;
        }
    }
    return out;
}

// factor report from probed contents, falling back to full expansion when the
// probe cannot be certified; relations are not re-checked here
inline FactorReport content_report(const FamilyParams& p, const OrderReport& order, int workers = 1) {
    auto t0 = std::chrono::steady_clock::now();
    ProbeResult pr = probe_contents(p, order);
    if (!pr.certified) return factor_report(p, order, {Expansion::Modular, workers, false});
    FactorReport r;
    r.params = p;
    r.basis = order.basis;
    r.disc = order.discriminant;
    r.factors = std::move(pr.factors);
    r.expanded = false;
    verify_identity(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace monogen
