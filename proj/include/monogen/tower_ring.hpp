#pragma once

#include "arith.hpp"
#include "linalg.hpp"

#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace monogen {

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct ZeroDivisorError : std::domain_error {
    using std::domain_error::domain_error;
};

// coefficients low to high
using UniPoly = std::vector<Rational>;

struct Generator {
    std::string name;
    UniPoly relation;  // monic, degree >= 1
    int degree() const { return static_cast<int>(relation.size()) - 1; }
};

// Q[x_1..x_k]/(r_1(x_1),...,r_k(x_k)); monomial index is mixed radix with the
// last generator varying fastest
class TowerSpec {
public:
    struct Term {
        int index;
        Rational coeff;
    };

    explicit TowerSpec(std::vector<Generator> gens) : gens_(std::move(gens)) {
        dim_ = 1;
        for (auto& g : gens_) {
            require(g.degree() >= 1 && g.relation.back() == 1, "tower relation must be monic");
            dim_ *= g.degree();
        }
        strides_.assign(gens_.size(), 1);
        for (int i = static_cast<int>(gens_.size()) - 2; i >= 0; --i)
            strides_[i] = strides_[i + 1] * gens_[i + 1].degree();
        build_powers();
        build_table();
        build_traces();
    }

    int dim() const { return dim_; }
    int ngens() const { return static_cast<int>(gens_.size()); }
    const Generator& gen(int i) const { return gens_[i]; }
    int stride(int i) const { return strides_[i]; }
    int exponent(int index, int g) const { return (index / strides_[g]) % gens_[g].degree(); }
    int index_of(const std::vector<int>& exps) const {
        int k = 0;
        for (size_t i = 0; i < exps.size(); ++i) k += exps[i] * strides_[i];
        return k;
    }
    const std::vector<Term>& product(int a, int b) const { return table_[a * dim_ + b]; }
    const Rational& monomial_trace(int k) const { return traces_[k]; }
    bool integral_structure() const {
        for (auto& cell : table_)
            for (auto& t : cell)
                if (!is_integral(t.coeff)) return false;
        return true;
    }
    bool binomial() const {
        for (auto& cell : table_)
            if (cell.size() > 1) return false;
        return true;
    }
    std::string monomial_name(int k) const {
        std::string s;
        for (int g = 0; g < ngens(); ++g) {
            int e = exponent(k, g);
            if (e == 0) continue;
            if (!s.empty()) s += "*";
            s += gens_[g].name;
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s.empty() ? "1" : s;
    }

private:
    void build_powers() {
        powers_.resize(gens_.size());
        for (size_t g = 0; g < gens_.size(); ++g) {
            int d = gens_[g].degree();
            auto& pw = powers_[g];
            pw.assign(2 * d - 1, UniPoly(d, 0));
            for (int t = 0; t < d; ++t) pw[t][t] = 1;
            for (int t = d; t < 2 * d - 1; ++t) {
                // x^t = x * x^(t-1), reduce the top coefficient by the relation
                UniPoly shifted(d + 1, 0);
                for (int i = 0; i < d; ++i) shifted[i + 1] = pw[t - 1][i];
                Rational top = shifted[d];
                for (int i = 0; i < d; ++i) shifted[i] -= top * gens_[g].relation[i];
                shifted.resize(d);
                pw[t] = shifted;
            }
        }
    }

    void build_table() {
        table_.resize(static_cast<size_t>(dim_) * dim_);
        for (int a = 0; a < dim_; ++a) {
            for (int b = 0; b < dim_; ++b) {
                std::vector<Term> acc{{0, 1}};
                for (int g = 0; g < ngens(); ++g) {
                    int t = exponent(a, g) + exponent(b, g);
                    std::vector<Term> next;
                    for (auto& term : acc) {
                        const UniPoly& red = powers_[g][t];
                        for (int i = 0; i < static_cast<int>(red.size()); ++i) {
                            if (red[i] == 0) continue;
                            next.push_back({term.index + i * strides_[g], term.coeff * red[i]});
                        }
                    }
                    acc = std::move(next);
                }
                table_[a * dim_ + b] = std::move(acc);
            }
        }
    }

    void build_traces() {
        traces_.assign(dim_, 0);
        for (int k = 0; k < dim_; ++k)
            for (int j = 0; j < dim_; ++j)
                for (auto& t : product(k, j))
                    if (t.index == j) traces_[k] += t.coeff;
    }

    std::vector<Generator> gens_;
    int dim_ = 1;
    std::vector<int> strides_;
    std::vector<std::vector<UniPoly>> powers_;
    std::vector<std::vector<Term>> table_;
    std::vector<Rational> traces_;
};

using TowerPtr = std::shared_ptr<const TowerSpec>;

inline TowerPtr make_tower(std::vector<Generator> gens) {
    return std::make_shared<const TowerSpec>(std::move(gens));
}

class TowerElement {
public:
    TowerElement() = default;
    explicit TowerElement(TowerPtr spec) : spec_(std::move(spec)), c_(spec_->dim(), 0) {}
    TowerElement(TowerPtr spec, std::vector<Rational> coords) : spec_(std::move(spec)), c_(std::move(coords)) {
        require(static_cast<int>(c_.size()) == spec_->dim(), "coordinate vector has wrong length");
    }

    static TowerElement scalar(TowerPtr spec, const Rational& q) {
        TowerElement e(std::move(spec));
        e.c_[0] = q;
        return e;
    }
    static TowerElement monomial(TowerPtr spec, int index, const Rational& q = 1) {
        TowerElement e(std::move(spec));
        e.c_[index] = q;
        return e;
    }
    static TowerElement generator(TowerPtr spec, int g) {
        if (spec->gen(g).degree() > 1) return monomial(spec, spec->stride(g));
        // degree one relation x - a: the generator is the scalar a
        return scalar(spec, -spec->gen(g).relation[0]);
    }

    const TowerPtr& spec() const { return spec_; }
    int dim() const { return static_cast<int>(c_.size()); }
    const Rational& operator[](int k) const { return c_[k]; }
    Rational& operator[](int k) { return c_[k]; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        for (auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_scalar() const {
        for (size_t k = 1; k < c_.size(); ++k)
            if (c_[k] != 0) return false;
        return true;
    }
    int support_size() const {
        int s = 0;
        for (auto& x : c_) s += x != 0;
        return s;
    }

    TowerElement& operator+=(const TowerElement& o) {
        for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    TowerElement& operator-=(const TowerElement& o) {
        for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    TowerElement& operator*=(const Rational& q) {
        for (auto& x : c_) x *= q;
        return *this;
    }
    friend TowerElement operator+(TowerElement a, const TowerElement& b) { return a += b; }
    friend TowerElement operator-(TowerElement a, const TowerElement& b) { return a -= b; }
    friend TowerElement operator-(TowerElement a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend TowerElement operator*(TowerElement a, const Rational& q) { return a *= q; }
    friend TowerElement operator*(const Rational& q, TowerElement a) { return a *= q; }
    friend TowerElement operator*(const TowerElement& a, const TowerElement& b) {
        TowerElement r(a.spec_);
        const int n = a.dim();
        Rational t;
        for (int i = 0; i < n; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (b.c_[j] == 0) continue;
                t = a.c_[i] * b.c_[j];
                for (auto& term : a.spec_->product(i, j)) r.c_[term.index] += t * term.coeff;
            }
        }
        return r;
    }
    TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }
    friend bool operator==(const TowerElement& a, const TowerElement& b) { return a.c_ == b.c_; }

    TowerElement pow(unsigned long e) const {
        TowerElement r = scalar(spec_, 1), x = *this;
        while (e) {
            if (e & 1) r *= x;
            e >>= 1;
            if (e) x *= x;
        }
        return r;
    }

    // column j holds the coordinates of this * e_j
    Matrix<Rational> mult_matrix() const {
        const int n = dim();
        Matrix<Rational> m(n, std::vector<Rational>(n, 0));
        for (int i = 0; i < n; ++i) {
            if (c_[i] == 0) continue;
            for (int j = 0; j < n; ++j)
                for (auto& term : spec_->product(i, j)) m[term.index][j] += c_[i] * term.coeff;
        }
        return m;
    }

    Rational trace() const {
        Rational t = 0;
        for (int k = 0; k < dim(); ++k)
            if (c_[k] != 0) t += c_[k] * spec_->monomial_trace(k);
        return t;
    }

    // det(tI - M_a), coefficients high to low, leading 1
    std::vector<Rational> char_poly() const { return charpoly(mult_matrix()); }

    TowerElement invert() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        std::vector<Rational> rhs(dim(), 0);
        rhs[0] = 1;
        auto x = solve(mult_matrix(), rhs);
        if (!x) throw ZeroDivisorError("element is a zero divisor");
        return TowerElement(spec_, *x);
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k < dim(); ++k) {
            if (c_[k] == 0) continue;
            std::string mono = spec_->monomial_name(k);
            Rational q = c_[k];
            if (!first) os << (q < 0 ? " - " : " + ");
            else if (q < 0) os << "-";
            Rational a = abs(q);
            if (mono == "1") os << a.get_str();
            else if (a == 1) os << mono;
            else os << a.get_str() << "*" << mono;
            first = false;
        }
        return first ? "0" : os.str();
    }

private:
    TowerPtr spec_;
    std::vector<Rational> c_;
};

inline TowerElement operator/(const TowerElement& a, const TowerElement& b) { return a * b.invert(); }

// the (unique) monomial carrying all nonzero coordinates; -1 if none or several
inline int single_monomial(const TowerElement& e) {
    int idx = -1;
    for (int k = 0; k < e.dim(); ++k) {
        if (e[k] == 0) continue;
        if (idx >= 0) return -1;
        idx = k;
    }
    return idx;
}

}  // namespace monogen
