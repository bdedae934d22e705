#pragma once

#include "arith.hpp"
#include "tower_ring.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace monogen {

// exponent vector, 8 bits per variable, at most 16 variables
struct Monomial {
    std::array<uint64_t, 2> w{0, 0};

    int get(int var) const { return static_cast<int>((w[var >> 3] >> ((var & 7) * 8)) & 0xff); }
    void set(int var, int e) {
        uint64_t& x = w[var >> 3];
        int sh = (var & 7) * 8;
        x = (x & ~(uint64_t{0xff} << sh)) | (uint64_t(e) << sh);
    }
    Monomial times_var(int var) const {
        Monomial m = *this;
        m.w[var >> 3] += uint64_t{1} << ((var & 7) * 8);
        return m;
    }
    Monomial operator*(const Monomial& o) const { return Monomial{{w[0] + o.w[0], w[1] + o.w[1]}}; }
    bool operator==(const Monomial& o) const { return w == o.w; }
    bool operator<(const Monomial& o) const { return w[1] != o.w[1] ? w[1] < o.w[1] : w[0] < o.w[0]; }
    int degree(int nvars) const {
        int d = 0;
        for (int i = 0; i < nvars; ++i) d += get(i);
        return d;
    }
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const {
        uint64_t h = m.w[0] * 0x9e3779b97f4a7c15ULL ^ (m.w[1] + 0x632be59bd9b4e019ULL);
        return static_cast<size_t>(h ^ (h >> 29));
    }
};

inline constexpr int kMaxVars = 16;

inline uint64_t binomial(int n, int k) {
    static const auto table = [] {
        std::vector<std::vector<uint64_t>> t(96, std::vector<uint64_t>(96, 0));
        for (int i = 0; i < 96; ++i) {
            t[i][0] = 1;
            for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
        }
        return t;
    }();
    if (k < 0 || n < 0 || k > n) return 0;
    return table[n][k];
}

// all monomials of a fixed total degree in lexicographic order (first variable slowest)
class MonomialSpace {
public:
    MonomialSpace(int nvars, int degree) : nvars_(nvars), degree_(degree) {
        require(nvars >= 1 && nvars <= kMaxVars && degree < 256, "monomial space out of range");
        monos_.reserve(size());
        Monomial cur;
        enumerate(0, degree, cur);
    }

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    size_t size() const { return binomial(degree_ + nvars_ - 1, nvars_ - 1); }
    const Monomial& operator[](size_t r) const { return monos_[r]; }

    size_t rank(const Monomial& m) const {
        size_t r = 0;
        int rem = degree_;
        for (int i = 0; i + 1 < nvars_; ++i) {
            int e = m.get(i);
            int k = nvars_ - i - 1;
            // compositions of rem-t into k parts for t = 0..e-1
            r += binomial(rem + k, k) - binomial(rem - e + k, k);
            rem -= e;
        }
        return r;
    }

    // shift[r * nvars + v] = rank of monos[r] * x_v in the space of degree + 1
    const std::vector<uint32_t>& shift_table() const {
        std::call_once(shift_once_, [this] {
            MonomialSpace up(nvars_, degree_ + 1);
            shift_.resize(monos_.size() * nvars_);
            for (size_t r = 0; r < monos_.size(); ++r)
                for (int v = 0; v < nvars_; ++v)
                    shift_[r * nvars_ + v] = static_cast<uint32_t>(up.rank(monos_[r].times_var(v)));
        });
        return shift_;
    }

    static std::shared_ptr<const MonomialSpace> get(int nvars, int degree) {
        static std::mutex mu;
        static std::unordered_map<int, std::shared_ptr<const MonomialSpace>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[nvars * 1024 + degree];
        if (!slot) slot = std::make_shared<const MonomialSpace>(nvars, degree);
        return slot;
    }

private:
    void enumerate(int var, int rem, Monomial& cur) {
        if (var == nvars_ - 1) {
            cur.set(var, rem);
            monos_.push_back(cur);
            cur.set(var, 0);
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            cur.set(var, e);
            enumerate(var + 1, rem - e, cur);
        }
        cur.set(var, 0);
    }

    int nvars_, degree_;
    std::vector<Monomial> monos_;
    mutable std::once_flag shift_once_;
    mutable std::vector<uint32_t> shift_;
};

// dense homogeneous integer polynomial
struct HomPoly {
    std::shared_ptr<const MonomialSpace> space;
    std::vector<Integer> coeffs;

    HomPoly() = default;
    HomPoly(int nvars, int degree) : space(MonomialSpace::get(nvars, degree)), coeffs(space->size(), 0) {}

    int nvars() const { return space->nvars(); }
    int degree() const { return space->degree(); }

    size_t nonzero_terms() const {
        size_t k = 0;
        for (auto& c : coeffs) k += c != 0;
        return k;
    }

    Integer content() const {
        Integer g = 0;
        for (auto& c : coeffs) {
            if (c == 0) continue;
            g = gcd(g, c);
            if (g == 1) break;
        }
        return g;
    }

    Integer eval(const std::vector<long long>& x) const {
        const int nv = nvars(), d = degree();
        std::vector<std::vector<Integer>> pw(nv, std::vector<Integer>(d + 1));
        for (int v = 0; v < nv; ++v) {
            pw[v][0] = 1;
            for (int e = 1; e <= d; ++e) pw[v][e] = pw[v][e - 1] * static_cast<long>(x[v]);
        }
        Integer sum = 0, t;
        for (size_t r = 0; r < coeffs.size(); ++r) {
            if (coeffs[r] == 0) continue;
            const Monomial& m = (*space)[r];
            t = coeffs[r];
            for (int v = 0; v < nv; ++v) {
                int e = m.get(v);
                if (e) t *= pw[v][e];
            }
            sum += t;
        }
        return sum;
    }

    friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
        require(a.nvars() == b.nvars(), "HomPoly product: variable count mismatch");
        HomPoly r(a.nvars(), a.degree() + b.degree());
        const auto& sa = *a.space;
        const auto& sb = *b.space;
        const bool square = &a == &b;
        Integer twice;
        for (size_t i = 0; i < a.coeffs.size(); ++i) {
            if (a.coeffs[i] == 0) continue;
            if (square) twice = 2 * a.coeffs[i];
            for (size_t j = square ? i : 0; j < b.coeffs.size(); ++j) {
                if (b.coeffs[j] == 0) continue;
                size_t k = r.space->rank(sa[i] * sb[j]);
                const Integer& left = square && j != i ? twice : a.coeffs[i];
                mpz_addmul(r.coeffs[k].get_mpz_t(), left.get_mpz_t(), b.coeffs[j].get_mpz_t());
            }
        }
        return r;
    }

    bool operator==(const HomPoly& o) const { return degree() == o.degree() && nvars() == o.nvars() && coeffs == o.coeffs; }
};

inline std::string variable_name(int v) { return "x" + std::to_string(v + 2); }

inline std::string monomial_string(const Monomial& m, int nvars) {
    std::string s;
    for (int v = 0; v < nvars; ++v) {
        int e = m.get(v);
        if (!e) continue;
        if (!s.empty()) s += "*";
        s += variable_name(v);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

inline std::string to_string(const HomPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (size_t k = p.coeffs.size(); k-- > 0;) {
        const size_t r = k;
        const Integer& c = p.coeffs[r];
        if (c == 0) continue;
        std::string mono = monomial_string((*p.space)[r], p.nvars());
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Integer a = abs(c);
        if (mono == "1") os << a;
        else if (a == 1) os << mono;
        else os << a << "*" << mono;
        first = false;
    }
    return first ? "0" : os.str();
}

// sparse polynomial with coefficients in a tower ring
class MultiPoly {
public:
    MultiPoly(TowerPtr ring, int nvars) : ring_(std::move(ring)), nvars_(nvars) {}

    static MultiPoly linear(TowerPtr ring, const std::vector<TowerElement>& coeffs) {
        MultiPoly p(ring, static_cast<int>(coeffs.size()));
        for (int v = 0; v < p.nvars_; ++v)
            if (!coeffs[v].is_zero()) p.terms_.emplace(Monomial{}.times_var(v), coeffs[v]);
        return p;
    }

    int nvars() const { return nvars_; }
    const TowerPtr& ring() const { return ring_; }
    const std::unordered_map<Monomial, TowerElement, MonomialHash>& terms() const { return terms_; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(a.ring_, a.nvars_);
        for (auto& [ma, ca] : a.terms_) {
            for (auto& [mb, cb] : b.terms_) {
                TowerElement prod = ca * cb;
                auto [it, fresh] = r.terms_.try_emplace(ma * mb, prod);
                if (!fresh) it->second += prod;
            }
        }
        for (auto it = r.terms_.begin(); it != r.terms_.end();) {
            if (it->second.is_zero()) it = r.terms_.erase(it);
            else ++it;
        }
        return r;
    }

    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.degree(nvars_));
        return d;
    }

private:
    TowerPtr ring_;
    int nvars_;
    std::unordered_map<Monomial, TowerElement, MonomialHash> terms_;
};

// P = content * w * G with content > 0, w a ring monomial, G primitive integral
struct ContentSplit {
    Rational content;
    int monomial = 0;
    HomPoly primitive;
};

inline Rational rational_content(const std::vector<Rational>& xs) {
    Integer num = 0, den = 1;
    for (auto& x : xs) {
        if (x == 0) continue;
        num = gcd(num, x.get_num());
        den = lcm(den, x.get_den());
    }
    require(num != 0, "content of the zero vector");
    return make_rational(num, den);
}

inline ContentSplit content_split(const MultiPoly& p) {
    require(!p.terms().empty(), "content_split of the zero polynomial");
    int w = -1, degree = -1;
    std::vector<Rational> values;
    for (auto& [m, c] : p.terms()) {
        int k = single_monomial(c);
        require(k >= 0, "coefficients are not supported on a single ring monomial");
        require(w < 0 || w == k, "coefficients are supported on different ring monomials");
        w = k;
        int dm = m.degree(p.nvars());
        require(degree < 0 || degree == dm, "polynomial is not homogeneous");
        degree = dm;
        values.push_back(c[k]);
    }
    ContentSplit out;
    out.content = rational_content(values);
    out.monomial = w;
    out.primitive = HomPoly(p.nvars(), degree);
    for (auto& [m, c] : p.terms()) {
        Rational q = c[w] / out.content;
        out.primitive.coeffs[out.primitive.space->rank(m)] = q.get_num();
    }
    return out;
}

}  // namespace monogen
