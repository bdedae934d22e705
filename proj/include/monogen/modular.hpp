#pragma once

#include "arith.hpp"
#include "polynomial.hpp"
#include "tower_ring.hpp"

#include <cstdint>
#include <vector>

namespace monogen {

// Montgomery arithmetic modulo an odd prime below 2^62
class Montgomery {
public:
    explicit Montgomery(uint64_t p) : p_(p) {
        uint64_t inv = p;
        for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
        pinv_ = ~inv + 1;
        r2_ = static_cast<uint64_t>((static_cast<unsigned __int128>(1) << 64) % p);
        r2_ = static_cast<uint64_t>((static_cast<unsigned __int128>(r2_) * r2_) % p);
    }
    uint64_t modulus() const { return p_; }
    uint64_t reduce(unsigned __int128 t) const {
        uint64_t m = static_cast<uint64_t>(t) * pinv_;
        uint64_t r = static_cast<uint64_t>((t + static_cast<unsigned __int128>(m) * p_) >> 64);
        return r >= p_ ? r - p_ : r;
    }
    uint64_t mul(uint64_t a, uint64_t b) const { return reduce(static_cast<unsigned __int128>(a) * b); }
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t to(uint64_t a) const { return mul(a % p_, r2_); }
    uint64_t from(uint64_t a) const { return reduce(a); }
    uint64_t to(const Integer& z) const {
        Integer r = mod_nonneg(z, Integer(static_cast<unsigned long>(p_)));
        return to(static_cast<uint64_t>(r.get_ui()));
    }

private:
    uint64_t p_, pinv_, r2_;
};

// primes just below 2^61, in decreasing order
inline const std::vector<uint64_t>& crt_primes(size_t count) {
    static std::vector<uint64_t> primes;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    uint64_t cand = primes.empty() ? (uint64_t{1} << 61) - 1 : primes.back() - 2;
    while (primes.size() < count) {
        Integer z(static_cast<unsigned long>(cand));
        if (mpz_probab_prime_p(z.get_mpz_t(), 30)) primes.push_back(cand);
        cand -= 2;
    }
    return primes;
}

using LinearForm = std::vector<TowerElement>;  // one ring coefficient per variable

// exact product of linear forms with coefficients in a tower ring, by
// multimodular evaluation and CRT; every coordinate except the single supporting
// ring monomial is shown to vanish under the same bound
class ModularExpander {
public:
    ModularExpander(TowerPtr ring, std::vector<LinearForm> forms) : ring_(std::move(ring)), forms_(std::move(forms)) {
        require(!forms_.empty(), "empty product");
        require(ring_->integral_structure(), "modular expansion needs integral structure constants");
        nvars_ = static_cast<int>(forms_[0].size());
        scale_forms();
    }

    ContentSplit run() const {
        const int dim = ring_->dim();
        const int deg = static_cast<int>(forms_.size());
        Integer bound = 1;
        Integer k = 0;
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                Integer s = 0;
                for (auto& t : ring_->product(a, b)) s += abs(t.coeff.get_num());
                if (s > k) k = s;
            }
        bound = pow_int(k, deg - 1);
        for (auto& n : norms_) bound *= n;
        Integer need = 2 * bound + 1;

        std::vector<uint64_t> used;
        std::vector<std::vector<uint64_t>> columns;
        int w = -1;
        Integer modulus = 1;
        for (size_t idx = 0; modulus <= need; ++idx) {
            uint64_t p = crt_primes(idx + 1)[idx];
            std::vector<uint64_t> values = expand_mod(p);
            const size_t terms = values.size() / dim;
            std::vector<bool> seen(dim, false);
            for (size_t r = 0; r < terms; ++r)
                for (int c = 0; c < dim; ++c)
                    if (values[r * dim + c]) seen[c] = true;
            int nz = 0, which = -1;
            for (int c = 0; c < dim; ++c)
                if (seen[c]) ++nz, which = c;
            require(nz <= 1, "product coefficients are not supported on a single ring monomial");
            if (nz == 1) {
                require(w < 0 || w == which, "product coefficients move between ring monomials");
                w = which;
            }
            used.push_back(p);
            columns.emplace_back(terms);
            if (w >= 0)
                for (size_t r = 0; r < terms; ++r) columns.back()[r] = values[r * dim + w];
            modulus *= Integer(static_cast<unsigned long>(p));
        }
        require(w >= 0, "product of linear forms vanishes");

        auto space = MonomialSpace::get(nvars_, deg);
        const size_t terms = space->size();
        std::vector<Integer> coeff(terms, 0);
        Integer m = 1, inv, diff, pz;
        for (size_t i = 0; i < used.size(); ++i) {
            pz = Integer(static_cast<unsigned long>(used[i]));
            if (i > 0) mpz_invert(inv.get_mpz_t(), Integer(m % pz).get_mpz_t(), pz.get_mpz_t());
            for (size_t r = 0; r < terms; ++r) {
                Integer ri(static_cast<unsigned long>(columns[i][r]));
                if (i == 0) {
                    coeff[r] = ri;
                    continue;
                }
                diff = ri - coeff[r];
                diff = mod_nonneg(diff * inv, pz);
                coeff[r] += m * diff;
            }
            m *= pz;
        }
        Integer half = m / 2;
        for (auto& c : coeff)
            if (c > half) c -= m;

        ContentSplit out;
        out.monomial = w;
        out.primitive = HomPoly(nvars_, deg);
        Integer g = 0;
        for (auto& c : coeff)
            if (c != 0) g = gcd(g, c);
        require(g != 0, "product of linear forms vanishes");
        for (size_t r = 0; r < terms; ++r) out.primitive.coeffs[r] = coeff[r] / g;
        out.content = make_rational(g, total_scale_);
        return out;
    }

private:
    void scale_forms() {
        total_scale_ = 1;
        for (auto& f : forms_) {
            require(static_cast<int>(f.size()) == nvars_, "linear forms with different variable counts");
            Integer s = 1;
            for (auto& e : f)
                for (auto& q : e.coords()) s = lcm(s, q.get_den());
            std::vector<std::vector<Integer>> ints(nvars_, std::vector<Integer>(ring_->dim()));
            Integer norm = 0;
            for (int v = 0; v < nvars_; ++v)
                for (int c = 0; c < ring_->dim(); ++c) {
                    ints[v][c] = Rational(f[v][c] * s).get_num();
                    norm += abs(ints[v][c]);
                }
            scaled_.push_back(std::move(ints));
            norms_.push_back(norm);
            total_scale_ *= s;
        }
    }

    std::vector<uint64_t> expand_mod(uint64_t p) const {
        const Montgomery mg(p);
        const int dim = ring_->dim();
        std::vector<std::vector<std::vector<uint64_t>>> forms(forms_.size());
        for (size_t k = 0; k < forms_.size(); ++k) {
            forms[k].assign(nvars_, std::vector<uint64_t>(dim));
            for (int v = 0; v < nvars_; ++v)
                for (int c = 0; c < dim; ++c) forms[k][v][c] = mg.to(scaled_[k][v][c]);
        }
        std::vector<std::vector<uint64_t>> table(static_cast<size_t>(dim) * dim);
        std::vector<std::vector<int>> target(static_cast<size_t>(dim) * dim);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                for (auto& t : ring_->product(a, b)) {
                    table[a * dim + b].push_back(mg.to(t.coeff.get_num()));
                    target[a * dim + b].push_back(t.index);
                }

        std::vector<uint64_t> cur(static_cast<size_t>(nvars_) * dim);
        {
            auto space = MonomialSpace::get(nvars_, 1);
            for (int v = 0; v < nvars_; ++v) {
                size_t r = space->rank(Monomial{}.times_var(v));
                for (int c = 0; c < dim; ++c) cur[r * dim + c] = forms[0][v][c];
            }
        }
        struct Op {
            int target;
            uint64_t c;
        };
        for (size_t k = 1; k < forms.size(); ++k) {
            auto space = MonomialSpace::get(nvars_, static_cast<int>(k));
            auto up = MonomialSpace::get(nvars_, static_cast<int>(k) + 1);
            const auto& shift = space->shift_table();
            // ops[v][i]: contributions of coordinate i of the running product
            std::vector<std::vector<std::vector<Op>>> ops(nvars_, std::vector<std::vector<Op>>(dim));
            std::vector<bool> active(nvars_, false);
            for (int v = 0; v < nvars_; ++v)
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) {
                        uint64_t fj = forms[k][v][j];
                        if (!fj) continue;
                        active[v] = true;
                        const auto& tc = table[i * dim + j];
                        const auto& tt = target[i * dim + j];
                        for (size_t q = 0; q < tc.size(); ++q) ops[v][i].push_back({tt[q], mg.mul(fj, tc[q])});
                    }
            std::vector<uint64_t> next(up->size() * dim, 0);
            const size_t terms = space->size();
            for (size_t r = 0; r < terms; ++r) {
                const uint64_t* src = &cur[r * dim];
                for (int v = 0; v < nvars_; ++v) {
                    if (!active[v]) continue;
                    uint64_t* dst = &next[static_cast<size_t>(shift[r * nvars_ + v]) * dim];
                    for (int i = 0; i < dim; ++i) {
                        uint64_t a = src[i];
                        if (!a) continue;
                        for (const Op& op : ops[v][i]) dst[op.target] = mg.add(dst[op.target], mg.mul(a, op.c));
                    }
                }
            }
            cur = std::move(next);
        }
        for (auto& x : cur) x = mg.from(x);
        return cur;
    }

    TowerPtr ring_;
    std::vector<LinearForm> forms_;
    int nvars_ = 0;
    std::vector<std::vector<std::vector<Integer>>> scaled_;
    std::vector<Integer> norms_;
    Integer total_scale_;
};

// product of linear forms by sparse exact multiplication
inline ContentSplit expand_exact(const TowerPtr& ring, const std::vector<LinearForm>& forms) {
    require(!forms.empty(), "empty product");
    MultiPoly p = MultiPoly::linear(ring, forms[0]);
    for (size_t k = 1; k < forms.size(); ++k) p = p * MultiPoly::linear(ring, forms[k]);
    return content_split(p);
}

inline ContentSplit expand_modular(const TowerPtr& ring, const std::vector<LinearForm>& forms) {
    return ModularExpander(ring, forms).run();
}

}  // namespace monogen
