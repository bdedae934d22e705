#pragma once

#include "arith.hpp"
#include "families.hpp"
#include "linalg.hpp"
#include "tower_ring.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace monogen {

// ---- lattice helpers; rows of a BasisMatrix are elements over the power products ----

inline TowerElement row_element(const TowerPtr& K, const std::vector<Rational>& row) { return TowerElement(K, row); }

// lower-triangular Hermite normal form of the lattice spanned by the rows (full rank);
// positive diagonal, entries left of the diagonal reduced into [0, diagonal)
inline BasisMatrix hnf(const BasisMatrix& rows) {
    require(!rows.empty(), "hnf of an empty matrix");
    const size_t d = rows[0].size();
    Integer den = common_denominator(rows);
    Matrix<Integer> a = scale_to_integer(rows, den);
    std::vector<std::vector<Integer>> h(d);
    std::vector<bool> used(a.size(), false);
    Integer q;
    for (size_t cc = d; cc-- > 0;) {
        for (;;) {
            size_t piv = a.size();
            for (size_t r = 0; r < a.size(); ++r) {
                if (used[r] || a[r][cc] == 0) continue;
                if (piv == a.size() || abs(a[r][cc]) < abs(a[piv][cc])) piv = r;
            }
            require(piv < a.size(), "hnf: rows do not span a full-rank lattice");
            bool clean = true;
            for (size_t r = 0; r < a.size(); ++r) {
                if (used[r] || r == piv || a[r][cc] == 0) continue;
                q = floor_div(a[r][cc], a[piv][cc]);
                for (size_t j = 0; j <= cc; ++j) a[r][j] -= q * a[piv][j];
                if (a[r][cc] != 0) clean = false;
            }
            if (!clean) continue;
            if (a[piv][cc] < 0)
                for (size_t j = 0; j <= cc; ++j) a[piv][j] = -a[piv][j];
            h[cc] = a[piv];
            used[piv] = true;
            break;
        }
    }
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j-- > 0;) {
            q = floor_div(h[i][j], h[j][j]);
            if (q == 0) continue;
            for (size_t k = 0; k <= j; ++k) h[i][k] -= q * h[j][k];
        }
    BasisMatrix out(d, std::vector<Rational>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) out[i][j] = make_rational(h[i][j], den);
    return out;
}

inline bool is_lower_triangular(const BasisMatrix& b) {
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i + 1; j < b.size(); ++j)
            if (b[i][j] != 0) return false;
    return true;
}

// coordinates of x with respect to the rows of b
inline std::vector<Rational> coords_in(const BasisMatrix& b, const std::vector<Rational>& x) {
    const size_t d = b.size();
    if (is_lower_triangular(b)) {
        std::vector<Rational> r = x, c(d);
        for (size_t i = d; i-- > 0;) {
            require(b[i][i] != 0, "singular basis");
            c[i] = r[i] / b[i][i];
            if (c[i] == 0) continue;
            for (size_t j = 0; j <= i; ++j) r[j] -= c[i] * b[i][j];
        }
        return c;
    }
    Matrix<Rational> t(d, std::vector<Rational>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) t[j][i] = b[i][j];
    auto c = solve(t, x);
    require(c.has_value(), "singular basis");
    return *c;
}

inline bool contains(const BasisMatrix& b, const std::vector<Rational>& x) {
    for (auto& c : coords_in(b, x))
        if (!is_integral(c)) return false;
    return true;
}

inline bool same_lattice(const BasisMatrix& a, const BasisMatrix& b) {
    for (auto& r : a)
        if (!contains(b, r)) return false;
    for (auto& r : b)
        if (!contains(a, r)) return false;
    return true;
}

inline Rational basis_discriminant(const BasisMatrix& b, const TowerPtr& K) {
    const size_t d = b.size();
    std::vector<TowerElement> e;
    for (auto& r : b) e.push_back(row_element(K, r));
    Matrix<Rational> g(d, std::vector<Rational>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) g[i][j] = g[j][i] = (e[i] * e[j]).trace();
    return det(g);
}

inline Rational basis_discriminant(const BasisMatrix& b, const FamilyParams& p) { return basis_discriminant(b, field_ring(p)); }

inline bool is_integral(const TowerElement& e) {
    for (auto& c : e.char_poly())
        if (!is_integral(c)) return false;
    return true;
}

// structure constants c[i][j][k] of an order: b_i b_j = sum_k c_ijk b_k; nullopt if not closed
inline std::optional<std::vector<std::vector<std::vector<Integer>>>> structure_constants(const BasisMatrix& b, const TowerPtr& K) {
    const size_t d = b.size();
    std::vector<TowerElement> e;
    for (auto& r : b) e.push_back(row_element(K, r));
    std::vector<std::vector<std::vector<Integer>>> c(d, std::vector<std::vector<Integer>>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j <= i; ++j) {
            auto x = coords_in(b, (e[i] * e[j]).coords());
            std::vector<Integer> v(d);
            for (size_t k = 0; k < d; ++k) {
                if (!is_integral(x[k])) return std::nullopt;
                v[k] = x[k].get_num();
            }
            c[i][j] = v;
            c[j][i] = std::move(v);
        }
    return c;
}

inline bool is_ring(const BasisMatrix& b, const TowerPtr& K) {
    if (!contains(b, TowerElement::scalar(K, 1).coords())) return false;
    return structure_constants(b, K).has_value();
}

// smallest ring containing the lattice; the rows must be integral
inline BasisMatrix ring_closure(BasisMatrix b, const TowerPtr& K) {
    b = hnf(b);
    for (int round = 0; round < 64; ++round) {
        if (is_ring(b, K)) return b;
        BasisMatrix rows = b;
        rows.push_back(TowerElement::scalar(K, 1).coords());
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = 0; j <= i; ++j) rows.push_back((row_element(K, b[i]) * row_element(K, b[j])).coords());
        b = hnf(rows);
    }
    throw InvariantViolation("ring closure does not stabilise; basis is not integral");
}

namespace detail {

inline uint64_t to_mod(const Integer& z, uint64_t p) {
    return mod_nonneg(z, Integer(static_cast<unsigned long>(p))).get_ui();
}

inline Integer lift(uint64_t x) { return Integer(static_cast<unsigned long>(x)); }

}  // namespace detail

// multiplier ring of the p-radical of the order spanned by b (Pohst-Zassenhaus);
// equal to b exactly when b is p-maximal
inline BasisMatrix radical_multiplier_ring(const BasisMatrix& b, const TowerPtr& K, const Integer& pz) {
    const size_t d = b.size();
    const uint64_t p = pz.get_ui();
    auto sc = structure_constants(b, K);
    require(sc.has_value(), "radical_multiplier_ring: basis does not span a ring");
    std::vector<std::vector<std::vector<uint64_t>>> cm(d, std::vector<std::vector<uint64_t>>(d, std::vector<uint64_t>(d)));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k) cm[i][j][k] = detail::to_mod((*sc)[i][j][k], p);
    auto mul = [&](const std::vector<uint64_t>& x, const std::vector<uint64_t>& y) {
        std::vector<uint64_t> r(d, 0);
        for (size_t i = 0; i < d; ++i) {
            if (!x[i]) continue;
            for (size_t j = 0; j < d; ++j) {
                if (!y[j]) continue;
                uint64_t t = mulmod_u64(x[i], y[j], p);
                for (size_t k = 0; k < d; ++k)
                    if (cm[i][j][k]) r[k] = (r[k] + mulmod_u64(t, cm[i][j][k], p)) % p;
            }
        }
        return r;
    };
    auto powp = [&](std::vector<uint64_t> x) {
        std::vector<uint64_t> r(d, 0);
        r[0] = 1;  // b_0 = 1 in a normalized basis
        uint64_t e = p;
        while (e) {
            if (e & 1) r = mul(r, x);
            e >>= 1;
            if (e) x = mul(x, x);
        }
        return r;
    };
    require(b[0][0] == 1, "order basis must start with 1");
    for (size_t j = 1; j < d; ++j) require(b[0][j] == 0, "order basis must start with 1");

    // radical: kernel of x -> x^(p^s) with p^s >= d
    Matrix<uint64_t> frob(d, std::vector<uint64_t>(d));
    for (size_t i = 0; i < d; ++i) {
        std::vector<uint64_t> x(d, 0);
        x[i] = 1;
        for (uint64_t q = 1; q < d; q *= p) x = powp(x);
        for (size_t k = 0; k < d; ++k) frob[k][i] = x[k];
    }
    BasisMatrix irows;
    for (auto& v : nullspace_mod(frob, d, p)) {
        std::vector<Rational> row(d, 0);
        for (size_t i = 0; i < d; ++i)
            if (v[i])
                for (size_t k = 0; k < d; ++k) row[k] += Rational(detail::lift(v[i])) * b[i][k];
        irows.push_back(row);
    }
    for (auto& r : b) {
        std::vector<Rational> row = r;
        for (auto& x : row) x *= Rational(pz);
        irows.push_back(row);
    }
    BasisMatrix ideal = hnf(irows);

    // U / pO: y with y * gamma_k in p I for every gamma_k
    std::vector<TowerElement> be, ge;
    for (auto& r : b) be.push_back(row_element(K, r));
    for (auto& r : ideal) ge.push_back(row_element(K, r));
    Matrix<uint64_t> eqs(d * d, std::vector<uint64_t>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k) {
            auto c = coords_in(ideal, (be[i] * ge[k]).coords());
            for (size_t l = 0; l < d; ++l) {
                require(is_integral(c[l]), "p-radical is not an ideal");
                eqs[k * d + l][i] = detail::to_mod(c[l].get_num(), p);
            }
        }
    BasisMatrix out = b;
    for (auto& v : nullspace_mod(eqs, d, p)) {
        std::vector<Rational> row(d, 0);
        for (size_t i = 0; i < d; ++i)
            if (v[i])
                for (size_t k = 0; k < d; ++k) row[k] += Rational(detail::lift(v[i])) * b[i][k];
        for (auto& x : row) x /= Rational(pz);
        out.push_back(row);
    }
    return hnf(out);
}

// the p-maximal order containing the ring generated by b
inline BasisMatrix p_maximal_order(const BasisMatrix& b, const TowerPtr& K, const Integer& p) {
    BasisMatrix r = ring_closure(b, K);
    for (int round = 0; round < 256; ++round) {
        BasisMatrix next = radical_multiplier_ring(r, K, p);
        if (next == r) return r;
        r = std::move(next);
    }
    throw InvariantViolation("p-maximal order computation does not terminate");
}

struct EnlargeStep {
    Integer p;
    std::vector<Integer> lambda;  // normalized: last nonzero entry is 1
    int row = -1;                 // replaced row
    Rational disc_before, disc_after;
};

struct EnlargeResult {
    BasisMatrix basis;
    EnlargeStep step;
};

namespace detail {

inline EnlargeResult apply_lambda(const BasisMatrix& b, const TowerPtr& K, const Integer& p, std::vector<Integer> lambda,
                                  const Rational& disc_before) {
    const size_t d = b.size();
    int last = -1;
    for (size_t i = 0; i < d; ++i) {
        lambda[i] = mod_nonneg(lambda[i], p);
        if (lambda[i] != 0) last = static_cast<int>(i);
    }
    require(last >= 0, "zero lambda vector");
    Integer inv;
    mpz_invert(inv.get_mpz_t(), lambda[last].get_mpz_t(), p.get_mpz_t());
    for (auto& l : lambda) l = mod_nonneg(l * inv, p);
    std::vector<Rational> mu(d, 0);
    for (size_t i = 0; i < d; ++i)
        if (lambda[i] != 0)
            for (size_t k = 0; k < d; ++k) mu[k] += Rational(lambda[i]) * b[i][k];
    for (auto& x : mu) x /= Rational(p);
    require(is_integral(row_element(K, mu)), "enlargement element is not integral");
    BasisMatrix nb = b;
    nb[last] = mu;
    nb = hnf(nb);
    EnlargeResult res{nb, {p, lambda, last, disc_before, basis_discriminant(nb, K)}};
    require(res.step.disc_before == res.step.disc_after * Rational(p * p), "enlargement did not divide the discriminant by p^2");
    return res;
}

}  // namespace detail

// one enlargement mu = (sum lambda_i b_i)/p, located through the p-maximal order
// containing b; absent iff no such integral mu exists
inline std::optional<EnlargeResult> p_enlarge(const BasisMatrix& basis, const TowerPtr& K, const Integer& p,
                                              const BasisMatrix* p_maximal_hint = nullptr) {
    BasisMatrix b = hnf(basis);
    BasisMatrix rp = p_maximal_hint ? *p_maximal_hint : p_maximal_order(b, K, p);
    for (auto& r : rp) {
        auto c = coords_in(b, r);
        Integer den = 1;
        for (auto& x : c) den = lcm(den, x.get_den());
        if (den % p != 0) continue;
        std::vector<Integer> lambda(b.size());
        for (size_t i = 0; i < b.size(); ++i) lambda[i] = Rational(c[i] * Rational(den)).get_num();
        return detail::apply_lambda(b, K, p, lambda, basis_discriminant(b, K));
    }
    return std::nullopt;
}

inline std::optional<EnlargeResult> p_enlarge(const BasisMatrix& basis, const FamilyParams& params, const Integer& p) {
    return p_enlarge(basis, field_ring(params), p);
}

// the same step by exhaustive search over lambda, after the linear prefilter
// Tr(mu b_j) and Tr(mu b_j b_k) integral; for small cases and cross-checks
inline std::optional<EnlargeResult> p_enlarge_enumerate(const BasisMatrix& basis, const TowerPtr& K, const Integer& pz,
                                                        uint64_t max_candidates = 2000000) {
    BasisMatrix b = hnf(basis);
    const size_t d = b.size();
    const uint64_t p = pz.get_ui();
    std::vector<TowerElement> e;
    for (auto& r : b) e.push_back(row_element(K, r));
    Matrix<uint64_t> eqs;
    for (size_t j = 0; j < d; ++j)
        for (size_t k = j; k < d; ++k) {
            auto w = k == j && j == 0 ? TowerElement::scalar(K, 1) : e[j] * e[k];
            for (auto* x : {&e[j], &w}) {
                std::vector<uint64_t> row(d);
                for (size_t i = 0; i < d; ++i) {
                    Rational t = (e[i] * *x).trace();
                    require(is_integral(t), "basis is not integral");
                    row[i] = detail::to_mod(t.get_num(), p);
                }
                eqs.push_back(row);
            }
        }
    auto kernel = nullspace_mod(eqs, d, p);
    uint64_t total = 1;
    for (size_t t = 0; t < kernel.size(); ++t) {
        require(total <= max_candidates / p, "lambda enumeration too large");
        total *= p;
    }
    Rational disc = basis_discriminant(b, K);
    std::vector<uint64_t> coef(kernel.size(), 0);
    for (uint64_t idx = 1; idx < total; ++idx) {
        uint64_t t = idx;
        for (auto& c : coef) {
            c = t % p;
            t /= p;
        }
        std::vector<uint64_t> lam(d, 0);
        for (size_t k = 0; k < kernel.size(); ++k)
            if (coef[k])
                for (size_t i = 0; i < d; ++i) lam[i] = (lam[i] + mulmod_u64(coef[k], kernel[k][i], p)) % p;
        int last = -1;
        for (size_t i = 0; i < d; ++i)
            if (lam[i]) last = static_cast<int>(i);
        if (last < 0 || lam[last] != 1) continue;
        std::vector<Rational> mu(d, 0);
        for (size_t i = 0; i < d; ++i)
            if (lam[i])
                for (size_t k = 0; k < d; ++k) mu[k] += Rational(detail::lift(lam[i])) * b[i][k];
        for (auto& x : mu) x /= Rational(pz);
        if (!is_integral(row_element(K, mu))) continue;
        std::vector<Integer> lambda;
        for (auto x : lam) lambda.push_back(detail::lift(x));
        return detail::apply_lambda(b, K, pz, lambda, disc);
    }
    return std::nullopt;
}

// fixed point of p_enlarge; steps are appended to log
inline BasisMatrix p_maximal(const BasisMatrix& basis, const TowerPtr& K, const Integer& p, std::vector<EnlargeStep>* log = nullptr) {
    BasisMatrix b = hnf(basis);
    BasisMatrix target = p_maximal_order(b, K, p);
    for (int guard = 0; guard < 4096; ++guard) {
        auto r = p_enlarge(b, K, p, &target);
        if (!r) {
            require(same_lattice(b, target), "p-enlargement stopped before the p-maximal order");
            return b;
        }
        if (log) log->push_back(r->step);
        b = std::move(r->basis);
    }
    throw InvariantViolation("p-enlargement does not terminate");
}

inline BasisMatrix p_maximal(const BasisMatrix& basis, const FamilyParams& params, const Integer& p) {
    return p_maximal(basis, field_ring(params), p);
}

struct CrtResult {
    BasisMatrix basis;
    bool fallback = false;  // formula failed the membership test; sum lattice used
};

struct CrtWeights {
    Integer ya, yb, ell;  // na*ya = 1 mod nb, nb*yb = 1 mod na, na*ya + nb*yb = 1 + ell*na*nb
};

inline CrtWeights crt_weights(const Integer& na, const Integer& nb) {
    require(gcd(na, nb) == 1, "crt_combine: row denominators are not coprime");
    CrtWeights w{0, 0, 0};
    if (nb > 1) mpz_invert(w.ya.get_mpz_t(), Integer(na % nb).get_mpz_t(), nb.get_mpz_t());
    if (na > 1) mpz_invert(w.yb.get_mpz_t(), Integer(nb % na).get_mpz_t(), na.get_mpz_t());
    w.ell = (w.yb * nb + w.ya * na - 1) / (na * nb);
    return w;
}

namespace detail {

// row-wise merge of triangular bases whose diagonals are 1/N with coprime N
inline BasisMatrix crt_rows(const BasisMatrix& a, const BasisMatrix& b) {
    const size_t d = a.size();
    require(b.size() == d, "crt_combine: dimension mismatch");
    require(is_lower_triangular(a) && is_lower_triangular(b), "crt_combine: inputs must be triangular");
    BasisMatrix h(d);
    for (size_t i = 0; i < d; ++i) {
        require(a[i][i] > 0 && a[i][i].get_num() == 1 && b[i][i] > 0 && b[i][i].get_num() == 1,
                "crt_combine: diagonal entries must be 1/N");
        auto w = crt_weights(a[i][i].get_den(), b[i][i].get_den());
        h[i].assign(d, 0);
        for (size_t k = 0; k <= i; ++k) h[i][k] = Rational(w.yb) * a[i][k] + Rational(w.ya) * b[i][k];
        h[i][i] -= Rational(w.ell);
    }
    return h;
}

inline BasisMatrix relative(const BasisMatrix& m, const BasisMatrix& base) {
    BasisMatrix out;
    for (auto& r : m) out.push_back(coords_in(base, r));
    return hnf(out);
}

inline BasisMatrix absolute(const BasisMatrix& m, const BasisMatrix& base) {
    const size_t d = base.size();
    BasisMatrix out(m.size(), std::vector<Rational>(d, 0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t k = 0; k < d; ++k)
            if (m[i][k] != 0)
                for (size_t j = 0; j < d; ++j) out[i][j] += m[i][k] * base[k][j];
    return out;
}

}  // namespace detail

// CRT merge of two orders containing a common order `base`; the formula runs in
// coordinates relative to base, where the row denominators are prime powers
inline CrtResult crt_combine_checked(const BasisMatrix& a, const BasisMatrix& b, const BasisMatrix& base) {
    BasisMatrix h = detail::crt_rows(detail::relative(a, base), detail::relative(b, base));
    CrtResult out{hnf(detail::absolute(h, base)), false};
    for (auto* m : {&a, &b})
        for (auto& r : *m)
            if (!contains(out.basis, r)) out.fallback = true;
    if (out.fallback) {
        BasisMatrix rows = a;
        rows.insert(rows.end(), b.begin(), b.end());
        out.basis = hnf(rows);
    }
    return out;
}

inline BasisMatrix crt_combine(const BasisMatrix& bp, const BasisMatrix& bq, const Integer& p, const Integer& q) {
    require(p != q, "crt_combine: primes must differ");
    auto only = [](const BasisMatrix& m, const Integer& prime) {
        for (size_t i = 0; i < m.size(); ++i) {
            Integer den = m[i][i].get_den();
            while (den % prime == 0) den /= prime;
            if (den != 1) return false;
        }
        return true;
    };
    require(only(bp, p) && only(bq, q), "crt_combine: row denominators are not prime powers");
    auto h = hnf(detail::crt_rows(bp, bq));
    for (auto* m : {&bp, &bq})
        for (auto& r : *m) require(contains(h, r), "crt_combine: result does not contain both inputs");
    return h;
}

struct OrderReport {
    BasisMatrix initial;
    BasisMatrix basis;
    Integer initial_discriminant;
    Integer discriminant;
    std::vector<Integer> primes;  // primes whose square divides the initial discriminant
    std::vector<EnlargeStep> log;
    bool crt_fallback = false;
};

inline std::vector<Integer> prime_hints(const FamilyParams& p) {
    std::vector<Integer> vals{2, 3, p.n, p.m};
    if (p.family == Family::SimplestCubic) vals.push_back(p.m * p.m + 3 * p.m + 9);
    if (p.family == Family::SimplestQuartic) vals.push_back(p.m0);
    std::set<Integer> primes;
    for (auto& v : vals)
        if (v != 0)
            for (auto& [q, e] : factorize(v)) primes.insert(q);
    return {primes.begin(), primes.end()};
}

inline Integer integral_value(const Rational& q, const std::string& what) {
    require(is_integral(q), what + " is not an integer");
    return q.get_num();
}

inline OrderReport maximal_order_basis(const FamilyParams& params) {
    auto K = field_ring(params);
    OrderReport rep;
    rep.initial = hnf(initial_product_basis(params));
    rep.initial_discriminant = integral_value(basis_discriminant(rep.initial, K), "initial discriminant");
    for (auto& [q, e] : factorize(rep.initial_discriminant, prime_hints(params)))
        if (e >= 2) rep.primes.push_back(q);
    BasisMatrix acc = rep.initial;
    for (auto& q : rep.primes) {
        BasisMatrix bq = p_maximal(rep.initial, K, q, &rep.log);
        auto merged = crt_combine_checked(acc, bq, rep.initial);
        rep.crt_fallback = rep.crt_fallback || merged.fallback;
        acc = std::move(merged.basis);
    }
    rep.basis = acc;
    rep.discriminant = integral_value(basis_discriminant(acc, K), "field discriminant");
    require(is_ring(acc, K), "computed maximal order is not a ring");
    require(rep.initial_discriminant % rep.discriminant == 0, "field discriminant does not divide the initial one");
    require(is_square(Integer(rep.initial_discriminant / rep.discriminant)), "index of the initial order is not an integer");
    for (auto& q : rep.primes) require(p_maximal_order(acc, K, q) == acc, "final basis is not p-maximal");
    return rep;
}

struct TableCheck {
    std::string row_id;
    std::vector<int> nonintegral;  // table entries that are not algebraic integers
    Rational table_discriminant;
    Integer field_discriminant;
    Rational change_det;
    bool change_integral = false;
    bool integral() const { return nonintegral.empty(); }
    bool disc_match() const { return table_discriminant == Rational(field_discriminant); }
    bool unimodular() const { return change_integral && (change_det == 1 || change_det == -1); }
    bool match() const { return integral() && disc_match() && unimodular(); }
};

inline TableCheck verify_table_basis(const FamilyParams& params, const OrderReport& order, bool erratum = false) {
    auto K = field_ring(params);
    TableCheck tc;
    tc.row_id = table_row(params, "basis").id;
    auto elems = table_basis_elements(params, K, erratum);
    BasisMatrix tb = rows_of(elems);
    for (size_t i = 0; i < elems.size(); ++i)
        if (!is_integral(elems[i])) tc.nonintegral.push_back(static_cast<int>(i));
    tc.field_discriminant = order.discriminant;
    Matrix<Rational> change;
    tc.change_integral = true;
    if (det(tb) == 0) {
        tc.table_discriminant = 0;
        tc.change_det = 0;
        tc.change_integral = false;
        return tc;
    }
    tc.table_discriminant = basis_discriminant(tb, K);
    for (auto& r : tb) {
        auto c = coords_in(order.basis, r);
        for (auto& x : c) tc.change_integral = tc.change_integral && is_integral(x);
        change.push_back(c);
    }
    tc.change_det = det(change);
    return tc;
}

inline TableCheck verify_table_basis(const FamilyParams& params) { return verify_table_basis(params, maximal_order_basis(params)); }

}  // namespace monogen
