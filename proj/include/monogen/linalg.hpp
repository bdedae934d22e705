#pragma once

#include "arith.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace monogen {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline Integer common_denominator(const Matrix<Rational>& a) {
    Integer d = 1;
    for (auto& row : a)
        for (auto& x : row) d = lcm(d, x.get_den());
    return d;
}

inline Matrix<Integer> scale_to_integer(const Matrix<Rational>& a, const Integer& d) {
    Matrix<Integer> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        out[i].resize(a[i].size());
        for (size_t j = 0; j < a[i].size(); ++j) {
            Rational s = a[i][j] * d;
            require(is_integral(s), "scale_to_integer: denominator does not divide scale");
            out[i][j] = s.get_num();
        }
    }
    return out;
}

// fraction-free Gaussian elimination
inline Integer det_bareiss(Matrix<Integer> a) {
    const size_t n = a.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline Rational det(const Matrix<Rational>& a) {
    if (a.empty()) return 1;
    Integer d = common_denominator(a);
    Integer num = det_bareiss(scale_to_integer(a, d));
    return make_rational(num, pow_int(d, a.size()));
}

// Berkowitz, division free; returns c with det(tI - A) = sum_k c[k] t^(n-k)
inline std::vector<Integer> charpoly_berkowitz(const Matrix<Integer>& a) {
    const size_t n = a.size();
    std::vector<Integer> vect{1};
    for (size_t r = 0; r < n; ++r) {
        std::vector<Integer> q(r + 2);
        q[0] = 1;
        q[1] = -a[r][r];
        std::vector<Integer> x(r), y(r);
        for (size_t i = 0; i < r; ++i) x[i] = a[i][r];
        for (size_t k = 0; k < r; ++k) {
            Integer dot = 0;
            for (size_t i = 0; i < r; ++i) dot += a[r][i] * x[i];
            q[k + 2] = -dot;
            if (k + 1 < r) {
                for (size_t i = 0; i < r; ++i) {
                    Integer s = 0;
                    for (size_t j = 0; j < r; ++j) s += a[i][j] * x[j];
                    y[i] = s;
                }
                std::swap(x, y);
            }
        }
        std::vector<Integer> next(r + 2, 0);
        for (size_t i = 0; i < r + 2; ++i)
            for (size_t j = 0; j <= i && j < vect.size(); ++j) next[i] += q[i - j] * vect[j];
        vect = std::move(next);
    }
    return vect;
}

inline std::vector<Rational> charpoly(const Matrix<Rational>& a) {
    Integer d = common_denominator(a);
    auto c = charpoly_berkowitz(scale_to_integer(a, d));
    std::vector<Rational> out(c.size());
    Integer dk = 1;
    for (size_t k = 0; k < c.size(); ++k) {
        out[k] = make_rational(c[k], dk);
        dk *= d;
    }
    return out;
}

// solves a x = b; nullopt if a is singular
inline std::optional<std::vector<Rational>> solve(Matrix<Rational> a, std::vector<Rational> b) {
    const size_t n = a.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        Rational inv = 1 / a[c][c];
        for (size_t j = c; j < n; ++j) a[c][j] *= inv;
        b[c] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    return b;
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, p);
        b = mulmod_u64(b, b, p);
        e >>= 1;
    }
    return r;
}

// right kernel of a (rows = equations) over F_p, small p
inline std::vector<std::vector<uint64_t>> nullspace_mod(Matrix<uint64_t> a, size_t ncols, uint64_t p) {
    std::vector<int> pivot_col;
    size_t row = 0;
    for (size_t c = 0; c < ncols && row < a.size(); ++c) {
        size_t piv = row;
        while (piv < a.size() && a[piv][c] % p == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[row]);
        uint64_t inv = powmod_u64(a[row][c], p - 2, p);
        for (auto& x : a[row]) x = mulmod_u64(x, inv, p);
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][c] % p == 0) continue;
            uint64_t f = a[i][c] % p;
            for (size_t j = 0; j < ncols; ++j)
                a[i][j] = (a[i][j] % p + p - mulmod_u64(f, a[row][j], p)) % p;
        }
        pivot_col.push_back(static_cast<int>(c));
        ++row;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<uint64_t>> basis;
    for (size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<uint64_t> v(ncols, 0);
        v[free] = 1;
        for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = (p - a[r][free] % p) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace monogen
