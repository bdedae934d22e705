#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace monogen {

using Integer = mpz_class;
using Rational = mpq_class;

struct InvalidParameters : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what);
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer mod_nonneg(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r < 0) r += abs(m);
    return r;
}

inline long long mod_nonneg(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer pow_int(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rational pow_rat(const Rational& b, unsigned long e) {
    Rational r = 1;
    Rational x = b;
    while (e) {
        if (e & 1) r *= x;
        e >>= 1;
        if (e) x *= x;
    }
    return r;
}

// exact square root or throws
inline Integer exact_sqrt(const Integer& a) {
    if (a < 0) throw InvariantViolation("square root of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    if (r * r != a) throw InvariantViolation("integer is not a perfect square");
    return r;
}

inline bool is_square(const Integer& a) {
    return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline unsigned valuation(Integer a, unsigned long p) {
    if (a == 0) return ~0u;
    unsigned v = 0;
    while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
        mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), p);
        ++v;
    }
    return v;
}

inline constexpr long long kFactorLimit = 1000000000000LL;

// prime factorisation of |a| by trial division, |a| <= 10^12 unless extra primes
// are supplied that strip the cofactor down below the limit
inline std::map<Integer, unsigned> factorize(Integer a, const std::vector<Integer>& hints = {}) {
    std::map<Integer, unsigned> out;
    a = abs(a);
    if (a == 0) throw InvalidParameters("cannot factor zero");
    for (const Integer& h : hints) {
        if (h < 2) continue;
        while (a % h == 0 && mpz_probab_prime_p(h.get_mpz_t(), 30)) {
            a /= h;
            ++out[h];
        }
    }
    if (a > Integer(static_cast<long>(kFactorLimit)))
        throw InvalidParameters("factorisation beyond 10^12 is refused: " + a.get_str());
    unsigned long long r = a.get_ui();
    for (unsigned long long p = 2; p * p <= r; p += (p == 2 ? 1 : 2)) {
        while (r % p == 0) {
            r /= p;
            ++out[Integer(static_cast<unsigned long>(p))];
        }
    }
    if (r > 1) ++out[Integer(static_cast<unsigned long>(r))];
    return out;
}

inline bool is_squarefree(const Integer& a) {
    if (a == 0) return false;
    for (auto& [p, e] : factorize(a))
        if (e > 1) return false;
    return true;
}

inline bool is_cubefree(const Integer& a) {
    if (a == 0) return false;
    for (auto& [p, e] : factorize(a))
        if (e > 2) return false;
    return true;
}

inline Integer squarefree_part(const Integer& a) {
    Integer s = a < 0 ? -1 : 1;
    for (auto& [p, e] : factorize(a))
        if (e % 2) s *= p;
    return s;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace monogen
