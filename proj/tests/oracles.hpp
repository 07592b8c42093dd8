#pragma once

// Slow reference implementations. Nothing here calls into the library, so
// agreement with it is evidence rather than tautology.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using cplx = std::complex<long double>;

inline constexpr long double tau = 6.283185307179586476925286766559005768L;

inline u64 largest_pf(u64 n) {
    u64 best = 1;
    for (u64 p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            best = p;
            n /= p;
        }
    return n > 1 ? n : best;
}

inline u64 smallest_pf(u64 n) {
    if (n < 2)
        return 1;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return p;
    return n;
}

inline bool prime(u64 n) { return n >= 2 && smallest_pf(n) == n; }

// (prime, exponent), ascending
inline std::vector<std::pair<u64, unsigned>> factor(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline std::vector<u64> smooth(double x, double y) {
    std::vector<u64> out;
    const auto n_max = static_cast<u64>(std::floor(x));
    for (u64 n = 1; n <= n_max; ++n)
        if (static_cast<double>(largest_pf(n)) <= y)
            out.push_back(n);
    return out;
}

inline cplx e_q(u64 r, u64 q) {
    const long double t = tau * static_cast<long double>(r % q) / static_cast<long double>(q);
    return {std::cos(t), std::sin(t)};
}

inline u64 mod(i64 a, u64 q) {
    const i64 r = a % static_cast<i64>(q);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(q) : r);
}

// n^nu mod q by repeated multiplication; nu < 0 by exhaustive inverse search.
// Returns false when n has no inverse.
inline bool power_mod(u64 n, i64 nu, u64 q, u64& out) {
    n %= q;
    if (nu < 0) {
        u64 inv = q;
        for (u64 c = 0; c < q; ++c)
            if ((static_cast<unsigned __int128>(c) * n) % q == 1 % q) {
                inv = c;
                break;
            }
        if (inv == q)
            return false;
        n = inv;
        nu = -nu;
    }
    u64 r = 1 % q;
    for (i64 i = 0; i < nu; ++i)
        r = static_cast<u64>((static_cast<unsigned __int128>(r) * n) % q);
    out = r;
    return true;
}

inline cplx monomial(u64 n, i64 a, i64 nu, u64 q, bool& skip) {
    u64 r;
    skip = !power_mod(n, nu, q, r);
    if (skip)
        return 0;
    return e_q(static_cast<u64>((static_cast<unsigned __int128>(mod(a, q)) * r) % q), q);
}

inline cplx power_sum(double x, double y, u64 q, i64 a, i64 nu) {
    cplx s = 0;
    for (u64 n : smooth(x, y)) {
        bool skip;
        const cplx t = monomial(n, a, nu, q, skip);
        if (!skip)
            s += t;
    }
    return s;
}

inline cplx theta_sum(double x, double y, long double theta) {
    cplx s = 0;
    for (u64 n : smooth(x, y)) {
        const long double t = theta * static_cast<long double>(n);
        const long double f = t - std::floor(t);
        s += cplx(std::cos(tau * f), std::sin(tau * f));
    }
    return s;
}

// Number of ways to pick j primes above y dividing n as a strictly increasing
// tuple (a j-subset of the distinct primes) or as a non-decreasing tuple (a
// j-multiset respecting multiplicities).
inline u64 tuple_count(u64 n, double y, unsigned j, bool strict) {
    std::vector<unsigned> mult;
    for (auto [p, e] : factor(n))
        if (static_cast<double>(p) > y)
            mult.push_back(strict ? 1u : e);
    std::vector<u64> ways(j + 1, 0);
    ways[0] = 1;
    for (unsigned e : mult) {
        std::vector<u64> next(j + 1, 0);
        for (unsigned have = 0; have <= j; ++have)
            for (unsigned take = 0; take <= e && have + take <= j; ++take)
                next[have + take] += ways[have];
        ways = next;
    }
    return ways[j];
}

// sum over n <= x of tuple_count(n) e_q(a n^nu)
inline cplx prime_convolution(unsigned j, double x, double y, u64 q, i64 a, i64 nu, bool strict,
                              u64& terms) {
    cplx s = 0;
    terms = 0;
    const auto n_max = static_cast<u64>(std::floor(x));
    for (u64 n = 1; n <= n_max; ++n) {
        const u64 c = tuple_count(n, y, j, strict);
        if (c == 0)
            continue;
        bool skip;
        const cplx t = monomial(n, a, nu, q, skip);
        if (skip)
            continue;
        s += static_cast<long double>(c) * t;
        terms += c;
    }
    return s;
}

inline cplx bilinear(const std::vector<std::complex<double>>& alpha, u64 M,
                     const std::vector<std::complex<double>>& beta, u64 N, double x, u64 q, i64 a,
                     i64 nu) {
    cplx s = 0;
    for (u64 m = M; m <= 2 * M; ++m)
        for (u64 n = N; n <= 2 * N; ++n) {
            if (static_cast<double>(m * n) > x)
                continue;
            bool skip;
            const cplx t = monomial(m * n, a, nu, q, skip);
            if (skip)
                continue;
            s += cplx(alpha[m - M]) * cplx(beta[n - N]) * t;
        }
    return s;
}

// Plain 2k-fold loop.
inline u64 moment_count(unsigned k, i64 nu, u64 q, u64 M) {
    std::vector<u64> vals;
    for (u64 m = M; m <= 2 * M; ++m) {
        u64 r;
        if (power_mod(m, nu, q, r) && (nu > 0 || std::gcd(m % q, q) == 1))
            vals.push_back(r);
    }
    const unsigned slots = 2 * k;
    std::vector<std::size_t> idx(slots, 0);
    u64 count = 0;
    if (vals.empty())
        return 0;
    for (;;) {
        u64 lhs = 0, rhs = 0;
        for (unsigned i = 0; i < k; ++i)
            lhs = (lhs + vals[idx[i]]) % q;
        for (unsigned i = k; i < slots; ++i)
            rhs = (rhs + vals[idx[i]]) % q;
        if (lhs == rhs)
            ++count;
        unsigned pos = 0;
        while (pos < slots && ++idx[pos] == vals.size())
            idx[pos++] = 0;
        if (pos == slots)
            break;
    }
    return count;
}

inline long double von_mangoldt(u64 n) {
    const auto f = factor(n);
    return f.size() == 1 ? std::log(static_cast<long double>(f[0].first)) : 0.0L;
}

inline int mobius(u64 n) {
    int s = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1)
            return 0;
        s = -s;
    }
    return s;
}

inline bool close(cplx a, std::complex<double> b, long double tol) {
    const long double scale =
        std::max({1.0L, std::abs(a), static_cast<long double>(std::abs(b))});
    return std::abs(a - cplx(b)) <= tol * scale;
}

// Seeded generator for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(u64 seed) : rng(seed) {}
    u64 uniform(u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng); }
    i64 uniform_i(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    u64 unit_mod(u64 q) {
        if (q == 1)
            return 0;
        for (;;) {
            const u64 a = uniform(1, q - 1);
            if (std::gcd(a, q) == 1)
                return a;
        }
    }
    std::complex<double> weight() {
        const double r = real(0, 1), t = real(0, 6.283185307179586);
        return std::polar(r, t);
    }
};

} // namespace oracle
