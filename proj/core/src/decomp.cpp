#include "friable/decomp.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace friable {

namespace {

void require_cover(const FactorSieve& sieve, u64 n) {
    if (sieve.lo() != 1 || sieve.hi() < n)
        throw std::invalid_argument("sieve must cover [1, " + std::to_string(n) + "]");
}

u64 factorial(unsigned n) {
    u64 f = 1;
    for (unsigned i = 2; i <= n; ++i)
        f *= i;
    return f;
}

std::vector<u64> primes_above(u64 ybound, u64 limit) {
    std::vector<u64> out;
    for (u64 p : primes_up_to(limit))
        if (p > ybound)
            out.push_back(p);
    return out;
}

/// Visits every strictly increasing tuple of `count` primes from `primes`
/// whose product is <= limit.
void for_each_strict_tuple(unsigned count, const std::vector<u64>& primes, u64 limit,
                           const std::function<void(const std::vector<u64>&, u64)>& visit) {
    std::vector<u64> tuple;
    std::function<void(std::size_t, u64)> rec = [&](std::size_t from, u64 product) {
        if (tuple.size() == count) {
            visit(tuple, product);
            return;
        }
        const unsigned remaining = count - static_cast<unsigned>(tuple.size());
        for (std::size_t i = from; i < primes.size(); ++i) {
            u128 reach = product;
            for (unsigned r = 0; r < remaining && reach <= limit; ++r)
                reach *= primes[i];
            if (reach > limit)
                break;
            tuple.push_back(primes[i]);
            rec(i + 1, product * primes[i]);
            tuple.pop_back();
        }
    };
    rec(0, 1);
}

TermFunction as_term(const ArithmeticFunction& f) {
    return [&f](u64 n) -> std::optional<std::complex<double>> { return f(n); };
}

} // namespace

WSplit w_split(u64 n, double w, const FactorSieve& sieve) {
    if (!(w > 1))
        throw std::invalid_argument("w_split needs w > 1");
    if (static_cast<double>(n) < w)
        throw std::domain_error("no split: n < w");
    require_cover(sieve, n);
    u64 k = 1;
    for (u64 p : sieve.prime_factors(n)) {
        k *= p;
        if (static_cast<double>(k) >= w)
            return {n, k, n / k, w};
    }
    throw std::logic_error("w_split: prefix products never reached w");
}

bool is_admissible_split(u64 n, u64 k, double w, const FactorSieve& sieve) {
    if (k == 0 || n % k != 0)
        return false;
    require_cover(sieve, n);
    const u64 m = n / k;
    const u64 big = sieve.largest(k);
    const double kd = static_cast<double>(k);
    if (!(kd >= w && kd < w * static_cast<double>(big)))
        return false;
    return m == 1 || big <= sieve.smallest(m);
}

std::complex<double> smooth_tail_sum(const ArithmeticFunction& f, double x, double y, double w,
                                     const FactorSieve& sieve) {
    const u64 limit = floor_u64(x);
    require_cover(sieve, limit);
    const u64 start = std::max<u64>(1, static_cast<u64>(std::ceil(w)));
    KahanComplex sum;
    for (u64 n = start; n <= limit; ++n)
        if (static_cast<double>(sieve.largest(n)) <= y)
            sum.add(f(n));
    return sum.value();
}

std::complex<double> split_partition_sum(const ArithmeticFunction& f, double x, double y, double w,
                                         const FactorSieve& sieve) {
    if (!(w > 1))
        throw std::invalid_argument("split_partition_sum needs w > 1");
    const u64 limit = floor_u64(x);
    require_cover(sieve, limit);
    const u64 kmin = static_cast<u64>(std::ceil(w));
    const double kcap = std::min(static_cast<double>(limit), w * std::max(y, 1.0));
    KahanComplex sum;
    for (u64 k = kmin; static_cast<double>(k) <= kcap; ++k) {
        const u64 big = sieve.largest(k);
        if (static_cast<double>(big) > y)
            continue;
        if (!(static_cast<double>(k) < w * static_cast<double>(big)))
            continue;
        const u64 mmax = limit / k;
        for (u64 m = 1; m <= mmax; ++m) {
            if (m > 1 && (static_cast<double>(sieve.largest(m)) > y || sieve.smallest(m) < big))
                continue;
            sum.add(f(k * m));
        }
    }
    return sum.value();
}

std::complex<double> BuchstabExpansion::recombined() const {
    KahanComplex total;
    total.add(main);
    for (std::size_t i = 0; i < corrections.size(); ++i)
        total.add((i % 2 == 0) ? -corrections[i] : corrections[i]);
    return total.value();
}

unsigned buchstab_depth(double x, double y, PrimeOrder order) {
    const u64 limit = floor_u64(x);
    const u64 ybound = y < 1 ? 0 : floor_u64(y);
    if (ybound >= limit)
        return 0;
    unsigned depth = 0;
    u128 product = 1;
    u64 p = ybound;
    for (;;) {
        if (order == PrimeOrder::strict || depth == 0)
            p = next_prime(p);
        product *= p;
        if (product > limit)
            return depth;
        ++depth;
    }
}

BuchstabExpansion buchstab_expand(const ArithmeticFunction& f, double x, double y, unsigned r,
                                  PrimeOrder order) {
    if (r == 0)
        throw std::invalid_argument("r must be positive");
    const unsigned need = buchstab_depth(x, y, order);
    if (r < need)
        throw std::domain_error("incomplete expansion: depth " + std::to_string(r) +
                                " leaves tuples of " + std::to_string(r + 1) + " primes <= x");
    BuchstabExpansion out;
    out.r = r;
    out.order = order;
    const u64 limit = floor_u64(x);
    KahanComplex main;
    for (u64 n = 1; n <= limit; ++n)
        main.add(f(n));
    out.main = main.value();
    const auto term = as_term(f);
    for (unsigned j = 1; j <= r; ++j)
        out.corrections.push_back(prime_convolution_sum(j, x, y, term, order).value);
    return out;
}

ArithmeticTables arithmetic_tables(u64 n_max) {
    ArithmeticTables t;
    t.mobius.assign(n_max + 1, 0);
    t.von_mangoldt.assign(n_max + 1, 0.0);
    if (n_max == 0)
        return t;
    const auto sieve = build_sieve(1, n_max, SieveConfig{.segment_size = n_max, .threads = 1});
    t.mobius[1] = 1;
    for (u64 n = 2; n <= n_max; ++n) {
        const u64 p = sieve.smallest(n);
        const u64 m = n / p;
        t.mobius[n] = (m % p == 0) ? 0 : -t.mobius[m];
        if (sieve.largest(n) == p)
            t.von_mangoldt[n] = std::log(static_cast<double>(p));
    }
    return t;
}

namespace {

struct Signal {
    std::vector<double> value;
    std::vector<double> magnitude;

    explicit Signal(u64 n) : value(n + 1, 0.0), magnitude(n + 1, 0.0) {}

    void add(u64 n, double v) {
        value[n] += v;
        magnitude[n] += std::abs(v);
    }
};

/// (a * 1)(n) = sum over d | n of a(d)
Signal sum_over_divisors(const Signal& a) {
    const u64 n_max = a.value.size() - 1;
    Signal out(n_max);
    for (u64 d = 1; d <= n_max; ++d) {
        if (a.value[d] == 0.0 && a.magnitude[d] == 0.0)
            continue;
        for (u64 m = d; m <= n_max; m += d) {
            out.value[m] += a.value[d];
            out.magnitude[m] += a.magnitude[d];
        }
    }
    return out;
}

IdentityCheck compare(const std::vector<double>& expected, const Signal& got, u64 from, u64 to,
                      double tol) {
    IdentityCheck check;
    for (u64 n = from; n <= to; ++n) {
        const double err = std::abs(expected[n] - got.value[n]);
        check.max_abs_error = std::max(check.max_abs_error, err);
        ++check.checked;
        if (err > tol * std::max(1.0, got.magnitude[n]) && check.ok) {
            check.ok = false;
            check.first_failure = n;
        }
    }
    return check;
}

constexpr double identity_tolerance = 1e-9;

} // namespace

IdentityCheck vaughan_lambda_check(u64 n_max, double u, double v) {
    if (!(u >= 1) || !(v >= 1))
        throw std::invalid_argument("Vaughan parameters need u, v >= 1");
    const auto t = arithmetic_tables(n_max);
    const auto& mu = t.mobius;
    const auto& lambda = t.von_mangoldt;

    Signal identity(n_max);
    // type I with log
    for (u64 b = 1; static_cast<double>(b) <= u && b <= n_max; ++b) {
        if (mu[b] == 0)
            continue;
        for (u64 d = 1; b * d <= n_max; ++d)
            if (d > 1)
                identity.add(b * d, mu[b] * std::log(static_cast<double>(d)));
    }
    // mu_{<=u} * Lambda_{<=v} and mu_{>u} * Lambda_{>v}, each then summed over divisors
    Signal low(n_max), high(n_max);
    for (u64 b = 1; b <= n_max; ++b) {
        if (mu[b] == 0)
            continue;
        const bool small_b = static_cast<double>(b) <= u;
        for (u64 c = 2; b * c <= n_max; ++c) {
            if (lambda[c] == 0.0)
                continue;
            const bool small_c = static_cast<double>(c) <= v;
            if (small_b && small_c)
                low.add(b * c, mu[b] * lambda[c]);
            else if (!small_b && !small_c)
                high.add(b * c, mu[b] * lambda[c]);
        }
    }
    const Signal low_sum = sum_over_divisors(low);
    const Signal high_sum = sum_over_divisors(high);
    for (u64 n = 1; n <= n_max; ++n) {
        identity.value[n] += high_sum.value[n] - low_sum.value[n];
        identity.magnitude[n] += high_sum.magnitude[n] + low_sum.magnitude[n];
    }
    const u64 from = static_cast<u64>(std::floor(v)) + 1;
    return compare(lambda, identity, from, n_max, identity_tolerance);
}

IdentityCheck heath_brown_lambda_check(u64 n_max, unsigned J, double z) {
    if (J == 0)
        throw std::invalid_argument("J must be positive");
    if (std::pow(static_cast<long double>(z), J) < static_cast<long double>(n_max))
        throw std::domain_error("identity-range error: z^J < n_max");
    const auto t = arithmetic_tables(n_max);

    auto convolve = [n_max](const std::vector<i64>& a, const std::vector<i64>& b) {
        std::vector<i64> c(n_max + 1, 0);
        for (u64 d = 1; d <= n_max; ++d) {
            if (a[d] == 0)
                continue;
            for (u64 m = 1; d * m <= n_max; ++m)
                if (b[m] != 0)
                    c[d * m] += a[d] * b[m];
        }
        return c;
    };
    std::vector<i64> truncated(n_max + 1, 0), ones(n_max + 1, 1);
    ones[0] = 0;
    for (u64 b = 1; b <= n_max && static_cast<double>(b) <= z; ++b)
        truncated[b] = t.mobius[b];

    Signal identity(n_max);
    std::vector<i64> power = truncated; // mu_z^{*j}
    for (unsigned j = 1; j <= J; ++j) {
        if (j > 1)
            power = convolve(power, truncated);
        std::vector<i64> kernel = power;
        for (unsigned i = 1; i < j; ++i)
            kernel = convolve(kernel, ones);
        // binomial(J, j) with alternating sign
        double coeff = 1;
        for (unsigned i = 0; i < j; ++i)
            coeff = coeff * (J - i) / (i + 1);
        if (j % 2 == 0)
            coeff = -coeff;
        for (u64 m = 1; m <= n_max; ++m) {
            if (kernel[m] == 0)
                continue;
            for (u64 d = 2; d * m <= n_max; ++d)
                identity.add(d * m, coeff * static_cast<double>(kernel[m]) *
                                        std::log(static_cast<double>(d)));
        }
    }
    return compare(t.von_mangoldt, identity, 1, n_max, identity_tolerance);
}

BilinearRegrouping bilinear_regroup(unsigned j, double x, double y) {
    if (j < 2)
        throw std::invalid_argument("bilinear_regroup needs j >= 2");
    BilinearRegrouping reg;
    reg.j = j;
    reg.x = x;
    reg.y = y;
    reg.diagonal_scale = x / std::sqrt(std::max(y, 1.0));
    const u64 limit = floor_u64(x);
    const u64 ybound = y < 1 ? 0 : floor_u64(y);
    reg.beta.assign(limit + 1, 0);
    reg.gamma.assign(limit + 1, 0);
    if (ybound >= limit)
        return reg;
    const auto primes = primes_above(ybound, limit);
    for (u64 p : primes)
        for (u64 l = p; l <= limit; l += p)
            ++reg.beta[l];
    const u64 orderings = factorial(j - 1);
    for_each_strict_tuple(j - 1, primes, limit, [&](const std::vector<u64>& tuple, u64 n) {
        reg.gamma[n] += orderings;
        for (u64 p : tuple)
            if (static_cast<u128>(p) * n <= limit)
                reg.diagonal_terms += orderings * (limit / (p * n));
    });
    return reg;
}

std::complex<double> regrouped_sum(const BilinearRegrouping& reg, const ArithmeticFunction& f) {
    const u64 limit = reg.beta.empty() ? 0 : reg.beta.size() - 1;
    KahanComplex sum;
    for (u64 n = 1; n <= limit; ++n) {
        if (reg.gamma[n] == 0)
            continue;
        const double g = static_cast<double>(reg.gamma[n]);
        for (u64 l = 1; l <= limit / n; ++l)
            if (reg.beta[l] != 0)
                sum.add(g * static_cast<double>(reg.beta[l]) * f(l * n));
    }
    return sum.value();
}

std::complex<double> relaxed_prime_sum(unsigned j, double x, double y, const ArithmeticFunction& f) {
    const auto strict = prime_convolution_sum(j, x, y, as_term(f), PrimeOrder::strict);
    return static_cast<double>(factorial(j)) * strict.value;
}

std::complex<double> diagonal_prime_sum(unsigned j, double x, double y, const ArithmeticFunction& f) {
    if (j < 2)
        throw std::invalid_argument("diagonal_prime_sum needs j >= 2");
    const u64 limit = floor_u64(x);
    const u64 ybound = y < 1 ? 0 : floor_u64(y);
    if (ybound >= limit)
        return {};
    const auto primes = primes_above(ybound, limit);
    const double orderings = static_cast<double>(factorial(j - 1));
    KahanComplex sum;
    for_each_strict_tuple(j - 1, primes, limit, [&](const std::vector<u64>& tuple, u64 n) {
        for (u64 p : tuple) {
            if (static_cast<u128>(p) * n > limit)
                continue;
            const u64 base = p * n;
            for (u64 m = 1; m <= limit / base; ++m)
                sum.add(orderings * f(m * base));
        }
    });
    return sum.value();
}

} // namespace friable
