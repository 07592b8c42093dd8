#include "friable/arith.hpp"

#include "friable/errors.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace friable {

u64 reduce_mod(i64 z, u64 q) {
    if (q == 0)
        throw std::domain_error("modulus must be positive");
    if (z >= 0)
        return static_cast<u64>(z) % q;
    // -(z + 1) avoids overflow at INT64_MIN
    const u64 m = static_cast<u64>(-(z + 1)) % q;
    return q - 1 - m;
}

u64 inverse_mod(u64 n, u64 q) {
    if (q == 0)
        throw std::domain_error("modulus must be positive");
    if (q == 1)
        return 0;
    i128 r0 = q, r1 = n % q;
    i128 s0 = 0, s1 = 1;
    while (r1 != 0) {
        const i128 t = r0 / r1;
        r0 -= t * r1;
        std::swap(r0, r1);
        s0 -= t * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1)
        throw NotInvertibleError("n is not invertible modulo q");
    if (s0 < 0)
        s0 += q;
    return static_cast<u64>(s0);
}

UnitPhase eq_phase(i64 z, u64 q) {
    const auto c = residue_phase(reduce_mod(z, q), q);
    return {c.real(), c.imag()};
}

double frac_product(double theta, u64 n) {
    const double t = theta - std::floor(theta);
    const double nd = static_cast<double>(n);
    const double p = t * nd;
    const double err = std::fma(t, nd, -p);
    double f = (p - std::floor(p)) + err;
    f -= std::floor(f + 0.5);
    return f;
}

std::complex<double> real_phase(double t) {
    const double f = t - std::floor(t + 0.5);
    const double angle = two_pi * f;
    return {std::cos(angle), std::sin(angle)};
}

Residue pow_mod(i64 n, i64 nu, u64 q) {
    if (q == 0)
        throw std::domain_error("modulus must be positive");
    u64 base = reduce_mod(n, q);
    u64 e;
    if (nu < 0) {
        base = inverse_mod(base, q);
        e = static_cast<u64>(-(nu + 1)) + 1;
    } else {
        e = static_cast<u64>(nu);
    }
    u64 result = 1 % q;
    while (e != 0) {
        if (e & 1)
            result = mul_mod(result, base, q);
        base = mul_mod(base, base, q);
        e >>= 1;
    }
    return {result, q};
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n)
        --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    if (n < 2)
        return out;
    auto strip = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (u64 p = 5; p <= n / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

u64 divisor_count(u64 l) {
    if (l == 0)
        throw std::domain_error("divisor_count(0) is undefined");
    u64 count = 1;
    for (auto [p, e] : factorize(l))
        count *= e + 1;
    return count;
}

namespace {

u64 pow_mod_u(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2)
        return false;
    static constexpr std::array<u64, 12> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = pow_mod_u(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

u64 next_prime(u64 n) {
    u64 c = n + 1;
    while (!is_prime(c))
        ++c;
    return c;
}

bool close_rel(std::complex<double> a, std::complex<double> b, double tol) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

} // namespace friable
