#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace friable {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// A residue class value mod q, always normalised to [0, q).
struct Residue {
    u64 value = 0;
    u64 modulus = 1;

    friend bool operator==(const Residue&, const Residue&) = default;
};

/// A point on the unit circle, e(z) = exp(2 pi i z).
struct UnitPhase {
    double re = 1.0;
    double im = 0.0;

    std::complex<double> to_complex() const { return {re, im}; }
};

/// Reduce a signed integer into [0, q).
u64 reduce_mod(i64 z, u64 q);

inline u64 mul_mod(u64 a, u64 b, u64 q) {
    return static_cast<u64>(static_cast<u128>(a) * b % q);
}

/// Modular inverse of n mod q; throws NotInvertibleError when gcd(n, q) > 1.
u64 inverse_mod(u64 n, u64 q);

/// e_q(z) = exp(2 pi i z / q). The reduction z mod q happens in integer
/// arithmetic, so the trigonometric argument always lies in [-pi, pi].
UnitPhase eq_phase(i64 z, u64 q);

/// Same as eq_phase, for an already reduced residue r in [0, q).
inline std::complex<double> residue_phase(u64 r, u64 q) {
    // symmetric representative keeps the angle in [-pi, pi]
    const double t = (2 * r > q) ? -static_cast<double>(q - r) : static_cast<double>(r);
    const double angle = two_pi * (t / static_cast<double>(q));
    return {std::cos(angle), std::sin(angle)};
}

/// e(t) for a real t, after exact reduction of t to [-1/2, 1/2].
std::complex<double> real_phase(double t);

/// Fractional part of theta * n in [-1/2, 1/2), using an error-free product
/// so that large n do not wash out the low bits of theta.
double frac_product(double theta, u64 n);

/// n^nu mod q by square-and-multiply; nu < 0 goes through the inverse of n.
Residue pow_mod(i64 n, i64 nu, u64 q);

/// Number of positive divisors of l (trial division).
u64 divisor_count(u64 l);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

/// Smallest prime strictly greater than n.
u64 next_prime(u64 n);

/// Prime factorisation as (prime, exponent) pairs, ascending (trial division).
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// Floor of the square root, exact for all 64-bit inputs.
u64 isqrt(u64 n);

/// Neumaier-compensated accumulator for complex sums.
class KahanComplex {
public:
    void add(std::complex<double> z) {
        add_component(sum_re_, comp_re_, z.real());
        add_component(sum_im_, comp_im_, z.imag());
    }
    void add(const KahanComplex& other) {
        add(other.value());
    }
    std::complex<double> value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

private:
    static void add_component(double& sum, double& comp, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double sum_re_ = 0.0;
    double comp_re_ = 0.0;
    double sum_im_ = 0.0;
    double comp_im_ = 0.0;
};

/// |a - b| <= tol * max(1, |a|, |b|). The floor of 1 keeps the comparison
/// meaningful for sums that cancel down to O(1).
bool close_rel(std::complex<double> a, std::complex<double> b, double tol);

} // namespace friable
