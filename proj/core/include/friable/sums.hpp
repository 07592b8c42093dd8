#pragma once

#include "friable/arith.hpp"
#include "friable/sieve.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>

namespace friable {

/// Arguments (x, y, q, a, nu, theta) shared by every smooth exponential sum.
/// gcd(a, q) = 1 and nu != 0 are checked on construction.
class SumParams {
public:
    SumParams(double x, double y, u64 q, i64 a, i64 nu = 1,
              std::optional<double> theta = std::nullopt);

    double x() const { return x_; }
    double y() const { return y_; }
    u64 q() const { return q_; }
    i64 a() const { return a_; }
    /// a reduced into [0, q)
    u64 a_mod() const { return a_mod_; }
    i64 nu() const { return nu_; }
    const std::optional<double>& theta() const { return theta_; }

    SumParams with_theta(double theta) const;

private:
    double x_;
    double y_;
    u64 q_;
    i64 a_;
    u64 a_mod_;
    i64 nu_;
    std::optional<double> theta_;
};

struct SumValue {
    std::complex<double> value{};
    u64 terms = 0;

    double abs() const { return std::abs(value); }
};

/// Orderings for the prime tuples y < p_1, ..., p_j.
enum class PrimeOrder {
    strict,         ///< p_1 < p_2 < ... < p_j
    non_decreasing, ///< p_1 <= p_2 <= ... <= p_j
};

using ArithmeticFunction = std::function<std::complex<double>(u64)>;
/// A summand that may opt out of the sum (nullopt), e.g. n not coprime to q.
using TermFunction = std::function<std::optional<std::complex<double>>(u64)>;

/// n -> e_q(a n^nu); for nu < 0 integers sharing a factor with q are skipped.
class MonomialPhase {
public:
    MonomialPhase(u64 q, i64 a, i64 nu);

    std::optional<std::complex<double>> operator()(u64 n) const;

    u64 q() const { return q_; }

private:
    u64 q_;
    u64 a_;
    i64 nu_;
};

/// S_{a,q}(x, y) = sum over n in S(x, y) of e_q(a n).
SumValue sum_linear(const SumParams& p, const SieveConfig& config = {});

/// S_{nu,a,q}(x, y) = sum over n in S(x, y) of e_q(a n^nu). For nu < 0 the sum
/// runs over n coprime to q only.
SumValue sum_power(const SumParams& p, const SieveConfig& config = {});

/// T_theta(x, y) = sum over n in S(x, y) of e(theta n). Requires p.theta().
SumValue sum_theta(const SumParams& p, const SieveConfig& config = {});

/// Values of a completely multiplicative f on primes.
using PrimeValues = std::function<std::complex<double>(u64 p)>;

/// sum over n in S(x, y) of f(n) e_q(a n^nu), where f is completely
/// multiplicative and given by its values on primes.
SumValue sum_twisted(const SumParams& p, const PrimeValues& f, const SieveConfig& config = {});

/// sum over y < p_1, ..., p_j (ordered as requested) and m <= x / (p_1...p_j)
/// of term(m p_1 ... p_j).
SumValue prime_convolution_sum(unsigned j, double x, double y, const TermFunction& term,
                               PrimeOrder order = PrimeOrder::strict);

/// prime_convolution_sum with the phase e_q(a (m p_1 ... p_j)^nu).
SumValue sum_prime_convolution(unsigned j, double x, double y, u64 q, i64 a, i64 nu = 1,
                               PrimeOrder order = PrimeOrder::strict);

/// sum over M <= m <= 2M, N <= n <= 2N, mn <= x of alpha_m beta_n e_q(a (mn)^nu).
/// alpha[i] is the weight of m = M + i (so alpha.size() == M + 1); likewise
/// for beta. Weights must satisfy |w| <= 1.
SumValue sum_bilinear(std::span<const std::complex<double>> alpha, u64 M,
                      std::span<const std::complex<double>> beta, u64 N, double x, u64 q,
                      i64 a, i64 nu = 1);

/// sum over n = 1 .. q-1 of e_q(a n^nu), q prime.
SumValue complete_monomial_sum(u64 q, i64 a, i64 nu);

/// T_k(M): solutions of m_1^nu + ... + m_k^nu = m_{k+1}^nu + ... + m_{2k}^nu
/// (mod q) with M <= m_i <= 2M, counted via residue histograms. For nu < 0
/// only m coprime to q take part.
u64 moment_count(unsigned k, i64 nu, u64 q, u64 M, std::size_t max_residues = std::size_t{1} << 26);

} // namespace friable
