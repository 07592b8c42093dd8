#pragma once

#include "friable/sieve.hpp"
#include "friable/sums.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace friable {

/// n = k m where k is the shortest prefix product of the ascending prime
/// factorisation of n with k >= w. Then w <= k < w P(k) and P(k) <= p(m),
/// with p(1) read as +infinity.
struct WSplit {
    u64 n = 0;
    u64 k = 0;
    u64 m = 0;
    double w = 0;
};

/// Requires w > 1, n >= w, and a sieve covering [1, n]. Throws
/// std::domain_error when n < w.
WSplit w_split(u64 n, double w, const FactorSieve& sieve);

/// Whether k is an admissible left factor of n for the threshold w.
bool is_admissible_split(u64 n, u64 k, double w, const FactorSieve& sieve);

/// sum over n in S(x, y), n >= w of f(n), by direct enumeration.
std::complex<double> smooth_tail_sum(const ArithmeticFunction& f, double x, double y, double w,
                                     const FactorSieve& sieve);

/// The same sum regrouped as
///   sum over k with w <= k < w P(k), P(k) <= y
///   of sum over m in S(x/k, y) with p(m) >= P(k) of f(k m).
std::complex<double> split_partition_sum(const ArithmeticFunction& f, double x, double y, double w,
                                         const FactorSieve& sieve);

struct BuchstabExpansion {
    unsigned r = 0;
    PrimeOrder order = PrimeOrder::strict;
    /// sum over n <= x of f(n)
    std::complex<double> main{};
    /// corrections[j-1] = sum over y < p_1 .. p_j, m <= x/(p_1..p_j) of f(m p_1..p_j)
    std::vector<std::complex<double>> corrections;

    /// main + sum_j (-1)^j corrections[j-1]
    std::complex<double> recombined() const;
};

/// Smallest r for which no tuple of r + 1 primes above y (in the given
/// ordering) has product <= x, i.e. the expansion terminates at depth r.
unsigned buchstab_depth(double x, double y, PrimeOrder order = PrimeOrder::strict);

/// Buchstab inclusion-exclusion over primes above y. With strict ordering the
/// recombination equals the smooth sum exactly; the non-decreasing ordering
/// is exposed for comparison and overcounts n divisible by p^2, p > y.
/// Throws std::domain_error if depth r does not exhaust the tuples.
BuchstabExpansion buchstab_expand(const ArithmeticFunction& f, double x, double y, unsigned r,
                                  PrimeOrder order = PrimeOrder::strict);

/// Outcome of a pointwise arithmetic identity check.
struct IdentityCheck {
    bool ok = true;
    /// smallest n where the identity failed
    std::optional<u64> first_failure;
    double max_abs_error = 0;
    u64 checked = 0;

    explicit operator bool() const { return ok; }
};

/// Tables of mu(n) and Lambda(n) for 0 <= n <= n_max (index 0 unused).
struct ArithmeticTables {
    std::vector<int> mobius;
    std::vector<double> von_mangoldt;
};
ArithmeticTables arithmetic_tables(u64 n_max);

/// Lambda(n) = sum_{b|n, b<=u} mu(b) log(n/b)
///           - sum_{bcd=n, b<=u, c<=v} mu(b) Lambda(c)
///           + sum_{bcd=n, b>u, c>v} mu(b) Lambda(c)     for v < n <= n_max.
IdentityCheck vaughan_lambda_check(u64 n_max, double u, double v);

/// Lambda(n) = sum_{j=1..J} (-1)^(j-1) C(J, j) (mu_z^{*j} * log * 1^{*(j-1)})(n)
/// for n <= n_max, mu_z = mu restricted to [1, z]. Needs z^J >= n_max.
IdentityCheck heath_brown_lambda_check(u64 n_max, unsigned J, double z);

/// Weights regrouping the prime convolution with (p_1, m) -> l and
/// (p_2, ..., p_j) -> n:
///   beta[l]  = #{p | l : p > y}
///   gamma[n] = #{ordered distinct (p_2..p_j), p_i > y, product n}.
struct BilinearRegrouping {
    unsigned j = 0;
    double x = 0;
    double y = 0;
    std::vector<u64> beta;
    std::vector<u64> gamma;
    /// (tuple, m) terms of the regrouped sum with p_1 equal to some p_i, i >= 2
    u64 diagonal_terms = 0;
    /// x / sqrt(y), the size the diagonal is compared against
    double diagonal_scale = 0;
};

BilinearRegrouping bilinear_regroup(unsigned j, double x, double y);

/// sum over n, l with l n <= x of beta_l gamma_n f(l n).
std::complex<double> regrouped_sum(const BilinearRegrouping& reg, const ArithmeticFunction& f);

/// Sum over ordered tuples of distinct primes above y (all j! orderings).
std::complex<double> relaxed_prime_sum(unsigned j, double x, double y, const ArithmeticFunction& f);

/// Diagonal part: ordered distinct (p_2..p_j), p_1 in {p_2..p_j}, m <= x / (p_1 p_2..p_j).
std::complex<double> diagonal_prime_sum(unsigned j, double x, double y, const ArithmeticFunction& f);

} // namespace friable
