#include "friable/sums.hpp"

#include "friable/errors.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace friable {

SumParams::SumParams(double x, double y, u64 q, i64 a, i64 nu, std::optional<double> theta)
    : x_(x), y_(y), q_(q), a_(a), a_mod_(0), nu_(nu), theta_(theta) {
    if (q == 0)
        throw std::invalid_argument("q must be a positive integer");
    if (nu == 0)
        throw std::invalid_argument("nu must be nonzero");
    if (!std::isfinite(x) || !std::isfinite(y))
        throw std::invalid_argument("x and y must be finite");
    a_mod_ = reduce_mod(a, q);
    if (std::gcd(a_mod_, q) != 1)
        throw std::invalid_argument("gcd(a, q) must be 1");
}

SumParams SumParams::with_theta(double theta) const {
    return SumParams(x_, y_, q_, a_, nu_, theta);
}

MonomialPhase::MonomialPhase(u64 q, i64 a, i64 nu) : q_(q), a_(reduce_mod(a, q)), nu_(nu) {
    if (nu == 0)
        throw std::invalid_argument("nu must be nonzero");
}

std::optional<std::complex<double>> MonomialPhase::operator()(u64 n) const {
    if (nu_ == 1)
        return residue_phase(mul_mod(a_, n % q_, q_), q_);
    if (nu_ < 0 && std::gcd(n % q_, q_) != 1)
        return std::nullopt;
    const u64 power = pow_mod(static_cast<i64>(n % q_), nu_, q_).value;
    return residue_phase(mul_mod(a_, power, q_), q_);
}

namespace {

struct Partial {
    KahanComplex sum;
    u64 terms = 0;
};

SumValue reduce_partials(const std::vector<Partial>& parts) {
    KahanComplex total;
    u64 terms = 0;
    for (const auto& p : parts) {
        total.add(p.sum);
        terms += p.terms;
    }
    return {total.value(), terms};
}

template <class Term>
SumValue smooth_sum(double x, double y, const SieveConfig& config, const Term& term) {
    SmoothScanner scanner(x, y, config);
    return reduce_partials(scanner.map<Partial>([&](std::span<const u64> members) {
        Partial part;
        for (u64 n : members) {
            if (auto z = term(n)) {
                part.sum.add(*z);
                ++part.terms;
            }
        }
        return part;
    }));
}

} // namespace

SumValue sum_linear(const SumParams& p, const SieveConfig& config) {
    const u64 q = p.q();
    const u64 a = p.a_mod();
    return smooth_sum(p.x(), p.y(), config, [q, a](u64 n) -> std::optional<std::complex<double>> {
        return residue_phase(mul_mod(a, n % q, q), q);
    });
}

SumValue sum_power(const SumParams& p, const SieveConfig& config) {
    const MonomialPhase phase(p.q(), p.a(), p.nu());
    return smooth_sum(p.x(), p.y(), config, phase);
}

SumValue sum_theta(const SumParams& p, const SieveConfig& config) {
    if (!p.theta())
        throw std::invalid_argument("sum_theta requires theta");
    const double theta = *p.theta();
    return smooth_sum(p.x(), p.y(), config, [theta](u64 n) -> std::optional<std::complex<double>> {
        return real_phase(frac_product(theta, n));
    });
}

SumValue sum_twisted(const SumParams& p, const PrimeValues& f, const SieveConfig& config) {
    const MonomialPhase phase(p.q(), p.a(), p.nu());
    const u64 limit = floor_u64(p.x());
    const u64 ybound = std::min(floor_u64(p.y()), limit);
    if (ybound == 0 || limit == 0)
        return {};
    if (config.segment_size == 0)
        throw std::invalid_argument("segment size must be positive");

    // Every prime factor of a smooth n is <= y, and all but possibly one are
    // <= sqrt(x); sieving by those and finishing with the cofactor gives f(n).
    const auto base = primes_up_to(std::min(ybound, isqrt(limit)));
    std::vector<std::complex<double>> base_values;
    base_values.reserve(base.size());
    for (u64 pr : base)
        base_values.push_back(f(pr));

    const std::size_t segments =
        static_cast<std::size_t>((limit + config.segment_size - 1) / config.segment_size);
    std::vector<Partial> parts(segments);
    parallel_for(segments, config.threads, [&](std::size_t s) {
        const u64 lo = 1 + static_cast<u64>(s) * config.segment_size;
        const u64 hi = std::min<u64>(limit, lo - 1 + config.segment_size);
        const std::size_t len = hi - lo + 1;
        std::vector<u64> prod(len, 1);
        std::vector<std::complex<double>> weight(len, 1.0);
        for (std::size_t b = 0; b < base.size(); ++b) {
            const u64 pr = base[b];
            for (u64 pk = pr;; pk *= pr) {
                const u64 start = (lo + pk - 1) / pk * pk;
                for (u64 m = start; m <= hi; m += pk) {
                    prod[m - lo] *= pr;
                    weight[m - lo] *= base_values[b];
                }
                if (pk > hi / pr)
                    break;
            }
        }
        Partial part;
        for (std::size_t i = 0; i < len; ++i) {
            const u64 n = lo + i;
            const u64 rest = n / prod[i];
            if (rest > ybound)
                continue;
            auto z = phase(n);
            if (!z)
                continue;
            std::complex<double> w = weight[i];
            if (rest > 1)
                w *= f(rest);
            part.sum.add(w * *z);
            ++part.terms;
        }
        parts[s] = part;
    });
    return reduce_partials(parts);
}

namespace {

class PrimeTupleWalker {
public:
    PrimeTupleWalker(unsigned j, u64 limit, const std::vector<u64>& primes, PrimeOrder order,
                     const TermFunction& term)
        : j_(j), limit_(limit), primes_(primes), order_(order), term_(term) {}

    void run(Partial& out) { descend(0, 0, 1, out); }

private:
    void descend(unsigned depth, std::size_t from, u64 product, Partial& out) const {
        if (depth == j_) {
            const u64 mmax = limit_ / product;
            for (u64 m = 1; m <= mmax; ++m) {
                if (auto z = term_(m * product)) {
                    out.sum.add(*z);
                    ++out.terms;
                }
            }
            return;
        }
        const unsigned remaining = j_ - depth;
        for (std::size_t i = from; i < primes_.size(); ++i) {
            const u64 p = primes_[i];
            // every later prime is >= p, so p^remaining must still fit
            u128 reach = product;
            bool fits = true;
            for (unsigned r = 0; r < remaining; ++r) {
                reach *= p;
                if (reach > limit_) {
                    fits = false;
                    break;
                }
            }
            if (!fits)
                break;
            const std::size_t next = order_ == PrimeOrder::strict ? i + 1 : i;
            descend(depth + 1, next, product * p, out);
        }
    }

    unsigned j_;
    u64 limit_;
    const std::vector<u64>& primes_;
    PrimeOrder order_;
    const TermFunction& term_;
};

} // namespace

SumValue prime_convolution_sum(unsigned j, double x, double y, const TermFunction& term,
                               PrimeOrder order) {
    if (j == 0)
        throw std::invalid_argument("j must be positive");
    const u64 limit = floor_u64(x);
    if (limit < 2)
        return {};
    // primes p > y; the smallest admissible tuple uses at least one of them
    const u64 ybound = y < 1 ? 0 : std::min(floor_u64(y), limit);
    std::vector<u64> primes;
    for (u64 p : primes_up_to(limit))
        if (p > ybound)
            primes.push_back(p);
    Partial out;
    PrimeTupleWalker(j, limit, primes, order, term).run(out);
    return {out.sum.value(), out.terms};
}

SumValue sum_prime_convolution(unsigned j, double x, double y, u64 q, i64 a, i64 nu,
                               PrimeOrder order) {
    if (q == 0)
        throw std::invalid_argument("q must be positive");
    const MonomialPhase phase(q, a, nu);
    return prime_convolution_sum(j, x, y, phase, order);
}

SumValue sum_bilinear(std::span<const std::complex<double>> alpha, u64 M,
                      std::span<const std::complex<double>> beta, u64 N, double x, u64 q,
                      i64 a, i64 nu) {
    if (M < 1 || N < 1)
        throw std::invalid_argument("M and N must be >= 1");
    if (alpha.size() != M + 1 || beta.size() != N + 1)
        throw std::invalid_argument("weights must cover [M, 2M] and [N, 2N]");
    constexpr double slack = 1e-12;
    for (auto w : alpha)
        if (std::abs(w) > 1 + slack)
            throw std::invalid_argument("|alpha_m| must be <= 1");
    for (auto w : beta)
        if (std::abs(w) > 1 + slack)
            throw std::invalid_argument("|beta_n| must be <= 1");
    const MonomialPhase phase(q, a, nu);
    if (nu < 0) {
        for (u64 i = 0; i <= M; ++i)
            if (alpha[i] != 0.0 && std::gcd((M + i) % q, q) != 1)
                throw std::invalid_argument("alpha must be supported on m coprime to q when nu < 0");
        for (u64 i = 0; i <= N; ++i)
            if (beta[i] != 0.0 && std::gcd((N + i) % q, q) != 1)
                throw std::invalid_argument("beta must be supported on n coprime to q when nu < 0");
    }
    const u64 limit = floor_u64(x);
    KahanComplex sum;
    u64 terms = 0;
    for (u64 i = 0; i <= M; ++i) {
        const u64 m = M + i;
        if (m > limit)
            break;
        const u64 nmax = std::min<u64>(2 * N, limit / m);
        for (u64 n = N; n <= nmax; ++n) {
            ++terms;
            const auto w = alpha[i] * beta[n - N];
            if (w == 0.0)
                continue;
            if (auto z = phase(m * n))
                sum.add(w * *z);
        }
    }
    return {sum.value(), terms};
}

SumValue complete_monomial_sum(u64 q, i64 a, i64 nu) {
    if (!is_prime(q))
        throw std::domain_error("complete_monomial_sum needs a prime modulus");
    if (reduce_mod(a, q) == 0)
        throw std::invalid_argument("gcd(a, q) must be 1");
    const MonomialPhase phase(q, a, nu);
    KahanComplex sum;
    for (u64 n = 1; n < q; ++n)
        sum.add(*phase(n));
    return {sum.value(), q - 1};
}

u64 moment_count(unsigned k, i64 nu, u64 q, u64 M, std::size_t max_residues) {
    if (k == 0)
        throw std::invalid_argument("k must be positive");
    if (q == 0 || M == 0)
        throw std::invalid_argument("q and M must be positive");
    if (nu == 0)
        throw std::invalid_argument("nu must be nonzero");
    if (q > max_residues)
        throw ResourceError("moment_count histogram of " + std::to_string(q) +
                            " residues exceeds the budget");
    // (M+1)^(2k) bounds the answer
    if (2.0 * k * std::log2(static_cast<double>(M + 1)) >= 127.0)
        throw std::overflow_error("moment count does not fit 128-bit arithmetic");

    std::vector<u64> residues;
    residues.reserve(M + 1);
    for (u64 m = M; m <= 2 * M; ++m) {
        if (nu < 0 && std::gcd(m % q, q) != 1)
            continue;
        residues.push_back(pow_mod(static_cast<i64>(m % q), nu, q).value);
    }

    std::vector<u128> hist(q, 0), next(q, 0);
    std::vector<u64> single(q, 0);
    for (u64 r : residues)
        ++single[r];
    std::vector<std::pair<u64, u64>> support;
    for (u64 r = 0; r < q; ++r) {
        hist[r] = single[r];
        if (single[r] != 0)
            support.emplace_back(r, single[r]);
    }
    for (unsigned step = 1; step < k; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (u64 r = 0; r < q; ++r) {
            if (hist[r] == 0)
                continue;
            for (auto [s, count] : support) {
                u64 t = r + s;
                if (t >= q)
                    t -= q;
                next[t] += hist[r] * count;
            }
        }
        hist.swap(next);
    }
    u128 total = 0;
    for (u128 h : hist)
        total += h * h;
    if (total > static_cast<u128>(~u64{0}))
        throw std::overflow_error("moment count exceeds 64 bits");
    return static_cast<u64>(total);
}

} // namespace friable
