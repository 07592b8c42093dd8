#include "friable/sieve.hpp"

#include "friable/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace friable {

FactorSieve::FactorSieve(u64 lo, u64 hi, std::vector<u64> lpf, std::vector<u64> spf)
    : lo_(lo), hi_(hi), lpf_(std::move(lpf)), spf_(std::move(spf)) {}

std::size_t FactorSieve::index(u64 n) const {
    if (!contains(n))
        throw std::out_of_range("integer " + std::to_string(n) + " outside sieve segment");
    return static_cast<std::size_t>(n - lo_);
}

std::vector<u64> FactorSieve::prime_factors(u64 n) const {
    if (lo_ != 1)
        throw std::logic_error("prime_factors needs a sieve starting at 1");
    std::vector<u64> out;
    while (n > 1) {
        const u64 p = smallest(n);
        out.push_back(p);
        n /= p;
    }
    return out;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2)
        return primes;
    std::vector<bool> composite(n + 1, false);
    for (u64 p = 2; p <= n; ++p) {
        if (composite[p])
            continue;
        primes.push_back(p);
        if (p <= n / p)
            for (u64 m = p * p; m <= n; m += p)
                composite[m] = true;
    }
    return primes;
}

FactorSieve build_sieve(u64 lo, u64 hi, const SieveConfig& config) {
    if (lo < 1 || lo > hi)
        throw std::invalid_argument("build_sieve needs 1 <= lo <= hi");
    const u64 len = hi - lo + 1;
    if (len > config.segment_size)
        throw ResourceError("sieve segment of " + std::to_string(len) +
                            " entries exceeds the configured segment size " +
                            std::to_string(config.segment_size));

    std::vector<u64> lpf(len, 0), spf(len, 0), prod(len, 1);
    for (u64 p : primes_up_to(isqrt(hi))) {
        for (u64 pk = p;; pk *= p) {
            const u64 start = (lo + pk - 1) / pk * pk;
            for (u64 m = start; m <= hi; m += pk) {
                const std::size_t i = m - lo;
                if (pk == p) {
                    if (spf[i] == 0)
                        spf[i] = p;
                    lpf[i] = p;
                }
                prod[i] *= p;
            }
            if (pk > hi / p)
                break;
        }
    }
    for (u64 i = 0; i < len; ++i) {
        const u64 n = lo + i;
        const u64 rest = n / prod[i];
        if (rest > 1) {
            lpf[i] = rest;
            if (spf[i] == 0)
                spf[i] = rest;
        } else if (n == 1) {
            lpf[i] = spf[i] = 1;
        }
    }
    return FactorSieve(lo, hi, std::move(lpf), std::move(spf));
}

u64 floor_u64(double x) {
    if (!(x >= 1.0))
        return 0;
    if (x >= 1.8e19)
        throw std::invalid_argument("x too large");
    return static_cast<u64>(std::floor(x));
}

SmoothScanner::SmoothScanner(double x, double y, const SieveConfig& config)
    : limit_(floor_u64(x)), config_(config) {
    if (config_.segment_size == 0)
        throw std::invalid_argument("segment size must be positive");
    ybound_ = std::min(floor_u64(y), limit_);
    if (ybound_ == 0)
        limit_ = 0; // P(1) = 1 > y: nothing is smooth
    segments_ = static_cast<std::size_t>((limit_ + config_.segment_size - 1) / config_.segment_size);
    if (ybound_ < limit_)
        base_primes_ = primes_up_to(std::min(ybound_, isqrt(limit_)));
}

void SmoothScanner::segment_members(std::size_t index, std::vector<u64>& out,
                                    std::vector<u64>& scratch) const {
    out.clear();
    const u64 lo = 1 + static_cast<u64>(index) * config_.segment_size;
    const u64 hi = std::min<u64>(limit_, lo - 1 + config_.segment_size);
    if (lo > hi)
        return;
    if (ybound_ >= limit_) {
        for (u64 n = lo; n <= hi; ++n)
            out.push_back(n);
        return;
    }
    const std::size_t len = hi - lo + 1;
    scratch.assign(len, 1);
    u64* prod = scratch.data();
    for (u64 p : base_primes_) {
        for (u64 pk = p;; pk *= p) {
            const u64 start = (lo + pk - 1) / pk * pk;
            for (u64 m = start; m <= hi; m += pk)
                prod[m - lo] *= p;
            if (pk > hi / p)
                break;
        }
    }
    // After dividing out every p <= min(y, sqrt(x)), the cofactor n / prod is
    // 1, a single prime above sqrt(x), or a product of primes above y.
    // Either way n is y-smooth exactly when the cofactor is <= y.
    const u128 yb = ybound_;
    for (std::size_t i = 0; i < len; ++i) {
        const u64 n = lo + i;
        if (yb * prod[i] >= n)
            out.push_back(n);
    }
}

SmoothSet smooth_members(double x, double y, const SieveConfig& config) {
    SmoothSet set{x, y, {}};
    SmoothScanner scanner(x, y, config);
    std::vector<u64> members, scratch;
    for (std::size_t i = 0; i < scanner.segment_count(); ++i) {
        scanner.segment_members(i, members, scratch);
        set.members.insert(set.members.end(), members.begin(), members.end());
    }
    return set;
}

u64 psi(double x, double y, const SieveConfig& config) {
    SmoothScanner scanner(x, y, config);
    if (scanner.smooth_bound() >= scanner.limit())
        return scanner.limit();
    const auto counts = scanner.map<u64>([](std::span<const u64> m) { return u64{m.size()}; });
    u64 total = 0;
    for (u64 c : counts)
        total += c;
    return total;
}

} // namespace friable
