#pragma once

#include "friable/arith.hpp"
#include "friable/parallel.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace friable {

inline constexpr std::size_t default_segment_size = std::size_t{1} << 22;

struct SieveConfig {
    /// Maximum number of integers held in memory at once.
    std::size_t segment_size = default_segment_size;
    /// Worker threads for segment-parallel scans; 0 = hardware concurrency.
    unsigned threads = 0;
};

/// Largest and smallest prime factor of every integer in [lo, hi].
/// Convention: P(1) = p(1) = 1.
class FactorSieve {
public:
    FactorSieve(u64 lo, u64 hi, std::vector<u64> lpf, std::vector<u64> spf);

    u64 lo() const { return lo_; }
    u64 hi() const { return hi_; }
    bool contains(u64 n) const { return n >= lo_ && n <= hi_; }

    /// P(n)
    u64 largest(u64 n) const { return lpf_[index(n)]; }
    /// p(n)
    u64 smallest(u64 n) const { return spf_[index(n)]; }

    std::span<const u64> lpf() const { return lpf_; }
    std::span<const u64> spf() const { return spf_; }

    /// Prime factors of n with multiplicity, ascending. Requires lo() == 1.
    std::vector<u64> prime_factors(u64 n) const;

private:
    std::size_t index(u64 n) const;

    u64 lo_;
    u64 hi_;
    std::vector<u64> lpf_;
    std::vector<u64> spf_;
};

/// Segmented Eratosthenes variant filling both factor tables in one pass.
/// Throws ResourceError when hi - lo + 1 exceeds config.segment_size.
FactorSieve build_sieve(u64 lo, u64 hi, const SieveConfig& config = {});

/// All primes p <= n, ascending.
std::vector<u64> primes_up_to(u64 n);

/// S(x, y) materialised: every n <= x with P(n) <= y, ascending.
struct SmoothSet {
    double x = 0;
    double y = 0;
    std::vector<u64> members;

    std::size_t size() const { return members.size(); }
};

/// floor(x) clamped to >= 0, as an integer.
u64 floor_u64(double x);

SmoothSet smooth_members(double x, double y, const SieveConfig& config = {});

/// Psi(x, y) = #S(x, y), without materialising the set.
u64 psi(double x, double y, const SieveConfig& config = {});

/// Splits [1, floor(x)] into segments and hands each segment's y-smooth
/// members (ascending) to a per-segment job. Segments are processed in
/// parallel; results come back indexed by segment so callers can reduce
/// them in a fixed order.
class SmoothScanner {
public:
    SmoothScanner(double x, double y, const SieveConfig& config = {});

    u64 limit() const { return limit_; }
    u64 smooth_bound() const { return ybound_; }
    std::size_t segment_count() const { return segments_; }

    /// Fills `out` with the smooth members of segment `index`.
    void segment_members(std::size_t index, std::vector<u64>& out,
                         std::vector<u64>& scratch) const;

    /// Runs job(members) -> T for every segment and returns results in
    /// segment order.
    template <class T, class Job>
    std::vector<T> map(Job&& job) const {
        std::vector<T> results(segments_);
        parallel_for(segments_, config_.threads, [&](std::size_t i) {
            thread_local std::vector<u64> members;
            thread_local std::vector<u64> scratch;
            segment_members(i, members, scratch);
            results[i] = job(std::span<const u64>(members));
        });
        return results;
    }

private:
    u64 limit_ = 0;
    u64 ybound_ = 0;
    std::size_t segments_ = 0;
    SieveConfig config_;
    std::vector<u64> base_primes_;
};

} // namespace friable
