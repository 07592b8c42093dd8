#include "oracles.hpp"

#include "friable/decomp.hpp"

#include <doctest.h>

using namespace friable;
using cd = std::complex<double>;

namespace {

ArithmeticFunction phase(u64 q, u64 a) {
    return [q, a](u64 n) { return std::polar(1.0, 2 * M_PI * static_cast<double>((a * (n % q)) % q) / static_cast<double>(q)); };
}

cd smooth_sum(const ArithmeticFunction& f, double x, double y) {
    cd s = 0;
    for (u64 n : oracle::smooth(x, y))
        s += f(n);
    return s;
}

} // namespace

TEST_SUITE("decomp") {

TEST_CASE("w_split examples") {
    const auto s = build_sieve(1, 1000);
    auto w = w_split(8, 3, s);
    CHECK(w.k == 4);
    CHECK(w.m == 2);
    w = w_split(30, 5, s);
    CHECK(w.k == 6);
    CHECK(w.m == 5);
    for (u64 p : {3u, 5u, 97u, 997u}) {
        w = w_split(p, 3, s);
        CHECK(w.k == p);
        CHECK(w.m == 1);
    }
    w = w_split(3, 3, s);
    CHECK(w.k == 3);
    CHECK_THROWS_AS(w_split(2, 3, s), std::domain_error);
    CHECK_THROWS_AS(w_split(10, 1, s), std::invalid_argument);
}

TEST_CASE("w_split invariants and uniqueness") {
    const u64 n_max = 20000;
    const auto s = build_sieve(1, n_max);
    for (double w : {3.0, 10.0, 50.0, 316.0, 7.5}) {
        for (u64 n = static_cast<u64>(std::ceil(w)); n <= n_max; ++n) {
            const auto sp = w_split(n, w, s);
            REQUIRE(sp.k * sp.m == n);
            const u64 Pk = oracle::largest_pf(sp.k);
            REQUIRE(static_cast<double>(sp.k) >= w);
            REQUIRE(static_cast<double>(sp.k) < w * static_cast<double>(Pk));
            REQUIRE((sp.m == 1 || Pk <= oracle::smallest_pf(sp.m)));
            // k lies in [w, w P(n)], the dyadic range of the split
            REQUIRE(static_cast<double>(sp.k) <= w * static_cast<double>(oracle::largest_pf(n)));
            unsigned count = 0;
            for (u64 d = 1; d <= n; ++d)
                if (n % d == 0 && is_admissible_split(n, d, w, s))
                    ++count;
            REQUIRE(count == 1);
            if (n > 2000)
                n += 7; // thin the expensive divisor scan further out
        }
    }
}

TEST_CASE("split partition equals direct smooth tail") {
    const auto s = build_sieve(1, 20000);
    for (double y : {5.0, 10.0, 100.0})
        for (double w : {2.0, 10.0, 100.0}) {
            const auto f = phase(97, 5);
            cd want = 0;
            for (u64 n : oracle::smooth(20000, y))
                if (static_cast<double>(n) >= w)
                    want += f(n);
            CHECK(close_rel(smooth_tail_sum(f, 20000, y, w, s), want, 1e-12));
            CHECK(close_rel(split_partition_sum(f, 20000, y, w, s), want, 1e-9));
        }
}

TEST_CASE("buchstab_depth") {
    CHECK(buchstab_depth(30, 40) == 0);
    CHECK(buchstab_depth(30, 5) == 1); // 7 * 11 > 30
    CHECK(buchstab_depth(3e4, 12) == 3); // 13*17*19*23 > 3e4
    CHECK(buchstab_depth(1e4, 25) == 2); // 29*31*37 > 1e4
    CHECK(buchstab_depth(1e5, 7) == 4); // 11*13*17*19*23 > 1e5
    CHECK(buchstab_depth(100, 5, PrimeOrder::non_decreasing) == 2);
}

TEST_CASE("buchstab examples") {
    const auto f = phase(3, 1);
    const auto e = buchstab_expand(f, 30, 5, 2);
    CHECK(close_rel(e.recombined(), smooth_sum(f, 30, 5), 1e-12));

    const auto big = buchstab_expand(f, 30, 40, 1);
    CHECK(close_rel(big.main, big.recombined(), 0));
    for (const auto& c : big.corrections)
        CHECK(c == cd(0));

    CHECK_THROWS_AS(buchstab_expand(f, 3e4, 12, 2), std::domain_error);
}

TEST_CASE("buchstab with f = 1 counts smooth numbers exactly") {
    const auto one = [](u64) { return cd(1, 0); };
    const auto e = buchstab_expand(one, 1e4, 25, 3);
    CHECK(e.main.real() == 10000);
    CHECK(e.recombined().real() == doctest::Approx(static_cast<double>(oracle::smooth(1e4, 25).size())).epsilon(1e-12));
}

TEST_CASE("non-decreasing tuples overcount prime squares above y") {
    // 49 and 98 are the n <= 100 with p^2 | n, p > 5; the <= ordering counts
    // each with weight -1 + 1 + 1 instead of -1 + 1.
    const auto one = [](u64) { return cd(1, 0); };
    const auto strict = buchstab_expand(one, 100, 5, 3, PrimeOrder::strict);
    const auto loose = buchstab_expand(one, 100, 5, 3, PrimeOrder::non_decreasing);
    CHECK(strict.recombined().real() == doctest::Approx(34));
    CHECK(loose.recombined().real() == doctest::Approx(36));
    CHECK(oracle::smooth(100, 5).size() == 34);
}

TEST_CASE("buchstab corrections match the prime convolution sums") {
    const u64 q = 41, a = 6;
    const auto e = buchstab_expand(phase(q, a), 5000, 20, 3);
    for (unsigned j = 1; j <= e.corrections.size(); ++j)
        CHECK(close_rel(e.corrections[j - 1], sum_prime_convolution(j, 5000, 20, q, a).value, 1e-12));
}

TEST_CASE("buchstab recombination for random phases") {
    oracle::Gen g(17);
    for (int i = 0; i < 20; ++i) {
        const double x = g.real(100, 2e4), y = g.real(2, 60);
        const u64 q = g.uniform(2, 1000), a = g.unit_mod(q);
        const auto f = phase(q, a);
        const auto e = buchstab_expand(f, x, y, buchstab_depth(x, y));
        REQUIRE(close_rel(e.recombined(), smooth_sum(f, x, y), 1e-9));
    }
}

TEST_CASE("arithmetic tables") {
    const auto t = arithmetic_tables(2000);
    for (u64 n = 1; n <= 2000; ++n) {
        REQUIRE(t.mobius[n] == oracle::mobius(n));
        REQUIRE(std::abs(t.von_mangoldt[n] - static_cast<double>(oracle::von_mangoldt(n))) < 1e-12);
    }
}

TEST_CASE("vaughan identity") {
    const auto c = vaughan_lambda_check(10000, 10, 20);
    CHECK(c.ok);
    CHECK(c.checked == 10000 - 20);
    CHECK_FALSE(c.first_failure.has_value());
    CHECK(vaughan_lambda_check(3000, 1, 1));
    CHECK(vaughan_lambda_check(3000, 55, 7.5));
}

TEST_CASE("heath-brown identity") {
    CHECK(heath_brown_lambda_check(5000, 3, 18));
    CHECK(heath_brown_lambda_check(2000, 1, 2000));
    CHECK(heath_brown_lambda_check(2000, 2, 45));
    CHECK(heath_brown_lambda_check(3000, 4, 8));
    CHECK_THROWS_AS(heath_brown_lambda_check(5000, 3, 17), std::domain_error);
}

TEST_CASE("bilinear regrouping") {
    const auto f = phase(5, 1);
    const auto reg = bilinear_regroup(2, 100, 7);
    const cd lhs = regrouped_sum(reg, f);
    CHECK(close_rel(lhs, relaxed_prime_sum(2, 100, 7, f) + diagonal_prime_sum(2, 100, 7, f), 1e-12));

    // relaxed sum is j! times the strict one
    CHECK(close_rel(relaxed_prime_sum(2, 100, 7, f), 2.0 * sum_prime_convolution(2, 100, 7, 5, 1).value, 1e-12));

    const auto none = bilinear_regroup(2, 50, 60);
    for (u64 b : none.beta)
        CHECK(b == 0);
    for (u64 g : none.gamma)
        CHECK(g == 0);
    CHECK(regrouped_sum(none, f) == cd(0));
    CHECK_THROWS_AS(bilinear_regroup(1, 100, 7), std::invalid_argument);
}

TEST_CASE("beta_l is at most the number of distinct prime factors") {
    const auto reg = bilinear_regroup(2, 1e5, 3);
    for (u64 l = 1; l < reg.beta.size(); ++l)
        REQUIRE(reg.beta[l] <= oracle::factor(l).size());
}

TEST_CASE("bilinear regrouping with three primes") {
    oracle::Gen g(44);
    for (int i = 0; i < 6; ++i) {
        const double x = g.real(1000, 2e4), y = g.real(2, 12);
        const u64 q = g.uniform(2, 500), a = g.unit_mod(q);
        const auto f = phase(q, a);
        const auto reg = bilinear_regroup(3, x, y);
        REQUIRE(close_rel(regrouped_sum(reg, f), relaxed_prime_sum(3, x, y, f) + diagonal_prime_sum(3, x, y, f), 1e-9));
        REQUIRE(close_rel(relaxed_prime_sum(3, x, y, f), 6.0 * sum_prime_convolution(3, x, y, q, static_cast<i64>(a)).value, 1e-9));
    }
}

}
