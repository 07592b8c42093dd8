#include "friable/verify.hpp"

#include "friable/decomp.hpp"
#include "friable/optimizer.hpp"
#include "friable/random.hpp"
#include "friable/sieve.hpp"
#include "friable/sums.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace friable {

namespace {

struct Modulus {
    u64 q;
    i64 a;
};

std::vector<Modulus> random_moduli(SplitMix64& rng, std::size_t count) {
    std::vector<Modulus> out;
    while (out.size() < count) {
        const u64 q = 2 + rng.below(999);
        const u64 a = 1 + rng.below(q - 1);
        if (std::gcd(a, q) == 1)
            out.push_back({q, static_cast<i64>(a)});
    }
    return out;
}

ArithmeticFunction linear_phase(u64 q, i64 a) {
    const u64 am = reduce_mod(a, q);
    return [q, am](u64 n) { return residue_phase(mul_mod(am, n % q, q), q); };
}

std::string fmt_complex(std::complex<double> z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

void fail(SuiteResult& r, std::string counterexample) {
    if (r.passed) {
        r.passed = false;
        r.counterexample = std::move(counterexample);
    }
}

void suite_buchstab(SuiteResult& r, const VerifyOptions& o) {
    const double x = o.x;
    const double y = o.y > 0 ? o.y : 25;
    const unsigned depth = o.r > 0 ? o.r : buchstab_depth(x, y);
    SplitMix64 rng(o.seed);
    const SieveConfig cfg{.threads = o.threads};
    for (const auto& [q, a] : random_moduli(rng, 10)) {
        ++r.cases;
        BuchstabExpansion e;
        try {
            e = buchstab_expand(linear_phase(q, a), x, y, depth);
        } catch (const std::domain_error& err) {
            fail(r, "x=" + std::to_string(x) + " y=" + std::to_string(y) + " r=" +
                        std::to_string(depth) + ": " + err.what());
            return;
        }
        if (o.sabotage) {
            if (e.corrections.empty())
                e.main += 1.0;
            else
                e.corrections.back() = -e.corrections.back();
        }
        const auto direct = sum_linear(SumParams(x, y, q, a), cfg).value;
        const auto got = e.recombined();
        if (!close_rel(got, direct, o.tol))
            fail(r, "q=" + std::to_string(q) + " a=" + std::to_string(a) + " recombined=" +
                        fmt_complex(got) + " direct=" + fmt_complex(direct));
    }
    r.detail = "x=" + std::to_string(static_cast<u64>(x)) + " y=" + std::to_string(y) +
               " r=" + std::to_string(depth);
}

void suite_wsplit(SuiteResult& r, const VerifyOptions& o) {
    const u64 n_max = floor_u64(o.x);
    const auto sieve = build_sieve(1, n_max);
    for (double w : {3.0, 10.0, 50.0, 316.0}) {
        if (w > static_cast<double>(n_max))
            continue;
        for (u64 n = static_cast<u64>(std::ceil(w)); n <= n_max; ++n) {
            ++r.cases;
            unsigned admissible = 0;
            std::vector<u64> divs{1};
            const auto factors = sieve.prime_factors(n);
            for (std::size_t i = 0; i < factors.size();) {
                const u64 p = factors[i];
                const std::size_t base = divs.size();
                u64 pk = 1;
                for (; i < factors.size() && factors[i] == p; ++i) {
                    pk *= p;
                    for (std::size_t j = 0; j < base; ++j)
                        divs.push_back(divs[j] * pk);
                }
            }
            u64 found = 0;
            for (u64 k : divs)
                if (is_admissible_split(n, k, w, sieve)) {
                    ++admissible;
                    found = k;
                }
            if (o.sabotage && r.cases == 1)
                ++admissible;
            const auto split = w_split(n, w, sieve);
            if (admissible != 1 || split.k != found)
                fail(r, "n=" + std::to_string(n) + " w=" + std::to_string(w) + " admissible=" +
                            std::to_string(admissible));
        }
    }
    r.detail = "n<=" + std::to_string(n_max) + " w in {3,10,50,316}";
}

void suite_partition(SuiteResult& r, const VerifyOptions& o) {
    const u64 n_max = floor_u64(o.x);
    const auto sieve = build_sieve(1, n_max);
    SplitMix64 rng(o.seed);
    const auto mods = random_moduli(rng, 2);
    for (double y : {10.0, 100.0})
        for (double w : {10.0, 100.0})
            for (const auto& [q, a] : mods) {
                ++r.cases;
                const auto f = linear_phase(q, a);
                const auto direct = smooth_tail_sum(f, o.x, y, w, sieve);
                auto split = split_partition_sum(f, o.x, y, w, sieve);
                if (o.sabotage && r.cases == 1)
                    split += f(n_max);
                if (!close_rel(split, direct, o.tol))
                    fail(r, "y=" + std::to_string(y) + " w=" + std::to_string(w) + " q=" +
                                std::to_string(q) + " a=" + std::to_string(a));
            }
    r.detail = "x=" + std::to_string(n_max) + " y in {10,100} w in {10,100}";
}

void record_identity(SuiteResult& r, IdentityCheck c, const std::string& what, bool sabotage,
                     u64 sabotage_n) {
    r.cases += c.checked;
    if (sabotage && c.ok) {
        c.ok = false;
        c.first_failure = sabotage_n;
    }
    if (!c.ok)
        fail(r, what + " fails at n=" + std::to_string(c.first_failure.value_or(0)));
}

void suite_vaughan(SuiteResult& r, const VerifyOptions& o) {
    const u64 n_max = floor_u64(o.x);
    record_identity(r, vaughan_lambda_check(n_max, 10, 20), "vaughan(u=10, v=20)", o.sabotage, 21);
    r.detail = "n<=" + std::to_string(n_max) + " u=10 v=20";
}

void suite_heath_brown(SuiteResult& r, const VerifyOptions& o) {
    const u64 n_max = std::min<u64>(floor_u64(o.x), 5000);
    record_identity(r, heath_brown_lambda_check(n_max, 3, 18), "heath-brown(J=3, z=18)",
                    o.sabotage, 2);
    r.detail = "n<=" + std::to_string(n_max) + " J=3 z=18";
}

void suite_bilinear(SuiteResult& r, const VerifyOptions& o) {
    SplitMix64 rng(o.seed);
    const auto mods = random_moduli(rng, 3);
    for (unsigned j : {2u, 3u})
        for (double y : {3.0, 7.0}) {
            const auto reg = bilinear_regroup(j, o.x, y);
            for (const auto& [q, a] : mods) {
                ++r.cases;
                const auto f = linear_phase(q, a);
                auto lhs = regrouped_sum(reg, f);
                if (o.sabotage && r.cases == 1)
                    lhs = -lhs;
                const auto rhs = relaxed_prime_sum(j, o.x, y, f) + diagonal_prime_sum(j, o.x, y, f);
                if (!close_rel(lhs, rhs, o.tol))
                    fail(r, "j=" + std::to_string(j) + " y=" + std::to_string(y) + " q=" +
                                std::to_string(q) + " a=" + std::to_string(a) + " regrouped=" +
                                fmt_complex(lhs) + " expected=" + fmt_complex(rhs));
            }
        }
    r.detail = "x=" + std::to_string(static_cast<u64>(o.x)) + " j in {2,3}";
}

void suite_weil(SuiteResult& r, const VerifyOptions& o) {
    bool sabotaged = false;
    for (u64 q : primes_up_to(499))
        for (i64 nu = 2; nu <= 6; ++nu)
            for (u64 a = 1; a <= std::min<u64>(q - 1, 20); ++a) {
                ++r.cases;
                double v = std::abs(1.0 + complete_monomial_sum(q, static_cast<i64>(a), nu).value);
                if (o.sabotage && !sabotaged) {
                    v = static_cast<double>(q);
                    sabotaged = true;
                }
                const double bound = static_cast<double>(nu - 1) * std::sqrt(static_cast<double>(q));
                if (v > bound + 1e-6)
                    fail(r, "q=" + std::to_string(q) + " nu=" + std::to_string(nu) + " a=" +
                                std::to_string(a) + " |sum|=" + std::to_string(v));
            }
    r.detail = "q<=499 prime, nu in 2..6, a<=20";
}

void suite_optimizer(SuiteResult& r, const VerifyOptions& o) {
    SplitMix64 rng(o.seed);
    for (int i = 0; i < 1000; ++i) {
        ++r.cases;
        const double alpha = rng.unit(), beta = rng.unit();
        const auto closed = optimal_omega(alpha, beta);
        auto grid = oracle_optimal_omega(alpha, beta, 1e-4);
        if (o.sabotage && i == 0)
            grid.omega += 1;
        const bool ok = std::abs(closed.omega - grid.omega) <= 2e-4 &&
                        std::abs(closed.kappa - grid.kappa) <= 1e-4 &&
                        std::abs(kappa(closed.omega, alpha, beta).kappa - closed.kappa) <= 1e-12;
        if (!ok) {
            std::ostringstream os;
            os.precision(17);
            os << "alpha=" << alpha << " beta=" << beta << " omega=" << closed.omega
               << " oracle=" << grid.omega;
            fail(r, os.str());
        }
    }
    r.detail = "1000 random (alpha, beta), step 1e-4";
}

using SuiteFn = void (*)(SuiteResult&, const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites{
        {"buchstab", suite_buchstab}, {"wsplit", suite_wsplit},
        {"partition", suite_partition}, {"vaughan", suite_vaughan},
        {"heath-brown", suite_heath_brown}, {"bilinear", suite_bilinear},
        {"weil", suite_weil}, {"optimizer", suite_optimizer},
    };
    return suites;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry())
            n.push_back(name);
        return n;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
    for (const auto& [n, fn] : registry()) {
        if (n != name)
            continue;
        SuiteResult r;
        r.name = n;
        const auto t0 = std::chrono::steady_clock::now();
        fn(r, opts);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteResult> run_all(const VerifyOptions& opts) {
    std::vector<SuiteResult> out;
    for (const auto& name : suite_names())
        out.push_back(run_suite(name, opts));
    return out;
}

} // namespace friable
