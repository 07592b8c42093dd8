#include "oracles.hpp"

#include "friable/optimizer.hpp"

#include <doctest.h>

using namespace friable;

namespace {

// Independent grid minimum of eta over [lo, hi].
double grid_min_eta(double lo, double hi, double beta, double step) {
    double best = INFINITY;
    const auto n = static_cast<long>(std::ceil((hi - lo) / step));
    for (long i = 0; i <= n; ++i) {
        const double mu = std::min(hi, lo + static_cast<double>(i) * step);
        const double v = mu <= 0.5 ? std::min(mu / 2, 0.5 - beta / 4 - mu / 2)
                                   : std::min(mu / 2 - beta / 4, 0.5 - mu / 2);
        best = std::min(best, v);
    }
    return best;
}

} // namespace

TEST_SUITE("optimizer") {

TEST_CASE("eta examples") {
    CHECK(eta(0, 0.3) == 0);
    CHECK(eta(0.5, 0.75) == doctest::Approx(0.0625));
    CHECK(eta(0.75, 0.5) == doctest::Approx(0.125));
    CHECK_THROWS_AS(eta(-0.01, 0.5), std::domain_error);
    CHECK_THROWS_AS(eta(1.01, 0.5), std::domain_error);
}

TEST_CASE("eta at the seam mu = 1/2") {
    // first branch at 1/2 and the second branch's limit from the right
    for (double beta : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
        const double left = eta(0.5, beta);
        const double right = std::min(0.25 - beta / 4, 0.25);
        CAPTURE(beta);
        CHECK(left == doctest::Approx(0.25 - beta / 4));
        CHECK(eta(0.5 + 1e-12, beta) == doctest::Approx(right));
    }
}

TEST_CASE("kappa examples") {
    CHECK(kappa(0.3, 0, 0.5).kappa == eta(0.3, 0.5));
    const auto k = kappa(0.1, 0.8, 0.75);
    CHECK(k.kappa == doctest::Approx(grid_min_eta(0.1, 0.9, 0.75, 1e-5)).epsilon(1e-9));
    CHECK_FALSE(k.clamped);
    const auto c = kappa(0.6, 0.8, 0.2);
    CHECK(c.clamped);
    CHECK(c.kappa == doctest::Approx(eta(1.0, 0.2)));
    CHECK(kappa(0.9, 0.1, 1.9).kappa < 0);
}

TEST_CASE("kappa equals a fine grid minimum") {
    oracle::Gen g(3);
    for (int i = 0; i < 300; ++i) {
        const double omega = g.real(0, 1), alpha = g.real(0, 1), beta = g.real(0, 2);
        const double hi = std::min(1.0, omega + alpha);
        REQUIRE(kappa(omega, alpha, beta).kappa == doctest::Approx(grid_min_eta(omega, hi, beta, 1e-5)).epsilon(0).scale(1).epsilon(1e-5));
    }
}

TEST_CASE("optimal_omega closed forms") {
    auto c = optimal_omega(0.5, 0.8);
    CHECK(c.omega == doctest::Approx(0.1));
    CHECK(c.kappa == doctest::Approx(0.05));
    c = optimal_omega(0.3, 0.75);
    CHECK(c.omega == doctest::Approx(0.1625));
    CHECK(c.kappa == doctest::Approx(0.08125));
    c = optimal_omega(0.75, 0.5);
    CHECK(c.omega == doctest::Approx(0.125));
    CHECK(c.kappa == doctest::Approx(0.0625));

    c = optimal_omega(0.2, 1.2);
    CHECK(c.omega == doctest::Approx(0.5 - 0.3 - 0.1));
    CHECK(c.kappa == doctest::Approx(kappa(c.omega, 0.2, 1.2).kappa));
    CHECK_THROWS_AS(optimal_omega(0.5, 1.2), TrivialRegimeError);
    CHECK_THROWS_AS(optimal_omega(1.5, 0.5), std::domain_error);
}

TEST_CASE("kappa = omega / 2 in all three regimes") {
    oracle::Gen g(8);
    for (int i = 0; i < 3000; ++i) {
        const double alpha = g.real(0, 1), beta = g.real(0, 1);
        const auto c = optimal_omega(alpha, beta);
        REQUIRE(std::abs(c.kappa - c.omega / 2) <= 1e-12);
        REQUIRE(std::abs(kappa(c.omega, alpha, beta).kappa - c.kappa) <= 1e-12);
    }
}

TEST_CASE("closed form beats every grid omega") {
    for (int ia = 0; ia < 100; ++ia)
        for (int ib = 0; ib < 100; ++ib) {
            const double alpha = (ia + 0.5) / 100, beta = (ib + 0.5) / 100;
            const double best = optimal_omega(alpha, beta).kappa;
            for (int iw = 0; iw <= 200; ++iw)
                REQUIRE(best >= kappa(iw / 200.0, alpha, beta).kappa - 1e-9);
        }
}

TEST_CASE("oracle agrees with the closed form") {
    oracle::Gen g(1);
    for (int i = 0; i < 200; ++i) {
        const double alpha = g.real(0, 1), beta = g.real(0, 1);
        const auto c = optimal_omega(alpha, beta);
        const auto o = oracle_optimal_omega(alpha, beta, 1e-4);
        CAPTURE(alpha);
        CAPTURE(beta);
        REQUIRE(std::abs(c.omega - o.omega) <= 2e-4);
        REQUIRE(std::abs(c.kappa - o.kappa) <= 1e-4);
    }
    CHECK_THROWS_AS(oracle_optimal_omega(0.5, 0.5, 0.01), std::domain_error);
}

TEST_CASE("degenerate oracle inputs") {
    // beta = 0: single peak at 1/2; the best interval is centred on it
    const auto o = oracle_optimal_omega(0.4, 0.0, 1e-4);
    CHECK(o.omega + 0.2 == doctest::Approx(0.5).epsilon(1e-3));
    // alpha = 1 covers [omega, 1]; omega = 0 is the smallest maximiser
    const auto w = oracle_optimal_omega(1.0, 0.3, 1e-4);
    CHECK(w.kappa == doctest::Approx(kappa(0, 1, 0.3).kappa));
}

TEST_CASE("two_peaks_regime") {
    CHECK(two_peaks_regime(0.3, 0.75) == PeakRegime::inside_one_peak);
    CHECK(two_peaks_regime(0.5, 0.8) == PeakRegime::under_intersection);
    CHECK(two_peaks_regime(0.9, 0.5) == PeakRegime::edge_to_edge);
    CHECK_THROWS_AS(two_peaks_regime(0.2, 1.5), std::domain_error);
    CHECK(std::string(regime_name(PeakRegime::edge_to_edge)) == "edge-to-edge");
}

}
