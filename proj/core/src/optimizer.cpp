#include "friable/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace friable {

double eta(double mu, double beta) {
    if (!(mu >= 0 && mu <= 1))
        throw std::domain_error("eta: mu must lie in [0, 1]");
    if (mu <= 0.5)
        return std::min(mu / 2, 0.5 - beta / 4 - mu / 2);
    return std::min(mu / 2 - beta / 4, 0.5 - mu / 2);
}

KappaValue kappa(double omega, double alpha, double beta) {
    if (!(omega >= 0 && omega <= 1))
        throw std::domain_error("kappa: omega must lie in [0, 1]");
    if (!(alpha >= 0))
        throw std::domain_error("kappa: alpha must be nonnegative");
    KappaValue out;
    double hi = omega + alpha;
    if (hi > 1) {
        hi = 1;
        out.clamped = true;
    }
    double best = std::min(eta(omega, beta), eta(hi, beta));
    const std::array<double, 3> breaks{0.5, 0.5 - beta / 4, 0.5 + beta / 4};
    for (double b : breaks)
        if (b > omega && b < hi)
            best = std::min(best, eta(b, beta));
    out.kappa = best;
    return out;
}

namespace {

void check_alpha_beta(double alpha, double beta) {
    if (!(alpha >= 0 && alpha <= 1))
        throw std::domain_error("alpha must lie in [0, 1]");
    if (!(beta >= 0 && beta <= 2))
        throw std::domain_error("beta must lie in [0, 2]");
}

} // namespace

OmegaChoice optimal_omega(double alpha, double beta) {
    check_alpha_beta(alpha, beta);
    if (beta <= 1) {
        double omega;
        if (alpha < beta / 2)
            omega = 0.5 - beta / 4 - alpha / 2;
        else if (alpha < beta)
            omega = (1 - beta) / 2;
        else
            omega = (1 - alpha) / 2;
        return {omega, omega / 2};
    }
    if (!(alpha < 1 - beta / 2))
        throw TrivialRegimeError("no nontrivial saving for alpha >= 1 - beta/2");
    const double omega = 0.5 - beta / 4 - alpha / 2;
    return {omega, kappa(omega, alpha, beta).kappa};
}

OmegaChoice oracle_optimal_omega(double alpha, double beta, double step) {
    if (!(step > 0 && step <= 1e-3))
        throw std::domain_error("oracle step must lie in (0, 1e-3]");
    const auto n = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
    std::vector<double> values(n + 1);
    double best = -INFINITY;
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = kappa(std::min(1.0, static_cast<double>(i) * step), alpha, beta).kappa;
        best = std::max(best, values[i]);
    }
    for (std::size_t i = 0; i <= n; ++i)
        if (values[i] >= best - step / 2)
            return {std::min(1.0, static_cast<double>(i) * step), values[i]};
    return {0, values[0]};
}

const char* regime_name(PeakRegime r) {
    switch (r) {
    case PeakRegime::inside_one_peak: return "inside-one-peak";
    case PeakRegime::under_intersection: return "under-intersection";
    case PeakRegime::edge_to_edge: return "edge-to-edge";
    }
    return "?";
}

PeakRegime two_peaks_regime(double alpha, double beta) {
    check_alpha_beta(alpha, beta);
    if (beta > 1)
        throw std::domain_error("two_peaks_regime needs beta <= 1");
    if (alpha < beta / 2)
        return PeakRegime::inside_one_peak;
    if (alpha < beta)
        return PeakRegime::under_intersection;
    return PeakRegime::edge_to_edge;
}

double assembly_exponent(double alpha, double beta) {
    const auto c = optimal_omega(alpha, beta);
    return std::max({-beta / 4, c.omega - 1, -c.kappa});
}

} // namespace friable
