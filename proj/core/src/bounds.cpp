#include "friable/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace friable {

std::string_view envelope_name(Envelope e) {
    switch (e) {
    case Envelope::FT_rat: return "FT_rat";
    case Envelope::FT_real: return "FT_real";
    case Envelope::THM1: return "THM1";
    case Envelope::E1: return "E1";
    case Envelope::E2: return "E2";
    case Envelope::E3: return "E3";
    case Envelope::E4: return "E4";
    case Envelope::COR12: return "COR12";
    }
    return "?";
}

namespace {

// Terms are x^a y^b q^c, evaluated as exp(a ln x + b ln y + c ln q) so that
// huge x never overflows.
struct Logs {
    double x, y, q;
};

Logs logs_of(double x, double y, double q) {
    if (!(x > 0) || !(y > 0) || !(q > 0))
        throw std::invalid_argument("x, y, q must be positive");
    return {std::log(x), std::log(y), std::log(q)};
}

double term(const Logs& l, double a, double b, double c) {
    return std::exp(a * l.x + b * l.y + c * l.q);
}

} // namespace

double envelope_ft(double x, double y, double q) {
    const auto l = logs_of(x, y, q);
    return term(l, -0.25, 0.5, 0) + term(l, 0, 0, -0.5) + term(l, -0.5, 0.5, 0.5);
}

double envelope_thm1(double x, double y, double q) {
    const auto l = logs_of(x, y, q);
    return std::min(term(l, -0.2, 0, 0), term(l, -0.25, 0.25, 0)) + term(l, 0, 0, -0.5) +
           term(l, -0.5, 0, 0.5);
}

double envelope_e(int i, double x, double y, double q, double eps, double delta) {
    const auto l = logs_of(x, y, q);
    switch (i) {
    case 1:
        return term(l, -0.25, 0.25, 0) + term(l, 0, 0, -0.5) + term(l, -0.5, 0, 0.5);
    case 2:
        return term(l, 0, -0.5, 0) + term(l, -0.25, 0, 0.125) + term(l, 0, 0, -0.5) +
               term(l, -0.5, 0, 0.5);
    case 3:
        return std::min(term(l, -0.25, 0, 0.25), term(l, -0.25, 0.25, 0.125)) +
               term(l, 0, 0, -0.25) + term(l, -0.25, 0.25, 0);
    case 4:
        return std::pow(term(l, 0, 0, -0.25) + term(l, -1, 0, 0.75 + eps), delta);
    default:
        throw std::domain_error("envelope index must be 1..4");
    }
}

double envelope_e_exponent(int i, double alpha, double beta, double eps, double delta) {
    switch (i) {
    case 1:
        return std::max({-(1 - alpha) / 4, -beta / 2, -(1 - beta) / 2});
    case 2:
        return std::max({-alpha / 2, -0.25 + beta / 8, -beta / 2, -(1 - beta) / 2});
    case 3:
        return std::max({std::min(-(1 - beta) / 4, -(1 - alpha) / 4 + beta / 8), -beta / 4,
                         -(1 - alpha) / 4});
    case 4:
        return delta * std::max(-beta / 4, (0.75 + eps) * beta - 1);
    default:
        throw std::domain_error("envelope index must be 1..4");
    }
}

LFactor l_factor(double x, double theta, i64 a, u64 q) {
    if (q == 0)
        throw std::invalid_argument("q must be positive");
    const double gap = std::abs(theta - static_cast<double>(a) / static_cast<double>(q));
    return {theta, a, q, 1 + x * gap};
}

QRange nontrivial_range_cor14(double x, double y, double eps) {
    const double lx = std::log(x), ly = std::log(y);
    const double upper = std::max((4.0 / 3 - eps) * lx, (2 - eps) * lx - 2 * ly);
    return {std::exp(eps * lx), std::exp(upper)};
}

std::array<double, 8> envelopes_at(const SumParams& p, double eps, double delta) {
    const double x = p.x(), y = p.y(), q = static_cast<double>(p.q());
    const double lf = p.theta() ? l_factor(x, *p.theta(), p.a(), p.q()).value : 1.0;
    std::array<double, 8> env{};
    env[0] = envelope_ft(x, y, q);
    env[1] = env[0] * lf;
    env[2] = envelope_thm1(x, y, q);
    for (int i = 1; i <= 4; ++i)
        env[2 + i] = envelope_e(i, x, y, q, eps, delta);
    env[7] = env[2] * lf;
    return env;
}

BoundReport report(const SumParams& p, double eps, double delta, const SieveConfig& config) {
    BoundReport r{.params = p};
    const SumValue s = p.theta() ? sum_theta(p, config) : sum_power(p, config);
    r.exact = s.value;
    r.exact_abs = s.abs();
    r.terms = s.terms;
    r.psi = (p.nu() > 0 || p.theta()) ? s.terms : psi(p.x(), p.y(), config);
    r.l_factor = p.theta() ? l_factor(p.x(), *p.theta(), p.a(), p.q()).value : 1.0;
    r.envelopes = envelopes_at(p, eps, delta);
    for (std::size_t i = 0; i < r.envelopes.size(); ++i) {
        r.ratios[i] = r.exact_abs / (p.x() * r.envelopes[i]);
        r.trivial[i] = r.envelopes[i] >= 1.0;
    }
    return r;
}

} // namespace friable
