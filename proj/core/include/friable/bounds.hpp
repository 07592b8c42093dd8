#pragma once

#include "friable/sums.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace friable {

/// Saving factors multiplying the trivial size x of a smooth exponential sum.
enum class Envelope { FT_rat, FT_real, THM1, E1, E2, E3, E4, COR12 };

inline constexpr std::array<Envelope, 8> all_envelopes{
    Envelope::FT_rat, Envelope::FT_real, Envelope::THM1, Envelope::E1,
    Envelope::E2,     Envelope::E3,      Envelope::E4,   Envelope::COR12};

std::string_view envelope_name(Envelope e);

inline constexpr double default_eps = 0.01;
inline constexpr double default_delta = 0.05;

/// x^{-1/4} y^{1/2} + q^{-1/2} + (qy/x)^{1/2}
double envelope_ft(double x, double y, double q);

/// min{x^{-1/5}, (x/y)^{-1/4}} + q^{-1/2} + (x/q)^{-1/2}
double envelope_thm1(double x, double y, double q);

/// E_1 .. E_4 for the nu-th power sums; i outside 1..4 throws std::domain_error.
double envelope_e(int i, double x, double y, double q, double eps = default_eps,
                  double delta = default_delta);

/// Leading exponent of envelope_e as x -> infinity with y = x^alpha, q = x^beta.
double envelope_e_exponent(int i, double alpha, double beta, double eps = default_eps,
                           double delta = default_delta);

struct LFactor {
    double theta = 0;
    i64 a = 0;
    u64 q = 1;
    double value = 1;
};

/// 1 + x |theta - a/q|
LFactor l_factor(double x, double theta, i64 a, u64 q);

struct QRange {
    double lo = 0;
    double hi = 0;
};

/// [x^eps, max(x^{4/3-eps}, x^{2-eps} / y^2)]: moduli where the nu-th power
/// sums still save a power of x.
QRange nontrivial_range_cor14(double x, double y, double eps);

struct BoundReport {
    SumParams params;
    double exact_abs = 0;
    std::complex<double> exact{};
    u64 terms = 0;
    u64 psi = 0;
    double l_factor = 1;
    std::array<double, 8> envelopes{};
    std::array<double, 8> ratios{};
    /// envelope >= 1: the bound says nothing beyond |S| <= x
    std::array<bool, 8> trivial{};

    double envelope(Envelope e) const { return envelopes[static_cast<std::size_t>(e)]; }
    double ratio(Envelope e) const { return ratios[static_cast<std::size_t>(e)]; }
    bool is_trivial(Envelope e) const { return trivial[static_cast<std::size_t>(e)]; }
};

/// Evaluates the sum exactly (T_theta when theta is set, S_{nu,a,q}
/// otherwise) and every envelope at the same parameters. Ratios are
/// |S| / (x * envelope).
BoundReport report(const SumParams& p, double eps = default_eps, double delta = default_delta,
                   const SieveConfig& config = {});

/// Envelope values only, without evaluating the sum.
std::array<double, 8> envelopes_at(const SumParams& p, double eps = default_eps,
                                   double delta = default_delta);

} // namespace friable
