#pragma once

#include "friable/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace friable {

/// Thrown when no choice of omega gives a nontrivial saving.
class TrivialRegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Piecewise-linear saving exponent at M = x^mu for modulus q = x^beta.
double eta(double mu, double beta);

struct KappaValue {
    double kappa = 0;
    /// the interval [omega, omega + alpha] was cut at 1
    bool clamped = false;
};

/// Minimum of eta over [omega, min(omega + alpha, 1)].
KappaValue kappa(double omega, double alpha, double beta);

struct OmegaChoice {
    double omega = 0;
    double kappa = 0;
};

/// Closed-form optimum. Throws TrivialRegimeError when 1 < beta <= 2 and
/// alpha >= 1 - beta/2.
OmegaChoice optimal_omega(double alpha, double beta);

/// Grid search over omega in [0, 1]. Ties go to the smallest omega.
OmegaChoice oracle_optimal_omega(double alpha, double beta, double step = 1e-4);

enum class PeakRegime { inside_one_peak, under_intersection, edge_to_edge };

const char* regime_name(PeakRegime r);

PeakRegime two_peaks_regime(double alpha, double beta);

/// max{-beta/4, omega - 1, -kappa} at the optimal omega.
double assembly_exponent(double alpha, double beta);

struct RationalPoint {
    Rational alpha;
    Rational beta;
    bool operator==(const RationalPoint&) const = default;
};

struct RegionPolygon {
    std::string name;
    /// counter-clockwise, no repeated or collinear vertices
    std::vector<RationalPoint> vertices;
};

struct RegionSet {
    std::vector<RegionPolygon> polygons;
    /// grid cells whose centre label disagrees with the polygons
    std::size_t grid_mismatches = 0;
    std::size_t grid_cells = 0;
    /// largest distance from a polygon vertex to the nearest grid cell
    /// carrying that polygon's label
    double max_vertex_gap = 0;

    const RegionPolygon* find(const std::string& name) const;
};

/// Positive part of each bound's saving exponent at (alpha, beta), using the
/// limit eps, delta -> 0 for E4 (E4 then saves only where E1..E3 do not).
struct Savings {
    double s1, s2, s3, s4;
};
Savings region_savings(double alpha, double beta);

/// "E1".."E4" or "" where no bound saves a power.
std::string best_bound(double alpha, double beta);

/// Exact partition of [0,1] x [0,2] into the regions where each bound is
/// the best nontrivial one, cross-checked on a grid of spacing eps_grid.
RegionSet figure1_regions(double eps_grid = 0.005);

/// Point-in-polygon; boundary counts as inside.
bool polygon_contains(const RegionPolygon& poly, double alpha, double beta);

} // namespace friable
