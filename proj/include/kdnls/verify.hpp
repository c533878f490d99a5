#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kdnls/lax.hpp"
#include "kdnls/numerics.hpp"

namespace kdnls {

// i Q_t + Q_xx + s i alpha (Q^2 Q*)_x - (theta_t + theta_x^2 - i theta_xx) Q
//   + theta_x (2 i Q_x - s alpha Q^2 Q*),  s = variant.nonlinear_sign
cd pde_operator(const QJet& j, const Seed& seed, const ConventionVariant& variant);

// Residual from central differences on grid and on refinements - 1 successive
// halvings. Boundary layers and the 8-neighbourhood of every non-finite node
// are excluded.
ResidualReport pde_residual(const PointFunction& field, const Seed& seed, const ConventionVariant& variant,
                            const Grid2D& grid, int refinements = 2);

// Same norms from the seed's analytic derivatives; no truncation error.
ResidualReport seed_pde_residual(const Seed& seed, const ConventionVariant& variant, const Grid2D& grid,
                                 int refinements = 2);

struct VariantScore {
    ConventionVariant variant;
    double pde_residual = 0.0;
    double lax_x_residual = 0.0;
    double lax_t_residual = 0.0;
    bool passes = false;
};

struct PinDownResult {
    std::vector<VariantScore> scores;
    std::optional<ConventionVariant> selected;  // set only when exactly one passes
    int passing = 0;
};

// Scores every variant on the plane-wave seed: exact PDE residual of the seed
// (selects the sign) and exact Lax residual of its eigenfunction at probe_lambda
// (selects the V reading).
PinDownResult pin_down_convention(const Seed& plane_wave, double tol = 1e-10, cd probe_lambda = cd(0.5, 1.0));

enum class CompareMode { Intensity, ModulusOfDifference, UpToGlobalPhase };

struct FieldError {
    double max_err = 0.0;
    double mean_err = 0.0;
    std::size_t compared = 0;
};

// Nodes flagged in either field are skipped.
FieldError compare_fields(const ComplexField2D& a, const ComplexField2D& b, CompareMode mode);

struct ConvergencePoint {
    double eps = 0.0;
    double max_intensity_err = 0.0;
};

struct ConvergenceStudy {
    std::vector<ConvergencePoint> points;
    bool monotone = false;  // strictly decreasing
    double reduction = 0.0;  // first error / last error
};

ConvergenceStudy convergence_study(const std::function<ComplexField2D(double)>& family,
                                   const ComplexField2D& reference, const std::vector<double>& eps_ladder);

enum class PatternClass { Fundamental, Triangular, Ring, Unclassified };

const char* to_string(PatternClass c);

struct Peak {
    double x = 0.0, t = 0.0, height = 0.0;
    std::size_t i = 0, j = 0;
    double prominence = 0.0;
};

struct PeakSet {
    std::vector<Peak> peaks;
    double background = 0.0;
    PatternClass classification = PatternClass::Unclassified;
    // peaks on the ring when classified Ring
    std::size_t ring_count = 0;
    bool has_center = false;
};

struct PeakOptions {
    double background_window = 0.1;
    double threshold_ratio = 4.0;
    // a maximum also needs topographic prominence of this many backgrounds;
    // removes the staircase of grid maxima along oblique ridges
    double prominence_ratio = 1.0;
    // rogue-wave order used for the n(n+1)/2 triangular count; 0 accepts any
    int order = 0;
    // one peak at least this many times taller than every other one also
    // counts as a single dominant structure
    double dominance_ratio = 2.0;
    double ring_radius_spread = 0.15;
    double ring_gap_spread = 0.20;
    std::size_t min_nodes_per_hump = 5;
};

// Strict 8-neighbour maxima of |Q|^2. Throws ResolutionTooCoarse when a hump
// is narrower than min_nodes_per_hump at half height.
PeakSet peak_analysis(const ComplexField2D& q, const PeakOptions& opt = {});

}  // namespace kdnls
