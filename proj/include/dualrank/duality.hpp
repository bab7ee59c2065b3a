#pragma once

// Dual varieties measured through charts of tangent hyperplanes, the refined
// dual defect, and the pencil-singularity test on second fundamental forms.

#include "dualrank/chart.hpp"
#include "dualrank/gauss.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dualrank {

struct DualChartOptions {
    double first_step{1e-4};
    double second_step{1e-3};
};

/// Chart of tangent hyperplanes around the analysis point: parameters (u, t),
/// xi(u, t) = F_0(u) + sum_sigma t^sigma F_sigma(u), where the columns of F(u)
/// span the hyperplanes containing the tangent space at x(u). F is the
/// projection of the reference frame at the analysis point, which makes it a
/// smooth local section. Jets come from Richardson-extrapolated divided
/// differences of F.
Chart dual_chart(const Chart& chart, const GaussAnalysis& analysis, DualChartOptions options = {});

/// Parameter point of the dual chart over the analysis point with fiber coordinates t.
Eigen::VectorXd dual_point(const GaussAnalysis& analysis, const Eigen::VectorXd& fiber);

enum class GhMode { Probabilistic, Interpolated, Auto };
enum class GhVerdict { AllSingular, ExistsNonsingular, Inconclusive };

const char* to_string(GhMode mode);
const char* to_string(GhVerdict verdict);

inline constexpr int kGhProbes = 50;
inline constexpr double kGhThreshold = 1e-10;
/// Values between kGhThreshold and kGhThreshold * kGhBand (relative) are inconclusive.
inline constexpr double kGhBand = 1e3;
inline constexpr int kGhMaxInterpolatedDegree = 6;
inline constexpr int kGhMaxInterpolatedNormals = 6;

struct GhResult {
    GhVerdict verdict{GhVerdict::Inconclusive};
    GhMode mode{GhMode::Probabilistic}; // mode of record
    double max_abs_det{0.0};            // max |D| over the probes of the mode of record
    double threshold{0.0};              // kGhThreshold * (max |B^alpha|)^r
    double max_abs_coefficient{0.0};    // interpolated mode only
    std::optional<GhVerdict> probabilistic;
    std::optional<GhVerdict> interpolated;
};

bool interpolation_applicable(const SecondFundamentalSystem& sff);

/// D(xi) = det(sum_alpha xi_alpha B^alpha). Probabilistic mode probes kGhProbes
/// seeded unit vectors; interpolated mode recovers every coefficient of the
/// degree-r form from the simplex lattice of nodes. Auto runs both when the
/// interpolation applies and reports Inconclusive if they disagree.
GhResult gh_singularity_test(const SecondFundamentalSystem& sff, GhMode mode, std::uint64_t seed);

/// Coefficients of D in the monomial basis, ordered as `pencil_exponents`.
std::vector<double> pencil_determinant_coefficients(const SecondFundamentalSystem& sff);
std::vector<std::vector<int>> pencil_exponents(int variables, int degree);

struct AnalysisConfig {
    std::uint64_t seed{42};
    double rank_tol{kDefaultRankTol};
    GhMode gh_mode{GhMode::Auto};
    int samples{5};
    int retries{5};
};

/// Measurements at one generic sample point.
struct DualitySample {
    Eigen::VectorXd params;
    int n{0}, r{0}, l{0};
    int n_star{0}, l_star{0}, r_star{0};
    GhResult gh;
};

struct DualDimension {
    int n_star{0};
    int l_star{0};
    int r_star{0};
    std::vector<DualitySample> samples;
    Audit audit;
};

/// Throws NonGenericPoint when a sample stays ambiguous after all retries.
DualitySample sample_duality(const Chart& chart, const AnalysisConfig& config, int index, Audit* audit = nullptr);

/// Medians over config.samples generic points.
DualDimension dual_dimension(const Chart& chart, const AnalysisConfig& config = {});

struct DualityReport {
    std::string name;
    int N{0}, n{0}, r{0}, l{0};
    int n_star{0}, l_star{0}, r_star{0};
    int expected_n_star{0};
    int delta_star{0};
    GhResult gh;
    bool gh_all_singular{false};
    bool consistent{false};          // (delta* > 0) <=> all forms singular
    std::optional<bool> theorem1;    // only meaningful when delta* = 0
    bool ambiguous{false};           // samples disagree or a verdict was inconclusive
    std::vector<DualitySample> samples;
    Audit audit;
};

DualityReport refined_dual_defect(const Chart& chart, const AnalysisConfig& config = {});

struct Theorem4Record {
    int delta_star{0};
    bool all_singular{false};
    bool consistent{false};
    bool hard_failure{false}; // inconsistent although every rank decision was clear
    bool ambiguous{false};
};

Theorem4Record verify_theorem4(const Chart& chart, const AnalysisConfig& config = {});

/// The chart composed with the nondegenerate correlation xi = C x.
/// Throws InputError when C is singular.
Chart apply_correlation(const Chart& chart, const Eigen::MatrixXd& correlation);

} // namespace dualrank
