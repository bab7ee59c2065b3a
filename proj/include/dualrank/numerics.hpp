#pragma once

#include <Eigen/Dense>

#include <limits>
#include <utility>
#include <vector>

namespace dualrank {

inline constexpr double kDefaultRankTol = 1e-8;
/// A rank cut whose gap sigma_r / sigma_{r+1} is below this is ambiguous.
inline constexpr double kConfidenceRatio = 1e4;

struct RankDecision {
    int rank{0};
    std::vector<double> singular_values; // descending
    double gap_ratio{std::numeric_limits<double>::infinity()};
    bool ambiguous{false};
};

/// Rank = number of singular values above tol * sigma_max.
RankDecision numerical_rank(const Eigen::MatrixXd& m, double tol = kDefaultRankTol,
                            double confidence_ratio = kConfidenceRatio);

/// Orthonormal columns spanning the numerical kernel of m.
Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m, double tol = kDefaultRankTol);

/// Orthonormal basis of the column span, with the number of columns fixed by `rank`.
Eigen::MatrixXd column_basis(const Eigen::MatrixXd& m, int rank);

/// Orthonormal basis of the orthogonal complement of span(m) in R^rows.
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& m, int rank);

/// Principal angles (radians, ascending) between two column spans.
/// Both inputs need not be orthonormal; they are orthonormalized first.
std::vector<double> principal_angles(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Largest principal angle, computed through sines for accuracy near zero.
double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Chebyshev points of the first kind on [lo, hi], ascending.
std::vector<double> chebyshev_nodes(int count, double lo, double hi);

void require_finite(const Eigen::MatrixXd& m, const char* what);

} // namespace dualrank
