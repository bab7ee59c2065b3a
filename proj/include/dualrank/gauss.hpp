#pragma once

// Gauss-map invariants of a chart at a sample point: tangent frame, rank r,
// Gauss defect l, leaf directions and the second fundamental system.

#include "dualrank/chart.hpp"
#include "dualrank/numerics.hpp"
#include "dualrank/poly.hpp"
#include "dualrank/random.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dualrank {

struct AuditEntry {
    std::string context;
    RankDecision decision;
};

using Audit = std::vector<AuditEntry>;

struct TangentFrame {
    Eigen::VectorXd point;         // unit homogeneous vector, largest-magnitude entry positive
    Eigen::MatrixXd tangent_basis; // (N+1) x n, orthonormal, orthogonal to point
    Eigen::MatrixXd normal_basis;  // (N+1) x (N-n), orthonormal complement of the tangent span
    Eigen::MatrixXd tangent_params; // d x n, parameter directions mapped isomorphically onto the tangent space
    Eigen::VectorXd param_point;
    Jet2 jet;                       // jet of the chart at param_point, rescaled by 1/|x|
    int n{0};
};

struct SecondFundamentalSystem {
    std::vector<Eigen::MatrixXd> B;    // one symmetric r x r matrix per normal direction
    Eigen::MatrixXd transversal_basis; // d x r
    Eigen::MatrixXd leaf_basis;        // d x l
};

struct GaussAnalysis {
    TangentFrame frame;
    int n{0};
    int r{0};
    int l{0};
    SecondFundamentalSystem sff;
    std::vector<Eigen::MatrixXd> unrestricted; // n x n forms in the tangent_params basis
    Audit audit;
};

/// Effective rank tolerance for a chart: the requested one, raised to the
/// chart's jet accuracy.
double effective_tolerance(const Chart& chart, double tol);

/// Throws NonGenericPoint when the tangent-span rank decision is ambiguous.
TangentFrame tangent_frame(const Chart& chart, const Eigen::VectorXd& u, double tol = kDefaultRankTol,
                           Audit* audit = nullptr);

/// Leaf kernel from one SVD of the stacked normal-projected Hessians.
GaussAnalysis second_fundamental(const Chart& chart, const TangentFrame& frame, double tol = kDefaultRankTol,
                                 Audit audit = {});

GaussAnalysis analyze_at(const Chart& chart, const Eigen::VectorXd& u, double tol = kDefaultRankTol);

/// Uniform sample of the cube [-1, 1]^d, rejecting points where |x(u)| < 1e-8.
Eigen::VectorXd sample_parameters(const Chart& chart, Rng& rng);

/// Analysis at a random generic point of the stream `seed`; ambiguous rank
/// decisions trigger a fresh point, up to `retries` times.
GaussAnalysis analyze_generic(const Chart& chart, std::uint64_t seed, double tol = kDefaultRankTol,
                              int retries = 5);

/// Jacobi-matrix data along the leaf through a base point of a ruled chart.
///
/// With A_0 = x(u, s0) and A_a = dx/ds^a, a leaf point is x^0 A_0 + x^a A_a and
/// its Jacobi matrix is J = x^0 I + x^a C_a in the basis where J(A_0) = I.
/// B holds the second fundamental forms expressed in the same basis, so the
/// products B^alpha C_a are symmetric.
struct LeafOperators {
    std::vector<Eigen::MatrixXd> C; // l matrices, r x r
    std::vector<Eigen::MatrixXd> B; // N - n matrices, r x r
    Eigen::MatrixXd base_block;     // D0: projected base derivatives at A_0
    Eigen::MatrixXd transversal;    // (N+1) x r orthonormal complement of the leaf inside the tangent span

    /// J at homogeneous leaf coordinates (x^0, x^1, ..., x^l).
    Eigen::MatrixXd jacobi(const Eigen::VectorXd& leaf_coords) const;
};

LeafOperators leaf_operators(const RuledChart& chart, const GaussAnalysis& analysis);

/// Projective line in a leaf from the base point A_0 towards the leaf point
/// with homogeneous coordinates `target` = (w^0, w^1, ..., w^l):
/// X(tau) = (1 - tau) A_0 + tau W. target = (1, d) is the affine direction d;
/// target = (0, e_a) heads for A_a itself (e.g. a cone vertex).
struct LeafLine {
    Eigen::VectorXd target;
    std::pair<double, double> interval{-2.0, 2.0};

    Eigen::VectorXd leaf_coords(double tau) const;
};

struct FocusPolynomial {
    Poly1 poly;
    std::vector<double> nodes;
    std::vector<double> det_samples;
    std::pair<double, double> interval{-2.0, 2.0};
};

/// det J along the line, interpolated from r + 1 Chebyshev samples.
FocusPolynomial focus_polynomial(const LeafOperators& ops, const LeafLine& line);

/// Roots of the focus polynomial on the line's interval. Throws DegenerateLeaf.
std::vector<Root> focal_points(const FocusPolynomial& focus);

/// Rank-drop locations of the full chart Jacobian along the line, found by an
/// SVD scan with golden-section refinement. Uses only the chart's jets.
std::vector<double> scan_rank_drops(const RuledChart& chart, const Eigen::VectorXd& base_params,
                                    const LeafLine& line, int points = 200);

} // namespace dualrank
