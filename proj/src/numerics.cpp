#include "dualrank/numerics.hpp"

#include "dualrank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dualrank {

void require_finite(const Eigen::MatrixXd& m, const char* what)
{
    if (!m.allFinite()) {
        throw InputError(std::string(what) + ": matrix has non-finite entries");
    }
}

RankDecision numerical_rank(const Eigen::MatrixXd& m, double tol, double confidence_ratio)
{
    require_finite(m, "numerical_rank");
    if (!(tol > 0.0 && tol < 1.0)) {
        throw InputError("numerical_rank: tolerance must lie in (0, 1)");
    }
    RankDecision d;
    if (m.size() == 0) {
        return d;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd& s = svd.singularValues();
    d.singular_values.assign(s.data(), s.data() + s.size());
    const double smax = s.size() > 0 ? s[0] : 0.0;
    if (smax == 0.0) {
        return d;
    }
    int rank = 0;
    while (rank < s.size() && s[rank] > tol * smax) {
        ++rank;
    }
    d.rank = rank;
    if (rank < s.size()) {
        d.gap_ratio = s[rank] > 0.0 ? s[rank - 1] / s[rank] : std::numeric_limits<double>::infinity();
        d.ambiguous = d.gap_ratio < confidence_ratio;
    }
    return d;
}

Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m, double tol)
{
    const RankDecision d = numerical_rank(m, tol);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const Eigen::Index cols = m.cols();
    return svd.matrixV().rightCols(cols - d.rank);
}

Eigen::MatrixXd column_basis(const Eigen::MatrixXd& m, int rank)
{
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& m, int rank)
{
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
    return svd.matrixU().rightCols(m.rows() - rank);
}

namespace {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& a)
{
    const RankDecision d = numerical_rank(a);
    return column_basis(a, d.rank);
}

} // namespace

std::vector<double> principal_angles(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    const Eigen::MatrixXd qa = orthonormalize(a);
    const Eigen::MatrixXd qb = orthonormalize(b);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(qa.transpose() * qb);
    std::vector<double> angles;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        angles.push_back(std::acos(std::clamp(svd.singularValues()[i], -1.0, 1.0)));
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    const Eigen::MatrixXd qa = orthonormalize(a);
    const Eigen::MatrixXd qb = orthonormalize(b);
    if (qa.cols() != qb.cols()) {
        return std::numbers::pi / 2;
    }
    if (qa.cols() == 0) {
        return 0.0;
    }
    const Eigen::MatrixXd residual = qb - qa * (qa.transpose() * qb);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
    return std::asin(std::min(1.0, svd.singularValues()[0]));
}

std::vector<double> chebyshev_nodes(int count, double lo, double hi)
{
    std::vector<double> nodes(static_cast<std::size_t>(count));
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int k = 0; k < count; ++k) {
        // k-th node counted from the right end, stored ascending
        const double theta = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * count);
        nodes[std::size_t(count - 1 - k)] = mid + half * std::cos(theta);
    }
    return nodes;
}

} // namespace dualrank
