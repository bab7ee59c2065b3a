#include "dualrank/gauss.hpp"

#include "dualrank/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dualrank {

Eigen::MatrixXd LeafOperators::jacobi(const Eigen::VectorXd& leaf_coords) const
{
    const Eigen::Index r = base_block.rows();
    Eigen::MatrixXd j = leaf_coords[0] * Eigen::MatrixXd::Identity(r, r);
    for (std::size_t a = 0; a < C.size(); ++a) {
        j += leaf_coords[Eigen::Index(a + 1)] * C[a];
    }
    return j;
}

Eigen::VectorXd LeafLine::leaf_coords(double tau) const
{
    Eigen::VectorXd x = tau * target;
    x[0] += 1.0 - tau;
    return x;
}

namespace {

// (N+1) x base block of d^2 x / (ds^a du)
Eigen::MatrixXd mixed_block(const Jet2& jet, int base, int leaf_index)
{
    Eigen::MatrixXd m(jet.coord_count(), base);
    for (Eigen::Index k = 0; k < jet.coord_count(); ++k) {
        m.row(k) = jet.hessians[std::size_t(k)].block(base + leaf_index, 0, 1, base);
    }
    return m;
}

Eigen::MatrixXd leaf_span(const Jet2& jet, int leaf)
{
    Eigen::MatrixXd span(jet.coord_count(), leaf + 1);
    span.col(0) = jet.value;
    span.rightCols(leaf) = jet.jacobian.rightCols(leaf);
    return span;
}

} // namespace

LeafOperators leaf_operators(const RuledChart& ruled, const GaussAnalysis& analysis)
{
    const int base = ruled.base_params();
    const int leaf = ruled.leaf_params();
    const int r = analysis.r;
    if (base != r) {
        throw InputError("leaf_operators: chart has " + std::to_string(base) + " base parameters but rank "
                         + std::to_string(r));
    }
    if (leaf != analysis.l) {
        throw InputError("leaf_operators: declared leaf dimension differs from the measured Gauss defect");
    }
    const Jet2& jet = analysis.frame.jet;
    const Eigen::Index coords = jet.coord_count();

    const Eigen::MatrixXd leaf_basis = column_basis(leaf_span(jet, leaf), leaf + 1);
    Eigen::MatrixXd tangent(coords, analysis.n + 1);
    tangent.col(0) = analysis.frame.point;
    tangent.rightCols(analysis.n) = analysis.frame.tangent_basis;
    const Eigen::MatrixXd off_leaf
        = (Eigen::MatrixXd::Identity(coords, coords) - leaf_basis * leaf_basis.transpose()) * tangent;

    LeafOperators ops;
    ops.transversal = column_basis(off_leaf, r);
    ops.base_block = ops.transversal.transpose() * jet.jacobian.leftCols(base);
    const RankDecision d0 = numerical_rank(ops.base_block);
    if (d0.rank < r) {
        throw SingularBasePoint("leaf_operators: base point is a focus of its leaf");
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(ops.base_block);
    const Eigen::MatrixXd d0_inv = lu.inverse();

    for (int a = 0; a < leaf; ++a) {
        const Eigen::MatrixXd da = ops.transversal.transpose() * mixed_block(jet, base, a);
        ops.C.push_back(da * d0_inv);
    }
    for (Eigen::Index alpha = 0; alpha < analysis.frame.normal_basis.cols(); ++alpha) {
        const Eigen::MatrixXd h
            = jet.contract_hessians(analysis.frame.normal_basis.col(alpha)).topLeftCorner(base, base);
        ops.B.push_back(d0_inv.transpose() * h * d0_inv);
    }
    return ops;
}

FocusPolynomial focus_polynomial(const LeafOperators& ops, const LeafLine& line)
{
    const auto r = int(ops.base_block.rows());
    if (line.target.size() != Eigen::Index(ops.C.size()) + 1) {
        throw InputError("focus_polynomial: leaf line needs l + 1 homogeneous coordinates");
    }
    FocusPolynomial f;
    f.interval = line.interval;
    f.nodes = chebyshev_nodes(r + 1, line.interval.first, line.interval.second);
    double scale = 0.0;
    for (double tau : f.nodes) {
        const Eigen::MatrixXd j = ops.jacobi(line.leaf_coords(tau));
        f.det_samples.push_back(j.determinant());
        double hadamard = 1.0;
        for (Eigen::Index c = 0; c < j.cols(); ++c) {
            hadamard *= j.col(c).norm();
        }
        scale = std::max(scale, hadamard);
    }
    f.poly = poly_from_samples(f.nodes, f.det_samples, r);
    f.poly.scale = scale;
    return f;
}

std::vector<Root> focal_points(const FocusPolynomial& focus)
{
    return real_roots(focus.poly, focus.interval);
}

namespace {

double relative_min_singular(const Eigen::MatrixXd& m)
{
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd& s = svd.singularValues();
    return s[0] > 0.0 ? s[s.size() - 1] / s[0] : 0.0;
}

} // namespace

std::vector<double> scan_rank_drops(const RuledChart& ruled, const Eigen::VectorXd& base_params,
                                    const LeafLine& line, int points)
{
    const int base = ruled.base_params();
    const int leaf = ruled.leaf_params();
    const Jet2 jet = ruled.chart().jet(base_params);
    const Eigen::MatrixXd span = leaf_span(jet, leaf);
    std::vector<Eigen::MatrixXd> mixed;
    for (int a = 0; a < leaf; ++a) {
        mixed.push_back(mixed_block(jet, base, a));
    }

    auto sigma = [&](double tau) {
        const Eigen::VectorXd x = line.leaf_coords(tau);
        Eigen::MatrixXd m(jet.coord_count(), leaf + 1 + base);
        m.leftCols(leaf + 1) = span;
        Eigen::MatrixXd moving = x[0] * jet.jacobian.leftCols(base);
        for (int a = 0; a < leaf; ++a) {
            moving += x[a + 1] * mixed[std::size_t(a)];
        }
        m.rightCols(base) = moving;
        return relative_min_singular(m);
    };

    const auto [lo, hi] = line.interval;
    std::vector<double> grid(static_cast<std::size_t>(points));
    std::vector<double> values(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        grid[std::size_t(k)] = lo + (hi - lo) * k / (points - 1);
        values[std::size_t(k)] = sigma(grid[std::size_t(k)]);
    }

    constexpr double golden = 0.6180339887498949;
    std::vector<double> drops;
    for (int k = 0; k < points; ++k) {
        const double left = k > 0 ? values[std::size_t(k - 1)] : INFINITY;
        const double right = k + 1 < points ? values[std::size_t(k + 1)] : INFINITY;
        const double here = values[std::size_t(k)];
        if (!(here <= left && here < right)) {
            continue;
        }
        double a = grid[std::size_t(std::max(k - 1, 0))];
        double b = grid[std::size_t(std::min(k + 1, points - 1))];
        double c = b - golden * (b - a);
        double d = a + golden * (b - a);
        double fc = sigma(c);
        double fd = sigma(d);
        for (int it = 0; it < 200 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - golden * (b - a);
                fc = sigma(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + golden * (b - a);
                fd = sigma(d);
            }
        }
        const double tau = 0.5 * (a + b);
        if (sigma(tau) <= 1e-9) {
            if (drops.empty() || std::abs(drops.back() - tau) > 1e-6) {
                drops.push_back(tau);
            }
        }
    }
    return drops;
}

} // namespace dualrank
