#pragma once

// Oracles shared by the unit tests and the acceptance runner. Nothing here
// calls into the jet arithmetic it is used to check.

#include "dualrank/chart.hpp"
#include "dualrank/gauss.hpp"
#include "dualrank/random.hpp"
#include "dualrank/taylor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace testing {

using dualrank::Chart;
using dualrank::Jet2;

struct FdJet {
    Eigen::MatrixXd jacobian;
    std::vector<Eigen::MatrixXd> hessians;
};

/// Central differences of the value evaluator only.
inline FdJet finite_difference_jet(const Chart& chart, const Eigen::VectorXd& u, double h1 = 1e-5, double h2 = 1e-4)
{
    const Eigen::Index d = u.size();
    const Eigen::VectorXd f0 = chart.value(u);
    const Eigen::Index coords = f0.size();
    auto at = [&](Eigen::Index i, double hi, Eigen::Index j, double hj) {
        Eigen::VectorXd v = u;
        v[i] += hi;
        v[j] += hj;
        return chart.value(v);
    };
    FdJet out;
    out.jacobian.resize(coords, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        out.jacobian.col(i) = (at(i, h1, i, 0) - at(i, -h1, i, 0)) / (2 * h1);
    }
    out.hessians.assign(std::size_t(coords), Eigen::MatrixXd::Zero(d, d));
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i; j < d; ++j) {
            Eigen::VectorXd col;
            if (i == j) {
                col = (at(i, h2, i, 0) - 2 * f0 + at(i, -h2, i, 0)) / (h2 * h2);
            } else {
                col = (at(i, h2, j, h2) - at(i, h2, j, -h2) - at(i, -h2, j, h2) + at(i, -h2, j, -h2)) / (4 * h2 * h2);
            }
            for (Eigen::Index k = 0; k < coords; ++k) {
                out.hessians[std::size_t(k)](i, j) = col[k];
                out.hessians[std::size_t(k)](j, i) = col[k];
            }
        }
    }
    return out;
}

struct JetErrors {
    double first{0.0};
    double second{0.0};
};

/// Relative discrepancies between the chart's jets and central differences.
inline JetErrors jet_errors(const Chart& chart, const Eigen::VectorXd& u)
{
    const Jet2 jet = chart.jet(u);
    const FdJet fd = finite_difference_jet(chart, u);
    JetErrors e;
    e.first = (jet.jacobian - fd.jacobian).norm() / std::max(1.0, jet.jacobian.norm());
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < jet.hessians.size(); ++k) {
        num += (jet.hessians[k] - fd.hessians[k]).squaredNorm();
        den += jet.hessians[k].squaredNorm();
    }
    e.second = std::sqrt(num) / std::max(1.0, std::sqrt(den));
    return e;
}

/// The chart multiplied by the positive factor (2 + c.u / (1 + |u|^2)) with |c| <= 1,
/// which changes nothing projectively.
inline Chart rescaled(const Chart& chart, std::uint64_t seed)
{
    dualrank::Rng rng(seed);
    const Eigen::VectorXd c = 0.9 * dualrank::unit_vector(rng, chart.param_dim());
    auto factor = [c](const Eigen::VectorXd& u) {
        using dualrank::Taylor2;
        Taylor2 dot = 0.0;
        Taylor2 sq = 1.0;
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            const Taylor2 x = Taylor2::variable(u[i], u.size(), i);
            dot = dot + c[i] * x;
            sq = sq + x * x;
        }
        return 2.0 + dot / sq;
    };
    auto value_fn = [chart, factor](const Eigen::VectorXd& u) {
        return Eigen::VectorXd(factor(u).value() * chart.value(u));
    };
    auto jet_fn = [chart, factor](const Eigen::VectorXd& u, dualrank::DerivativeOrder order) {
        const Jet2 x = chart.jet(u, order);
        const auto f = factor(u);
        const Eigen::Index d = u.size();
        const Eigen::VectorXd g = f.gradient(d);
        const Eigen::MatrixXd h = f.hessian(d);
        Jet2 out;
        out.value = f.value() * x.value;
        out.jacobian = f.value() * x.jacobian + x.value * g.transpose();
        for (std::size_t k = 0; k < x.hessians.size(); ++k) {
            const Eigen::VectorXd jk = x.jacobian.row(Eigen::Index(k)).transpose();
            out.hessians.push_back(f.value() * x.hessians[k] + x.value[Eigen::Index(k)] * h + jk * g.transpose()
                                   + g * jk.transpose());
        }
        return out;
    };
    Chart out("scaled(" + chart.name() + ")", chart.param_dim(), chart.ambient_dim(), value_fn, jet_fn);
    out.set_expected(chart.expected());
    out.set_ruling(chart.ruling());
    return out;
}

/// Span of the point and its tangent directions.
inline Eigen::MatrixXd tangent_span(const dualrank::TangentFrame& f)
{
    Eigen::MatrixXd s(f.point.size(), f.tangent_basis.cols() + 1);
    s.col(0) = f.point;
    s.rightCols(f.tangent_basis.cols()) = f.tangent_basis;
    return s;
}

inline double symmetry_defect(const Eigen::MatrixXd& m)
{
    return (m - m.transpose()).norm();
}

} // namespace testing
