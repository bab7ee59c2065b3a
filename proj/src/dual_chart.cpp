#include "dualrank/duality.hpp"

#include "dualrank/errors.hpp"
#include "dualrank/numerics.hpp"

#include <memory>

namespace dualrank {

namespace {

// Smooth frame of hyperplanes through the tangent space at x(u): the reference
// frame projected off the span of x(u) and its first partials.
class HyperplaneFrame {
public:
    HyperplaneFrame(Chart chart, int span_rank, Eigen::MatrixXd reference)
        : chart_(std::move(chart)), span_rank_(span_rank), reference_(std::move(reference))
    {
    }

    Eigen::MatrixXd operator()(const Eigen::VectorXd& u) const
    {
        const Jet2 jet = chart_.jet(u, DerivativeOrder::First);
        const double norm = jet.value.norm();
        if (!(norm > 0.0)) {
            throw NonGenericPoint("dual chart of '" + chart_.name() + "': chart vanishes");
        }
        Eigen::MatrixXd span(jet.value.size(), jet.jacobian.cols() + 1);
        span.col(0) = jet.value / norm;
        span.rightCols(jet.jacobian.cols()) = jet.jacobian / norm;
        const Eigen::MatrixXd q = column_basis(span, span_rank_);
        return reference_ - q * (q.transpose() * reference_);
    }

    int param_dim() const { return chart_.param_dim(); }
    Eigen::Index columns() const { return reference_.cols(); }

private:
    Chart chart_;
    int span_rank_;
    Eigen::MatrixXd reference_;
};

struct FrameJet {
    Eigen::MatrixXd value;
    std::vector<Eigen::MatrixXd> first;               // dF/du_i
    std::vector<std::vector<Eigen::MatrixXd>> second; // d2F/du_i du_j, i <= j
};

FrameJet frame_jet(const HyperplaneFrame& frame, const Eigen::VectorXd& u, DerivativeOrder order,
                   const DualChartOptions& options)
{
    const int d = frame.param_dim();
    FrameJet out;
    out.value = frame(u);
    auto shifted = [&](int i, double hi, int j, double hj) {
        Eigen::VectorXd v = u;
        v[i] += hi;
        if (j >= 0) {
            v[j] += hj;
        }
        return frame(v);
    };

    for (int i = 0; i < d; ++i) {
        auto central = [&](double h) { return ((shifted(i, h, -1, 0) - shifted(i, -h, -1, 0)) / (2.0 * h)).eval(); };
        const double h = options.first_step;
        out.first.push_back((4.0 * central(h / 2) - central(h)) / 3.0);
    }
    if (order == DerivativeOrder::First) {
        return out;
    }

    out.second.assign(std::size_t(d), std::vector<Eigen::MatrixXd>(std::size_t(d)));
    const double h = options.second_step;
    for (int i = 0; i < d; ++i) {
        auto pure = [&](double s) {
            return ((shifted(i, s, -1, 0) - 2.0 * out.value + shifted(i, -s, -1, 0)) / (s * s)).eval();
        };
        out.second[i][i] = (4.0 * pure(h / 2) - pure(h)) / 3.0;
        for (int j = i + 1; j < d; ++j) {
            auto mixed = [&](double s) {
                return ((shifted(i, s, j, s) - shifted(i, s, j, -s) - shifted(i, -s, j, s) + shifted(i, -s, j, -s))
                        / (4.0 * s * s))
                    .eval();
            };
            out.second[i][j] = (4.0 * mixed(h / 2) - mixed(h)) / 3.0;
        }
    }
    return out;
}

Eigen::VectorXd homogeneous_fiber(const Eigen::VectorXd& p, int d)
{
    Eigen::VectorXd c(p.size() - d + 1);
    c[0] = 1.0;
    c.tail(p.size() - d) = p.tail(p.size() - d);
    return c;
}

} // namespace

Eigen::VectorXd dual_point(const GaussAnalysis& analysis, const Eigen::VectorXd& fiber)
{
    const Eigen::VectorXd& u = analysis.frame.param_point;
    const Eigen::Index f = analysis.frame.normal_basis.cols() - 1;
    if (fiber.size() != f) {
        throw InputError("dual_point: fiber needs " + std::to_string(f) + " coordinates");
    }
    Eigen::VectorXd p(u.size() + f);
    p << u, fiber;
    return p;
}

Chart dual_chart(const Chart& chart, const GaussAnalysis& analysis, DualChartOptions options)
{
    const Eigen::MatrixXd& reference = analysis.frame.normal_basis;
    if (reference.cols() == 0) {
        throw InputError("dual chart of '" + chart.name() + "': the chart fills its ambient space");
    }
    const int d = chart.param_dim();
    const int f = int(reference.cols()) - 1;
    const int coords = chart.ambient_dim() + 1;
    auto frame = std::make_shared<const HyperplaneFrame>(chart, analysis.n + 1, reference);

    auto value_fn = [frame, d](const Eigen::VectorXd& p) {
        return Eigen::VectorXd((*frame)(p.head(d)) * homogeneous_fiber(p, d));
    };
    auto jet_fn = [frame, d, f, coords, options](const Eigen::VectorXd& p, DerivativeOrder order) {
        const FrameJet fj = frame_jet(*frame, p.head(d), order, options);
        const Eigen::VectorXd c = homogeneous_fiber(p, d);
        const int dim = d + f;
        Jet2 jet;
        jet.value = fj.value * c;
        jet.jacobian.resize(coords, dim);
        for (int i = 0; i < d; ++i) {
            jet.jacobian.col(i) = fj.first[std::size_t(i)] * c;
        }
        jet.jacobian.rightCols(f) = fj.value.rightCols(f);
        jet.hessians.assign(std::size_t(coords), Eigen::MatrixXd::Zero(dim, dim));
        if (order == DerivativeOrder::First) {
            return jet;
        }
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) {
                const Eigen::VectorXd col = fj.second[std::size_t(i)][std::size_t(j)] * c;
                for (int k = 0; k < coords; ++k) {
                    jet.hessians[std::size_t(k)](i, j) = col[k];
                    jet.hessians[std::size_t(k)](j, i) = col[k];
                }
            }
            for (int s = 0; s < f; ++s) {
                for (int k = 0; k < coords; ++k) {
                    const double v = fj.first[std::size_t(i)](k, 1 + s);
                    jet.hessians[std::size_t(k)](i, d + s) = v;
                    jet.hessians[std::size_t(k)](d + s, i) = v;
                }
            }
        }
        return jet;
    };

    Chart dual("dual(" + chart.name() + ")", d + f, chart.ambient_dim(), std::move(value_fn), std::move(jet_fn));
    dual.set_rank_floor(chart.rank_floor() == 0.0 ? 1e-6 : chart.rank_floor() * 100.0);
    return dual;
}

} // namespace dualrank
