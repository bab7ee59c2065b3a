#include "dualrank/chart.hpp"

#include "dualrank/errors.hpp"

namespace dualrank {

Eigen::MatrixXd Jet2::contract_hessians(const Eigen::VectorXd& weights) const
{
    const Eigen::Index d = param_dim();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t k = 0; k < hessians.size(); ++k) {
        out += weights[Eigen::Index(k)] * hessians[k];
    }
    return out;
}

Chart::Chart(std::string name, int param_dim, int ambient_dim, ValueFn value_fn, JetFn jet_fn)
    : name_{std::move(name)}
    , param_dim_{param_dim}
    , ambient_dim_{ambient_dim}
    , value_fn_{std::move(value_fn)}
    , jet_fn_{std::move(jet_fn)}
{
    if (param_dim < 0 || ambient_dim < 1) {
        throw InputError("chart '" + name_ + "': invalid dimensions");
    }
}

Eigen::VectorXd Chart::value(const Eigen::VectorXd& u) const
{
    if (u.size() != param_dim_) {
        throw InputError("chart '" + name_ + "': parameter vector has wrong length");
    }
    return value_fn_(u);
}

Jet2 Chart::jet(const Eigen::VectorXd& u, DerivativeOrder order) const
{
    if (u.size() != param_dim_) {
        throw InputError("chart '" + name_ + "': parameter vector has wrong length");
    }
    return jet_fn_(u, order);
}

Chart& Chart::set_name(std::string name)
{
    name_ = std::move(name);
    return *this;
}

Chart& Chart::set_expected(ExpectedInvariants expected)
{
    expected_ = std::move(expected);
    return *this;
}

Chart& Chart::set_ruling(std::optional<Ruling> ruling)
{
    if (ruling && ruling->base_params + ruling->leaf_params != param_dim_) {
        throw InputError("chart '" + name_ + "': ruling does not split the parameters");
    }
    ruling_ = ruling;
    return *this;
}

Chart& Chart::set_rank_floor(double floor)
{
    rank_floor_ = floor;
    return *this;
}

RuledChart::RuledChart(Chart chart) : chart_{std::move(chart)}
{
    if (!chart_.ruling()) {
        throw InputError("chart '" + chart_.name() + "' has no leaf split");
    }
}

Jet2 assemble_jet(const std::vector<Taylor2>& coords, Eigen::Index dim)
{
    Jet2 jet;
    const auto m = Eigen::Index(coords.size());
    jet.value.resize(m);
    jet.jacobian.resize(m, dim);
    jet.hessians.reserve(coords.size());
    for (Eigen::Index i = 0; i < m; ++i) {
        const Taylor2& c = coords[std::size_t(i)];
        jet.value[i] = c.value();
        jet.jacobian.row(i) = c.gradient(dim).transpose();
        jet.hessians.push_back(c.hessian(dim));
    }
    return jet;
}

Chart compose_linear(const Chart& chart, const Eigen::MatrixXd& map, std::string name)
{
    if (map.cols() != chart.ambient_dim() + 1) {
        throw InputError("compose_linear: map width does not match the chart's coordinates");
    }
    auto value_fn = [chart, map](const Eigen::VectorXd& u) -> Eigen::VectorXd { return map * chart.value(u); };
    auto jet_fn = [chart, map](const Eigen::VectorXd& u, DerivativeOrder order) {
        Jet2 in = chart.jet(u, order);
        Jet2 out;
        out.value = map * in.value;
        out.jacobian = map * in.jacobian;
        if (!in.hessians.empty()) {
            out.hessians.reserve(std::size_t(map.rows()));
            for (Eigen::Index i = 0; i < map.rows(); ++i) {
                out.hessians.push_back(in.contract_hessians(map.row(i).transpose()));
            }
        }
        return out;
    };
    Chart out(std::move(name), chart.param_dim(), int(map.rows()) - 1, value_fn, jet_fn);
    out.set_expected(chart.expected());
    out.set_ruling(chart.ruling());
    out.set_rank_floor(chart.rank_floor());
    return out;
}

} // namespace dualrank
