#pragma once

#include "dualrank/taylor.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dualrank {

/// Value, first and second partials of a homogeneous chart at one parameter point.
struct Jet2 {
    Eigen::VectorXd value;                // N+1 homogeneous coordinates
    Eigen::MatrixXd jacobian;             // (N+1) x d
    std::vector<Eigen::MatrixXd> hessians; // one symmetric d x d block per coordinate

    Eigen::Index param_dim() const { return jacobian.cols(); }
    Eigen::Index coord_count() const { return value.size(); }

    /// sum_k w_k * H_k
    Eigen::MatrixXd contract_hessians(const Eigen::VectorXd& weights) const;
};

enum class DerivativeOrder { First, Second };

/// Closed-form or derived expected invariants attached to a catalogue chart.
/// `source` says where the numbers come from (a formula, not a measurement).
struct ExpectedInvariants {
    std::optional<int> n, r, l, n_star, l_star, r_star, delta_star;
    std::string source;
};

/// Explicit leaf structure: the last `leaf_params` parameters enter the
/// evaluator affine-linearly; the first `base_params` move between leaves.
struct Ruling {
    int base_params{0};
    int leaf_params{0};
};

/// A parametrized map R^d -> P^N; the only representation of a variety.
class Chart {
public:
    using ValueFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using JetFn = std::function<Jet2(const Eigen::VectorXd&, DerivativeOrder)>;

    Chart(std::string name, int param_dim, int ambient_dim, ValueFn value_fn, JetFn jet_fn);

    const std::string& name() const { return name_; }
    int param_dim() const { return param_dim_; }
    int ambient_dim() const { return ambient_dim_; }

    Eigen::VectorXd value(const Eigen::VectorXd& u) const;
    Jet2 jet(const Eigen::VectorXd& u, DerivativeOrder order = DerivativeOrder::Second) const;

    const ExpectedInvariants& expected() const { return expected_; }
    const std::optional<Ruling>& ruling() const { return ruling_; }

    /// Relative accuracy of the jets. Zero for exact jet arithmetic; charts
    /// whose jets come from divided differences raise the rank tolerance to this.
    double rank_floor() const { return rank_floor_; }

    Chart& set_name(std::string name);
    Chart& set_expected(ExpectedInvariants expected);
    Chart& set_ruling(std::optional<Ruling> ruling);
    Chart& set_rank_floor(double floor);

private:
    std::string name_;
    int param_dim_;
    int ambient_dim_;
    ValueFn value_fn_;
    JetFn jet_fn_;
    ExpectedInvariants expected_;
    std::optional<Ruling> ruling_;
    double rank_floor_{0.0};
};

/// A chart with an explicit leaf split. Construction checks that one is present.
class RuledChart {
public:
    explicit RuledChart(Chart chart);

    const Chart& chart() const { return chart_; }
    int base_params() const { return chart_.ruling()->base_params; }
    int leaf_params() const { return chart_.ruling()->leaf_params; }

private:
    Chart chart_;
};

/// Collects per-coordinate jets into a Jet2 of parameter dimension `dim`.
Jet2 assemble_jet(const std::vector<Taylor2>& coords, Eigen::Index dim);

/// Builds a chart from a generic callable `fn(const std::vector<S>&) -> std::vector<S>`
/// instantiated for S = double (values) and S = Taylor2 (jets).
template <class Fn>
Chart chart_from_formula(std::string name, int param_dim, int ambient_dim, Fn fn)
{
    auto value_fn = [fn](const Eigen::VectorXd& u) {
        std::vector<double> args(u.data(), u.data() + u.size());
        const std::vector<double> out = fn(args);
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(out.data(), Eigen::Index(out.size())));
    };
    auto jet_fn = [fn](const Eigen::VectorXd& u, DerivativeOrder) {
        std::vector<Taylor2> args;
        args.reserve(std::size_t(u.size()));
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            args.push_back(Taylor2::variable(u[i], u.size(), i));
        }
        return assemble_jet(fn(args), u.size());
    };
    return Chart(std::move(name), param_dim, ambient_dim, std::move(value_fn), std::move(jet_fn));
}

/// The chart composed with a linear map of homogeneous coordinates (rows = new N+1).
Chart compose_linear(const Chart& chart, const Eigen::MatrixXd& map, std::string name);

} // namespace dualrank
