#include "dualrank/catalogue.hpp"

#include "dualrank/errors.hpp"
#include "dualrank/numerics.hpp"
#include "dualrank/random.hpp"

#include <cmath>
#include <utility>

namespace dualrank {

Curve::Curve(std::string name, CurveBasis basis, Eigen::MatrixXd coefficients)
    : name_{std::move(name)}, basis_{basis}, coefficients_{std::move(coefficients)}
{
    if (basis_ == CurveBasis::Trigonometric && coefficients_.cols() % 2 == 0) {
        throw InputError("trigonometric curve needs 2H+1 basis columns");
    }
}

namespace {

template <class S>
S power(const S& t, int k)
{
    S out{1.0};
    for (int i = 0; i < k; ++i) {
        out = out * t;
    }
    return out;
}

} // namespace

template <class S>
std::vector<S> Curve::basis_derivative(int order, const S& t) const
{
    using std::cos;
    using std::sin;
    const auto count = int(coefficients_.cols());
    std::vector<S> phi(std::size_t(count), S{0.0});
    if (basis_ == CurveBasis::Monomial) {
        for (int j = order; j < count; ++j) {
            double falling = 1.0;
            for (int i = 0; i < order; ++i) {
                falling *= double(j - i);
            }
            phi[std::size_t(j)] = falling * power(t, j - order);
        }
        return phi;
    }
    if (order == 0) {
        phi[0] = S{1.0};
    }
    for (int h = 1; 2 * h < count; ++h) {
        const S c = cos(double(h) * t);
        const S s = sin(double(h) * t);
        const double scale = std::pow(double(h), order);
        // d^k cos = cos, -sin, -cos, sin ; d^k sin = sin, cos, -sin, -cos
        switch (order % 4) {
        case 0:
            phi[std::size_t(2 * h - 1)] = scale * c;
            phi[std::size_t(2 * h)] = scale * s;
            break;
        case 1:
            phi[std::size_t(2 * h - 1)] = -scale * s;
            phi[std::size_t(2 * h)] = scale * c;
            break;
        case 2:
            phi[std::size_t(2 * h - 1)] = -scale * c;
            phi[std::size_t(2 * h)] = -scale * s;
            break;
        default:
            phi[std::size_t(2 * h - 1)] = scale * s;
            phi[std::size_t(2 * h)] = -scale * c;
            break;
        }
    }
    return phi;
}

template <class S>
std::vector<S> Curve::derivative(int order, const S& t) const
{
    const std::vector<S> phi = basis_derivative(order, t);
    std::vector<S> out(std::size_t(coefficients_.rows()), S{0.0});
    for (Eigen::Index i = 0; i < coefficients_.rows(); ++i) {
        S acc{0.0};
        for (Eigen::Index j = 0; j < coefficients_.cols(); ++j) {
            if (coefficients_(i, j) != 0.0) {
                acc += coefficients_(i, j) * phi[std::size_t(j)];
            }
        }
        out[std::size_t(i)] = acc;
    }
    return out;
}

template std::vector<double> Curve::derivative<double>(int, const double&) const;
template std::vector<Taylor2> Curve::derivative<Taylor2>(int, const Taylor2&) const;

Curve Curve::mapped(const Eigen::MatrixXd& map, std::string name) const
{
    if (map.cols() != coefficients_.rows()) {
        throw InputError("curve map has the wrong width");
    }
    return Curve(std::move(name), basis_, map * coefficients_);
}

Curve Curve::padded(int ambient_dim) const
{
    if (ambient_dim < this->ambient_dim()) {
        throw InputError("cannot pad a curve into a smaller space");
    }
    Eigen::MatrixXd map = Eigen::MatrixXd::Zero(ambient_dim + 1, coefficients_.rows());
    map.topRows(coefficients_.rows()).setIdentity();
    return mapped(map, name_);
}

Curve make_curve(CurveKind kind, int ambient_dim, std::uint64_t seed)
{
    switch (kind) {
    case CurveKind::TwistedCubic:
        return Curve("twisted_cubic", CurveBasis::Monomial, Eigen::MatrixXd::Identity(4, 4));
    case CurveKind::RationalNormal:
        if (ambient_dim < 2) {
            throw InputError("rational normal curve needs N >= 2");
        }
        return Curve("rnc" + std::to_string(ambient_dim), CurveBasis::Monomial,
                     Eigen::MatrixXd::Identity(ambient_dim + 1, ambient_dim + 1));
    case CurveKind::Conic:
        return Curve("conic", CurveBasis::Monomial, Eigen::MatrixXd::Identity(3, 3));
    case CurveKind::GenericTrig: {
        if (ambient_dim < 2) {
            throw InputError("trigonometric curve needs N >= 2");
        }
        Rng rng(derive_seed(seed, 0x7419));
        const int harmonics = (ambient_dim + 1) / 2;
        return Curve("trig" + std::to_string(ambient_dim), CurveBasis::Trigonometric,
                     gaussian_matrix(rng, ambient_dim + 1, 2 * harmonics + 1));
    }
    }
    throw InputError("unsupported curve kind");
}

Chart make_curve_chart(const Curve& curve)
{
    auto fn = [curve](const auto& u) { return curve.derivative(0, u[0]); };
    Chart chart = chart_from_formula(curve.name(), 1, curve.ambient_dim(), fn);
    const int N = curve.ambient_dim();
    ExpectedInvariants e;
    e.n = 1;
    e.r = 1;
    e.l = 0;
    if (N >= 2) {
        e.n_star = N - 1;
        e.l_star = N - 2;
        e.r_star = 1;
        e.delta_star = 0;
    }
    e.source = "smooth curve: n = r = 1, n* = N - 1";
    chart.set_expected(e);
    return chart;
}

namespace {

// rank of the span of the osculating vectors gamma, ..., gamma^(order) at t
int osculating_rank(const Curve& curve, int order, double t)
{
    Eigen::MatrixXd span(curve.ambient_dim() + 1, order + 1);
    for (int k = 0; k <= order; ++k) {
        const std::vector<double> d = curve.derivative(k, t);
        span.col(k) = Eigen::Map<const Eigen::VectorXd>(d.data(), Eigen::Index(d.size()));
    }
    return numerical_rank(span).rank;
}

int sample_span_rank(const Chart& chart, int samples, std::uint64_t seed)
{
    Rng rng(seed);
    Eigen::MatrixXd stack(chart.ambient_dim() + 1, samples);
    for (int k = 0; k < samples; ++k) {
        stack.col(k) = chart.value(uniform_vector(rng, chart.param_dim()));
    }
    return numerical_rank(stack).rank;
}

} // namespace

RuledChart make_torse(const Curve& curve, int l)
{
    const int N = curve.ambient_dim();
    if (l < 0 || l + 1 > N) {
        throw ConstructionError("torse: need 0 <= l and l + 1 <= N");
    }
    if (l == 0) {
        Chart c = make_curve_chart(curve);
        c.set_ruling(Ruling{1, 0});
        return RuledChart(std::move(c));
    }
    for (double t : {-0.83, -0.31, 0.27, 0.71}) {
        if (osculating_rank(curve, l + 1, t) != l + 2) {
            throw ConstructionError("torse: osculating frame of order " + std::to_string(l + 1)
                                    + " is degenerate on the curve");
        }
    }
    auto fn = [curve, l](const auto& u) {
        auto x = curve.derivative(0, u[0]);
        for (int a = 1; a <= l; ++a) {
            const auto d = curve.derivative(a, u[0]);
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] += u[std::size_t(a)] * d[i];
            }
        }
        return x;
    };
    Chart chart = chart_from_formula("torse(" + curve.name() + ",l=" + std::to_string(l) + ")", l + 1, N, fn);
    ExpectedInvariants e;
    e.n = l + 1;
    e.r = 1;
    e.l = l;
    e.n_star = N - l - 1;
    e.l_star = N - l - 2;
    e.r_star = 1;
    e.delta_star = 0;
    e.source = "torse: n = l + 1, r = 1, n* = N - l - 1, l* = N - l - 2";
    chart.set_expected(e);
    chart.set_ruling(Ruling{1, l});
    return RuledChart(std::move(chart));
}

RuledChart make_cone(const Chart& base, const Eigen::MatrixXd& vertex)
{
    const int N = int(vertex.rows()) - 1;
    const int M = base.ambient_dim();
    const int k = int(vertex.cols());
    const int d = base.param_dim();
    if (N < M) {
        throw ConstructionError("cone: vertex lives in a smaller space than the base");
    }
    Eigen::MatrixXd pad = Eigen::MatrixXd::Zero(N + 1, M + 1);
    pad.topRows(M + 1).setIdentity();
    if (k == 0 && N == M) {
        Chart c = base;
        c.set_ruling(Ruling{d, 0});
        return RuledChart(std::move(c));
    }

    const int base_rank = sample_span_rank(base, kConstructionSamples, 0xC0DE);
    {
        Rng rng(0xC0DE);
        Eigen::MatrixXd stack(N + 1, kConstructionSamples + k);
        for (int j = 0; j < kConstructionSamples; ++j) {
            stack.col(j) = pad * base.value(uniform_vector(rng, d));
        }
        stack.rightCols(k) = vertex;
        if (numerical_rank(stack).rank != base_rank + k) {
            throw ConstructionError("cone: vertex meets the span of the director variety");
        }
    }

    auto value_fn = [base, pad, vertex, d](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        return pad * base.value(u.head(d)) + vertex * u.tail(vertex.cols());
    };
    auto jet_fn = [base, pad, vertex, d, k](const Eigen::VectorXd& u, DerivativeOrder order) {
        const Jet2 y = base.jet(u.head(d), order);
        Jet2 x;
        x.value = pad * y.value + vertex * u.tail(k);
        x.jacobian.resize(pad.rows(), d + k);
        x.jacobian.leftCols(d) = pad * y.jacobian;
        x.jacobian.rightCols(k) = vertex;
        if (!y.hessians.empty()) {
            for (Eigen::Index i = 0; i < pad.rows(); ++i) {
                Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d + k, d + k);
                if (i < Eigen::Index(y.hessians.size())) {
                    h.topLeftCorner(d, d) = y.hessians[std::size_t(i)];
                }
                x.hessians.push_back(std::move(h));
            }
        }
        return x;
    };
    Chart chart("cone(" + base.name() + ",l=" + std::to_string(k) + ")", d + k, N, value_fn, jet_fn);

    const ExpectedInvariants& b = base.expected();
    ExpectedInvariants e;
    if (b.n && b.r && b.l) {
        const int l = *b.l + k;
        const int n = *b.n + k;
        e.n = n;
        e.r = b.r;
        e.l = l;
        if (b.delta_star && *b.delta_star == 0 && *b.l == 0) {
            e.n_star = N - l - 1;
            e.l_star = N - n - 1;
            e.r_star = b.r;
            e.delta_star = 0;
        }
    }
    e.source = "cone: n = l + r, n* = N - l - 1, l* = N - n - 1";
    chart.set_expected(e);
    chart.set_ruling(Ruling{d, k});
    return RuledChart(std::move(chart));
}

RuledChart make_cone(const Chart& base, int vertex_points)
{
    const int M = base.ambient_dim();
    Eigen::MatrixXd vertex = Eigen::MatrixXd::Zero(M + vertex_points + 1, vertex_points);
    vertex.bottomRows(vertex_points).setIdentity();
    return make_cone(base, vertex);
}

RuledChart make_join(const Curve& first, const Curve& second)
{
    const int N = first.ambient_dim();
    if (second.ambient_dim() != N) {
        throw ConstructionError("join: curves must live in the same P^N");
    }
    if (N < 4) {
        throw ConstructionError("join: need N >= 4");
    }
    {
        Eigen::MatrixXd stack(N + 1, 2 * kConstructionSamples);
        for (int j = 0; j < kConstructionSamples; ++j) {
            const double t = -1.0 + 2.0 * (j + 0.5) / kConstructionSamples;
            const std::vector<double> a = first.derivative(0, t);
            const std::vector<double> b = second.derivative(0, t);
            stack.col(2 * j) = Eigen::Map<const Eigen::VectorXd>(a.data(), N + 1);
            stack.col(2 * j + 1) = Eigen::Map<const Eigen::VectorXd>(b.data(), N + 1);
        }
        if (numerical_rank(stack).rank <= 4) {
            throw ConstructionError("join: the curves lie in a common 3-space");
        }
    }
    auto fn = [first, second](const auto& u) {
        auto x = first.derivative(0, u[0]);
        const auto y = second.derivative(0, u[1]);
        const auto& s = u[2];
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = (1.0 - s) * x[i] + s * y[i];
        }
        return x;
    };
    Chart chart = chart_from_formula("join(" + first.name() + "," + second.name() + ")", 3, N, fn);
    ExpectedInvariants e;
    e.n = 3;
    e.r = 2;
    e.l = 1;
    e.n_star = N - 2;
    e.l_star = N - 4;
    e.r_star = 2;
    e.delta_star = 0;
    e.source = "join: l = 1, r = 2, n* = N - 2, l* = N - 4";
    chart.set_expected(e);
    chart.set_ruling(Ruling{2, 1});
    return RuledChart(std::move(chart));
}

Chart make_segre(int m, int n)
{
    if (m < 1 || n < 1) {
        throw InputError("segre: need m, n >= 1");
    }
    const int N = m * n + m + n;
    auto fn = [m, n](const auto& u) {
        using S = std::decay_t<decltype(u[0])>;
        std::vector<S> out;
        out.reserve(std::size_t((m + 1) * (n + 1)));
        for (int i = 0; i <= m; ++i) {
            for (int k = 0; k <= n; ++k) {
                const S xi = i == 0 ? S{1.0} : u[std::size_t(i - 1)];
                const S yk = k == 0 ? S{1.0} : u[std::size_t(m + k - 1)];
                out.push_back(xi * yk);
            }
        }
        return out;
    };
    Chart chart = chart_from_formula("segre(" + std::to_string(m) + "," + std::to_string(n) + ")", m + n, N, fn);
    const int delta = std::abs(n - m);
    ExpectedInvariants e;
    e.n = m + n;
    e.r = m + n;
    e.l = 0;
    e.n_star = N - 1 - delta;
    e.delta_star = delta;
    if (delta == 0) {
        e.l_star = N - m - n - 1;
        e.r_star = m + n;
    }
    e.source = "segre: dim = m + n, delta* = |n - m|";
    chart.set_expected(e);
    return chart;
}

Chart make_veronese()
{
    auto fn = [](const auto& u) {
        using S = std::decay_t<decltype(u[0])>;
        const std::vector<S> w{S{1.0}, u[0], u[1]};
        std::vector<S> out;
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                out.push_back(w[std::size_t(i)] * w[std::size_t(j)]);
            }
        }
        return out;
    };
    Chart chart = chart_from_formula("veronese", 2, 5, fn);
    ExpectedInvariants e;
    e.n = 2;
    e.r = 2;
    e.l = 0;
    e.n_star = 4;
    e.l_star = 2;
    e.r_star = 2;
    e.delta_star = 0;
    e.source = "veronese surface: dual is the cubic symmetroid hypersurface";
    chart.set_expected(e);
    return chart;
}

Chart make_symmetroid()
{
    auto fn = [](const auto& p) {
        using S = std::decay_t<decltype(p[0])>;
        const std::vector<S> u{S{1.0}, p[0], p[1]};
        const std::vector<S> v{S{0.0}, p[2], p[3]};
        std::vector<S> out;
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                out.push_back(u[std::size_t(i)] * u[std::size_t(j)] + v[std::size_t(i)] * v[std::size_t(j)]);
            }
        }
        return out;
    };
    Chart chart = chart_from_formula("symmetroid", 4, 5, fn);
    ExpectedInvariants e;
    e.n = 4;
    e.r = 2;
    e.l = 2;
    e.n_star = 2;
    e.l_star = 0;
    e.r_star = 2;
    e.delta_star = 0;
    e.source = "cubic symmetroid: n = 4, l = 2, r = 2; dual is the Veronese surface";
    chart.set_expected(e);
    return chart;
}

RuledChart make_cone_over_segre(int m, int n, int l)
{
    if (l < 1) {
        throw InputError("cone over Segre: need l >= 1");
    }
    RuledChart cone = make_cone(make_segre(m, n), l);
    Chart chart = cone.chart();
    chart.set_name("cone_segre(" + std::to_string(m) + "," + std::to_string(n) + ",l=" + std::to_string(l) + ")");
    const int N = m * n + m + n + l;
    ExpectedInvariants e;
    e.n = m + n + l;
    e.r = m + n;
    e.l = l;
    if (m == n) {
        e.n_star = N - l - 1;
        e.l_star = N - (m + n + l) - 1;
        e.r_star = m + n;
        e.delta_star = 0;
    }
    e.source = "cone over Segre: r = m + n; dually degenerate iff m != n";
    chart.set_expected(e);
    return RuledChart(std::move(chart));
}

} // namespace dualrank
