#include "dualrank/poly.hpp"

#include "dualrank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace dualrank {

double Poly1::operator()(double x) const
{
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double Poly1::max_abs_coefficient() const
{
    double m = 0.0;
    for (double c : coefficients) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

bool Poly1::is_identically_zero() const
{
    return max_abs_coefficient() < kZeroPolyFloor * scale;
}

Poly1 poly_from_samples(const std::vector<double>& xs, const std::vector<double>& ys, int degree_bound)
{
    if (degree_bound < 0 || xs.size() != std::size_t(degree_bound + 1) || ys.size() != xs.size()) {
        throw InputError("poly_from_samples: need exactly degree_bound + 1 samples");
    }
    double span = 0.0;
    for (double x : xs) {
        if (!std::isfinite(x)) {
            throw InputError("poly_from_samples: non-finite abscissa");
        }
        span = std::max(span, std::abs(x));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (std::abs(xs[i] - xs[j]) <= 1e-14 * std::max(1.0, span)) {
                throw InputError("poly_from_samples: duplicate abscissae");
            }
        }
    }
    const auto m = Eigen::Index(xs.size());
    Eigen::MatrixXd vander(m, m);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        double p = 1.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            vander(i, j) = p;
            p *= xs[std::size_t(i)];
        }
        rhs[i] = ys[std::size_t(i)];
    }
    const Eigen::VectorXd c = vander.fullPivLu().solve(rhs);

    Poly1 poly;
    poly.degree_bound = degree_bound;
    poly.coefficients.assign(c.data(), c.data() + c.size());
    poly.scale = std::max(1e-300, rhs.cwiseAbs().maxCoeff());
    return poly;
}

std::vector<Root> real_roots(const Poly1& p, std::pair<double, double> interval)
{
    if (p.is_identically_zero()) {
        throw DegenerateLeaf("polynomial vanishes identically: every point of the line is singular");
    }
    std::vector<double> c = p.coefficients;
    const double cmax = p.max_abs_coefficient();
    while (!c.empty() && std::abs(c.back()) <= 1e-12 * cmax) {
        c.pop_back();
    }
    const auto degree = Eigen::Index(c.size()) - 1;
    if (degree < 1) {
        return {};
    }

    // companion matrix of the monic polynomial
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) {
        comp(i, i - 1) = 1.0;
    }
    for (Eigen::Index i = 0; i < degree; ++i) {
        comp(i, degree - 1) = -c[std::size_t(i)] / c.back();
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> eig(es.eigenvalues().data(), es.eigenvalues().data() + degree);

    // group eigenvalues that sit within the cluster tolerance of each other
    std::vector<int> group(eig.size());
    std::iota(group.begin(), group.end(), 0);
    auto find = [&](int i) {
        while (group[std::size_t(i)] != i) {
            i = group[std::size_t(i)];
        }
        return i;
    };
    for (std::size_t i = 0; i < eig.size(); ++i) {
        for (std::size_t j = i + 1; j < eig.size(); ++j) {
            if (std::abs(eig[i] - eig[j]) <= kRootClusterTol * (1.0 + std::abs(eig[i]))) {
                group[std::size_t(find(int(j)))] = find(int(i));
            }
        }
    }

    std::vector<Root> roots;
    for (std::size_t i = 0; i < eig.size(); ++i) {
        if (find(int(i)) != int(i)) {
            continue;
        }
        std::complex<double> sum{0.0, 0.0};
        int count = 0;
        for (std::size_t j = 0; j < eig.size(); ++j) {
            if (find(int(j)) == int(i)) {
                sum += eig[j];
                ++count;
            }
        }
        const std::complex<double> centre = sum / double(count);
        if (std::abs(centre.imag()) > 1e-8 * (1.0 + std::abs(centre.real()))) {
            continue;
        }
        const double x = centre.real();
        const double slack = 1e-12 * (1.0 + std::abs(x));
        if (x < interval.first - slack || x > interval.second + slack) {
            continue;
        }
        roots.push_back({x, count});
    }
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.value < b.value; });
    return roots;
}

} // namespace dualrank
