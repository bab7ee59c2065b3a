#pragma once

// Constructors for the example varieties: curves, torses, cones, joins,
// Segre and Veronese embeddings, the cubic symmetroid.

#include "dualrank/chart.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace dualrank {

enum class CurveBasis { Monomial, Trigonometric };

/// gamma(t) = coefficients * phi(t), with phi the monomials 1, t, t^2, ...
/// or the trigonometric basis 1, cos t, sin t, cos 2t, sin 2t, ...
/// Derivatives of every order are available in closed form, which torses need.
class Curve {
public:
    Curve(std::string name, CurveBasis basis, Eigen::MatrixXd coefficients);

    const std::string& name() const { return name_; }
    int ambient_dim() const { return int(coefficients_.rows()) - 1; }
    const Eigen::MatrixXd& coefficients() const { return coefficients_; }
    CurveBasis basis() const { return basis_; }

    /// gamma^(order)(t), one entry per homogeneous coordinate.
    template <class S>
    std::vector<S> derivative(int order, const S& t) const;

    /// Same curve pushed through a linear map of homogeneous coordinates.
    Curve mapped(const Eigen::MatrixXd& map, std::string name) const;

    /// Zero-padded into P^N (first coordinates).
    Curve padded(int ambient_dim) const;

private:
    template <class S>
    std::vector<S> basis_derivative(int order, const S& t) const;

    std::string name_;
    CurveBasis basis_;
    Eigen::MatrixXd coefficients_;
};

enum class CurveKind { TwistedCubic, RationalNormal, Conic, GenericTrig };

/// twisted cubic (P^3), rational normal curve (P^N), plane conic (P^2),
/// or a seeded trigonometric curve spanning P^N.
Curve make_curve(CurveKind kind, int ambient_dim = 0, std::uint64_t seed = 0);

Chart make_curve_chart(const Curve& curve);

/// Osculating l-planes of a curve: x(t, s) = gamma(t) + sum_a s^a gamma^(a)(t).
RuledChart make_torse(const Curve& curve, int l);

/// Cone with vertex span(vertex columns) over `base`, whose coordinates are
/// zero-padded into the first entries of P^N (N + 1 = vertex.rows()).
/// x(u, s) = y(u) + sum_a s^a v_a.
RuledChart make_cone(const Chart& base, const Eigen::MatrixXd& vertex);

/// Same, with the vertex spanned by `vertex_points` new coordinate points appended to P^M.
RuledChart make_cone(const Chart& base, int vertex_points);

/// Lines meeting two curves: x(t1, t2, s) = (1 - s) gamma1(t1) + s gamma2(t2).
RuledChart make_join(const Curve& first, const Curve& second);

/// P^m x P^n -> P^{mn+m+n} in affine parameters, z^{ik} = x^i y^k.
Chart make_segre(int m, int n);

/// P^2 -> P^5 by quadratic monomials (u0^2, u0u1, u0u2, u1^2, u1u2, u2^2).
Chart make_veronese();

/// Rank <= 2 symmetric 3x3 matrices u u^T + v v^T with u = (1, a, b), v = (0, c, d).
Chart make_symmetroid();

/// Cone over Segre(m, n) with a P^{l-1} vertex in P^{mn+m+n+l}.
RuledChart make_cone_over_segre(int m, int n, int l);

/// Number of parameter samples used when checking spans of constructions.
inline constexpr int kConstructionSamples = 24;

} // namespace dualrank
