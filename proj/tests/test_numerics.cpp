#include "dualrank/errors.hpp"
#include "dualrank/numerics.hpp"
#include "dualrank/poly.hpp"
#include "dualrank/random.hpp"
#include "dualrank/taylor.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace dualrank;

TEST_CASE("taylor jets of elementary functions match hand derivatives")
{
    const double x0 = 0.7, y0 = -0.4;
    const Taylor2 x = Taylor2::variable(x0, 2, 0);
    const Taylor2 y = Taylor2::variable(y0, 2, 1);

    // f = sin(x) * y / (1 + x^2)
    const Taylor2 f = sin(x) * y / (1.0 + x * x);
    const double q = 1 + x0 * x0;
    const double s = std::sin(x0), c = std::cos(x0);
    const double fx = y0 * (c * q - 2 * x0 * s) / (q * q);
    const double fy = s / q;
    const double fxy = (c * q - 2 * x0 * s) / (q * q);
    // d/dx of (c q - 2 x s) / q^2
    const double num = c * q - 2 * x0 * s;
    const double dnum = -s * q + 2 * x0 * c - 2 * s - 2 * x0 * c;
    const double fxx = y0 * (dnum * q * q - num * 2 * q * 2 * x0) / std::pow(q, 4);

    CHECK(f.value() == doctest::Approx(s * y0 / q).epsilon(1e-14));
    const Eigen::VectorXd g = f.gradient(2);
    CHECK(g[0] == doctest::Approx(fx).epsilon(1e-13));
    CHECK(g[1] == doctest::Approx(fy).epsilon(1e-13));
    const Eigen::MatrixXd h = f.hessian(2);
    CHECK(h(0, 0) == doctest::Approx(fxx).epsilon(1e-12));
    CHECK(h(0, 1) == doctest::Approx(fxy).epsilon(1e-13));
    CHECK(h(1, 1) == doctest::Approx(0.0));
    CHECK(h(0, 1) == h(1, 0));
}

TEST_CASE("taylor constants broadcast to zero derivatives")
{
    const Taylor2 c = 3.0;
    CHECK(c.gradient(3).isZero());
    CHECK(c.hessian(3).isZero());
    const Taylor2 r = sqrt(Taylor2::variable(4.0, 1, 0));
    CHECK(r.value() == doctest::Approx(2.0));
    CHECK(r.gradient(1)[0] == doctest::Approx(0.25));
    CHECK(r.hessian(1)(0, 0) == doctest::Approx(-1.0 / 32.0));
}

TEST_CASE("numerical rank: spec examples")
{
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 1e-12;
    const RankDecision r1 = numerical_rank(d, 1e-8);
    CHECK(r1.rank == 1);
    CHECK_FALSE(r1.ambiguous);
    CHECK(r1.gap_ratio == doctest::Approx(1e12));

    const RankDecision r0 = numerical_rank(Eigen::MatrixXd::Zero(3, 3), 1e-8);
    CHECK(r0.rank == 0);
    CHECK_FALSE(r0.ambiguous);
    CHECK(std::isinf(r0.gap_ratio));

    const RankDecision full = numerical_rank(Eigen::MatrixXd::Identity(3, 3));
    CHECK(full.rank == 3);
    CHECK(std::isinf(full.gap_ratio));
    CHECK_FALSE(full.ambiguous);
}

TEST_CASE("numerical rank flags small gaps as ambiguous")
{
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
    d.diagonal() << 1.0, 1e-7, 1e-9;
    const RankDecision r = numerical_rank(d, 1e-8);
    CHECK(r.rank == 2);
    CHECK(r.gap_ratio == doctest::Approx(100.0));
    CHECK(r.ambiguous);
    REQUIRE(r.singular_values.size() == 3);
    CHECK(std::is_sorted(r.singular_values.rbegin(), r.singular_values.rend()));
}

TEST_CASE("numerical rank rejects bad input")
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(numerical_rank(m), InputError);
    CHECK_THROWS_AS(numerical_rank(Eigen::MatrixXd::Identity(2, 2), 0.0), InputError);
    CHECK_THROWS_AS(numerical_rank(Eigen::MatrixXd::Identity(2, 2), 1.5), InputError);
}

TEST_CASE("numerical rank is invariant under permutations and orthogonal maps")
{
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd m = gaussian_matrix(rng, 6, 3) * gaussian_matrix(rng, 3, 5);
        const RankDecision base = numerical_rank(m);
        REQUIRE(base.rank == 3);

        Eigen::PermutationMatrix<Eigen::Dynamic> p(6), q(5);
        p.setIdentity();
        q.setIdentity();
        std::shuffle(p.indices().data(), p.indices().data() + 6, rng);
        std::shuffle(q.indices().data(), q.indices().data() + 5, rng);
        const Eigen::MatrixXd o1 = random_orthogonal(rng, 6), o2 = random_orthogonal(rng, 5);

        for (const Eigen::MatrixXd& t : {Eigen::MatrixXd(p * m * q), Eigen::MatrixXd(o1 * m * o2)}) {
            const RankDecision r = numerical_rank(t);
            CHECK(r.rank == base.rank);
            for (std::size_t k = 0; k < 3; ++k) {
                CHECK(std::abs(r.singular_values[k] - base.singular_values[k]) <= 1e-10 * base.singular_values[0]);
            }
        }
    }
}

TEST_CASE("nullspace basis: spec examples")
{
    Eigen::MatrixXd row(1, 3);
    row << 1, 0, 0;
    const Eigen::MatrixXd k = nullspace_basis(row);
    REQUIRE(k.cols() == 2);
    CHECK((k.transpose() * k - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-14);
    CHECK((row * k).norm() < 1e-14);

    Rng rng(3);
    CHECK(nullspace_basis(random_invertible(rng, 4)).cols() == 0);
}

TEST_CASE("nullspace of the twisted cubic tangent line is the pencil of tangent planes")
{
    // point and first derivative of (1, t, t^2, t^3) at t = 1
    Eigen::MatrixXd span(2, 4);
    span << 1, 1, 1, 1, 0, 1, 2, 3;
    const Eigen::MatrixXd k = nullspace_basis(span);
    REQUIRE(k.cols() == 2);
    // hand-derived planes through the tangent line: x0 - 2x1 + x2 = 0, x1 - 2x2 + x3 = 0
    Eigen::MatrixXd planes(4, 2);
    planes << 1, 0, -2, 1, 1, -2, 0, 1;
    CHECK((span * planes).norm() == 0.0);
    CHECK(max_principal_angle(k, planes) < 1e-12);
}

TEST_CASE("nullspace residual bound holds on random low-rank matrices")
{
    Rng rng(11);
    const double tol = 1e-8;
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd m = gaussian_matrix(rng, 5, 2) * gaussian_matrix(rng, 2, 6);
        const Eigen::MatrixXd k = nullspace_basis(m, tol);
        const double smax = numerical_rank(m, tol).singular_values[0];
        CHECK(k.cols() == 4);
        for (Eigen::Index j = 0; j < k.cols(); ++j) {
            CHECK((m * k.col(j)).norm() <= 10 * tol * smax);
        }
    }
}

TEST_CASE("column basis and orthogonal complement split the space")
{
    Rng rng(5);
    const Eigen::MatrixXd m = gaussian_matrix(rng, 6, 2);
    const Eigen::MatrixXd b = column_basis(m, 2);
    const Eigen::MatrixXd c = orthogonal_complement(m, 2);
    REQUIRE(c.cols() == 4);
    Eigen::MatrixXd all(6, 6);
    all << b, c;
    CHECK((all.transpose() * all - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-12);
    CHECK((c.transpose() * m).norm() < 1e-12);
}

TEST_CASE("principal angles of known subspaces")
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 1), b = Eigen::MatrixXd::Zero(3, 1);
    a(0, 0) = 1;
    b(0, 0) = std::cos(0.3);
    b(1, 0) = std::sin(0.3);
    const auto angles = principal_angles(a, b);
    REQUIRE(angles.size() == 1);
    CHECK(angles[0] == doctest::Approx(0.3));
    CHECK(max_principal_angle(a, b) == doctest::Approx(0.3));
    CHECK(max_principal_angle(a, 2.0 * a) < 1e-15);
    CHECK(max_principal_angle(a, Eigen::MatrixXd::Identity(3, 2)) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("chebyshev nodes are ascending and inside the interval")
{
    const auto nodes = chebyshev_nodes(5, -2.0, 2.0);
    REQUIRE(nodes.size() == 5);
    CHECK(std::is_sorted(nodes.begin(), nodes.end()));
    CHECK(nodes.front() > -2.0);
    CHECK(nodes.back() < 2.0);
    CHECK(nodes[2] == doctest::Approx(0.0));
    CHECK(nodes[4] == doctest::Approx(2.0 * std::cos(std::numbers::pi / 10)));
}

TEST_CASE("poly_from_samples: spec examples")
{
    const Poly1 p = poly_from_samples({0, 1}, {0, 1}, 1);
    REQUIRE(p.coefficients.size() == 2);
    CHECK(p.coefficients[0] == doctest::Approx(0.0));
    CHECK(p.coefficients[1] == doctest::Approx(1.0));

    const Poly1 q = poly_from_samples({-1, 0, 1}, {1, 0, 1}, 2);
    REQUIRE(q.coefficients.size() == 3);
    CHECK(q.coefficients[0] == doctest::Approx(0.0));
    CHECK(q.coefficients[1] == doctest::Approx(0.0));
    CHECK(q.coefficients[2] == doctest::Approx(1.0));
    CHECK(q.degree_bound == 2);
}

TEST_CASE("poly_from_samples rejects duplicate or mismatched abscissae")
{
    CHECK_THROWS_AS(poly_from_samples({0, 0}, {1, 2}, 1), InputError);
    CHECK_THROWS_AS(poly_from_samples({0, 1, 2}, {1, 2}, 1), InputError);
    CHECK_THROWS_AS(poly_from_samples({0, 1}, {1, 2}, 2), InputError);
}

TEST_CASE("poly_from_samples reproduces the samples on chebyshev abscissae")
{
    Rng rng(19);
    for (int degree = 1; degree <= 8; ++degree) {
        const auto xs = chebyshev_nodes(degree + 1, -1.0, 1.0);
        const Eigen::VectorXd ys = uniform_vector(rng, degree + 1);
        const Poly1 p = poly_from_samples(xs, {ys.data(), ys.data() + ys.size()}, degree);
        for (int k = 0; k <= degree; ++k) {
            CHECK(std::abs(p(xs[std::size_t(k)]) - ys[k]) <= 1e-9 * ys.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("real_roots: spec examples")
{
    Poly1 p{{0.0, 1.0}, 1};
    auto roots = real_roots(p, {-1.0, 1.0});
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].value == doctest::Approx(0.0));
    CHECK(roots[0].multiplicity == 1);

    Poly1 q{{-1.0, 0.0, 1.0}, 2};
    roots = real_roots(q, {-2.0, 2.0});
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].value == doctest::Approx(-1.0));
    CHECK(roots[1].value == doctest::Approx(1.0));
}

TEST_CASE("real_roots filters by interval, skips complex roots, clusters double roots")
{
    // (s - 0.5)^2 (s^2 + 1) (s - 3)
    const Eigen::VectorXd a = (Eigen::VectorXd(3) << 0.25, -1.0, 1.0).finished();
    const Eigen::VectorXd b = (Eigen::VectorXd(3) << 1.0, 0.0, 1.0).finished();
    const Eigen::VectorXd c = (Eigen::VectorXd(2) << -3.0, 1.0).finished();
    auto mul = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        Eigen::VectorXd z = Eigen::VectorXd::Zero(x.size() + y.size() - 1);
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            for (Eigen::Index j = 0; j < y.size(); ++j) {
                z[i + j] += x[i] * y[j];
            }
        }
        return z;
    };
    const Eigen::VectorXd coeffs = mul(mul(a, b), c);
    Poly1 p{{coeffs.data(), coeffs.data() + coeffs.size()}, 5};
    auto roots = real_roots(p, {-2.0, 2.0});
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(roots[0].multiplicity == 2);

    roots = real_roots(p, {-5.0, 5.0});
    REQUIRE(roots.size() == 2);
    CHECK(roots[1].value == doctest::Approx(3.0));
}

TEST_CASE("identically zero polynomial signals a degenerate leaf")
{
    Poly1 p{{1e-14, -2e-14, 0.0}, 2, 1.0};
    CHECK(p.is_identically_zero());
    CHECK_THROWS_AS(real_roots(p, {-1.0, 1.0}), DegenerateLeaf);
    Poly1 constant{{2.0, 0.0}, 1};
    CHECK(real_roots(constant, {-1.0, 1.0}).empty());
}

TEST_CASE("seeded generators are reproducible and well conditioned")
{
    CHECK(derive_seed(42, 0) != derive_seed(42, 1));
    CHECK(derive_seed(42, 3) == derive_seed(42, 3));
    Rng a(derive_seed(1, 2)), b(derive_seed(1, 2));
    CHECK(uniform_vector(a, 4) == uniform_vector(b, 4));

    Rng rng(9);
    const Eigen::MatrixXd q = random_orthogonal(rng, 5);
    CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(5, 5)).norm() < 1e-13);
    const Eigen::MatrixXd m = random_invertible(rng, 5);
    const auto sv = numerical_rank(m).singular_values;
    CHECK(sv.front() / sv.back() <= 4.0 + 1e-12);
    CHECK(unit_vector(rng, 3).norm() == doctest::Approx(1.0));
}
