#include "dualrank/catalogue.hpp"
#include "dualrank/errors.hpp"
#include "dualrank/gauss.hpp"
#include "dualrank/registry.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace dualrank;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v)
{
    Eigen::VectorXd out(Eigen::Index(v.size()));
    Eigen::Index i = 0;
    for (double x : v) {
        out[i++] = x;
    }
    return out;
}

bool proportional(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    return max_principal_angle(a, b) < 1e-12;
}

} // namespace

TEST_CASE("twisted cubic points")
{
    const Chart c = make_curve_chart(make_curve(CurveKind::TwistedCubic));
    CHECK(c.param_dim() == 1);
    CHECK(c.ambient_dim() == 3);
    CHECK(c.value(vec({0.0})) == vec({1, 0, 0, 0}));
    CHECK(proportional(c.value(vec({1.0})), vec({1, 1, 1, 1})));
}

TEST_CASE("rational normal curve has monomial coordinates")
{
    const Chart c = make_curve_chart(make_curve(CurveKind::RationalNormal, 4));
    CHECK(c.ambient_dim() == 4);
    CHECK((c.value(vec({2.0})) - vec({1, 2, 4, 8, 16})).norm() < 1e-12);
    const GaussAnalysis a = analyze_generic(c, 1);
    CHECK(a.n == 1);
    CHECK(a.r == 1);
    CHECK(a.l == 0);
}

TEST_CASE("torse metadata and measured invariants")
{
    const Curve cubic = make_curve(CurveKind::TwistedCubic);
    const RuledChart t = make_torse(cubic, 1);
    const auto& e = t.chart().expected();
    CHECK(*e.n == 2);
    CHECK(*e.l == 1);
    CHECK(*e.r == 1);
    CHECK(*e.n_star == 1);
    CHECK(*e.l_star == 0);
    CHECK(t.base_params() == 1);
    CHECK(t.leaf_params() == 1);

    const RuledChart t5 = make_torse(make_curve(CurveKind::RationalNormal, 5), 2);
    const GaussAnalysis a = analyze_generic(t5.chart(), 3);
    CHECK(a.n == 3);
    CHECK(a.r == 1);
    CHECK(*t5.chart().expected().n_star == 2);
    CHECK(*t5.chart().expected().l_star == 1);
}

TEST_CASE("torse with l = 0 is the curve")
{
    const Curve cubic = make_curve(CurveKind::TwistedCubic);
    const RuledChart t = make_torse(cubic, 0);
    const Chart c = make_curve_chart(cubic);
    CHECK(t.chart().param_dim() == 1);
    CHECK(t.leaf_params() == 0);
    for (double s : {-0.7, 0.1, 0.9}) {
        CHECK((t.chart().value(vec({s})) - c.value(vec({s}))).norm() < 1e-15);
    }
}

TEST_CASE("torse rejects orders beyond the ambient space")
{
    CHECK_THROWS(make_torse(make_curve(CurveKind::TwistedCubic), 3));
}

TEST_CASE("cones: spec examples")
{
    const Chart conic = make_curve_chart(make_curve(CurveKind::Conic));
    const RuledChart cone = make_cone(conic, 2); // conic in P^2 plus two vertex points: N = 4
    CHECK(cone.chart().ambient_dim() == 4);
    const GaussAnalysis a = analyze_generic(cone.chart(), 5);
    CHECK(a.n == 3);
    CHECK(a.r == 1);
    CHECK(a.l == 2);

    const RuledChart point_cone = make_cone(compose_linear(conic, Eigen::MatrixXd::Identity(5, 3), "conic"),
                                            Eigen::MatrixXd::Identity(5, 5).col(4));
    const GaussAnalysis b = analyze_generic(point_cone.chart(), 5);
    CHECK(b.n == 2);
    CHECK(b.l == 1);
    CHECK(b.r == 1);

    const RuledChart over_veronese = make_cone(make_veronese(), 1);
    CHECK(over_veronese.chart().ambient_dim() == 6);
    const GaussAnalysis v = analyze_generic(over_veronese.chart(), 5);
    CHECK(v.n == 3);
    CHECK(v.r == 2);
    CHECK(v.l == 1);
}

TEST_CASE("cone with an empty vertex is the base")
{
    const Chart ver = make_veronese();
    const RuledChart c = make_cone(ver, Eigen::MatrixXd(6, 0));
    CHECK(c.chart().param_dim() == ver.param_dim());
    const Eigen::VectorXd u = vec({0.3, -0.2});
    CHECK((c.chart().value(u) - ver.value(u)).norm() == 0.0);
}

TEST_CASE("cone vertex inside the director span is rejected")
{
    const Chart conic = make_curve_chart(make_curve(CurveKind::Conic));
    Eigen::MatrixXd vertex = Eigen::MatrixXd::Zero(4, 1);
    vertex(0, 0) = 1.0; // a point of the conic's plane
    CHECK_THROWS_AS(make_cone(conic, vertex), ConstructionError);
}

TEST_CASE("joins: spec examples")
{
    const RuledChart j = RuledChart(resolve_raw("join:conic,conic,N=5"));
    const auto& e = j.chart().expected();
    CHECK(*e.n == 3);
    CHECK(*e.l == 1);
    CHECK(*e.r == 2);
    CHECK(*e.n_star == 3);
    CHECK(*e.l_star == 1);
    const GaussAnalysis a = analyze_generic(j.chart(), 2);
    CHECK(a.n == 3);
    CHECK(a.r == 2);
    CHECK(a.l == 1);

    const Chart j4 = resolve_raw("join:twisted_cubic,conic,N=4");
    CHECK(*j4.expected().n_star == 2);

    const Curve conic = make_curve(CurveKind::Conic).padded(4);
    const Curve other = make_curve(CurveKind::Conic).mapped(Eigen::MatrixXd::Identity(5, 3) * 2.0, "conic2");
    CHECK_THROWS_AS(make_join(conic, other), ConstructionError);
}

TEST_CASE("segre points and dimension")
{
    const Chart s = make_segre(1, 1);
    CHECK(s.ambient_dim() == 3);
    const double a = 0.7, b = -1.3;
    CHECK((s.value(vec({a, b})) - vec({1, b, a, a * b})).norm() < 1e-15);

    const Chart s12 = make_segre(1, 2);
    CHECK(s12.ambient_dim() == 5);
    const GaussAnalysis g = analyze_generic(s12, 4);
    CHECK(g.n == 3);
    CHECK(g.l == 0);
    CHECK(*make_segre(2, 2).expected().delta_star == 0);
    CHECK(*s12.expected().delta_star == 1);
}

TEST_CASE("veronese and symmetroid points")
{
    const Chart v = make_veronese();
    CHECK(v.value(vec({0.0, 0.0})) == vec({1, 0, 0, 0, 0, 0}));

    // u = (1, 0, 0), v = (0, 1, 0): the parameters are (a, b, c, d) = (0, 0, 1, 0)
    const Chart s = make_symmetroid();
    const Eigen::VectorXd x = s.value(vec({0, 0, 1, 0}));
    CHECK(x == vec({1, 0, 0, 1, 0, 0}));
    Eigen::Matrix3d m;
    m << x[0], x[1], x[2], x[1], x[3], x[4], x[2], x[4], x[5];
    CHECK(m.determinant() == 0.0);

    // every chart point has rank <= 2
    Rng rng(8);
    for (int k = 0; k < 10; ++k) {
        const Eigen::VectorXd y = s.value(uniform_vector(rng, 4));
        Eigen::Matrix3d n;
        n << y[0], y[1], y[2], y[1], y[3], y[4], y[2], y[4], y[5];
        CHECK(std::abs(n.determinant()) < 1e-12 * std::pow(n.norm(), 3));
    }
    const GaussAnalysis a = analyze_generic(s, 6);
    CHECK(a.n == 4);
    CHECK(a.l == 2);
    CHECK(a.r == 2);
}

TEST_CASE("cone over segre")
{
    const RuledChart c = make_cone_over_segre(1, 2, 1);
    CHECK(c.chart().ambient_dim() == 6);
    CHECK(*c.chart().expected().n == 4);
    CHECK(*c.chart().expected().r == 3);
    const GaussAnalysis a = analyze_generic(c.chart(), 9);
    CHECK(a.n == 4);
    CHECK(a.r == 3);
    CHECK(a.l == 1);
}

TEST_CASE("registry resolves the grammar and rejects unknown specs")
{
    CHECK(resolve_raw("rnc6").ambient_dim() == 6);
    CHECK(resolve_raw("trig5").ambient_dim() == 5);
    CHECK(resolve_raw("segre:2,3").ambient_dim() == 11);
    CHECK(resolve_raw("cone:conic,l=2,N=5").param_dim() == 3);
    CHECK(resolve_raw("cone:segre(1.1)").ambient_dim() == 4);
    CHECK(resolve_raw("cone_segre:1,1").ambient_dim() == 4);
    for (const char* bad : {"", "segre", "segre:0,1", "torse:twisted_cubic,l=x", "torse:nope,l=1", "rnc1", "cone:conic,N=2",
                            "join:conic", "veronese:3", "twisted_cubic,l=1"}) {
        const std::string spec = bad;
        CAPTURE(spec);
        CHECK_THROWS_AS(resolve_raw(spec), InputError);
    }
}

TEST_CASE("resolved charts are seeded rotations of the raw ones")
{
    const Chart raw = resolve_raw("segre:1,2");
    const Chart a = resolve("segre:1,2", 42);
    const Chart b = resolve("segre:1,2", 42);
    const Chart c = resolve("segre:1,2", 43);
    const Eigen::VectorXd u = vec({0.1, 0.2, -0.3});
    CHECK(a.value(u) == b.value(u));
    CHECK((a.value(u) - c.value(u)).norm() > 1e-3);
    CHECK(a.value(u).norm() == doctest::Approx(raw.value(u).norm()).epsilon(1e-12));
    CHECK(a.name() == "segre:1,2");
    CHECK(catalogue_specs().size() == 10);
}

TEST_CASE("ruled charts are affine along leaves")
{
    Rng rng(21);
    for (const auto& spec : catalogue_specs()) {
        const Chart c = resolve(spec, 42);
        if (!c.ruling()) {
            continue;
        }
        CAPTURE(spec);
        const int base = c.ruling()->base_params;
        const int leaf = c.ruling()->leaf_params;
        for (int k = 0; k < 5; ++k) {
            const Jet2 jet = c.jet(uniform_vector(rng, c.param_dim()));
            for (const auto& h : jet.hessians) {
                CHECK(h.bottomRightCorner(leaf, leaf).norm() == 0.0);
                CHECK(testing::symmetry_defect(h) == 0.0);
            }
            CHECK(jet.jacobian.cols() == base + leaf);
        }
    }
}

TEST_CASE("catalogue jets agree with central differences")
{
    Rng rng(2024);
    std::vector<std::string> specs = catalogue_specs();
    for (const char* extra : {"segre:1,1", "segre:2,3", "cone:veronese", "trig6", "join:trig5,rnc5"}) {
        specs.emplace_back(extra);
    }
    for (const auto& spec : specs) {
        CAPTURE(spec);
        const Chart c = resolve(spec, 42);
        for (int k = 0; k < 20; ++k) {
            const auto e = testing::jet_errors(c, uniform_vector(rng, c.param_dim()));
            CHECK(e.first <= 1e-6);
            CHECK(e.second <= 1e-4);
        }
    }
}

TEST_CASE("measured invariants match the metadata at five generic points")
{
    for (const auto& spec : catalogue_specs()) {
        CAPTURE(spec);
        const Chart c = resolve(spec, 42);
        const auto& e = c.expected();
        REQUIRE(e.n.has_value());
        for (std::uint64_t k = 0; k < 5; ++k) {
            const GaussAnalysis a = analyze_generic(c, derive_seed(77, k));
            CHECK(a.n == *e.n);
            CHECK(a.r == *e.r);
            CHECK(a.l == *e.l);
        }
    }
}

TEST_CASE("rescaling the homogeneous output leaves the invariants unchanged")
{
    for (const auto& spec : catalogue_specs()) {
        CAPTURE(spec);
        const Chart c = resolve(spec, 42);
        const Chart s = testing::rescaled(c, 5);
        Rng rng(31);
        const Eigen::VectorXd u = sample_parameters(c, rng);
        CHECK(testing::jet_errors(s, u).first <= 1e-6);
        const GaussAnalysis a = analyze_at(c, u);
        const GaussAnalysis b = analyze_at(s, u);
        CHECK(a.n == b.n);
        CHECK(a.r == b.r);
        CHECK(a.l == b.l);
        CHECK(max_principal_angle(testing::tangent_span(a.frame), testing::tangent_span(b.frame)) < 1e-8);
    }
}
