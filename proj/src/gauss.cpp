#include "dualrank/gauss.hpp"

#include "dualrank/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dualrank {

double effective_tolerance(const Chart& chart, double tol)
{
    return std::max(tol, chart.rank_floor());
}

namespace {

void record(Audit* audit, std::string context, const RankDecision& d)
{
    if (audit != nullptr) {
        audit->push_back({std::move(context), d});
    }
}

} // namespace

TangentFrame tangent_frame(const Chart& chart, const Eigen::VectorXd& u, double tol, Audit* audit)
{
    tol = effective_tolerance(chart, tol);
    Jet2 jet = chart.jet(u);
    const double norm = jet.value.norm();
    if (!(norm >= 1e-8)) {
        throw NonGenericPoint("chart '" + chart.name() + "' vanishes at the sample point");
    }
    Eigen::Index lead = 0;
    jet.value.cwiseAbs().maxCoeff(&lead);
    const double scale = (jet.value[lead] > 0.0 ? 1.0 : -1.0) / norm;
    jet.value *= scale;
    jet.jacobian *= scale;
    for (auto& h : jet.hessians) {
        h *= scale;
    }

    const Eigen::Index coords = jet.value.size();
    const Eigen::Index d = jet.jacobian.cols();
    Eigen::MatrixXd span(coords, d + 1);
    span.col(0) = jet.value;
    span.rightCols(d) = jet.jacobian;
    const RankDecision dec = numerical_rank(span, tol);
    record(audit, chart.name() + ": tangent span", dec);
    if (dec.ambiguous) {
        throw NonGenericPoint("chart '" + chart.name() + "': ambiguous tangent-span rank");
    }

    TangentFrame frame;
    frame.n = dec.rank - 1;
    frame.point = jet.value;
    frame.param_point = u;

    const Eigen::MatrixXd projected
        = (Eigen::MatrixXd::Identity(coords, coords) - jet.value * jet.value.transpose()) * jet.jacobian;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(projected, Eigen::ComputeThinU | Eigen::ComputeFullV);
    frame.tangent_basis = svd.matrixU().leftCols(frame.n);
    frame.tangent_params = svd.matrixV().leftCols(frame.n);

    Eigen::MatrixXd tangent_span(coords, frame.n + 1);
    tangent_span.col(0) = frame.point;
    tangent_span.rightCols(frame.n) = frame.tangent_basis;
    frame.normal_basis = orthogonal_complement(tangent_span, frame.n + 1);
    frame.jet = std::move(jet);
    return frame;
}

GaussAnalysis second_fundamental(const Chart& chart, const TangentFrame& frame, double tol, Audit audit)
{
    tol = effective_tolerance(chart, tol);
    GaussAnalysis a;
    a.frame = frame;
    a.n = frame.n;
    const Eigen::Index n = frame.n;
    const Eigen::Index normals = frame.normal_basis.cols();
    const Eigen::MatrixXd& w = frame.tangent_params;

    Eigen::MatrixXd stacked(normals * n, n);
    for (Eigen::Index alpha = 0; alpha < normals; ++alpha) {
        const Eigen::MatrixXd full = frame.jet.contract_hessians(frame.normal_basis.col(alpha));
        Eigen::MatrixXd form = w.transpose() * full * w;
        form = (0.5 * (form + form.transpose())).eval();
        stacked.middleRows(alpha * n, n) = form;
        a.unrestricted.push_back(std::move(form));
    }

    const RankDecision dec = numerical_rank(stacked, tol);
    audit.push_back({chart.name() + ": second fundamental forms", dec});
    a.audit = std::move(audit);
    if (dec.ambiguous) {
        throw NonGenericPoint("chart '" + chart.name() + "': ambiguous Gauss rank");
    }
    a.r = dec.rank;
    a.l = int(n) - a.r;

    Eigen::MatrixXd right = Eigen::MatrixXd::Identity(n, n);
    if (stacked.size() > 0) {
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
        right = svd.matrixV();
    }
    const Eigen::MatrixXd transversal = right.leftCols(a.r);
    a.sff.transversal_basis = w * transversal;
    a.sff.leaf_basis = w * right.rightCols(a.l);
    for (const auto& form : a.unrestricted) {
        a.sff.B.push_back(transversal.transpose() * form * transversal);
    }
    return a;
}

GaussAnalysis analyze_at(const Chart& chart, const Eigen::VectorXd& u, double tol)
{
    Audit audit;
    const TangentFrame frame = tangent_frame(chart, u, tol, &audit);
    return second_fundamental(chart, frame, tol, std::move(audit));
}

Eigen::VectorXd sample_parameters(const Chart& chart, Rng& rng)
{
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Eigen::VectorXd u = uniform_vector(rng, chart.param_dim());
        if (chart.value(u).norm() >= 1e-8) {
            return u;
        }
    }
    throw NonGenericPoint("chart '" + chart.name() + "' vanishes on its sample domain");
}

GaussAnalysis analyze_generic(const Chart& chart, std::uint64_t seed, double tol, int retries)
{
    Rng rng(seed);
    std::string last;
    for (int attempt = 0; attempt <= retries; ++attempt) {
        const Eigen::VectorXd u = sample_parameters(chart, rng);
        try {
            return analyze_at(chart, u, tol);
        } catch (const NonGenericPoint& e) {
            last = e.what();
        }
    }
    throw NonGenericPoint("no generic point after " + std::to_string(retries) + " retries: " + last);
}

} // namespace dualrank
