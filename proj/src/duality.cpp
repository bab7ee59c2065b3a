#include "dualrank/duality.hpp"

#include "dualrank/errors.hpp"
#include "dualrank/random.hpp"

#include <algorithm>

namespace dualrank {

namespace {

int median(std::vector<int> values)
{
    if (values.empty()) {
        return 0;
    }
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

template <class Get>
std::vector<int> collect(const std::vector<DualitySample>& samples, Get get)
{
    std::vector<int> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        out.push_back(get(s));
    }
    return out;
}

bool all_equal(const std::vector<int>& v)
{
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

void validate(const AnalysisConfig& config)
{
    if (config.samples < 1) {
        throw InputError("analysis needs at least one sample");
    }
    if (config.retries < 0) {
        throw InputError("retry count must be non-negative");
    }
    if (!(config.rank_tol > 0.0 && config.rank_tol < 1.0)) {
        throw InputError("rank tolerance must lie in (0, 1)");
    }
}

} // namespace

DualitySample sample_duality(const Chart& chart, const AnalysisConfig& config, int index, Audit* audit)
{
    const std::uint64_t stream = derive_seed(config.seed, std::uint64_t(index));
    std::string last;
    for (int attempt = 0; attempt <= config.retries; ++attempt) {
        const GaussAnalysis primal
            = analyze_generic(chart, derive_seed(stream, std::uint64_t(attempt)), config.rank_tol, config.retries);
        const Chart dual = dual_chart(chart, primal);
        Rng rng(derive_seed(stream, 1000 + std::uint64_t(attempt)));
        const Eigen::VectorXd fiber = uniform_vector(rng, dual.param_dim() - chart.param_dim());
        GaussAnalysis dual_analysis;
        try {
            dual_analysis = analyze_at(dual, dual_point(primal, fiber), config.rank_tol);
        } catch (const NonGenericPoint& e) {
            last = e.what();
            continue;
        }
        const GhResult gh
            = gh_singularity_test(primal.sff, config.gh_mode, derive_seed(stream, 2000 + std::uint64_t(attempt)));
        if (gh.verdict == GhVerdict::Inconclusive && attempt < config.retries) {
            last = "pencil test inconclusive";
            continue;
        }
        if (audit != nullptr) {
            audit->insert(audit->end(), primal.audit.begin(), primal.audit.end());
            audit->insert(audit->end(), dual_analysis.audit.begin(), dual_analysis.audit.end());
        }
        DualitySample s;
        s.params = primal.frame.param_point;
        s.n = primal.n;
        s.r = primal.r;
        s.l = primal.l;
        s.n_star = dual_analysis.n;
        s.l_star = dual_analysis.l;
        s.r_star = dual_analysis.r;
        s.gh = gh;
        return s;
    }
    throw NonGenericPoint("chart '" + chart.name() + "': sample " + std::to_string(index) + " stayed non-generic after "
                          + std::to_string(config.retries) + " retries: " + last);
}

DualDimension dual_dimension(const Chart& chart, const AnalysisConfig& config)
{
    validate(config);
    DualDimension out;
    for (int k = 0; k < config.samples; ++k) {
        out.samples.push_back(sample_duality(chart, config, k, &out.audit));
    }
    out.n_star = median(collect(out.samples, [](const auto& s) { return s.n_star; }));
    out.l_star = median(collect(out.samples, [](const auto& s) { return s.l_star; }));
    out.r_star = median(collect(out.samples, [](const auto& s) { return s.r_star; }));
    return out;
}

DualityReport refined_dual_defect(const Chart& chart, const AnalysisConfig& config)
{
    const DualDimension dd = dual_dimension(chart, config);
    DualityReport rep;
    rep.name = chart.name();
    rep.N = chart.ambient_dim();
    rep.samples = dd.samples;
    rep.audit = dd.audit;

    const auto ns = collect(dd.samples, [](const auto& s) { return s.n; });
    const auto rs = collect(dd.samples, [](const auto& s) { return s.r; });
    const auto nstars = collect(dd.samples, [](const auto& s) { return s.n_star; });
    const auto lstars = collect(dd.samples, [](const auto& s) { return s.l_star; });
    const auto rstars = collect(dd.samples, [](const auto& s) { return s.r_star; });
    rep.n = median(ns);
    rep.r = median(rs);
    rep.l = rep.n - rep.r;
    rep.n_star = dd.n_star;
    rep.l_star = dd.l_star;
    rep.r_star = dd.r_star;
    rep.expected_n_star = rep.N - rep.l - 1;
    rep.delta_star = rep.expected_n_star - rep.n_star;
    rep.ambiguous = !(all_equal(ns) && all_equal(rs) && all_equal(nstars) && all_equal(lstars) && all_equal(rstars));

    rep.gh = dd.samples.front().gh;
    for (const auto& s : dd.samples) {
        rep.gh.max_abs_det = std::max(rep.gh.max_abs_det, s.gh.max_abs_det);
        rep.gh.threshold = std::max(rep.gh.threshold, s.gh.threshold);
        rep.gh.max_abs_coefficient = std::max(rep.gh.max_abs_coefficient, s.gh.max_abs_coefficient);
        if (s.gh.verdict != rep.gh.verdict) {
            rep.gh.verdict = GhVerdict::Inconclusive;
        }
    }
    if (rep.gh.verdict == GhVerdict::Inconclusive) {
        rep.ambiguous = true;
    }
    rep.gh_all_singular = rep.gh.verdict == GhVerdict::AllSingular;
    rep.consistent = rep.gh.verdict != GhVerdict::Inconclusive && (rep.delta_star > 0) == rep.gh_all_singular;
    if (rep.delta_star == 0) {
        rep.theorem1 = rep.n_star == rep.N - rep.l - 1 && rep.l_star == rep.N - rep.n - 1 && rep.r_star == rep.r;
    }
    return rep;
}

Theorem4Record verify_theorem4(const Chart& chart, const AnalysisConfig& config)
{
    const DualityReport rep = refined_dual_defect(chart, config);
    Theorem4Record t;
    t.delta_star = rep.delta_star;
    t.all_singular = rep.gh_all_singular;
    t.consistent = rep.consistent;
    t.ambiguous = rep.ambiguous;
    t.hard_failure = !rep.consistent && !rep.ambiguous;
    return t;
}

Chart apply_correlation(const Chart& chart, const Eigen::MatrixXd& correlation)
{
    const Eigen::Index size = chart.ambient_dim() + 1;
    if (correlation.rows() != size || correlation.cols() != size) {
        throw InputError("correlation must be " + std::to_string(size) + " x " + std::to_string(size));
    }
    if (numerical_rank(correlation).rank < size) {
        throw InputError("correlation is singular");
    }
    return compose_linear(chart, correlation, "corr(" + chart.name() + ")");
}

} // namespace dualrank
