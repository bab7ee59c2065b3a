#include "dualrank/report.hpp"

#include "dualrank/errors.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>

namespace dualrank {

void RunConfig::validate() const
{
    if (!(rank_tol > 0.0 && rank_tol < 1e-2)) {
        throw InputError("--tol must lie in (0, 1e-2)");
    }
    if (samples < 1) {
        throw InputError("samples must be at least 1");
    }
    if (threads < 1) {
        throw InputError("threads must be at least 1");
    }
}

GhMode parse_gh_mode(const std::string& text)
{
    if (text == "auto") {
        return GhMode::Auto;
    }
    if (text == "probabilistic") {
        return GhMode::Probabilistic;
    }
    if (text == "interpolated") {
        return GhMode::Interpolated;
    }
    throw InputError("unknown gh mode '" + text + "' (auto|probabilistic|interpolated)");
}

OutputFormat parse_format(const std::string& text)
{
    if (text == "json") {
        return OutputFormat::Json;
    }
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "text") {
        return OutputFormat::Text;
    }
    throw InputError("unknown format '" + text + "' (json|csv|text)");
}

AnalysisConfig analysis_config(const RunConfig& config)
{
    AnalysisConfig a;
    a.seed = config.seed;
    a.rank_tol = config.rank_tol;
    a.gh_mode = config.gh_mode;
    a.samples = config.samples;
    return a;
}

namespace {

Json tolerances_json(const RunConfig& config)
{
    return Json{{"rank_tol", config.rank_tol},
                {"confidence_ratio", kConfidenceRatio},
                {"gh_threshold", kGhThreshold},
                {"gh_inconclusive_band", kGhBand},
                {"samples", config.samples}};
}

Json finite_or_null(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

std::string join_values(const std::vector<double>& v)
{
    std::ostringstream out;
    out << std::setprecision(6);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i == 0 ? "" : ", ") << v[i];
    }
    return out.str();
}

} // namespace

Json audit_json(const Audit& audit)
{
    Json out = Json::array();
    for (const auto& e : audit) {
        out.push_back(Json{{"context", e.context},
                           {"rank", e.decision.rank},
                           {"singular_values", e.decision.singular_values},
                           {"gap_ratio", finite_or_null(e.decision.gap_ratio)},
                           {"ambiguous", e.decision.ambiguous}});
    }
    return out;
}

Json report_json(const DualityReport& report, const RunConfig& config)
{
    Json j;
    j["spec"] = config.variety_spec;
    j["seed"] = config.seed;
    j["tolerances"] = tolerances_json(config);
    j["N"] = report.N;
    j["n"] = report.n;
    j["r"] = report.r;
    j["l"] = report.l;
    j["n_star"] = report.n_star;
    j["l_star"] = report.l_star;
    j["r_star"] = report.r_star;
    j["delta_star"] = report.delta_star;
    j["expected_n_star"] = report.expected_n_star;
    j["gh"] = Json{{"mode", to_string(report.gh.mode)},
                   {"verdict", to_string(report.gh.verdict)},
                   {"max_abs_det", report.gh.max_abs_det},
                   {"threshold", report.gh.threshold}};
    j["consistency"] = Json{{"theorem1", report.theorem1 ? Json(*report.theorem1) : Json(nullptr)},
                            {"theorem4", report.consistent}};
    j["ambiguous"] = report.ambiguous;
    j["audit"] = audit_json(report.audit);
    return j;
}

std::string report_text(const DualityReport& report, const RunConfig& config)
{
    std::ostringstream out;
    out << config.variety_spec << " (seed " << config.seed << ")\n"
        << "  N = " << report.N << ", n = " << report.n << ", r = " << report.r << ", l = " << report.l << "\n"
        << "  dual: n* = " << report.n_star << ", l* = " << report.l_star << ", r* = " << report.r_star
        << " (N - l - 1 = " << report.expected_n_star << ")\n"
        << "  delta* = " << report.delta_star << "\n"
        << "  pencil test (" << to_string(report.gh.mode) << "): " << to_string(report.gh.verdict)
        << ", max |D| = " << report.gh.max_abs_det << "\n"
        << "  dimension swap: " << (report.theorem1 ? (*report.theorem1 ? "holds" : "FAILS") : "n/a")
        << ", pencil agreement: " << (report.consistent ? "consistent" : "INCONSISTENT") << "\n";
    if (report.ambiguous) {
        out << "  warning: samples disagree or a verdict was inconclusive\n";
    }
    return out.str();
}

int report_exit_code(const DualityReport& report)
{
    if (report.ambiguous) {
        return exit_code::ambiguous;
    }
    const bool theorem1_ok = !report.theorem1 || *report.theorem1;
    if (!report.consistent || !theorem1_ok || report.delta_star < 0) {
        return exit_code::inconsistent;
    }
    return exit_code::ok;
}

CommandResult cmd_analyze(const RunConfig& config)
{
    config.validate();
    const Chart chart = resolve(config.variety_spec, config.seed);
    try {
        const DualityReport report = refined_dual_defect(chart, analysis_config(config));
        CommandResult res;
        res.exit_code = report_exit_code(report);
        res.output = config.output == OutputFormat::Text ? report_text(report, config)
                                                         : report_json(report, config).dump(2) + "\n";
        return res;
    } catch (const NonGenericPoint& e) {
        Json j;
        j["spec"] = config.variety_spec;
        j["seed"] = config.seed;
        j["tolerances"] = tolerances_json(config);
        j["status"] = "ambiguous";
        j["error"] = e.what();
        return {exit_code::ambiguous, j.dump(2) + "\n"};
    }
}

namespace {

TableRow analyse_row(const TableInstance& inst, const RunConfig& config)
{
    TableRow row;
    row.example_id = inst.example_id;
    row.name = inst.name;
    row.spec = inst.spec;
    row.expected = inst.expected;
    if (!inst.dual_name.empty()) {
        row.dual_name = inst.dual_name;
    }
    try {
        const Chart chart = resolve(inst.spec, config.seed);
        const DualityReport rep = refined_dual_defect(chart, analysis_config(config));
        row.N = rep.N;
        row.n = rep.n;
        row.l = rep.l;
        row.r = rep.r;
        row.l_star = rep.l_star;
        row.n_star = rep.n_star;
        row.delta_star = rep.delta_star;
        row.gh_all_singular = rep.gh_all_singular;
        const TableColumns& e = inst.expected;
        const bool match = rep.N == e.N && rep.n == e.n && rep.l == e.l && rep.r == e.r && rep.l_star == e.l_star
            && rep.n_star == e.n_star;
        if (rep.ambiguous) {
            row.status = "ambiguous";
        } else if (match && report_exit_code(rep) == exit_code::ok) {
            row.status = "ok";
        } else {
            row.status = "fail";
            row.message = match ? "theorem consistency check failed" : "measured columns differ from the table";
        }
    } catch (const NonGenericPoint& e) {
        row.status = "ambiguous";
        row.message = e.what();
    }
    return row;
}

} // namespace

std::vector<TableRow> table_rows(const RunConfig& config)
{
    config.validate();
    const std::vector<TableInstance> instances = table_instances();
    std::vector<TableRow> rows(instances.size());
    std::vector<std::exception_ptr> errors(instances.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            try {
                rows[i] = analyse_row(instances[i], config);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int count = std::min<int>(config.threads, int(instances.size()));
    if (count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < count; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

std::string table_csv(const std::vector<TableRow>& rows)
{
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) {
            return s;
        }
        std::string q = "\"";
        for (char c : s) {
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return q + "\"";
    };
    std::ostringstream out;
    out << "X,N,n,l,r,l*,n*,X*,example,delta_star,gh_all_singular,status\n";
    for (const auto& row : rows) {
        out << quote(row.name) << ',' << row.N << ',' << row.n << ',' << row.l << ',' << row.r << ',' << row.l_star
            << ',' << row.n_star << ',' << quote(row.dual_name.value_or("")) << ',' << row.example_id << ','
            << row.delta_star << ',' << (row.gh_all_singular ? "true" : "false") << ',' << row.status << '\n';
    }
    return out.str();
}

Json table_json(const std::vector<TableRow>& rows, const RunConfig& config)
{
    Json out;
    out["seed"] = config.seed;
    out["tolerances"] = tolerances_json(config);
    Json list = Json::array();
    for (const auto& row : rows) {
        Json j;
        j["example_id"] = row.example_id;
        j["name"] = row.name;
        j["spec"] = row.spec;
        j["N"] = row.N;
        j["n"] = row.n;
        j["l"] = row.l;
        j["r"] = row.r;
        j["l_star"] = row.l_star;
        j["n_star"] = row.n_star;
        j["delta_star"] = row.delta_star;
        j["gh_all_singular"] = row.gh_all_singular;
        j["dual_name"] = row.dual_name ? Json(*row.dual_name) : Json(nullptr);
        j["status"] = row.status;
        const TableColumns& e = row.expected;
        j["expected"] = Json{{"N", e.N}, {"n", e.n}, {"l", e.l}, {"r", e.r}, {"l_star", e.l_star}, {"n_star", e.n_star}};
        j["pass"] = row.pass();
        if (!row.message.empty()) {
            j["message"] = row.message;
        }
        list.push_back(std::move(j));
    }
    out["rows"] = std::move(list);
    return out;
}

int table_exit_code(const std::vector<TableRow>& rows)
{
    int code = exit_code::ok;
    for (const auto& row : rows) {
        if (row.status == "fail") {
            return exit_code::inconsistent;
        }
        if (row.status == "ambiguous") {
            code = exit_code::ambiguous;
        }
    }
    return code;
}

CommandResult cmd_table(const RunConfig& config)
{
    const auto rows = table_rows(config);
    CommandResult res;
    res.exit_code = table_exit_code(rows);
    switch (config.output) {
    case OutputFormat::Csv:
        res.output = table_csv(rows);
        break;
    case OutputFormat::Json:
        res.output = table_json(rows, config).dump(2) + "\n";
        break;
    case OutputFormat::Text: {
        std::ostringstream out;
        for (const auto& row : rows) {
            out << row.example_id << ". " << row.name << " [" << row.spec << "]  N=" << row.N << " n=" << row.n
                << " l=" << row.l << " r=" << row.r << " l*=" << row.l_star << " n*=" << row.n_star << "  "
                << row.status << '\n';
        }
        res.output = out.str();
        break;
    }
    }
    return res;
}

Eigen::VectorXd parse_vector(const std::string& text)
{
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InputError("not a number: '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
            throw InputError("not a number: '" + item + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw InputError("empty vector");
    }
    return Eigen::Map<const Eigen::VectorXd>(values.data(), Eigen::Index(values.size()));
}

CommandResult cmd_foci(const RunConfig& config, const FociRequest& request)
{
    config.validate();
    const Chart chart = resolve(config.variety_spec, config.seed);
    if (!chart.ruling()) {
        throw InputError("'" + config.variety_spec + "' has no registered ruling");
    }
    const RuledChart ruled(chart);
    const int leaf = ruled.leaf_params();
    if (request.at.size() != chart.param_dim()) {
        throw InputError("--at needs " + std::to_string(chart.param_dim()) + " parameters");
    }
    LeafLine line;
    if (request.direction.size() == leaf) {
        line.target.resize(leaf + 1);
        line.target << 1.0, request.direction;
    } else if (request.direction.size() == leaf + 1) {
        line.target = request.direction;
    } else {
        throw InputError("--dir needs " + std::to_string(leaf) + " affine or " + std::to_string(leaf + 1)
                         + " homogeneous leaf coordinates");
    }

    Json j;
    j["spec"] = config.variety_spec;
    j["seed"] = config.seed;
    j["at"] = std::vector<double>(request.at.data(), request.at.data() + request.at.size());
    j["target"] = std::vector<double>(line.target.data(), line.target.data() + line.target.size());
    j["interval"] = {line.interval.first, line.interval.second};

    int code = exit_code::ok;
    try {
        const GaussAnalysis analysis = analyze_at(chart, request.at, config.rank_tol);
        if (analysis.l != leaf || analysis.r != ruled.base_params()) {
            throw NonGenericPoint("base point is not a generic point of its leaf (r = " + std::to_string(analysis.r)
                                  + ", l = " + std::to_string(analysis.l) + ")");
        }
        const LeafOperators ops = leaf_operators(ruled, analysis);
        const FocusPolynomial focus = focus_polynomial(ops, line);
        j["coefficients"] = focus.poly.coefficients;
        j["scale"] = focus.poly.scale;
        const std::vector<double> scan = scan_rank_drops(ruled, request.at, line);
        j["scan"] = scan;
        try {
            const std::vector<Root> roots = focal_points(focus);
            Json list = Json::array();
            for (const auto& root : roots) {
                list.push_back(Json{{"tau", root.value}, {"multiplicity", root.multiplicity}});
            }
            j["roots"] = std::move(list);
            bool matched = roots.size() == scan.size();
            for (std::size_t i = 0; matched && i < roots.size(); ++i) {
                matched = std::abs(roots[i].value - scan[i]) <= 1e-6;
            }
            j["matched"] = matched;
            j["status"] = matched ? "ok" : "mismatch";
            code = matched ? exit_code::ok : exit_code::inconsistent;
        } catch (const DegenerateLeaf& e) {
            j["status"] = "degenerate_leaf";
            j["error"] = e.what();
            code = exit_code::ambiguous;
        }
    } catch (const NonGenericPoint& e) {
        j["status"] = "ambiguous";
        j["error"] = e.what();
        code = exit_code::ambiguous;
    } catch (const SingularBasePoint& e) {
        j["status"] = "singular_base_point";
        j["error"] = e.what();
        code = exit_code::ambiguous;
    }

    if (config.output == OutputFormat::Text) {
        std::ostringstream out;
        out << config.variety_spec << ": " << j["status"].get<std::string>() << '\n';
        if (j.contains("roots")) {
            for (const auto& root : j["roots"]) {
                out << "  focus at tau = " << root["tau"].get<double>() << " (multiplicity "
                    << root["multiplicity"].get<int>() << ")\n";
            }
            out << "  rank drops: " << join_values(j["scan"].get<std::vector<double>>()) << '\n';
        }
        if (j.contains("error")) {
            out << "  " << j["error"].get<std::string>() << '\n';
        }
        return {code, out.str()};
    }
    return {code, j.dump(2) + "\n"};
}

} // namespace dualrank
