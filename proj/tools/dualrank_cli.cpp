// dualrank: Gauss-map and dual-variety invariants of parametrized projective varieties.
//
//   dualrank analyze --variety segre:1,2 [--seed N] [--tol X] [--gh-mode M] [--format json|text]
//   dualrank table [--format csv|json|text] [--threads K]
//   dualrank foci --variety torse:twisted_cubic,l=1 --at 0.3,0.5 --dir 1
//
// DUALRANK_SEED overrides --seed.

#include "dualrank/errors.hpp"
#include "dualrank/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

std::uint64_t parse_seed(const std::string& text)
{
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw dualrank::InputError("invalid seed '" + text + "'");
    }
    if (used != text.size()) {
        throw dualrank::InputError("invalid seed '" + text + "'");
    }
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gauss-map and dual-variety invariants of parametrized projective varieties"};
    app.require_subcommand(1);

    dualrank::RunConfig config;
    std::string seed_text = "42";
    std::string gh_mode = "auto";
    std::string format;
    std::string at_text, dir_text;

    auto common = [&](CLI::App* cmd, bool needs_variety) {
        if (needs_variety) {
            cmd->add_option("--variety", config.variety_spec, "registry spec, e.g. segre:1,2")->required();
        }
        cmd->add_option("--seed", seed_text, "master seed");
        cmd->add_option("--tol", config.rank_tol, "relative rank tolerance");
        cmd->add_option("--samples", config.samples, "generic sample points");
        cmd->add_option("--gh-mode", gh_mode, "auto|probabilistic|interpolated");
        cmd->add_option("--format", format, "output format");
    };

    auto* analyze = app.add_subcommand("analyze", "invariants and dual defect of one variety");
    common(analyze, true);
    auto* table = app.add_subcommand("table", "reproduce the dimension table");
    common(table, false);
    table->add_option("--threads", config.threads, "worker threads");
    auto* foci = app.add_subcommand("foci", "focus points on a line in a leaf");
    common(foci, true);
    foci->add_option("--at", at_text, "parameter point of the leaf's base point")->required();
    foci->add_option("--dir", dir_text, "leaf direction (affine or homogeneous)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dualrank::exit_code::bad_spec;
    }

    try {
        if (const char* env = std::getenv("DUALRANK_SEED"); env != nullptr && *env != '\0') {
            seed_text = env;
        }
        config.seed = parse_seed(seed_text);
        config.gh_mode = dualrank::parse_gh_mode(gh_mode);
        if (!format.empty()) {
            config.output = dualrank::parse_format(format);
        } else if (table->parsed()) {
            config.output = dualrank::OutputFormat::Csv;
        }

        dualrank::CommandResult result;
        if (analyze->parsed()) {
            result = dualrank::cmd_analyze(config);
        } else if (table->parsed()) {
            result = dualrank::cmd_table(config);
        } else {
            dualrank::FociRequest request{dualrank::parse_vector(at_text), dualrank::parse_vector(dir_text)};
            result = dualrank::cmd_foci(config, request);
        }
        std::cout << result.output;
        return result.exit_code;
    } catch (const dualrank::InputError& e) {
        std::cerr << "dualrank: " << e.what() << '\n';
        return dualrank::exit_code::bad_spec;
    } catch (const dualrank::ConstructionError& e) {
        std::cerr << "dualrank: " << e.what() << '\n';
        return dualrank::exit_code::bad_spec;
    } catch (const std::exception& e) {
        std::cerr << "dualrank: " << e.what() << '\n';
        return 1;
    }
}
