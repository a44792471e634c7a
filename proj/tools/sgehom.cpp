// Command-line front end: sgehom {homogenize|geometry|check-pd|verify-energy}.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sgehom/commands.hpp"

namespace {

using sgehom::cli::ExitCode;
using sgehom::cli::Outcome;
using sgehom::cli::Overrides;
using sgehom::io::json;

struct Args {
    std::string input;
    std::string output;
    Overrides overrides;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file " + path);
    std::stringstream text;
    text << in.rdbuf();
    return json::parse(text.str());
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file " + path);
    out << text;
}

int run(Outcome (*command)(const json&, const Overrides&), const Args& a) {
    try {
        const Outcome out = command(read_json(a.input), a.overrides);
        for (const auto& w : out.report.warnings) spdlog::warn("{}", w);
        write_text(a.output, sgehom::io::dump(sgehom::io::to_json(out.report)));
        if (out.exit_code != ExitCode::Ok) spdlog::error("{}: certification failed", out.report.command);
        return static_cast<int>(out.exit_code);
    } catch (const UsageError& e) {
        spdlog::error("{}", e.what());
        return static_cast<int>(ExitCode::Usage);
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return static_cast<int>(sgehom::cli::exit_code_for(e));
    }
}

} // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("sgehom"));
    spdlog::set_pattern("[%l] %v");
    spdlog::cfg::load_env_levels();  // SPDLOG_LEVEL=debug|info|warn|error|off

    CLI::App app{"Effective second-gradient elasticity of dilute two-phase composites"};
    app.set_version_flag("--version", std::string(sgehom::cli::kVersion));
    app.require_subcommand(1);

    Args args;
    std::uint64_t seed = 0;
    int samples = 0;
    double tol = 0.0;
    auto add_common = [&](CLI::App* sub, bool energy) {
        sub->add_option("-i,--input", args.input, "input JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", args.output, "report file (default: stdout)");
        sub->add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "random seed override");
        if (energy) sub->add_option("--samples", samples, "number of sampled beta")->check(CLI::PositiveNumber);
    };

    using Command = Outcome (*)(const json&, const Overrides&);
    std::vector<std::pair<CLI::App*, Command>> commands;
    auto* homogenize = app.add_subcommand("homogenize", "effective nonlocal tensor and energy certificate");
    add_common(homogenize, true);
    commands.emplace_back(homogenize, &sgehom::cli::cmd_homogenize);

    auto* geometry = app.add_subcommand("geometry", "geometric preconditions of an RVE and inclusion");
    add_common(geometry, false);
    geometry->add_flag("--fsweep", args.overrides.fsweep, "shrink the inclusion along the dilution ladder");
    commands.emplace_back(geometry, &sgehom::cli::cmd_geometry);

    auto* check_pd = app.add_subcommand("check-pd", "positive-definiteness verdict of a tensor");
    add_common(check_pd, false);
    commands.emplace_back(check_pd, &sgehom::cli::cmd_check_pd);

    auto* verify = app.add_subcommand("verify-energy", "energy mismatch over sampled boundary data");
    add_common(verify, true);
    verify->add_flag("--fsweep", args.overrides.fsweep, "repeat along the dilution ladder");
    commands.emplace_back(verify, &sgehom::cli::cmd_verify_energy);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Usage);
    }

    for (auto& [sub, command] : commands) {
        if (!sub->parsed()) continue;
        auto given = [&](const char* name) {
            const CLI::Option* opt = sub->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };
        if (given("--seed")) args.overrides.seed = seed;
        if (given("--samples")) args.overrides.samples = samples;
        if (given("--tol")) args.overrides.tol = tol;
        return run(command, args);
    }
    return static_cast<int>(ExitCode::Usage);
}
