#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "keq/commands.hpp"
#include "keq/errors.hpp"

namespace {

struct SubArgs {
    std::string config_path;
    keq::CliOptions opt;
};

void add_common(CLI::App* sub, SubArgs& args) {
    sub->add_option("--config", args.config_path, "JSON run configuration")->required();
    sub->add_option("--out", args.opt.out_path, "output path (default: stdout)");
    sub->add_option("--format", args.opt.format, "csv or json (tables only)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", args.opt.threads, "worker threads")->envname("TV_THREADS");
    sub->add_option("--seed", args.opt.seed, "seed for verification draws");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"keq: competitive-equilibrium engine for the two-dimensional knowledge economy"};
    app.require_subcommand(1);

    SubArgs args;
    using Runner = std::function<int(const keq::Json&, const keq::CliOptions&)>;
    Runner runner;

    auto hook = [&](CLI::App* sub, Runner fn, const char* desc) {
        sub->description(desc);
        add_common(sub, args);
        sub->callback([&runner, fn] { runner = fn; });
    };
    hook(app.add_subcommand("solve"), keq::run_solve, "equilibrium at a single point");
    hook(app.add_subcommand("sweep"), keq::run_sweep, "equilibrium over a machine-knowledge grid");
    hook(app.add_subcommand("maxlabor"), keq::run_maxlabor, "labor-income maxima and thresholds");
    hook(app.add_subcommand("trajectory"), keq::run_trajectory,
         "equilibrium along a path of machine improvements");
    hook(app.add_subcommand("scan"), keq::run_scan, "price scan with discontinuity detection");
    hook(app.add_subcommand("verify"), keq::run_verify, "solver-vs-oracle verification suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage problems are config errors
    }

    try {
        const keq::Json cfg = keq::load_config(args.config_path);
        return runner(cfg, args.opt);
    } catch (const keq::PreconditionError& e) {
        std::fprintf(stderr, "solver precondition failed: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
