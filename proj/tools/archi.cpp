// archi: run island-model experiments from JSON configs.
//
//   archi run <config> [--validate] [--lockstep] [--seed N] [--out DIR]
//   archi list problems|algorithms|topologies
//   archi export <results.json> convergence|archive|topology
//
// Exit status: 0 success, 1 configuration or usage error, 2 runtime failure.
// Output directory precedence: --out, config "output_dir", $ARCHI_OUTPUT_DIR,
// then ./archi_out.

#include "archi/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace ex = archi::experiment;

namespace {

int list(const std::string& kind)
{
    const std::vector<ex::RegistryEntry>* entries = nullptr;
    if (kind == "problems")
        entries = &ex::registered_problems();
    else if (kind == "algorithms")
        entries = &ex::registered_algorithms();
    else if (kind == "topologies")
        entries = &ex::registered_topologies();
    else {
        std::cerr << "archi: unknown list kind '" << kind << "' (expected problems, algorithms or topologies)\n";
        return 1;
    }
    for (const auto& e : *entries)
        std::cout << e.name << '\t' << e.signature << '\n';
    return 0;
}

std::filesystem::path output_dir(const std::string& flag, const ex::ExperimentConfig& c)
{
    if (!flag.empty())
        return flag;
    if (!c.output_dir.empty())
        return c.output_dir;
    if (const char* env = std::getenv("ARCHI_OUTPUT_DIR"); env && *env)
        return env;
    return "archi_out";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Island-model global optimisation experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_flag;
    bool validate = false;
    bool lockstep = false;
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
    run->add_option("config", config_path, "Config file")->required();
    run->add_flag("--validate", validate, "Print the canonical config and exit");
    run->add_flag("--lockstep", lockstep, "Synchronise islands for a reproducible run");
    run->add_option("--seed", seed, "Master seed (overrides the config)");
    run->add_option("--out", out_flag, "Output directory");

    std::string kind;
    auto* lst = app.add_subcommand("list", "List registered problems, algorithms or topologies");
    lst->add_option("kind", kind, "problems | algorithms | topologies")->required();

    std::string results_path;
    std::string what;
    auto* exp = app.add_subcommand("export", "Write tab-separated plot data next to a results file");
    exp->add_option("results", results_path, "results.json of a finished run")->required();
    exp->add_option("what", what, "convergence | archive | topology")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*lst)
        return list(kind);

    if (*exp) {
        ex::PlotData target;
        try {
            target = ex::plot_data_from_string(what);
        } catch (const std::exception& e) {
            std::cerr << "archi: " << e.what() << '\n';
            return 1;
        }
        try {
            std::cout << ex::export_plotdata(results_path, target).string() << '\n';
        } catch (const std::exception& e) {
            std::cerr << "archi: export failed: " << e.what() << '\n';
            return 2;
        }
        return 0;
    }

    ex::ExperimentConfig config;
    try {
        config = ex::load_config(config_path);
    } catch (const ex::ConfigError& e) {
        std::cerr << "archi: config error at " << e.what() << '\n';
        return 1;
    }
    if (seed)
        config.run.seed = *seed;
    if (lockstep)
        config.run.lockstep = true;

    if (validate) {
        std::cout << ex::to_json(config).dump(2) << '\n';
        return 0;
    }

    try {
        const auto dir = output_dir(out_flag, config);
        const auto outcome = ex::run(config, dir);
        std::cout << "best f = " << outcome.best.f() << "\nresults: " << outcome.results_file.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "archi: run failed: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
